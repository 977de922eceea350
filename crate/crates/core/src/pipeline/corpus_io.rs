use std::path::{Path, PathBuf};

use crate::corpus::{parse_standoff, write_standoff, AnnotatedDocument, Document};

use super::PipelineError;

pub const STANDOFF_EXT: &str = "standoff";

fn sorted_files(dir: &Path, exts: &[&str]) -> Result<Vec<PathBuf>, PipelineError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| PipelineError::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| exts.iter().any(|e| x == *e)))
        .collect();
    files.sort();
    Ok(files)
}

fn read_one(path: &Path) -> Result<AnnotatedDocument, PipelineError> {
    let raw = std::fs::read_to_string(path).map_err(|e| PipelineError::io(path, e))?;
    parse_standoff(&raw).map_err(|source| PipelineError::Corpus {
        path: path.to_path_buf(),
        source,
    })
}

/// Every `.standoff` file of a directory, in file-name order.
pub fn read_corpus_dir(dir: impl AsRef<Path>) -> Result<Vec<AnnotatedDocument>, PipelineError> {
    sorted_files(dir.as_ref(), &[STANDOFF_EXT])?
        .iter()
        .map(|p| read_one(p))
        .collect()
}

/// A document to tag, or the reason its file could not be read.
pub struct InputDocument {
    pub path: PathBuf,
    pub doc: Result<Document, PipelineError>,
}

/// Raw `.txt` files (id from the file stem) and `.standoff` files (text and
/// metadata kept, annotations dropped), in file-name order. Unreadable
/// files are reported per file.
pub fn read_input_dir(dir: impl AsRef<Path>) -> Result<Vec<InputDocument>, PipelineError> {
    Ok(sorted_files(dir.as_ref(), &["txt", STANDOFF_EXT])?
        .into_iter()
        .map(|path| {
            let doc = if path.extension().is_some_and(|x| x == "txt") {
                std::fs::read_to_string(&path)
                    .map_err(|e| PipelineError::io(&path, e))
                    .map(|text| {
                        let id = path.file_stem().unwrap_or_default().to_string_lossy().replace(char::is_whitespace, "_");
                        Document::new(id, text)
                    })
            } else {
                read_one(&path).map(|ad| ad.doc)
            };
            InputDocument { path, doc }
        })
        .collect())
}

/// Writes `<id>.standoff` per document.
pub fn write_corpus_dir(dir: impl AsRef<Path>, docs: &[AnnotatedDocument]) -> Result<(), PipelineError> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| PipelineError::io(dir, e))?;
    for d in docs {
        let path = dir.join(format!("{}.{STANDOFF_EXT}", d.doc.id));
        write_standoff(d, &path).map_err(|source| PipelineError::Corpus { path, source })?;
    }
    Ok(())
}
