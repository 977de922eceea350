//! Pipeline orchestration: configuration, corpus input and output,
//! training, tagging, timelines and the synthetic corpus.

mod config;
mod corpus_io;
mod synthetic;
mod tag;
mod timeline;
mod train;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use config::PipelineConfig;
pub use corpus_io::{read_corpus_dir, read_input_dir, write_corpus_dir, InputDocument, STANDOFF_EXT};
pub use synthetic::{generate_corpus, SyntheticConfig, SYNTHETIC_DCT};
pub use tag::{Pipeline, TaggedDocument};
pub use timeline::{build_timeline, timeline_csv, timeline_table, DctRelation, Timeline, TimelineRow};
pub use train::{model_file, train_models, TrainedModels, TER_MODEL_FILE};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}, line {line}: {reason}", path.display())]
    Config { path: PathBuf, line: usize, reason: String },
    #[error("`{key}` names a missing file: {}", path.display())]
    MissingFile { key: String, path: PathBuf },
    #[error("{}: {reason}", path.display())]
    Resource { path: PathBuf, reason: String },
    #[error("{}: {source}", path.display())]
    Corpus {
        path: PathBuf,
        source: crate::corpus::CorpusError,
    },
    #[error("document {doc}: {source}")]
    Crf { doc: String, source: crate::crf::CrfError },
    #[error("training corpus is empty")]
    EmptyCorpus,
    #[error("no model at {}", .0.display())]
    MissingModel(PathBuf),
    #[error(transparent)]
    Eval(#[from] crate::eval::EvalError),
}

impl PipelineError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        PipelineError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub(crate) fn resource(path: &Path, reason: impl ToString) -> Self {
        PipelineError::Resource {
            path: path.to_path_buf(),
            reason: reason.to_string(),
        }
    }

    /// True for mistakes in how the pipeline was invoked or configured, as
    /// opposed to problems with the data.
    pub fn is_usage(&self) -> bool {
        matches!(self, PipelineError::Config { .. } | PipelineError::MissingFile { .. })
    }
}
