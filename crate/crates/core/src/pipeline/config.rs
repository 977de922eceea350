use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::corpus::EventCategory;
use crate::crf::SchemaKind;

use super::PipelineError;

/// Pipeline settings read from a `key = value` file. `include = path`
/// pulls in another file whose settings the including file may override;
/// relative paths resolve against the file that names them.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub gazetteer_dir: Option<PathBuf>,
    pub ter_rules: Option<PathBuf>,
    pub intra_rules: Option<PathBuf>,
    pub section_lexicon: Option<PathBuf>,
    pub routine_lexicon: Option<PathBuf>,
    pub negation_triggers: Option<PathBuf>,
    pub negation_terminators: Option<PathBuf>,
    pub fp_lexicon: Option<PathBuf>,
    pub model_dir: Option<PathBuf>,

    pub events: bool,
    pub tern: bool,
    pub tlink: bool,
    pub closure: bool,

    pub label_fixer: bool,
    pub boundary_adjust: bool,
    pub fp_filter: bool,
    pub negation: bool,
    pub constrained_decoding: bool,

    pub ter_rules_enabled: bool,
    pub ter_ml: bool,
    pub ter_post_filter: bool,

    pub intra: bool,
    pub sectime: bool,
    pub coref: bool,
    pub coref_threshold: f64,
    pub inner_threshold: f64,

    pub workers: usize,
    pub schemas: BTreeMap<EventCategory, SchemaKind>,
    pub crf_c: f64,
    pub crf_eta: f64,
    pub crf_max_iter: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            gazetteer_dir: None,
            ter_rules: None,
            intra_rules: None,
            section_lexicon: None,
            routine_lexicon: None,
            negation_triggers: None,
            negation_terminators: None,
            fp_lexicon: None,
            model_dir: None,
            events: true,
            tern: true,
            tlink: true,
            closure: false,
            label_fixer: true,
            boundary_adjust: true,
            fp_filter: true,
            negation: true,
            constrained_decoding: false,
            ter_rules_enabled: true,
            ter_ml: true,
            ter_post_filter: true,
            intra: true,
            sectime: true,
            coref: true,
            coref_threshold: crate::tlink::COREF_THRESHOLD,
            inner_threshold: 0.9,
            workers: 1,
            schemas: [
                (EventCategory::Problem, SchemaKind::BIO),
                (EventCategory::Treatment, SchemaKind::BIO),
                (EventCategory::Test, SchemaKind::WBIO),
            ]
            .into_iter()
            .collect(),
            crf_c: 1.0,
            crf_eta: 1e-4,
            crf_max_iter: 200,
        }
    }
}

const MAX_INCLUDE_DEPTH: usize = 8;

impl PipelineConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, PipelineError> {
        let mut cfg = Self::default();
        cfg.apply_file(path.as_ref(), 0)?;
        cfg.check_files()?;
        Ok(cfg)
    }

    /// Parses settings from a string; relative paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, PipelineError> {
        let mut cfg = Self::default();
        cfg.apply_text(text, base, Path::new("<config>"), 0)?;
        cfg.check_files()?;
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path, depth: usize) -> Result<(), PipelineError> {
        if depth > MAX_INCLUDE_DEPTH {
            return Err(PipelineError::Config {
                path: path.to_path_buf(),
                line: 0,
                reason: "includes nested too deeply".into(),
            });
        }
        let text = std::fs::read_to_string(path).map_err(|e| PipelineError::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        self.apply_text(&text, base, path, depth)
    }

    fn apply_text(&mut self, text: &str, base: &Path, path: &Path, depth: usize) -> Result<(), PipelineError> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| PipelineError::Config {
                path: path.to_path_buf(),
                line: n + 1,
                reason,
            };
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err("expected key = value".into()))?;
            if key == "include" {
                self.apply_file(&base.join(value), depth + 1)?;
                continue;
            }
            self.set(key, value, base).map_err(err)?;
        }
        Ok(())
    }

    /// Sets one key, as in a config line.
    pub fn set(&mut self, key: &str, value: &str, base: &Path) -> Result<(), String> {
        let flag = |v: &str| -> Result<bool, String> {
            match v {
                "true" | "yes" | "on" | "1" => Ok(true),
                "false" | "no" | "off" | "0" => Ok(false),
                _ => Err(format!("`{key}` expects true or false, got `{v}`")),
            }
        };
        let num = |v: &str| -> Result<f64, String> {
            v.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("`{key}` expects a number, got `{v}`"))
        };
        let count = |v: &str| -> Result<usize, String> {
            v.parse::<usize>().map_err(|_| format!("`{key}` expects a whole number, got `{v}`"))
        };
        let path = Some(base.join(value));
        match key {
            "gazetteer_dir" => self.gazetteer_dir = path,
            "ter_rules" => self.ter_rules = path,
            "intra_rules" => self.intra_rules = path,
            "section_lexicon" => self.section_lexicon = path,
            "routine_lexicon" => self.routine_lexicon = path,
            "negation_triggers" => self.negation_triggers = path,
            "negation_terminators" => self.negation_terminators = path,
            "fp_lexicon" => self.fp_lexicon = path,
            "model_dir" => self.model_dir = path,
            "events" => self.events = flag(value)?,
            "tern" => self.tern = flag(value)?,
            "tlink" => self.tlink = flag(value)?,
            "closure" => self.closure = flag(value)?,
            "label_fixer" => self.label_fixer = flag(value)?,
            "boundary_adjust" => self.boundary_adjust = flag(value)?,
            "fp_filter" => self.fp_filter = flag(value)?,
            "negation" => self.negation = flag(value)?,
            "constrained_decoding" => self.constrained_decoding = flag(value)?,
            "ter_rules_enabled" => self.ter_rules_enabled = flag(value)?,
            "ter_ml" => self.ter_ml = flag(value)?,
            "ter_post_filter" => self.ter_post_filter = flag(value)?,
            "intra" => self.intra = flag(value)?,
            "sectime" => self.sectime = flag(value)?,
            "coref" => self.coref = flag(value)?,
            "coref_threshold" => self.coref_threshold = num(value)?,
            "inner_threshold" => self.inner_threshold = num(value)?,
            "workers" => self.workers = count(value)?.max(1),
            "crf_c" => self.crf_c = num(value)?,
            "crf_eta" => self.crf_eta = num(value)?,
            "crf_max_iter" => self.crf_max_iter = count(value)?,
            _ => {
                let cat = key
                    .strip_prefix("schema.")
                    .ok_or_else(|| format!("unknown key `{key}`"))?;
                let cat: EventCategory = cat.parse()?;
                self.schemas.insert(cat, value.parse()?);
            }
        }
        Ok(())
    }

    fn check_files(&self) -> Result<(), PipelineError> {
        let files = [
            ("gazetteer_dir", &self.gazetteer_dir),
            ("ter_rules", &self.ter_rules),
            ("intra_rules", &self.intra_rules),
            ("section_lexicon", &self.section_lexicon),
            ("routine_lexicon", &self.routine_lexicon),
            ("negation_triggers", &self.negation_triggers),
            ("negation_terminators", &self.negation_terminators),
            ("fp_lexicon", &self.fp_lexicon),
        ];
        for (key, p) in files {
            if let Some(p) = p {
                if !p.exists() {
                    return Err(PipelineError::MissingFile {
                        key: key.to_string(),
                        path: p.clone(),
                    });
                }
            }
        }
        if self.negation_triggers.is_some() != self.negation_terminators.is_some() {
            return Err(PipelineError::Config {
                path: PathBuf::from("<config>"),
                line: 0,
                reason: "negation_triggers and negation_terminators go together".into(),
            });
        }
        Ok(())
    }

    pub fn schema(&self, cat: EventCategory) -> SchemaKind {
        self.schemas.get(&cat).copied().unwrap_or(SchemaKind::BIO)
    }
}
