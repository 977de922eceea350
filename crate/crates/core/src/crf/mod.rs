//! Linear-chain CRF: template DSL, feature expansion, label schemas,
//! L2-regularized training and Viterbi decoding.

mod features;
mod lbfgs;
mod model;
mod schema;
mod template;
mod train;
mod viterbi;

use thiserror::Error;

pub use features::{event_matrix, expand_features, sentinel, ter_matrix, FeatureMatrix};
pub use model::CrfModel;
pub use schema::{decode_labels, encode_labels, LabelSchema, SchemaKind};
pub use template::{parse_templates, FeatureTemplate};
pub use train::{train, train_with_report, Optimizer, TrainParams, TrainReport, TrainingData};

#[derive(Debug, Error)]
pub enum CrfError {
    #[error("template syntax error at line {line}, column {col}: {reason}")]
    TemplateSyntax { line: usize, col: usize, reason: String },
    #[error("template {template} references column {column} but rows have {available} columns")]
    ColumnOutOfRange {
        template: String,
        column: usize,
        available: usize,
    },
    #[error("objective became non-finite at iteration {iteration}")]
    NonFiniteObjective { iteration: usize },
    #[error("invalid gold label `{label}` in sentence {sentence} at position {position}")]
    InvalidGoldLabel {
        sentence: usize,
        position: usize,
        label: String,
    },
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("mentions overlap at token {0}")]
    OverlappingMentions(usize),
    #[error("malformed model: {0}")]
    Model(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// `log(sum(exp(xs)))` computed stably.
pub(crate) fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}
