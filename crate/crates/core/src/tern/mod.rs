//! Temporal expression recognition (rules, CRF, or their union), numeric
//! false-positive filtering and TIMEX3 normalization.

mod filter;
mod merge;
mod ml;
mod normalize;
mod rules;

use crate::corpus::{AnnotatedDocument, TimexMention};
use crate::crf::{CrfError, CrfModel};

pub use filter::{post_filter, NUMBER_CONTEXT_WORDS};
pub use merge::merge_hybrid;
pub use ml::{guess_type, recognize_ml, ter_schema, ter_templates, ter_training_sequences, TIMEX_ENTITY};
pub use normalize::{expand_year, normalize, normalize_surface, NormContext, NormalizeError};
pub use rules::{match_tokens, recognize_rules, RuleCompileError, RuleHit, RuleKind, RuleSet, TerRule};

#[derive(Debug, Clone)]
pub struct TernConfig {
    pub rules: RuleSet,
    pub use_rules: bool,
    /// Only consulted when a model is supplied.
    pub use_ml: bool,
    pub post_filter: bool,
}

impl Default for TernConfig {
    fn default() -> Self {
        TernConfig {
            rules: RuleSet::bundled(),
            use_rules: true,
            use_ml: true,
            post_filter: true,
        }
    }
}

/// Recognizes, merges, filters and normalizes the temporal expressions of
/// a preprocessed document. Without an anchor in the context, relative
/// expressions normalize to `UNK`.
pub fn extract_timexes(
    ad: &AnnotatedDocument,
    model: Option<&CrfModel>,
    ctx: Option<&NormContext>,
    cfg: &TernConfig,
) -> Result<Vec<TimexMention>, CrfError> {
    let rule_out = if cfg.use_rules {
        recognize_rules(ad, &cfg.rules)
    } else {
        Vec::new()
    };
    let ml_out = match model {
        Some(m) if cfg.use_ml => recognize_ml(ad, m)?,
        _ => Vec::new(),
    };
    let mut merged = merge_hybrid(&rule_out, &ml_out);
    if cfg.post_filter {
        merged = post_filter(merged, ad);
    }
    Ok(merged
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut m = match ctx {
                Some(c) => normalize(m, &ad.doc, c),
                None => TimexMention {
                    value: "UNK".into(),
                    ..m.clone()
                },
            };
            m.id = format!("T{}", i + 1);
            m
        })
        .collect())
}
