//! Clinical EVENT extraction: per-category CRF decoding, label repair,
//! boundary adjustment, false-positive filtering and negation.

mod boundary;
mod label_fix;
mod negation;

use std::collections::{BTreeMap, HashSet};
use std::ops::Range;

use crate::corpus::{AnnotatedDocument, EventCategory, EventMention, Span};
use crate::crf::{
    decode_labels, encode_labels, event_matrix, parse_templates, CrfError, CrfModel, FeatureMatrix, FeatureTemplate,
    LabelSchema, SchemaKind,
};
use crate::preproc::{tokens_in_span, Token};

pub use boundary::boundary_adjust;
pub use label_fix::label_fix;
pub use negation::{negated_mentions, Direction, NegationLexicon, NegationLexiconError, NegationRule};

#[derive(Debug, Clone)]
pub struct PostprocessConfig {
    pub enable_label_fixer: bool,
    pub enable_boundary_adjust: bool,
    pub enable_fp_filter: bool,
    /// Lowercase surfaces dropped by the filter.
    pub fp_lexicon: HashSet<String>,
    pub boundary_pos_tags: HashSet<String>,
    /// Phrase types (chunk tag without the `B-`/`I-` prefix).
    pub boundary_chunk_tags: HashSet<String>,
}

impl Default for PostprocessConfig {
    fn default() -> Self {
        PostprocessConfig {
            enable_label_fixer: true,
            enable_boundary_adjust: true,
            enable_fp_filter: true,
            fp_lexicon: parse_word_list(include_str!("../../data/fp_lexicon.txt")),
            boundary_pos_tags: ["NN", "NNS", "NNP", "NNPS", "JJ", "JJR", "JJS", "DT", "PRP$", "CD"]
                .into_iter()
                .map(String::from)
                .collect(),
            boundary_chunk_tags: ["NP".to_string()].into_iter().collect(),
        }
    }
}

impl PostprocessConfig {
    /// All three sub-components switched off.
    pub fn disabled() -> Self {
        PostprocessConfig {
            enable_label_fixer: false,
            enable_boundary_adjust: false,
            enable_fp_filter: false,
            ..Self::default()
        }
    }
}

/// One entry per non-comment line, trimmed and lowercased.
pub fn parse_word_list(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

/// Keeps mentions whose lowercase surface is neither in the lexicon nor a
/// single character. Surviving mentions are returned untouched.
pub fn fp_filter(mentions: Vec<EventMention>, text: &crate::corpus::Document, cfg: &PostprocessConfig) -> Vec<EventMention> {
    mentions
        .into_iter()
        .filter(|m| {
            let s = text.slice(m.span).unwrap_or("").to_lowercase();
            s.chars().count() > 1 && !cfg.fp_lexicon.contains(&s)
        })
        .collect()
}

pub fn event_templates() -> Vec<FeatureTemplate> {
    parse_templates(include_str!("../../data/templates/event.template")).expect("bundled template parses")
}

/// Training sequences for one category, one per sentence. Gold spans that
/// overlap an earlier span of the same category are skipped.
pub fn event_training_sequences(
    ad: &AnnotatedDocument,
    category: EventCategory,
    schema: &LabelSchema,
) -> Result<Vec<(FeatureMatrix, Vec<String>)>, CrfError> {
    let mut out = Vec::with_capacity(ad.sentences.len());
    for sent in &ad.sentences {
        let toks = &ad.tokens[sent.tokens.clone()];
        let mut ranges: Vec<_> = ad
            .events
            .iter()
            .filter(|e| e.category == category)
            .map(|e| tokens_in_span(toks, e.span))
            .filter(|r| !r.is_empty())
            .collect();
        ranges.sort_by_key(|r| (r.start, r.end));
        let mut last_end = 0;
        ranges.retain(|r| {
            let keep = r.start >= last_end;
            if keep {
                last_end = r.end;
            }
            keep
        });
        out.push((event_matrix(toks), encode_labels(&ranges, toks.len(), schema)?));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct EventConfig {
    pub postprocess: PostprocessConfig,
    pub negation: NegationLexicon,
    pub detect_negation: bool,
    /// Forbid schema-invalid label transitions during decoding.
    pub constrained_decoding: bool,
}

impl Default for EventConfig {
    fn default() -> Self {
        EventConfig {
            postprocess: PostprocessConfig::default(),
            negation: NegationLexicon::bundled(),
            detect_negation: true,
            constrained_decoding: false,
        }
    }
}

fn span_of(tokens: &[Token], r: &Range<usize>) -> Span {
    Span::new(tokens[r.start].span.start, tokens[r.end - 1].span.end)
}

/// Decodes one sentence with one model and applies label fixing and
/// boundary adjustment. Returns token ranges in document coordinates.
pub fn decode_sentence(
    model: &CrfModel,
    tokens: &[Token],
    sentence: Range<usize>,
    cfg: &EventConfig,
) -> Result<Vec<Range<usize>>, CrfError> {
    let schema = model
        .schema()
        .cloned()
        .unwrap_or_else(|| LabelSchema::new(SchemaKind::BIO, "EVENT"));
    let matrix = event_matrix(&tokens[sentence.clone()]);
    let mut labels = if cfg.constrained_decoding {
        model.decode_constrained(&matrix, &schema)?
    } else {
        model.decode(&matrix)?
    };
    if cfg.postprocess.enable_label_fixer {
        labels = label_fix(&labels, &schema);
    }
    let mut out = Vec::new();
    for r in decode_labels(&labels, &schema) {
        let r = (r.start + sentence.start)..(r.end + sentence.start);
        let r = if cfg.postprocess.enable_boundary_adjust {
            boundary_adjust(r, tokens, sentence.clone(), &cfg.postprocess)
        } else {
            r
        };
        if !out.contains(&r) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Runs every category model over a preprocessed document. Categories are
/// decoded independently and overlaps across categories are kept. Returned
/// mentions are in canonical order with ids `E1`, `E2`, ...
pub fn extract_events(
    ad: &AnnotatedDocument,
    models: &BTreeMap<EventCategory, CrfModel>,
    cfg: &EventConfig,
) -> Result<Vec<EventMention>, CrfError> {
    let tokens = &ad.tokens;
    let mut found: Vec<(Range<usize>, EventCategory, usize)> = Vec::new();
    for (si, sent) in ad.sentences.iter().enumerate() {
        for (&cat, model) in models {
            for r in decode_sentence(model, tokens, sent.tokens.clone(), cfg)? {
                found.push((r, cat, si));
            }
        }
    }
    let mut mentions: Vec<(EventMention, Range<usize>, usize)> = found
        .into_iter()
        .map(|(r, cat, si)| {
            (
                EventMention {
                    id: String::new(),
                    span: span_of(tokens, &r),
                    category: cat,
                    negated: false,
                },
                r,
                si,
            )
        })
        .collect();
    if cfg.postprocess.enable_fp_filter {
        let keep: HashSet<(Span, EventCategory)> = fp_filter(
            mentions.iter().map(|m| m.0.clone()).collect(),
            &ad.doc,
            &cfg.postprocess,
        )
        .into_iter()
        .map(|m| (m.span, m.category))
        .collect();
        mentions.retain(|m| keep.contains(&(m.0.span, m.0.category)));
    }
    if cfg.detect_negation {
        for (m, r, si) in mentions.iter_mut() {
            let sent = ad.sentences[*si].tokens.clone();
            let rel = (r.start - sent.start)..(r.end - sent.start);
            m.negated = negated_mentions(&[rel], &tokens[sent], &cfg.negation)[0];
        }
    }
    let mut out: Vec<EventMention> = mentions.into_iter().map(|m| m.0).collect();
    out.sort_by_key(|m| (m.span.start, m.span.end, m.category));
    out.dedup_by_key(|m| (m.span, m.category));
    for (i, m) in out.iter_mut().enumerate() {
        m.id = format!("E{}", i + 1);
    }
    Ok(out)
}
