use crate::corpus::{AnnotatedDocument, Span, TimexMention, TimexType};
use crate::crf::{
    decode_labels, encode_labels, parse_templates, ter_matrix, CrfError, CrfModel, FeatureMatrix, FeatureTemplate,
    LabelSchema, SchemaKind,
};
use crate::preproc::{tokens_in_span, GazetteerCategory, Token};

pub const TIMEX_ENTITY: &str = "TIMEX";

pub fn ter_schema() -> LabelSchema {
    LabelSchema::new(SchemaKind::IO, TIMEX_ENTITY)
}

pub fn ter_templates() -> Vec<FeatureTemplate> {
    parse_templates(include_str!("../../data/templates/ter.template")).expect("bundled template parses")
}

/// Type guess for a machine-learned span from its tokens.
pub fn guess_type(tokens: &[Token]) -> TimexType {
    let lower: Vec<String> = tokens.iter().map(Token::lower).collect();
    let has = |c: GazetteerCategory| tokens.iter().any(|t| t.gazetteer.contains(&c));
    let first = lower.first().map(String::as_str).unwrap_or("");
    if has(GazetteerCategory::ClinicalFrequency) || matches!(first, "every" | "each" | "q" | "once" | "twice") {
        return TimexType::Frequency;
    }
    if lower.iter().any(|w| w.contains(':') || matches!(w.as_str(), "am" | "pm" | "a.m." | "p.m." | "tonight"))
        || lower.iter().any(|w| matches!(w.as_str(), "morning" | "afternoon" | "evening" | "night") && tokens.len() > 1)
    {
        return TimexType::Time;
    }
    let relative = lower
        .iter()
        .any(|w| matches!(w.as_str(), "ago" | "later" | "earlier" | "before" | "after" | "prior"));
    if has(GazetteerCategory::Duration) && !relative {
        return TimexType::Duration;
    }
    TimexType::Date
}

/// IO-labelled training sequences, one per sentence, from gold TIMEX3 spans.
pub fn ter_training_sequences(ad: &AnnotatedDocument) -> Result<Vec<(FeatureMatrix, Vec<String>)>, CrfError> {
    let schema = ter_schema();
    let mut out = Vec::with_capacity(ad.sentences.len());
    for sent in &ad.sentences {
        let toks = &ad.tokens[sent.tokens.clone()];
        let mut ranges: Vec<_> = ad
            .timexes
            .iter()
            .map(|t| tokens_in_span(toks, t.span))
            .filter(|r| !r.is_empty())
            .collect();
        ranges.sort_by_key(|r| (r.start, r.end));
        // nested or overlapping gold spans keep the first one
        let mut last_end = 0;
        ranges.retain(|r| {
            let keep = r.start >= last_end;
            if keep {
                last_end = r.end;
            }
            keep
        });
        out.push((ter_matrix(toks), encode_labels(&ranges, toks.len(), &schema)?));
    }
    Ok(out)
}

/// Decodes every sentence with an IO model for the single TIMEX label.
pub fn recognize_ml(ad: &AnnotatedDocument, model: &CrfModel) -> Result<Vec<TimexMention>, CrfError> {
    let schema = model.schema().cloned().unwrap_or_else(ter_schema);
    let mut out = Vec::new();
    for sent in &ad.sentences {
        let toks = &ad.tokens[sent.tokens.clone()];
        if toks.is_empty() {
            continue;
        }
        let labels = model.decode(&ter_matrix(toks))?;
        for r in decode_labels(&labels, &schema) {
            out.push(TimexMention {
                id: format!("T{}", out.len() + 1),
                span: Span::new(toks[r.start].span.start, toks[r.end - 1].span.end),
                ttype: guess_type(&toks[r]),
                value: String::new(),
                modifier: Default::default(),
            });
        }
    }
    Ok(out)
}
