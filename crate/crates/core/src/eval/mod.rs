//! Evaluation: span matching, attribute accuracies, customary and
//! closure-based TLINK scores, and the TERN primary score.

mod report;
mod spans;
mod tlinks;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::corpus::{AnnotatedDocument, EventCategory};
use crate::preproc::{split_sentences, tokenize};

pub use report::ThresholdViolation;
pub use spans::{match_spans, SpanMatch, SpanMatchMode};
pub use tlinks::{
    align_anchors, customary_counts, in_subset, link_edges, tempeval3_score, TempEvalCounts, TempEvalScore,
    TlinkSubset,
};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("mismatched corpora: {0}")]
    MismatchedCorpora(String),
}

/// `F1 = 2PR/(P+R)`, zero when `P+R = 0`.
pub fn f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
}

impl Counts {
    pub fn add(&mut self, o: &Counts) {
        self.tp += o.tp;
        self.fp += o.fp;
        self.fn_ += o.fn_;
    }

    pub fn precision(&self) -> f64 {
        if self.tp + self.fp == 0 {
            0.0
        } else {
            self.tp as f64 / (self.tp + self.fp) as f64
        }
    }

    pub fn recall(&self) -> f64 {
        if self.tp + self.fn_ == 0 {
            0.0
        } else {
            self.tp as f64 / (self.tp + self.fn_) as f64
        }
    }

    pub fn f1(&self) -> f64 {
        f1(self.precision(), self.recall())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpanScores {
    pub strict: Counts,
    pub lenient: Counts,
}

impl SpanScores {
    pub fn add(&mut self, o: &SpanScores) {
        self.strict.add(&o.strict);
        self.lenient.add(&o.lenient);
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TimexScores {
    pub spans: SpanScores,
    /// Leniently matched pairs, over which the accuracies are taken.
    pub matched: usize,
    pub type_correct: usize,
    pub value_correct: usize,
    pub modifier_correct: usize,
}

fn accuracy(n: usize, d: usize) -> f64 {
    if d == 0 {
        0.0
    } else {
        n as f64 / d as f64
    }
}

impl TimexScores {
    pub fn add(&mut self, o: &TimexScores) {
        self.spans.add(&o.spans);
        self.matched += o.matched;
        self.type_correct += o.type_correct;
        self.value_correct += o.value_correct;
        self.modifier_correct += o.modifier_correct;
    }

    pub fn type_accuracy(&self) -> f64 {
        accuracy(self.type_correct, self.matched)
    }

    pub fn value_accuracy(&self) -> f64 {
        accuracy(self.value_correct, self.matched)
    }

    pub fn modifier_accuracy(&self) -> f64 {
        accuracy(self.modifier_correct, self.matched)
    }

    pub fn primary(&self) -> f64 {
        primary_score(self.spans.lenient.f1(), self.value_accuracy())
    }
}

/// Lenient span F1 times normalized-value accuracy.
pub fn primary_score(lenient_f1: f64, value_accuracy: f64) -> f64 {
    lenient_f1 * value_accuracy
}

pub fn score_events(gold: &AnnotatedDocument, sys: &AnnotatedDocument) -> BTreeMap<EventCategory, SpanScores> {
    let mut out = BTreeMap::new();
    for cat in [EventCategory::Problem, EventCategory::Treatment, EventCategory::Test] {
        let spans = |ad: &AnnotatedDocument| -> Vec<_> {
            ad.events.iter().filter(|e| e.category == cat).map(|e| e.span).collect()
        };
        let (g, s) = (spans(gold), spans(sys));
        out.insert(
            cat,
            SpanScores {
                strict: match_spans(&g, &s, SpanMatchMode::Strict).counts,
                lenient: match_spans(&g, &s, SpanMatchMode::Lenient).counts,
            },
        );
    }
    out
}

/// Span scores plus type/value/modifier agreement on leniently matched
/// pairs.
pub fn score_tern(gold: &AnnotatedDocument, sys: &AnnotatedDocument) -> TimexScores {
    let g: Vec<_> = gold.timexes.iter().map(|t| t.span).collect();
    let s: Vec<_> = sys.timexes.iter().map(|t| t.span).collect();
    let lenient = match_spans(&g, &s, SpanMatchMode::Lenient);
    let mut out = TimexScores {
        spans: SpanScores {
            strict: match_spans(&g, &s, SpanMatchMode::Strict).counts,
            lenient: lenient.counts,
        },
        matched: lenient.pairs.len(),
        ..Default::default()
    };
    for &(gi, si) in &lenient.pairs {
        let (a, b) = (&gold.timexes[gi], &sys.timexes[si]);
        out.type_correct += usize::from(a.ttype == b.ttype);
        out.value_correct += usize::from(a.value == b.value);
        out.modifier_correct += usize::from(a.modifier == b.modifier);
    }
    out
}

#[derive(Debug, Clone, Default)]
pub struct EvalOptions {
    pub tlink_subset: Option<TlinkSubset>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvalReport {
    pub documents: usize,
    pub events: BTreeMap<EventCategory, SpanScores>,
    pub timexes: TimexScores,
    pub tlink_customary: Counts,
    pub tlink_tempeval3: TempEvalCounts,
    pub tlink_subset: Option<TlinkSubset>,
    pub warnings: Vec<String>,
}

impl EvalReport {
    pub fn events_micro(&self) -> SpanScores {
        let mut m = SpanScores::default();
        for s in self.events.values() {
            m.add(s);
        }
        m
    }

    fn merge(&mut self, o: EvalReport) {
        self.documents += o.documents;
        for (c, s) in o.events {
            self.events.entry(c).or_default().add(&s);
        }
        self.timexes.add(&o.timexes);
        self.tlink_customary.add(&o.tlink_customary);
        self.tlink_tempeval3.add(&o.tlink_tempeval3);
        self.warnings.extend(o.warnings);
    }
}

fn with_sentences(ad: &AnnotatedDocument) -> std::borrow::Cow<'_, AnnotatedDocument> {
    if !ad.sentences.is_empty() || ad.doc.text().is_empty() {
        return std::borrow::Cow::Borrowed(ad);
    }
    let mut c = ad.clone();
    c.sentences = split_sentences(c.doc.text(), &tokenize(c.doc.text()));
    std::borrow::Cow::Owned(c)
}

/// Scores one document pair. System anchors are aligned to gold anchors
/// before links are compared.
pub fn evaluate_document(gold: &AnnotatedDocument, sys: &AnnotatedDocument, opts: &EvalOptions) -> EvalReport {
    let mut r = EvalReport {
        documents: 1,
        events: score_events(gold, sys),
        timexes: score_tern(gold, sys),
        tlink_subset: opts.tlink_subset,
        ..Default::default()
    };
    let (gold, sys) = (with_sentences(gold), with_sentences(sys));
    let keep = |ad: &AnnotatedDocument, l: &crate::corpus::TLink| match opts.tlink_subset {
        Some(sub) => in_subset(ad, l, sub),
        None => true,
    };
    let align = align_anchors(&gold, &sys);
    let g = link_edges(gold.tlinks.iter().filter(|l| keep(&gold, l)), None);
    let s = link_edges(sys.tlinks.iter().filter(|l| keep(&sys, l)), Some(&align));
    r.tlink_customary = customary_counts(&g, &s);
    let te = tempeval3_score(&g, &s);
    for (side, dropped) in [("gold", &te.dropped_gold), ("system", &te.dropped_sys)] {
        for (a, b, rel) in dropped {
            r.warnings
                .push(format!("{}: contradictory {side} link {a} {rel} {b} left out", gold.doc.id));
        }
    }
    r.tlink_tempeval3 = te.counts;
    r
}

/// Micro-averaged report over a corpus. Documents are paired by id; a gold
/// document without a system counterpart scores as all false negatives.
pub fn evaluate_corpus(
    gold: &[AnnotatedDocument],
    sys: &[AnnotatedDocument],
    opts: &EvalOptions,
) -> Result<EvalReport, EvalError> {
    let by_id: HashMap<&str, &AnnotatedDocument> = sys.iter().map(|d| (d.doc.id.as_str(), d)).collect();
    if by_id.len() != sys.len() {
        return Err(EvalError::MismatchedCorpora("duplicate system document ids".into()));
    }
    let gold_ids: std::collections::HashSet<&str> = gold.iter().map(|d| d.doc.id.as_str()).collect();
    if let Some(extra) = sys.iter().find(|d| !gold_ids.contains(d.doc.id.as_str())) {
        return Err(EvalError::MismatchedCorpora(format!("system document {} has no gold counterpart", extra.doc.id)));
    }
    for g in gold {
        if let Some(s) = by_id.get(g.doc.id.as_str()) {
            if s.doc.text() != g.doc.text() {
                return Err(EvalError::MismatchedCorpora(format!("text of document {} differs", g.doc.id)));
            }
        }
    }
    let parts: Vec<EvalReport> = gold
        .par_iter()
        .map(|g| {
            let empty;
            let s = match by_id.get(g.doc.id.as_str()) {
                Some(s) => *s,
                None => {
                    empty = AnnotatedDocument::new(g.doc.clone());
                    &empty
                }
            };
            evaluate_document(g, s, opts)
        })
        .collect();
    let mut report = EvalReport {
        tlink_subset: opts.tlink_subset,
        ..Default::default()
    };
    for p in parts {
        report.merge(p);
    }
    Ok(report)
}
