use std::path::Path;

use thiserror::Error;

use crate::corpus::{AnnotatedDocument, EventCategory, LinkOrigin, Relation, Span, TLink, TimexType};
use crate::preproc::tokens_in_span;

#[derive(Debug, Error)]
pub enum IntraRuleError {
    #[error("intra rule line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("reading intra rules: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntraKind {
    Coordinate,
    Prepositional,
    Other,
}

impl IntraKind {
    pub fn origin(self) -> LinkOrigin {
        match self {
            IntraKind::Coordinate => LinkOrigin::Coordinate,
            IntraKind::Prepositional => LinkOrigin::Prepositional,
            IntraKind::Other => LinkOrigin::Other,
        }
    }
}

/// Type of an anchor as seen by the rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchorType {
    Event(EventCategory),
    Timex(TimexType),
}

/// A set of anchor types written as `PROBLEM|DATE`, `EVENT`, `TIMEX` or
/// `ANY`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypePattern(Vec<String>);

const TYPE_NAMES: &[&str] = &[
    "PROBLEM", "TREATMENT", "TEST", "EVENT", "DATE", "TIME", "DURATION", "FREQUENCY", "TIMEX", "ANY",
];

impl TypePattern {
    fn parse(s: &str) -> Option<Self> {
        let parts: Vec<String> = s.split('|').map(str::to_string).collect();
        parts
            .iter()
            .all(|p| TYPE_NAMES.contains(&p.as_str()))
            .then_some(TypePattern(parts))
    }

    pub fn matches(&self, t: AnchorType) -> bool {
        self.0.iter().any(|p| match (p.as_str(), t) {
            ("ANY", _) => true,
            ("EVENT", AnchorType::Event(_)) | ("TIMEX", AnchorType::Timex(_)) => true,
            (name, AnchorType::Event(c)) => c.as_str().eq_ignore_ascii_case(name),
            (name, AnchorType::Timex(t)) => t.as_str().eq_ignore_ascii_case(name),
        })
    }
}

const DETERMINERS: &[&str] = &[
    "a", "an", "the", "his", "her", "their", "its", "this", "that", "these", "those", "some", "any", "no",
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum ItemPattern {
    Words(Vec<String>),
    Anchor(TypePattern),
    Det,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ConnectorItem {
    pattern: ItemPattern,
    optional: bool,
}

/// Token (or intervening anchor) between two candidate anchors.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Between {
    Word(String),
    Anchor(AnchorType),
}

impl ConnectorItem {
    fn matches(&self, b: &Between) -> bool {
        match (&self.pattern, b) {
            (ItemPattern::Words(ws), Between::Word(w)) => ws.iter().any(|x| x == w),
            (ItemPattern::Det, Between::Word(w)) => DETERMINERS.contains(&w.as_str()),
            (ItemPattern::Anchor(p), Between::Anchor(t)) => p.matches(*t),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntraRule {
    pub id: String,
    pub kind: IntraKind,
    pub left: TypePattern,
    pub right: TypePattern,
    connector: Vec<ConnectorItem>,
    pub relation: Relation,
    /// Link from the left anchor to the right one (else right to left).
    pub left_to_right: bool,
    pub max_token_distance: usize,
    /// Intervening anchors the connector spells out.
    pub max_intervening_anchors: usize,
}

impl IntraRule {
    fn connector_matches(&self, between: &[Between]) -> bool {
        let mut reach = vec![0usize];
        for item in &self.connector {
            let mut next = Vec::new();
            for &p in &reach {
                if item.optional && !next.contains(&p) {
                    next.push(p);
                }
                if p < between.len() && item.matches(&between[p]) && !next.contains(&(p + 1)) {
                    next.push(p + 1);
                }
            }
            if next.is_empty() {
                return false;
            }
            reach = next;
        }
        reach.contains(&between.len())
    }
}

#[derive(Debug, Clone)]
pub struct IntraRules {
    /// In precedence order: by kind, then file order.
    rules: Vec<IntraRule>,
}

fn parse_connector(s: &str) -> Result<Vec<ConnectorItem>, String> {
    if s.trim() == "_" {
        return Ok(Vec::new());
    }
    s.split_whitespace()
        .map(|item| {
            let (optional, body) = match item.strip_prefix('?') {
                Some(rest) if !rest.is_empty() => (true, rest),
                _ => (false, item),
            };
            let pattern = if body == "DET" {
                ItemPattern::Det
            } else if let Some(t) = TypePattern::parse(body) {
                ItemPattern::Anchor(t)
            } else if body.chars().any(|c| c.is_ascii_uppercase()) {
                return Err(format!("unknown anchor type in `{body}`"));
            } else {
                ItemPattern::Words(body.split('|').map(str::to_string).collect())
            };
            Ok(ConnectorItem { pattern, optional })
        })
        .collect()
}

impl IntraRules {
    pub fn bundled() -> Self {
        Self::parse(include_str!("../../data/intra_rules.tsv")).expect("bundled intra rules parse")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, IntraRuleError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self, IntraRuleError> {
        let mut rules = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| IntraRuleError::Syntax { line: n + 1, reason };
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 8 {
                return Err(err(format!("expected 8 tab-separated fields, found {}", f.len())));
            }
            let kind = match f[1] {
                "Coordinate" => IntraKind::Coordinate,
                "Prepositional" => IntraKind::Prepositional,
                "Other" => IntraKind::Other,
                k => return Err(err(format!("unknown kind `{k}`"))),
            };
            let left = TypePattern::parse(f[2]).ok_or_else(|| err(format!("bad left type `{}`", f[2])))?;
            let right = TypePattern::parse(f[4]).ok_or_else(|| err(format!("bad right type `{}`", f[4])))?;
            let connector = parse_connector(f[3]).map_err(err)?;
            if connector.is_empty() && kind != IntraKind::Other {
                return Err(err("coordinate and prepositional rules need a connector".into()));
            }
            let relation: Relation = f[5].parse().map_err(|_| err(format!("bad relation `{}`", f[5])))?;
            let left_to_right = match f[6] {
                "l2r" => true,
                "r2l" => false,
                d => return Err(err(format!("bad direction `{d}`"))),
            };
            let max_token_distance: usize = f[7]
                .trim()
                .parse()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| err(format!("bad maxDist `{}`", f[7])))?;
            let max_intervening_anchors = connector
                .iter()
                .filter(|c| matches!(c.pattern, ItemPattern::Anchor(_)))
                .count();
            rules.push(IntraRule {
                id: f[0].to_string(),
                kind,
                left,
                right,
                connector,
                relation,
                left_to_right,
                max_token_distance,
                max_intervening_anchors,
            });
        }
        rules.sort_by_key(|r| r.kind);
        Ok(IntraRules { rules })
    }

    pub fn rules(&self) -> &[IntraRule] {
        &self.rules
    }

    fn max_intervening(&self) -> usize {
        self.rules.iter().map(|r| r.max_intervening_anchors).max().unwrap_or(0)
    }
}

struct Anchor {
    id: String,
    span: Span,
    ty: AnchorType,
    tokens: std::ops::Range<usize>,
}

/// Intra-sentence links. Within each sentence, anchors are ordered by
/// offset; every pair separated by at most as many anchors as the rules
/// spell out is tried against the rules in precedence order and the first
/// match emits a link. Link ids are left empty.
pub fn extract_intra(ad: &AnnotatedDocument, rules: &IntraRules) -> Vec<TLink> {
    let mut out = Vec::new();
    let max_between = rules.max_intervening();
    for sent in &ad.sentences {
        let toks = &ad.tokens[sent.tokens.clone()];
        let inside = |s: Span| s.start >= sent.span.start && s.end <= sent.span.end;
        let mut anchors: Vec<Anchor> = ad
            .events
            .iter()
            .filter(|e| inside(e.span))
            .map(|e| (e.id.clone(), e.span, AnchorType::Event(e.category)))
            .chain(
                ad.timexes
                    .iter()
                    .filter(|t| inside(t.span))
                    .map(|t| (t.id.clone(), t.span, AnchorType::Timex(t.ttype))),
            )
            .map(|(id, span, ty)| Anchor {
                id,
                tokens: tokens_in_span(toks, span),
                span,
                ty,
            })
            .filter(|a| !a.tokens.is_empty())
            .collect();
        anchors.sort_by_key(|a| (a.span.start, a.span.end));
        for i in 0..anchors.len() {
            for j in i + 1..anchors.len().min(i + 2 + max_between) {
                let (l, r) = (&anchors[i], &anchors[j]);
                if l.tokens.end > r.tokens.start {
                    continue;
                }
                let mids = &anchors[i + 1..j];
                if mids
                    .iter()
                    .any(|m| m.tokens.start < l.tokens.end || m.tokens.end > r.tokens.start)
                {
                    continue;
                }
                let mut between = Vec::new();
                let mut k = l.tokens.end;
                let mut mi = 0;
                while k < r.tokens.start {
                    if mi < mids.len() && mids[mi].tokens.start == k {
                        between.push(Between::Anchor(mids[mi].ty));
                        k = mids[mi].tokens.end;
                        mi += 1;
                    } else {
                        between.push(Between::Word(toks[k].lower()));
                        k += 1;
                    }
                }
                if mi < mids.len() {
                    continue;
                }
                let distance = r.tokens.start - l.tokens.end;
                let hit = rules.rules.iter().find(|rule| {
                    rule.max_intervening_anchors == mids.len()
                        && distance <= rule.max_token_distance
                        && rule.left.matches(l.ty)
                        && rule.right.matches(r.ty)
                        && rule.connector_matches(&between)
                });
                if let Some(rule) = hit {
                    let (s, t) = if rule.left_to_right { (l, r) } else { (r, l) };
                    out.push(TLink {
                        id: String::new(),
                        source: s.id.clone(),
                        target: t.id.clone(),
                        relation: rule.relation,
                        origin: rule.kind.origin(),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_rules_parse_in_precedence_order() {
        let r = IntraRules::bundled();
        assert!(r.rules().windows(2).all(|w| w[0].kind <= w[1].kind));
        assert_eq!(r.max_intervening(), 1);
    }

    #[test]
    fn connector_language() {
        let r = IntraRules::parse("X\tOther\tTEST\tshowed ?DET\tPROBLEM\tBefore\tl2r\t3\n").unwrap();
        let rule = &r.rules()[0];
        let w = |s: &str| Between::Word(s.into());
        assert!(rule.connector_matches(&[w("showed")]));
        assert!(rule.connector_matches(&[w("showed"), w("a")]));
        assert!(!rule.connector_matches(&[w("showed"), w("big")]));
        assert!(IntraRules::parse("X\tCoordinate\tTEST\t_\tPROBLEM\tBefore\tl2r\t3\n").is_err());
        assert!(IntraRules::parse("X\tOther\tTEST\tFOO\tPROBLEM\tBefore\tl2r\t3\n").is_err());
    }
}
