//! Documents, annotations and the standoff file format.
//!
//! All offsets are Unicode scalar-value offsets into [`Document::text`], not
//! byte offsets. Section-time anchors are pseudo-mentions with the reserved
//! ids [`ST_ADMISSION`], [`ST_DISCHARGE`] and [`ST_DCT`].

pub mod standoff;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::preproc::{Sentence, Token};

pub use standoff::{parse_standoff, read_standoff, to_standoff_string, write_standoff};

/// Anchor id of the admission section time.
pub const ST_ADMISSION: &str = "ST-ADMISSION";
/// Anchor id of the discharge section time.
pub const ST_DISCHARGE: &str = "ST-DISCHARGE";
/// Anchor id of the document creation time.
pub const ST_DCT: &str = "ST-DCT";

/// Meta key holding the admission date.
pub const META_ADMISSION: &str = "admission";
/// Meta key holding the discharge date.
pub const META_DISCHARGE: &str = "discharge";
/// Meta key holding the document creation time.
pub const META_DCT: &str = "dct";

pub fn is_sectime_id(id: &str) -> bool {
    matches!(id, ST_ADMISSION | ST_DISCHARGE | ST_DCT)
}

/// The meta key backing a section-time anchor.
pub fn sectime_meta_key(id: &str) -> Option<&'static str> {
    match id {
        ST_ADMISSION => Some(META_ADMISSION),
        ST_DISCHARGE => Some(META_DISCHARGE),
        ST_DCT => Some(META_DCT),
        _ => None,
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("validation error for `{id}`: {constraint}")]
    Validation { id: String, constraint: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CorpusError {
    pub(crate) fn validation(id: impl Into<String>, constraint: impl Into<String>) -> Self {
        CorpusError::Validation {
            id: id.into(),
            constraint: constraint.into(),
        }
    }
}

/// Half-open character range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end, "span start after end");
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }

    pub fn overlap_len(&self, other: &Span) -> usize {
        let start = self.start.max(other.start);
        let end = self.end.min(other.end);
        end.saturating_sub(start)
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn union(&self, other: &Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.start, self.end)
    }
}

/// Raw narrative plus document-level metadata.
#[derive(Debug, Clone)]
pub struct Document {
    pub id: String,
    text: String,
    pub meta: BTreeMap<String, String>,
    // byte offset of every char, plus text.len() as sentinel
    char_bytes: Vec<usize>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.text == other.text && self.meta == other.meta
    }
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        let text = text.into();
        let mut char_bytes: Vec<usize> = text.char_indices().map(|(b, _)| b).collect();
        char_bytes.push(text.len());
        Document {
            id: id.into(),
            text,
            meta: BTreeMap::new(),
            char_bytes,
        }
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Length of the text in characters.
    pub fn char_len(&self) -> usize {
        self.char_bytes.len() - 1
    }

    /// Slice of the text covered by `span`, or `None` when out of range.
    pub fn slice(&self, span: Span) -> Option<&str> {
        if span.start > span.end || span.end > self.char_len() {
            return None;
        }
        Some(&self.text[self.char_bytes[span.start]..self.char_bytes[span.end]])
    }

    /// Char offset of a byte offset that lies on a char boundary.
    pub fn char_offset(&self, byte: usize) -> usize {
        self.char_bytes.partition_point(|&b| b < byte)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventCategory {
    Problem,
    Treatment,
    Test,
}

impl EventCategory {
    pub const ALL: [EventCategory; 3] = [
        EventCategory::Problem,
        EventCategory::Treatment,
        EventCategory::Test,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EventCategory::Problem => "Problem",
            EventCategory::Treatment => "Treatment",
            EventCategory::Test => "Test",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TimexType {
    Date,
    Time,
    Duration,
    Frequency,
}

impl TimexType {
    pub const ALL: [TimexType; 4] = [
        TimexType::Date,
        TimexType::Time,
        TimexType::Duration,
        TimexType::Frequency,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TimexType::Date => "Date",
            TimexType::Time => "Time",
            TimexType::Duration => "Duration",
            TimexType::Frequency => "Frequency",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Modifier {
    #[default]
    NA,
    Approx,
    More,
    Less,
    Start,
    Mid,
    End,
}

impl Modifier {
    pub fn as_str(&self) -> &'static str {
        match self {
            Modifier::NA => "NA",
            Modifier::Approx => "Approx",
            Modifier::More => "More",
            Modifier::Less => "Less",
            Modifier::Start => "Start",
            Modifier::Mid => "Mid",
            Modifier::End => "End",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Before,
    After,
    Overlap,
}

impl Relation {
    pub fn inverse(self) -> Relation {
        match self {
            Relation::Before => Relation::After,
            Relation::After => Relation::Before,
            Relation::Overlap => Relation::Overlap,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::Before => "Before",
            Relation::After => "After",
            Relation::Overlap => "Overlap",
        }
    }
}

/// Which extraction stage produced a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkOrigin {
    Coordinate,
    Prepositional,
    Other,
    Sectime,
    Coref,
    Closure,
}

impl LinkOrigin {
    pub fn as_str(&self) -> &'static str {
        match self {
            LinkOrigin::Coordinate => "Coordinate",
            LinkOrigin::Prepositional => "Prepositional",
            LinkOrigin::Other => "Other",
            LinkOrigin::Sectime => "Sectime",
            LinkOrigin::Coref => "Coref",
            LinkOrigin::Closure => "Closure",
        }
    }

    /// Pipeline stage order: intra-sentence, then section time, then
    /// co-reference, then closure.
    pub fn stage(&self) -> u8 {
        match self {
            LinkOrigin::Coordinate | LinkOrigin::Prepositional | LinkOrigin::Other => 0,
            LinkOrigin::Sectime => 1,
            LinkOrigin::Coref => 2,
            LinkOrigin::Closure => 3,
        }
    }

    pub fn is_intra(&self) -> bool {
        self.stage() == 0
    }
}

macro_rules! impl_enum_text {
    ($ty:ty, $what:literal, [$($variant:expr),* $(,)?]) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                [$($variant),*]
                    .into_iter()
                    .find(|v: &$ty| v.as_str().eq_ignore_ascii_case(s))
                    .ok_or_else(|| format!("unknown {} `{}`", $what, s))
            }
        }
    };
}

impl_enum_text!(EventCategory, "event category", [
    EventCategory::Problem, EventCategory::Treatment, EventCategory::Test
]);
impl_enum_text!(TimexType, "timex type", [
    TimexType::Date, TimexType::Time, TimexType::Duration, TimexType::Frequency
]);
impl_enum_text!(Modifier, "modifier", [
    Modifier::NA, Modifier::Approx, Modifier::More, Modifier::Less,
    Modifier::Start, Modifier::Mid, Modifier::End
]);
impl_enum_text!(Relation, "relation", [Relation::Before, Relation::After, Relation::Overlap]);
impl_enum_text!(LinkOrigin, "link origin", [
    LinkOrigin::Coordinate, LinkOrigin::Prepositional, LinkOrigin::Other,
    LinkOrigin::Sectime, LinkOrigin::Coref, LinkOrigin::Closure
]);

#[derive(Debug, Clone, PartialEq)]
pub struct EventMention {
    pub id: String,
    pub span: Span,
    pub category: EventCategory,
    pub negated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimexMention {
    pub id: String,
    pub span: Span,
    pub ttype: TimexType,
    pub value: String,
    pub modifier: Modifier,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TLink {
    pub id: String,
    pub source: String,
    pub target: String,
    pub relation: Relation,
    pub origin: LinkOrigin,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub label: String,
    pub span: Span,
}

/// A document with its analysis layers. Tokens, sentences and sections are
/// derived from the text and are not persisted by the standoff format.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnotatedDocument {
    pub doc: Document,
    pub tokens: Vec<Token>,
    pub sentences: Vec<Sentence>,
    pub events: Vec<EventMention>,
    pub timexes: Vec<TimexMention>,
    pub tlinks: Vec<TLink>,
    pub sections: Vec<Section>,
}

impl AnnotatedDocument {
    pub fn new(doc: Document) -> Self {
        AnnotatedDocument {
            doc,
            tokens: Vec::new(),
            sentences: Vec::new(),
            events: Vec::new(),
            timexes: Vec::new(),
            tlinks: Vec::new(),
            sections: Vec::new(),
        }
    }

    pub fn event(&self, id: &str) -> Option<&EventMention> {
        self.events.iter().find(|e| e.id == id)
    }

    pub fn timex(&self, id: &str) -> Option<&TimexMention> {
        self.timexes.iter().find(|t| t.id == id)
    }

    /// Surface string of an annotation span.
    pub fn surface(&self, span: Span) -> &str {
        self.doc.slice(span).unwrap_or("")
    }

    /// Checks every structural invariant of the annotation layers.
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.doc.id.is_empty() || self.doc.id.chars().any(char::is_whitespace) {
            return Err(CorpusError::validation(
                &self.doc.id,
                "document id must be non-empty and contain no whitespace",
            ));
        }
        let len = self.doc.char_len();
        let mut ids: HashSet<String> = HashSet::new();
        let mut claim = |id: &str| -> Result<(), CorpusError> {
            if id.is_empty() || id.chars().any(char::is_whitespace) {
                return Err(CorpusError::validation(id, "ids must be non-empty without whitespace"));
            }
            if is_sectime_id(id) {
                return Err(CorpusError::validation(id, "id is reserved for section times"));
            }
            if !ids.insert(id.to_string()) {
                return Err(CorpusError::validation(id, "duplicate id"));
            }
            Ok(())
        };
        let check_span = |id: &str, span: Span| -> Result<(), CorpusError> {
            if span.start >= span.end {
                return Err(CorpusError::validation(id, format!("empty or inverted span {span}")));
            }
            if span.end > len {
                return Err(CorpusError::validation(
                    id,
                    format!("span {span} exceeds text length {len}"),
                ));
            }
            Ok(())
        };
        for e in &self.events {
            claim(&e.id)?;
            check_span(&e.id, e.span)?;
            let surface = self.surface(e.span);
            let first = surface.chars().next().unwrap();
            let last = surface.chars().last().unwrap();
            if first.is_whitespace() || last.is_whitespace() {
                return Err(CorpusError::validation(&e.id, "event span has whitespace at a boundary"));
            }
        }
        for t in &self.timexes {
            claim(&t.id)?;
            check_span(&t.id, t.span)?;
            if !timex_value_is_valid(t.ttype, &t.value) {
                return Err(CorpusError::validation(
                    &t.id,
                    format!("value `{}` does not match the {} grammar", t.value, t.ttype),
                ));
            }
        }
        for l in &self.tlinks {
            claim(&l.id)?;
        }
        let anchors: HashSet<&str> = self
            .events
            .iter()
            .map(|e| e.id.as_str())
            .chain(self.timexes.iter().map(|t| t.id.as_str()))
            .collect();
        for l in &self.tlinks {
            for end in [&l.source, &l.target] {
                if !anchors.contains(end.as_str()) && !is_sectime_id(end) {
                    return Err(CorpusError::validation(
                        &l.id,
                        format!("anchor `{end}` does not resolve"),
                    ));
                }
            }
            if l.source == l.target {
                return Err(CorpusError::validation(&l.id, "source equals target"));
            }
        }
        Ok(())
    }

    /// Sorts annotations into canonical order: mentions by (start, end, id),
    /// links by id.
    pub fn canonicalize(&mut self) {
        self.events
            .sort_by(|a, b| (a.span.start, a.span.end).cmp(&(b.span.start, b.span.end)).then_with(|| cmp_ids(&a.id, &b.id)));
        self.timexes
            .sort_by(|a, b| (a.span.start, a.span.end).cmp(&(b.span.start, b.span.end)).then_with(|| cmp_ids(&a.id, &b.id)));
        self.tlinks.sort_by(|a, b| cmp_ids(&a.id, &b.id));
    }
}

/// Natural id order: alphabetic prefix, then numeric suffix, then raw text.
pub fn cmp_ids(a: &str, b: &str) -> Ordering {
    fn split(id: &str) -> (&str, Option<u64>) {
        let digits = id.len() - id.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (prefix, num) = id.split_at(id.len() - digits);
        (prefix, num.parse().ok())
    }
    let (pa, na) = split(a);
    let (pb, nb) = split(b);
    pa.cmp(pb).then(na.cmp(&nb)).then_with(|| a.cmp(b))
}

/// Checks a TIMEX3 value against the grammar of its type.
///
/// Dates are `YYYY[-MM[-DD]]` or `YYYY-{SP,SU,FA,WI}`; times are a full date
/// followed by `Thh:mm` or a part-of-day code; durations are ISO-8601
/// periods (`X` allowed as an unknown quantity); frequencies are `R[n][/]`
/// followed by a period whose hour and minute units may omit the `T`
/// designator (`RP12H`). `UNK` is accepted for every type.
pub fn timex_value_is_valid(ttype: TimexType, value: &str) -> bool {
    use std::sync::OnceLock;
    static GRAMMARS: OnceLock<[regex::Regex; 4]> = OnceLock::new();
    if value == "UNK" {
        return true;
    }
    let g = GRAMMARS.get_or_init(|| {
        const PERIOD: &str = r"P(?:(?:[0-9]+(?:\.[0-9]+)?|X)W|(?:(?:[0-9]+(?:\.[0-9]+)?|X)Y)?(?:(?:[0-9]+(?:\.[0-9]+)?|X)M)?(?:(?:[0-9]+(?:\.[0-9]+)?|X)D)?(?:T(?:(?:[0-9]+(?:\.[0-9]+)?|X)H)?(?:(?:[0-9]+(?:\.[0-9]+)?|X)M)?(?:(?:[0-9]+(?:\.[0-9]+)?|X)S)?)?)";
        [
            regex::Regex::new(r"^[0-9]{4}(?:-(?:SP|SU|FA|WI)|-(?:0[1-9]|1[0-2])(?:-(?:0[1-9]|[12][0-9]|3[01]))?)?$").unwrap(),
            regex::Regex::new(r"^[0-9]{4}-(?:0[1-9]|1[0-2])-(?:0[1-9]|[12][0-9]|3[01])T(?:(?:[01][0-9]|2[0-3]):[0-5][0-9]|MO|AF|EV|NI)$").unwrap(),
            regex::Regex::new(&format!("^{PERIOD}$")).unwrap(),
            regex::Regex::new(r"^R[0-9]*/?P(?:T?(?:[0-9]+(?:\.[0-9]+)?|X)[YMWDHS])+$").unwrap(),
        ]
    });
    let re = match ttype {
        TimexType::Date => &g[0],
        TimexType::Time => &g[1],
        TimexType::Duration => &g[2],
        TimexType::Frequency => &g[3],
    };
    // a bare "P" or "PT" carries no quantity
    re.is_match(value) && !value.ends_with('P') && !value.ends_with('T')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_grammar() {
        assert!(timex_value_is_valid(TimexType::Date, "1988-01-04"));
        assert!(timex_value_is_valid(TimexType::Date, "1988-01"));
        assert!(timex_value_is_valid(TimexType::Date, "1988"));
        assert!(timex_value_is_valid(TimexType::Date, "2012-SU"));
        assert!(!timex_value_is_valid(TimexType::Date, "1988-13-01"));
        assert!(!timex_value_is_valid(TimexType::Date, "88-01-01"));
        assert!(timex_value_is_valid(TimexType::Duration, "P2W"));
        assert!(timex_value_is_valid(TimexType::Duration, "PT12H"));
        assert!(timex_value_is_valid(TimexType::Duration, "P1Y6M"));
        assert!(timex_value_is_valid(TimexType::Duration, "PXD"));
        assert!(!timex_value_is_valid(TimexType::Duration, "P"));
        assert!(!timex_value_is_valid(TimexType::Duration, "2W"));
        assert!(timex_value_is_valid(TimexType::Frequency, "RP24H"));
        assert!(timex_value_is_valid(TimexType::Frequency, "R2P1W"));
        assert!(timex_value_is_valid(TimexType::Frequency, "R/P1D"));
        assert!(timex_value_is_valid(TimexType::Time, "2012-03-10T14:23"));
        assert!(timex_value_is_valid(TimexType::Time, "2012-03-10TMO"));
        assert!(timex_value_is_valid(TimexType::Time, "UNK"));
    }

    #[test]
    fn natural_id_order() {
        assert_eq!(cmp_ids("E2", "E10"), Ordering::Less);
        assert_eq!(cmp_ids("E10", "T1"), Ordering::Less);
        assert_eq!(cmp_ids("L1", "L1"), Ordering::Equal);
    }

    #[test]
    fn char_offsets_are_scalar_values() {
        let doc = Document::new("d", "naïve pain");
        assert_eq!(doc.char_len(), 10);
        assert_eq!(doc.slice(Span::new(6, 10)), Some("pain"));
        assert_eq!(doc.slice(Span::new(0, 5)), Some("naïve"));
        assert_eq!(doc.slice(Span::new(6, 11)), None);
    }

    #[test]
    fn dangling_anchor_is_rejected() {
        let mut ad = AnnotatedDocument::new(Document::new("d", "chest pain"));
        ad.events.push(EventMention {
            id: "E1".into(),
            span: Span::new(0, 10),
            category: EventCategory::Problem,
            negated: false,
        });
        ad.tlinks.push(TLink {
            id: "L1".into(),
            source: "E1".into(),
            target: "E9".into(),
            relation: Relation::Before,
            origin: LinkOrigin::Other,
        });
        assert!(matches!(ad.validate(), Err(CorpusError::Validation { .. })));
        ad.tlinks[0].target = ST_DCT.into();
        ad.validate().unwrap();
    }
}
