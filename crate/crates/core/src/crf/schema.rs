use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use super::CrfError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemaKind {
    IO,
    BIO,
    WBIO,
}

impl fmt::Display for SchemaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemaKind::IO => "IO",
            SchemaKind::BIO => "BIO",
            SchemaKind::WBIO => "WBIO",
        })
    }
}

impl FromStr for SchemaKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().replace('-', "").as_str() {
            "IO" => Ok(SchemaKind::IO),
            "BIO" => Ok(SchemaKind::BIO),
            "WBIO" => Ok(SchemaKind::WBIO),
            _ => Err(format!("unknown label schema `{s}`")),
        }
    }
}

/// Token label encoding for a single entity type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelSchema {
    pub kind: SchemaKind,
    pub entity: String,
}

impl LabelSchema {
    pub fn new(kind: SchemaKind, entity: impl Into<String>) -> Self {
        LabelSchema {
            kind,
            entity: entity.into(),
        }
    }

    /// Label alphabet in lexicographic order.
    pub fn labels(&self) -> Vec<String> {
        let l: &[&str] = match self.kind {
            SchemaKind::IO => &["I", "O"],
            SchemaKind::BIO => &["B", "I", "O"],
            SchemaKind::WBIO => &["B", "I", "O", "W"],
        };
        l.iter().map(|s| s.to_string()).collect()
    }

    /// Whether `cur` may follow `prev` (`None` = sentence start).
    pub fn allowed(&self, prev: Option<&str>, cur: &str) -> bool {
        match self.kind {
            SchemaKind::IO => true,
            SchemaKind::BIO => cur != "I" || matches!(prev, Some("B") | Some("I")),
            SchemaKind::WBIO => {
                let after_b_ok = prev != Some("B") || cur == "I";
                let i_ok = cur != "I" || matches!(prev, Some("B") | Some("I"));
                after_b_ok && i_ok
            }
        }
    }

    /// Whether a sequence may end on `last`.
    pub fn allowed_end(&self, last: &str) -> bool {
        !(self.kind == SchemaKind::WBIO && last == "B")
    }

    pub fn is_valid(&self, seq: &[String]) -> bool {
        let labels = self.labels();
        let mut prev: Option<&str> = None;
        for l in seq {
            if !labels.contains(l) || !self.allowed(prev, l) {
                return false;
            }
            prev = Some(l);
        }
        prev.map_or(true, |l| self.allowed_end(l))
    }
}

/// Token label sequence for non-overlapping mentions given as token ranges.
pub fn encode_labels(
    mentions: &[Range<usize>],
    n_tokens: usize,
    schema: &LabelSchema,
) -> Result<Vec<String>, CrfError> {
    let mut out = vec!["O".to_string(); n_tokens];
    let mut sorted: Vec<&Range<usize>> = mentions.iter().filter(|m| !m.is_empty()).collect();
    sorted.sort_by_key(|m| (m.start, m.end));
    let mut last_end = 0;
    for m in sorted {
        if m.start < last_end {
            return Err(CrfError::OverlappingMentions(m.start));
        }
        last_end = m.end;
        for i in m.clone() {
            out[i] = "I".into();
        }
        match schema.kind {
            SchemaKind::IO => {}
            SchemaKind::BIO => out[m.start] = "B".into(),
            SchemaKind::WBIO => out[m.start] = if m.len() == 1 { "W" } else { "B" }.into(),
        }
    }
    Ok(out)
}

/// Mentions (token ranges) spelled by a label sequence. Ill-formed pieces
/// (an `I` without a preceding `B`, a `B` without continuation under
/// W-BIO) produce no mention; repair belongs to the caller.
pub fn decode_labels(seq: &[String], schema: &LabelSchema) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < seq.len() {
        let l = seq[i].as_str();
        let run_end = |from: usize| {
            let mut j = from;
            while j < seq.len() && seq[j] == "I" {
                j += 1;
            }
            j
        };
        match (schema.kind, l) {
            (SchemaKind::IO, "I") => {
                let j = run_end(i);
                out.push(i..j);
                i = j;
            }
            (SchemaKind::BIO, "B") => {
                let j = run_end(i + 1);
                out.push(i..j);
                i = j;
            }
            (SchemaKind::WBIO, "W") => {
                out.push(i..i + 1);
                i += 1;
            }
            (SchemaKind::WBIO, "B") => {
                let j = run_end(i + 1);
                if j > i + 1 {
                    out.push(i..j);
                    i = j;
                } else {
                    i += 1;
                }
            }
            (_, "I") => i = run_end(i),
            _ => i += 1,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn encodings() {
        let w = LabelSchema::new(SchemaKind::WBIO, "Test");
        assert_eq!(encode_labels(&[1..2], 3, &w).unwrap(), seq("O W O"));
        let b = LabelSchema::new(SchemaKind::BIO, "Problem");
        assert_eq!(encode_labels(&[0..3], 3, &b).unwrap(), seq("B I I"));
        assert!(matches!(
            encode_labels(&[0..2, 1..3], 3, &b),
            Err(CrfError::OverlappingMentions(1))
        ));
    }

    #[test]
    fn decodings() {
        let io = LabelSchema::new(SchemaKind::IO, "Timex");
        assert_eq!(decode_labels(&seq("I I"), &io), [0..2]);
        let b = LabelSchema::new(SchemaKind::BIO, "Problem");
        assert_eq!(decode_labels(&seq("O I B I B"), &b), [2..4, 4..5]);
        let w = LabelSchema::new(SchemaKind::WBIO, "Test");
        assert_eq!(decode_labels(&seq("W B I O B O"), &w), [0..1, 1..3]);
    }

    #[test]
    fn validity() {
        let w = LabelSchema::new(SchemaKind::WBIO, "Test");
        assert!(w.is_valid(&seq("W B I I O W")));
        assert!(!w.is_valid(&seq("B O")));
        assert!(!w.is_valid(&seq("O B")));
        assert!(!w.is_valid(&seq("W I")));
        let b = LabelSchema::new(SchemaKind::BIO, "Problem");
        assert!(b.is_valid(&seq("B B I O")));
        assert!(!b.is_valid(&seq("I")));
        assert!(!b.is_valid(&seq("O I")));
    }
}
