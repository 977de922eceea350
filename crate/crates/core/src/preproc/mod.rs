//! Tokenization, sentence splitting, stemming, POS/chunk tagging and the
//! temporal gazetteers.

mod gazetteer;
mod sentence;
mod stem;
mod tagger;
mod tokenize;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::corpus::{AnnotatedDocument, Span};

pub use gazetteer::{GazMatch, Gazetteer, GazetteerError};
pub use sentence::split_sentences;
pub use stem::stem;
pub use tagger::{BaselineTagger, PosTagger, PretaggedTagger};
pub use tokenize::{is_protected_abbreviation, tokenize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TokenKind {
    Word,
    Number,
    Symbol,
    Punctuation,
}

impl TokenKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TokenKind::Word => "Word",
            TokenKind::Number => "Number",
            TokenKind::Symbol => "Symbol",
            TokenKind::Punctuation => "Punctuation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TokenCase {
    LowerCase,
    UpperCase,
    UpperInitial,
    MixedCaps,
    AllCaps,
}

impl TokenCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            TokenCase::LowerCase => "LowerCase",
            TokenCase::UpperCase => "UpperCase",
            TokenCase::UpperInitial => "UpperInitial",
            TokenCase::MixedCaps => "MixedCaps",
            TokenCase::AllCaps => "AllCaps",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GazetteerCategory {
    ClinicalFrequency,
    Duration,
    Festival,
    Season,
    Weekday,
    Month,
    LiteralTime,
    TemporalModifier,
    OrdinalNumber,
    LiteralNumber,
}

impl GazetteerCategory {
    pub const ALL: [GazetteerCategory; 10] = [
        GazetteerCategory::ClinicalFrequency,
        GazetteerCategory::Duration,
        GazetteerCategory::Festival,
        GazetteerCategory::Season,
        GazetteerCategory::Weekday,
        GazetteerCategory::Month,
        GazetteerCategory::LiteralTime,
        GazetteerCategory::TemporalModifier,
        GazetteerCategory::OrdinalNumber,
        GazetteerCategory::LiteralNumber,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            GazetteerCategory::ClinicalFrequency => "ClinicalFrequency",
            GazetteerCategory::Duration => "Duration",
            GazetteerCategory::Festival => "Festival",
            GazetteerCategory::Season => "Season",
            GazetteerCategory::Weekday => "Weekday",
            GazetteerCategory::Month => "Month",
            GazetteerCategory::LiteralTime => "LiteralTime",
            GazetteerCategory::TemporalModifier => "TemporalModifier",
            GazetteerCategory::OrdinalNumber => "OrdinalNumber",
            GazetteerCategory::LiteralNumber => "LiteralNumber",
        }
    }
}

impl fmt::Display for GazetteerCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GazetteerCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GazetteerCategory::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown gazetteer category `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub span: Span,
    pub text: String,
    pub stem: String,
    pub pos: String,
    pub chunk: String,
    pub kind: TokenKind,
    pub case: TokenCase,
    pub gazetteer: BTreeSet<GazetteerCategory>,
}

impl Token {
    pub fn new(span: Span, text: impl Into<String>) -> Self {
        let text = text.into();
        Token {
            kind: token_kind(&text),
            case: token_case(&text),
            span,
            text,
            stem: String::new(),
            pos: String::new(),
            chunk: String::new(),
            gazetteer: BTreeSet::new(),
        }
    }

    pub fn lower(&self) -> String {
        self.text.to_lowercase()
    }

    /// Gazetteer tags joined with `|`, or `O` when untagged.
    pub fn dictionary_feature(&self) -> String {
        if self.gazetteer.is_empty() {
            "O".to_string()
        } else {
            self.gazetteer
                .iter()
                .map(|c| c.as_str())
                .collect::<Vec<_>>()
                .join("|")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub span: Span,
    pub tokens: Range<usize>,
}

const PUNCTUATION: &str = ".,;:!?()[]{}\"'-/";

pub fn token_kind(text: &str) -> TokenKind {
    let Some(first) = text.chars().next() else {
        return TokenKind::Symbol;
    };
    if first.is_alphabetic() {
        TokenKind::Word
    } else if first.is_numeric() {
        TokenKind::Number
    } else if text.chars().count() == 1 && PUNCTUATION.contains(first) {
        TokenKind::Punctuation
    } else {
        TokenKind::Symbol
    }
}

pub fn token_case(text: &str) -> TokenCase {
    let letters: Vec<char> = text.chars().filter(|c| c.is_alphabetic()).collect();
    if letters.is_empty() {
        return TokenCase::LowerCase;
    }
    let upper = letters.iter().filter(|c| c.is_uppercase()).count();
    if upper == 0 {
        TokenCase::LowerCase
    } else if letters.len() == 1 {
        TokenCase::UpperCase
    } else if upper == letters.len() {
        TokenCase::AllCaps
    } else if upper == 1 && letters[0].is_uppercase() {
        TokenCase::UpperInitial
    } else {
        TokenCase::MixedCaps
    }
}

/// Runs tokenization, sentence splitting, stemming, tagging and gazetteer
/// lookup, filling `tokens` and `sentences`.
pub fn preprocess(ad: &mut AnnotatedDocument, tagger: &dyn PosTagger, gazetteer: &Gazetteer) {
    let mut tokens = tokenize(ad.doc.text());
    for t in &mut tokens {
        t.stem = stem(&t.text);
    }
    let sentences = split_sentences(ad.doc.text(), &tokens);
    tagger.tag_document(&mut tokens, &sentences);
    gazetteer.tag(&mut tokens);
    ad.tokens = tokens;
    ad.sentences = sentences;
}

/// Index of the sentence containing token `tok`.
pub fn sentence_of(sentences: &[Sentence], tok: usize) -> Option<usize> {
    let i = sentences.partition_point(|s| s.tokens.end <= tok);
    (i < sentences.len() && sentences[i].tokens.contains(&tok)).then_some(i)
}

/// Token index range fully or partially covered by a character span.
pub fn tokens_in_span(tokens: &[Token], span: Span) -> Range<usize> {
    let start = tokens.partition_point(|t| t.span.end <= span.start);
    let end = tokens.partition_point(|t| t.span.start < span.end);
    start..end.max(start)
}
