use std::collections::HashMap;
use std::sync::OnceLock;

use super::{Sentence, Token, TokenKind};

/// Assigns Penn-style POS tags and BIO chunk tags.
pub trait PosTagger: Send + Sync {
    fn tag_sentence(&self, tokens: &mut [Token]);

    fn tag_document(&self, tokens: &mut [Token], sentences: &[Sentence]) {
        for s in sentences {
            self.tag_sentence(&mut tokens[s.tokens.clone()]);
        }
    }
}

const LEXICON: &str = include_str!("../../data/pos_lexicon.tsv");

fn lexicon() -> &'static HashMap<String, String> {
    static LEX: OnceLock<HashMap<String, String>> = OnceLock::new();
    LEX.get_or_init(|| {
        LEXICON
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .filter_map(|l| l.split_once('\t'))
            .map(|(w, t)| (w.trim().to_lowercase(), t.trim().to_string()))
            .collect()
    })
}

/// Lexicon lookup, suffix rules and a pattern chunker.
#[derive(Debug, Clone, Default)]
pub struct BaselineTagger;

impl BaselineTagger {
    fn pos_of(tok: &Token, sentence_initial: bool) -> String {
        let lower = tok.lower();
        if let Some(t) = lexicon().get(&lower) {
            return t.clone();
        }
        match tok.kind {
            TokenKind::Number => return "CD".into(),
            TokenKind::Punctuation => {
                return match tok.text.as_str() {
                    "." | "!" | "?" => ".",
                    "," => ",",
                    ":" | ";" | "-" => ":",
                    "(" | "[" | "{" => "(",
                    ")" | "]" | "}" => ")",
                    "\"" | "'" => "''",
                    _ => "SYM",
                }
                .into()
            }
            TokenKind::Symbol => return "SYM".into(),
            TokenKind::Word => {}
        }
        let first_upper = tok.text.chars().next().is_some_and(char::is_uppercase);
        if first_upper && !sentence_initial {
            return "NNP".into();
        }
        let n = lower.chars().count();
        let suffix = |s: &str| lower.ends_with(s) && n > s.len() + 2;
        if suffix("ing") {
            "VBG"
        } else if suffix("ed") {
            "VBN"
        } else if suffix("ly") {
            "RB"
        } else if ["ous", "al", "ive", "ic", "ful", "less", "able", "ible", "ary"]
            .iter()
            .any(|s| suffix(s))
        {
            "JJ"
        } else if suffix("s") && !lower.ends_with("ss") && !lower.ends_with("is") && !lower.ends_with("us") {
            "NNS"
        } else {
            "NN"
        }
        .into()
    }
}

fn is_np_part(pos: &str) -> bool {
    pos.starts_with("NN") || pos.starts_with("JJ") || matches!(pos, "CD" | "POS" | "VBG")
}

impl PosTagger for BaselineTagger {
    fn tag_sentence(&self, tokens: &mut [Token]) {
        for (i, tok) in tokens.iter_mut().enumerate() {
            tok.pos = Self::pos_of(tok, i == 0);
        }
        let mut prev = "O";
        for tok in tokens.iter_mut() {
            let pos = tok.pos.as_str();
            let chunk = if matches!(pos, "DT" | "PRP$" | "PRP" | "WP") {
                "B-NP"
            } else if is_np_part(pos) {
                if prev == "NP" { "I-NP" } else { "B-NP" }
            } else if pos.starts_with("VB") || pos == "MD" || (pos == "RB" && prev == "VP") {
                if prev == "VP" { "I-VP" } else { "B-VP" }
            } else if matches!(pos, "IN" | "TO") {
                "B-PP"
            } else if pos.starts_with("RB") {
                "B-ADVP"
            } else {
                "O"
            };
            prev = if pos == "PRP" { "O" } else { chunk.get(2..).unwrap_or("O") };
            tok.chunk = chunk.to_string();
        }
    }
}

/// Tags supplied externally, one `(pos, chunk)` pair per document token.
#[derive(Debug, Clone)]
pub struct PretaggedTagger {
    pub tags: Vec<(String, String)>,
}

impl PretaggedTagger {
    /// Reads `token<TAB>pos<TAB>chunk` lines; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut tags = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 3 {
                return Err(format!("line {}: expected token, pos and chunk", n + 1));
            }
            tags.push((f[1].to_string(), f[2].to_string()));
        }
        Ok(PretaggedTagger { tags })
    }
}

impl PosTagger for PretaggedTagger {
    fn tag_sentence(&self, tokens: &mut [Token]) {
        for (tok, (pos, chunk)) in tokens.iter_mut().zip(&self.tags) {
            tok.pos = pos.clone();
            tok.chunk = chunk.clone();
        }
    }

    fn tag_document(&self, tokens: &mut [Token], _sentences: &[Sentence]) {
        self.tag_sentence(tokens);
        for tok in tokens.iter_mut().skip(self.tags.len()) {
            tok.pos = "NN".into();
            tok.chunk = "O".into();
        }
    }
}
