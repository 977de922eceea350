use std::sync::OnceLock;

use regex::Regex;

use super::Token;
use crate::corpus::Span;

/// Abbreviations kept as single tokens, compared case-insensitively.
const ABBREVIATIONS: &[&str] = &[
    "q.h.s.", "q.o.d.", "q.i.d.", "t.i.d.", "b.i.d.", "p.r.n.", "q.d.", "q.h.", "p.o.", "a.m.",
    "p.m.", "e.g.", "i.e.", "mrs.", "dr.", "mr.", "ms.", "vs.", "st.", "pt.", "approx.",
];

pub fn is_protected_abbreviation(text: &str) -> bool {
    let lower = text.to_lowercase();
    ABBREVIATIONS.contains(&lower.as_str())
}

fn protected_numeric() -> &'static [Regex] {
    static RES: OnceLock<Vec<Regex>> = OnceLock::new();
    RES.get_or_init(|| {
        [
            r"^\d{3}-\d{3}-\d{4}",
            r"^\d{4}-\d{1,2}-\d{1,2}",
            r"^\d{1,2}-\d{1,2}-\d{2,4}",
            r"^\d{1,4}/\d{1,4}(?:/\d{1,4})?",
            r"^\d{1,2}:\d{2}(?::\d{2})?",
            r"^\d+\.\d+",
        ]
        .iter()
        .map(|p| Regex::new(p).unwrap())
        .collect()
    })
}

/// Splits text into tokens with character offsets. Whitespace separates
/// tokens; inside a chunk, letter runs, digit runs and single punctuation or
/// symbol characters become tokens, except that dates, times, phone numbers,
/// decimals and listed abbreviations stay whole.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].1.is_whitespace() {
            i += 1;
            continue;
        }
        let mut j = i;
        while j < chars.len() && !chars[j].1.is_whitespace() {
            j += 1;
        }
        let byte_end = chars.get(j).map(|c| c.0).unwrap_or(text.len());
        split_chunk(&text[chars[i].0..byte_end], i, &mut out);
        i = j;
    }
    out
}

fn split_chunk(chunk: &str, char_base: usize, out: &mut Vec<Token>) {
    let chars: Vec<char> = chunk.chars().collect();
    let byte_of: Vec<usize> = chunk
        .char_indices()
        .map(|(b, _)| b)
        .chain(std::iter::once(chunk.len()))
        .collect();
    let mut p = 0;
    while p < chars.len() {
        let rest = &chunk[byte_of[p]..];
        let mut len = 0;
        let c = chars[p];
        if c.is_alphabetic() && (p == 0 || !chars[p - 1].is_alphabetic()) {
            let lower = rest.to_lowercase();
            for abbr in ABBREVIATIONS {
                let n = abbr.chars().count();
                if lower.starts_with(abbr)
                    && chars.get(p + n).map_or(true, |c| !c.is_alphanumeric())
                {
                    len = n;
                    break;
                }
            }
        }
        if len == 0 && c.is_ascii_digit() {
            for re in protected_numeric() {
                if let Some(m) = re.find(rest) {
                    let n = m.as_str().chars().count();
                    if chars.get(p + n).map_or(true, |c| !c.is_ascii_digit()) {
                        len = n;
                        break;
                    }
                }
            }
        }
        if len == 0 {
            len = if c.is_alphabetic() {
                chars[p..].iter().take_while(|c| c.is_alphabetic()).count()
            } else if c.is_numeric() {
                chars[p..].iter().take_while(|c| c.is_numeric()).count()
            } else {
                1
            };
        }
        let text = &chunk[byte_of[p]..byte_of[p + len]];
        out.push(Token::new(
            Span::new(char_base + p, char_base + p + len),
            text,
        ));
        p += len;
    }
}
