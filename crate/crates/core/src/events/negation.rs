use std::ops::Range;
use std::str::FromStr;

use thiserror::Error;

use crate::preproc::{tokenize, Token};

#[derive(Debug, Error)]
#[error("negation lexicon line {line}: {reason}")]
pub struct NegationLexiconError {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
    Bidirectional,
    /// Matches like a trigger but negates nothing, shielding the words it
    /// covers from shorter triggers ("no increase").
    Pseudo,
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "forward" => Ok(Direction::Forward),
            "backward" => Ok(Direction::Backward),
            "bidirectional" | "both" => Ok(Direction::Bidirectional),
            "pseudo" => Ok(Direction::Pseudo),
            _ => Err(format!("unknown direction `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegationRule {
    pub trigger: Vec<String>,
    pub direction: Direction,
    pub scope_limit: usize,
}

#[derive(Debug, Clone, Default)]
pub struct NegationLexicon {
    pub rules: Vec<NegationRule>,
    pub terminators: Vec<Vec<String>>,
}

fn words(s: &str) -> Vec<String> {
    tokenize(s).iter().map(Token::lower).collect()
}

impl NegationLexicon {
    pub fn bundled() -> Self {
        Self::parse(
            include_str!("../../data/negation_triggers.tsv"),
            include_str!("../../data/negation_terminators.txt"),
        )
        .expect("bundled negation lexicon is well formed")
    }

    /// Parses `trigger<TAB>direction<TAB>scopeLimit` lines and a terminator
    /// list, one per line.
    pub fn parse(triggers: &str, terminators: &str) -> Result<Self, NegationLexiconError> {
        let mut rules = Vec::new();
        for (n, line) in triggers.lines().enumerate() {
            let line = line.trim_end();
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| NegationLexiconError { line: n + 1, reason };
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 3 {
                return Err(err(format!("expected 3 tab-separated fields, found {}", f.len())));
            }
            let trigger = words(f[0]);
            if trigger.is_empty() {
                return Err(err("empty trigger".into()));
            }
            let direction: Direction = f[1].parse().map_err(err)?;
            let scope_limit: usize = f[2]
                .trim()
                .parse()
                .map_err(|_| err(format!("bad scope limit `{}`", f[2])))?;
            if scope_limit == 0 && direction != Direction::Pseudo {
                return Err(err("scope limit must be positive".into()));
            }
            rules.push(NegationRule {
                trigger,
                direction,
                scope_limit,
            });
        }
        // longest triggers first so matching is longest-match
        rules.sort_by(|a, b| b.trigger.len().cmp(&a.trigger.len()).then(a.trigger.cmp(&b.trigger)));
        let terminators = terminators
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(words)
            .filter(|w| !w.is_empty())
            .collect();
        Ok(NegationLexicon { rules, terminators })
    }

    fn match_at<'a>(&'a self, lower: &[String], i: usize) -> Option<&'a NegationRule> {
        self.rules
            .iter()
            .find(|r| lower[i..].starts_with(&r.trigger))
    }

    fn terminator_at(&self, lower: &[String], i: usize) -> bool {
        self.terminators.iter().any(|t| lower[i..].starts_with(t))
    }

    /// Token ranges (relative to `sentence`) under negation scope.
    pub fn scopes(&self, sentence: &[Token]) -> Vec<Range<usize>> {
        let lower: Vec<String> = sentence.iter().map(Token::lower).collect();
        let n = lower.len();
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            let Some(rule) = self.match_at(&lower, i) else {
                i += 1;
                continue;
            };
            let end = i + rule.trigger.len();
            if matches!(rule.direction, Direction::Forward | Direction::Bidirectional) {
                let mut j = end;
                while j < n && j - end < rule.scope_limit && !self.terminator_at(&lower, j) {
                    j += 1;
                }
                if j > end {
                    out.push(end..j);
                }
            }
            if matches!(rule.direction, Direction::Backward | Direction::Bidirectional) {
                let mut j = i;
                while j > 0 && i - j < rule.scope_limit && !self.terminator_at(&lower, j - 1) {
                    j -= 1;
                }
                if j < i {
                    out.push(j..i);
                }
            }
            i = end;
        }
        out
    }
}

/// Marks as negated every mention (token range relative to the sentence)
/// that intersects a negation scope.
pub fn negated_mentions(
    mentions: &[Range<usize>],
    sentence: &[Token],
    lexicon: &NegationLexicon,
) -> Vec<bool> {
    let scopes = lexicon.scopes(sentence);
    mentions
        .iter()
        .map(|m| scopes.iter().any(|s| s.start < m.end && m.start < s.end))
        .collect()
}
