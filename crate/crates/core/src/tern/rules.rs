use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use regex::Regex;
use thiserror::Error;

use crate::corpus::{AnnotatedDocument, Span, TimexMention, TimexType};
use crate::preproc::{GazetteerCategory, Token, TokenKind};

#[derive(Debug, Error)]
pub enum RuleCompileError {
    #[error("rule {id} (line {line}): {reason}")]
    Syntax { id: String, line: usize, reason: String },
    #[error("reading rule file: {0}")]
    Io(#[from] std::io::Error),
}

impl RuleCompileError {
    /// Id of the offending rule (`?` when the line had no usable id).
    pub fn id(&self) -> &str {
        match self {
            RuleCompileError::Syntax { id, .. } => id,
            RuleCompileError::Io(_) => "?",
        }
    }
}

/// What a rule keys on: gazetteer categories, surface regexes, or literal
/// word lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    Semantic,
    Pattern,
    Lexical,
}

const QTY_WORDS: &[&str] = &["a", "an", "several", "few", "couple", "many", "multiple"];
pub(crate) const APPROX_WORDS: &[&str] = &[
    "about",
    "approximately",
    "around",
    "nearly",
    "almost",
    "roughly",
    "approx",
    "~",
    "over",
    "under",
];

#[derive(Debug, Clone)]
enum Atom {
    Re(Regex),
    Lit(Vec<String>),
    Gaz(Vec<GazetteerCategory>),
    Kind(TokenKind),
    Num,
    Qty,
    Approx,
}

fn is_number_token(t: &Token) -> bool {
    let digits = t.kind == TokenKind::Number
        && t.text.chars().all(|c| c.is_ascii_digit() || c == '.')
        && t.text.chars().next().is_some_and(|c| c.is_ascii_digit());
    digits
        || t.gazetteer.contains(&GazetteerCategory::LiteralNumber)
        || t.gazetteer.contains(&GazetteerCategory::OrdinalNumber)
}

impl Atom {
    fn matches(&self, t: &Token, lower: &str) -> bool {
        match self {
            Atom::Re(re) => re.is_match(&t.text),
            Atom::Lit(words) => words.iter().any(|w| w == lower),
            Atom::Gaz(cats) => cats.iter().any(|c| t.gazetteer.contains(c)),
            Atom::Kind(k) => t.kind == *k,
            Atom::Num => is_number_token(t),
            Atom::Qty => is_number_token(t) || QTY_WORDS.contains(&lower),
            Atom::Approx => APPROX_WORDS.contains(&lower),
        }
    }
}

#[derive(Debug, Clone)]
struct Matcher(Vec<Atom>);

impl Matcher {
    fn matches(&self, t: &Token) -> bool {
        let lower = t.lower();
        self.0.iter().all(|a| a.matches(t, &lower))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quant {
    One,
    Opt,
    Plus,
    Star,
}

#[derive(Debug, Clone)]
struct Step {
    matcher: Matcher,
    quant: Quant,
}

#[derive(Debug, Clone)]
pub struct TerRule {
    pub id: String,
    pub priority: i32,
    pub ttype: TimexType,
    pub kind: RuleKind,
    pub pattern: String,
    preceding: Option<Matcher>,
    steps: Vec<Step>,
}

fn parse_atom(s: &str) -> Result<Atom, String> {
    let (head, arg) = match s.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (s, None),
    };
    let list = |a: &str| -> Vec<String> { a.split(',').map(str::to_lowercase).collect() };
    match (head, arg) {
        ("re", Some(a)) if !a.is_empty() => Regex::new(&format!("(?i)^(?:{a})$"))
            .map(Atom::Re)
            .map_err(|e| format!("bad regex `{a}`: {e}")),
        ("lit", Some(a)) if !a.is_empty() => Ok(Atom::Lit(list(a))),
        ("gaz", Some(a)) if !a.is_empty() => a
            .split(',')
            .map(|c| c.parse::<GazetteerCategory>())
            .collect::<Result<Vec<_>, _>>()
            .map(Atom::Gaz),
        ("kind", Some(a)) => match a.to_ascii_lowercase().as_str() {
            "word" => Ok(Atom::Kind(TokenKind::Word)),
            "number" => Ok(Atom::Kind(TokenKind::Number)),
            "symbol" => Ok(Atom::Kind(TokenKind::Symbol)),
            "punctuation" => Ok(Atom::Kind(TokenKind::Punctuation)),
            _ => Err(format!("unknown token kind `{a}`")),
        },
        ("num", None) => Ok(Atom::Num),
        ("qty", None) => Ok(Atom::Qty),
        ("approx", None) => Ok(Atom::Approx),
        _ => Err(format!("unknown matcher `{s}`")),
    }
}

fn parse_matcher(s: &str) -> Result<Matcher, String> {
    s.split("&&").map(parse_atom).collect::<Result<Vec<_>, _>>().map(Matcher)
}

impl TerRule {
    pub fn new(id: &str, priority: i32, ttype: TimexType, pattern: &str) -> Result<Self, String> {
        let mut preceding = None;
        let mut steps = Vec::new();
        let mut kinds = BTreeSet::new();
        for (i, item) in pattern.split_whitespace().enumerate() {
            if let Some(rest) = item.strip_prefix('<') {
                if i != 0 {
                    return Err("context matcher `<` must come first".into());
                }
                preceding = Some(parse_matcher(rest)?);
                continue;
            }
            let (quant, body) = match item.chars().next() {
                Some('?') => (Quant::Opt, &item[1..]),
                Some('+') => (Quant::Plus, &item[1..]),
                Some('*') => (Quant::Star, &item[1..]),
                _ => (Quant::One, item),
            };
            let matcher = parse_matcher(body)?;
            for a in &matcher.0 {
                kinds.insert(match a {
                    Atom::Gaz(_) => RuleKind::Semantic,
                    Atom::Re(_) | Atom::Kind(_) => RuleKind::Pattern,
                    _ => RuleKind::Lexical,
                });
            }
            steps.push(Step { matcher, quant });
        }
        if !steps.iter().any(|s| matches!(s.quant, Quant::One | Quant::Plus)) {
            return Err("pattern must contain a required matcher".into());
        }
        Ok(TerRule {
            id: id.to_string(),
            priority,
            ttype,
            kind: *kinds.iter().next().unwrap_or(&RuleKind::Lexical),
            pattern: pattern.to_string(),
            preceding,
            steps,
        })
    }

    /// Longest match starting at `start` inside `tokens`, as an exclusive
    /// end index.
    pub fn match_at(&self, tokens: &[Token], start: usize) -> Option<usize> {
        if let Some(pre) = &self.preceding {
            if start == 0 || !pre.matches(&tokens[start - 1]) {
                return None;
            }
        }
        // set of reachable positions after each step
        let mut reach: BTreeSet<usize> = BTreeSet::from([start]);
        for step in &self.steps {
            let mut next = BTreeSet::new();
            for &p in &reach {
                if matches!(step.quant, Quant::Opt | Quant::Star) {
                    next.insert(p);
                }
                let mut q = p;
                while q < tokens.len() && step.matcher.matches(&tokens[q]) {
                    q += 1;
                    next.insert(q);
                    if matches!(step.quant, Quant::One | Quant::Opt) {
                        break;
                    }
                }
            }
            if next.is_empty() {
                return None;
            }
            reach = next;
        }
        reach.into_iter().next_back().filter(|&e| e > start)
    }
}

impl fmt::Display for TerRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}\t{}", self.id, self.priority, self.ttype, self.pattern)
    }
}

#[derive(Debug, Clone)]
pub struct RuleSet {
    rules: Vec<TerRule>,
}

impl RuleSet {
    pub fn bundled() -> Self {
        Self::parse(include_str!("../../data/ter_rules.tsv")).expect("bundled rules compile")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, RuleCompileError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self, RuleCompileError> {
        let mut rules: Vec<TerRule> = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            let id = f[0].trim().to_string();
            let err = |reason: String| RuleCompileError::Syntax {
                id: if id.is_empty() { "?".into() } else { id.clone() },
                line: n + 1,
                reason,
            };
            if f.len() != 4 {
                return Err(err(format!("expected 4 tab-separated fields, found {}", f.len())));
            }
            if id.is_empty() || id.contains(char::is_whitespace) {
                return Err(err("bad rule id".into()));
            }
            if rules.iter().any(|r| r.id == id) {
                return Err(err("duplicate rule id".into()));
            }
            let priority: i32 = f[1].trim().parse().map_err(|_| err(format!("bad priority `{}`", f[1])))?;
            let ttype: TimexType = f[2].trim().parse().map_err(|_| err(format!("bad type `{}`", f[2])))?;
            rules.push(TerRule::new(&id, priority, ttype, f[3]).map_err(err)?);
        }
        Ok(RuleSet { rules })
    }

    pub fn rules(&self) -> &[TerRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

/// A rule hit over tokens `start..end` of one sentence slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleHit {
    pub rule: usize,
    pub start: usize,
    pub end: usize,
}

/// Longest match per (rule, start), then greedy selection by priority,
/// length, start and rule order so selected hits never overlap.
pub fn match_tokens(tokens: &[Token], rules: &RuleSet) -> Vec<RuleHit> {
    let mut hits = Vec::new();
    for start in 0..tokens.len() {
        for (ri, rule) in rules.rules.iter().enumerate() {
            if let Some(end) = rule.match_at(tokens, start) {
                hits.push(RuleHit { rule: ri, start, end });
            }
        }
    }
    hits.sort_by(|a, b| {
        let pa = rules.rules[a.rule].priority;
        let pb = rules.rules[b.rule].priority;
        pb.cmp(&pa)
            .then((b.end - b.start).cmp(&(a.end - a.start)))
            .then(a.start.cmp(&b.start))
            .then(a.rule.cmp(&b.rule))
    });
    let mut taken = vec![false; tokens.len()];
    let mut out = Vec::new();
    for h in hits {
        if taken[h.start..h.end].iter().any(|&t| t) {
            continue;
        }
        taken[h.start..h.end].iter_mut().for_each(|t| *t = true);
        out.push(h);
    }
    out.sort_by_key(|h| h.start);
    out
}

/// Rule-based recognition over every sentence. Values are left empty for
/// [`normalize`](super::normalize) to fill.
pub fn recognize_rules(ad: &AnnotatedDocument, rules: &RuleSet) -> Vec<TimexMention> {
    let mut out = Vec::new();
    for sent in &ad.sentences {
        let toks = &ad.tokens[sent.tokens.clone()];
        for h in match_tokens(toks, rules) {
            out.push(TimexMention {
                id: format!("T{}", out.len() + 1),
                span: Span::new(toks[h.start].span.start, toks[h.end - 1].span.end),
                ttype: rules.rules[h.rule].ttype,
                value: String::new(),
                modifier: Default::default(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preproc::{tokenize, Gazetteer};

    fn toks(s: &str) -> Vec<Token> {
        let mut t = tokenize(s);
        Gazetteer::bundled().tag(&mut t);
        t
    }

    fn found(s: &str) -> Vec<(String, TimexType)> {
        let rules = RuleSet::bundled();
        let t = toks(s);
        match_tokens(&t, &rules)
            .into_iter()
            .map(|h| {
                let words: Vec<&str> = t[h.start..h.end].iter().map(|x| x.text.as_str()).collect();
                (words.join(" "), rules.rules()[h.rule].ttype)
            })
            .collect()
    }

    #[test]
    fn bundled_inventory() {
        let rules = RuleSet::bundled();
        assert_eq!(rules.len(), 65);
        let kinds: BTreeSet<RuleKind> = rules.rules().iter().map(|r| r.kind).collect();
        assert_eq!(kinds.len(), 3);
    }

    #[test]
    fn examples() {
        assert_eq!(found("seen on 01/04/1988 ."), vec![("01/04/1988".into(), TimexType::Date)]);
        assert_eq!(found("aspirin twice daily"), vec![("twice daily".into(), TimexType::Frequency)]);
        assert!(found("the patient").is_empty());
        assert_eq!(found("postoperative day one")[0].0, "postoperative day one");
        assert_eq!(found("on hospital day five")[0].0, "hospital day five");
        assert_eq!(found("three days ago")[0], ("three days ago".into(), TimexType::Date));
    }

    #[test]
    fn context_matcher_is_not_consumed() {
        assert_eq!(found("since 1998")[0].0, "1998");
        assert!(found("1998").is_empty());
    }

    #[test]
    fn compile_errors_carry_id() {
        let e = RuleSet::parse("X1\t1\tDate\tre:([\n").unwrap_err();
        assert_eq!(e.id(), "X1");
        let e = RuleSet::parse("X2\t1\tDate\tgaz:Nope\n").unwrap_err();
        assert_eq!(e.id(), "X2");
        let e = RuleSet::parse("X3\t1\tDate\t?lit:a\n").unwrap_err();
        assert_eq!(e.id(), "X3");
        assert!(RuleSet::parse("A\t1\tDate\tlit:a\nA\t1\tDate\tlit:b\n").is_err());
    }
}
