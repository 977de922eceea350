use std::collections::HashMap;
use std::path::Path;

use thiserror::Error;

use super::{tokenize, GazetteerCategory, Token};

#[derive(Debug, Error)]
pub enum GazetteerError {
    #[error("cannot load gazetteer file {file}: {reason}")]
    Load { file: String, reason: String },
}

/// A gazetteer hit covering tokens `start..end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GazMatch {
    pub start: usize,
    pub end: usize,
    pub category: GazetteerCategory,
}

/// Case-insensitive multi-token lookup tables for the ten temporal
/// categories.
#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    // keyed by the lowercased first token of each entry
    entries: HashMap<String, Vec<(Vec<String>, GazetteerCategory)>>,
}

macro_rules! bundled {
    ($($name:literal),*) => {
        [$(($name, include_str!(concat!("../../data/lexicons/", $name, ".txt")))),*]
    };
}

const BUNDLED: [(&str, &str); 10] = bundled!(
    "ClinicalFrequency",
    "Duration",
    "Festival",
    "Season",
    "Weekday",
    "Month",
    "LiteralTime",
    "TemporalModifier",
    "OrdinalNumber",
    "LiteralNumber"
);

impl Gazetteer {
    /// The starter lexicons shipped with the crate.
    pub fn bundled() -> Self {
        let mut g = Gazetteer::default();
        for (name, body) in BUNDLED {
            g.add_file_contents(name.parse().unwrap(), body);
        }
        g
    }

    /// Loads `<dir>/<Category>.txt` for each of the ten categories.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self, GazetteerError> {
        let mut g = Gazetteer::default();
        for cat in GazetteerCategory::ALL {
            let path = dir.as_ref().join(format!("{}.txt", cat.as_str()));
            let body = std::fs::read_to_string(&path).map_err(|e| GazetteerError::Load {
                file: path.display().to_string(),
                reason: e.to_string(),
            })?;
            g.add_file_contents(cat, &body);
        }
        Ok(g)
    }

    fn add_file_contents(&mut self, category: GazetteerCategory, body: &str) {
        for line in body.lines() {
            let entry = line.trim();
            if entry.is_empty() || entry.starts_with('#') {
                continue;
            }
            self.add(category, entry);
        }
    }

    pub fn add(&mut self, category: GazetteerCategory, entry: &str) {
        let words: Vec<String> = tokenize(entry).iter().map(Token::lower).collect();
        if words.is_empty() {
            return;
        }
        let bucket = self.entries.entry(words[0].clone()).or_default();
        if !bucket.iter().any(|(w, c)| *w == words && *c == category) {
            bucket.push((words, category));
            bucket.sort();
        }
    }

    pub fn len(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every entry occurrence in the token sequence, ordered by position.
    pub fn matches(&self, tokens: &[Token]) -> Vec<GazMatch> {
        let lower: Vec<String> = tokens.iter().map(Token::lower).collect();
        let mut out = Vec::new();
        for i in 0..tokens.len() {
            let Some(bucket) = self.entries.get(&lower[i]) else {
                continue;
            };
            for (words, category) in bucket {
                let end = i + words.len();
                if end <= tokens.len() && lower[i..end] == words[..] {
                    out.push(GazMatch {
                        start: i,
                        end,
                        category: *category,
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Adds the category of every matching entry to each covered token.
    /// Tags are only ever added, so extending a lexicon cannot remove one.
    pub fn tag(&self, tokens: &mut [Token]) {
        for m in self.matches(tokens) {
            for t in &mut tokens[m.start..m.end] {
                t.gazetteer.insert(m.category);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GazetteerCategory as G;

    fn tags(s: &str) -> Vec<Vec<G>> {
        let mut toks = tokenize(s);
        Gazetteer::bundled().tag(&mut toks);
        toks.into_iter().map(|t| t.gazetteer.into_iter().collect()).collect()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(tags("Monday"), [vec![G::Weekday]]);
        assert_eq!(tags("bid"), [vec![G::ClinicalFrequency]]);
        assert_eq!(tags("stomach"), [Vec::<G>::new()]);
        assert_eq!(tags("Yom Kippur"), [vec![G::Festival], vec![G::Festival]]);
        assert_eq!(tags("q.d."), [vec![G::ClinicalFrequency]]);
    }

    #[test]
    fn multi_token_entries_tag_every_token() {
        let t = tags("twice daily");
        assert!(t[0].contains(&G::ClinicalFrequency));
        assert!(t[1].contains(&G::ClinicalFrequency));
    }

    #[test]
    fn every_category_has_entries() {
        let g = Gazetteer::bundled();
        let mut seen = std::collections::BTreeSet::new();
        for bucket in g.entries.values() {
            for (_, c) in bucket {
                seen.insert(*c);
            }
        }
        assert_eq!(seen.len(), 10);
    }

    #[test]
    fn missing_dir_is_a_load_error() {
        assert!(matches!(
            Gazetteer::load_dir("/nonexistent/lexicons"),
            Err(GazetteerError::Load { .. })
        ));
    }
}
