//! SoftTFIDF string similarity with a Jaro-Winkler inner metric.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("cannot build TF-IDF statistics from an empty corpus")]
    EmptyCorpus,
}

/// Jaro similarity: characters match when equal and at most
/// `max(|a|, |b|) / 2 - 1` positions apart; `t` is half the number of
/// matched characters that appear in a different order.
pub fn jaro(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let window = (a.len().max(b.len()) / 2).saturating_sub(1);
    let mut b_used = vec![false; b.len()];
    let mut a_matched = Vec::with_capacity(a.len());
    for (i, &c) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(b.len());
        for j in lo..hi {
            if !b_used[j] && b[j] == c {
                b_used[j] = true;
                a_matched.push(c);
                break;
            }
        }
    }
    let m = a_matched.len();
    if m == 0 {
        return 0.0;
    }
    let b_matched = b.iter().zip(&b_used).filter(|(_, &u)| u).map(|(c, _)| c);
    let out_of_order = a_matched.iter().zip(b_matched).filter(|(x, y)| x != y).count();
    let m = m as f64;
    let t = out_of_order as f64 / 2.0;
    (m / a.len() as f64 + m / b.len() as f64 + (m - t) / m) / 3.0
}

/// Jaro similarity with the Winkler prefix boost: common prefix up to 4
/// characters, scale 0.1.
pub fn jaro_winkler(a: &str, b: &str) -> f64 {
    let j = jaro(a, b);
    let prefix = a.chars().zip(b.chars()).take(4).take_while(|(x, y)| x == y).count();
    j + prefix as f64 * 0.1 * (1.0 - j)
}

/// Lowercased alphanumeric runs.
pub fn sim_tokens(s: &str) -> Vec<String> {
    s.split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TfidfCorpusStats {
    pub doc_count: usize,
    pub token_doc_freq: BTreeMap<String, usize>,
}

/// Each string is one pseudo-document; duplicates count separately.
pub fn build_stats<S: AsRef<str>>(strings: &[S]) -> Result<TfidfCorpusStats, SimError> {
    if strings.is_empty() {
        return Err(SimError::EmptyCorpus);
    }
    let mut df = BTreeMap::new();
    for s in strings {
        let uniq: BTreeSet<String> = sim_tokens(s.as_ref()).into_iter().collect();
        for t in uniq {
            *df.entry(t).or_insert(0) += 1;
        }
    }
    Ok(TfidfCorpusStats {
        doc_count: strings.len(),
        token_doc_freq: df,
    })
}

impl TfidfCorpusStats {
    /// `log(N/df)`; tokens unseen in the corpus count as df = 1.
    pub fn idf(&self, token: &str) -> f64 {
        let df = self.token_doc_freq.get(token).copied().unwrap_or(1).max(1);
        (self.doc_count as f64 / df as f64).ln().max(0.0)
    }

    /// L2-normalized `(log tf + 1) * idf` weights of the tokens of `s`. When
    /// every idf is zero (a token set shared by the whole corpus) the idf
    /// factor is dropped so the vector stays non-degenerate.
    pub fn weights(&self, s: &str) -> BTreeMap<String, f64> {
        let mut tf: BTreeMap<String, usize> = BTreeMap::new();
        for t in sim_tokens(s) {
            *tf.entry(t).or_insert(0) += 1;
        }
        let raw = |use_idf: bool| -> BTreeMap<String, f64> {
            tf.iter()
                .map(|(t, &n)| {
                    let idf = if use_idf { self.idf(t) } else { 1.0 };
                    (t.clone(), ((n as f64).ln() + 1.0) * idf)
                })
                .collect()
        };
        let mut v = raw(true);
        if v.values().all(|&x| x == 0.0) {
            v = raw(false);
        }
        let norm = v.values().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.values_mut().for_each(|x| *x /= norm);
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoftTfidfParams {
    /// Minimum inner similarity for two tokens to count as matching.
    pub inner_threshold: f64,
}

impl Default for SoftTfidfParams {
    fn default() -> Self {
        SoftTfidfParams { inner_threshold: 0.9 }
    }
}

fn directed(vs: &BTreeMap<String, f64>, vt: &BTreeMap<String, f64>, theta: f64) -> f64 {
    let mut sum = 0.0;
    for (w, a) in vs {
        // best partner by inner similarity, ties to the smallest token
        let mut best: Option<(&String, f64)> = None;
        for u in vt.keys() {
            let s = jaro_winkler(w, u);
            if best.map_or(true, |(_, b)| s > b) {
                best = Some((u, s));
            }
        }
        if let Some((u, s)) = best {
            if s >= theta {
                sum += a * vt[u] * s;
            }
        }
    }
    sum
}

/// Symmetrized SoftTFIDF: the mean of the two directed scores, clamped to
/// `[0, 1]`.
pub fn soft_tfidf(s: &str, t: &str, stats: &TfidfCorpusStats, params: &SoftTfidfParams) -> f64 {
    let vs = stats.weights(s);
    let vt = stats.weights(t);
    if vs.is_empty() || vt.is_empty() {
        return 0.0;
    }
    let theta = params.inner_threshold;
    let score = 0.5 * (directed(&vs, &vt, theta) + directed(&vt, &vs, theta));
    score.clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jaro_winkler_reference() {
        assert_eq!(jaro_winkler("abc", "abc"), 1.0);
        assert_eq!(jaro_winkler("abc", "xyz"), 0.0);
        assert!((jaro("MARTHA", "MARHTA") - 17.0 / 18.0).abs() < 1e-12);
        assert!((jaro_winkler("MARTHA", "MARHTA") - 0.9611).abs() < 1e-4);
        assert!((jaro_winkler("DIXON", "DICKSONX") - 0.8133).abs() < 1e-4);
    }

    #[test]
    fn stats() {
        let s = build_stats(&["a b", "a c"]).unwrap();
        assert_eq!(s.doc_count, 2);
        assert_eq!(s.token_doc_freq["a"], 2);
        assert_eq!(s.token_doc_freq["b"], 1);
        let s = build_stats(&["x y"]).unwrap();
        assert!(s.token_doc_freq.values().all(|&d| d == 1));
        let s = build_stats(&["p q", "p q", "r"]).unwrap();
        assert_eq!(s.token_doc_freq["p"], 2);
        assert_eq!(build_stats::<&str>(&[]), Err(SimError::EmptyCorpus));
    }

    #[test]
    fn identity_and_disjoint() {
        let stats = build_stats(&["chest pain", "ibuprofen", "chest x-ray"]).unwrap();
        let p = SoftTfidfParams::default();
        assert!((soft_tfidf("chest pain", "chest pain", &stats, &p) - 1.0).abs() < 1e-9);
        assert_eq!(soft_tfidf("chest pain", "ibuprofen", &stats, &p), 0.0);
        assert!((soft_tfidf("x", "x", &build_stats(&["x"]).unwrap(), &p) - 1.0).abs() < 1e-9);
    }
}
