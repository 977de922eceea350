#![allow(dead_code)]

pub mod crfgen;
pub mod fixtures;

use std::collections::{BTreeMap, BTreeSet};

use clintime::corpus::{
    AnnotatedDocument, Document, EventCategory, EventMention, Modifier, Relation, Span, TimexMention, TimexType,
};
use clintime::preproc::{preprocess, BaselineTagger, Gazetteer};
use clintime::tlink::Edge;
use rand::Rng;

/// Preprocessed document with events and timexes placed at the first
/// occurrence of each surface (after the previous one of the same layer).
pub fn annotate(text: &str, events: &[(&str, EventCategory)], timexes: &[(&str, TimexType)]) -> AnnotatedDocument {
    let mut ad = AnnotatedDocument::new(Document::new("d", text));
    preprocess(&mut ad, &BaselineTagger, &Gazetteer::bundled());
    let find = |s: &str, from: &mut usize| {
        let b = from_byte(text, *from) + text[from_byte(text, *from)..].find(s).expect("surface in text");
        let start = text[..b].chars().count();
        let end = start + s.chars().count();
        *from = end;
        Span::new(start, end)
    };
    let mut at = 0;
    for (i, (s, c)) in events.iter().enumerate() {
        ad.events.push(EventMention {
            id: format!("E{}", i + 1),
            span: find(s, &mut at),
            category: *c,
            negated: false,
        });
    }
    let mut at = 0;
    for (i, (s, t)) in timexes.iter().enumerate() {
        ad.timexes.push(TimexMention {
            id: format!("T{}", i + 1),
            span: find(s, &mut at),
            ttype: *t,
            value: match t {
                TimexType::Date => "2006".into(),
                TimexType::Time => "2006-01-01T10:00".into(),
                TimexType::Duration => "P1D".into(),
                TimexType::Frequency => "RP24H".into(),
            },
            modifier: Modifier::NA,
        });
    }
    ad
}

fn from_byte(text: &str, chars: usize) -> usize {
    text.char_indices().nth(chars).map_or(text.len(), |(b, _)| b)
}

pub fn edge(a: &str, b: &str, r: Relation) -> Edge {
    (a.to_string(), b.to_string(), r)
}

pub fn node_name(i: usize) -> String {
    format!("N{i}")
}

/// Random edges over `n` nodes with random relations; may contain
/// contradictions.
pub fn random_edges(rng: &mut impl Rng, n: usize, m: usize) -> Vec<Edge> {
    let rels = [Relation::Before, Relation::After, Relation::Overlap];
    (0..m)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n);
            while b == a {
                b = rng.gen_range(0..n);
            }
            (node_name(a), node_name(b), rels[rng.gen_range(0..3)])
        })
        .collect()
}

/// Edges consistent by construction: every node gets a time point and each
/// sampled pair gets the relation of its points.
pub fn random_consistent_edges(rng: &mut impl Rng, n: usize, m: usize) -> Vec<Edge> {
    let t: Vec<u32> = (0..n).map(|_| rng.gen_range(0..4)).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b || !seen.insert((a.min(b), a.max(b))) {
            continue;
        }
        let r = match t[a].cmp(&t[b]) {
            std::cmp::Ordering::Less => Relation::Before,
            std::cmp::Ordering::Greater => Relation::After,
            std::cmp::Ordering::Equal => Relation::Overlap,
        };
        out.push((node_name(a), node_name(b), r));
    }
    out
}

/// Brute-force closure: the five composition rows applied to every ordered
/// triple until nothing changes. Facts are (a, b, relation) triples kept in
/// both orientations.
pub fn closure_oracle(edges: &[Edge]) -> BTreeSet<(String, String, Relation)> {
    let mut facts: BTreeSet<(String, String, Relation)> = BTreeSet::new();
    for (a, b, r) in edges {
        if a != b {
            facts.insert((a.clone(), b.clone(), *r));
            facts.insert((b.clone(), a.clone(), r.inverse()));
        }
    }
    let nodes: BTreeSet<String> = facts.iter().flat_map(|(a, b, _)| [a.clone(), b.clone()]).collect();
    let nodes: Vec<String> = nodes.into_iter().collect();
    use Relation::*;
    loop {
        let mut new = Vec::new();
        for a in &nodes {
            for b in &nodes {
                for c in &nodes {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let has = |x: &String, y: &String, r: Relation| facts.contains(&(x.clone(), y.clone(), r));
                    // A before B, B before C: A before C
                    if has(a, b, Before) && has(b, c, Before) {
                        new.push((a.clone(), c.clone(), Before));
                    }
                    // A after B, B after C: A after C
                    if has(a, b, After) && has(b, c, After) {
                        new.push((a.clone(), c.clone(), After));
                    }
                    // A overlap B, B overlap C: A overlap C
                    if has(a, b, Overlap) && has(b, c, Overlap) {
                        new.push((a.clone(), c.clone(), Overlap));
                    }
                    // A before B, B overlap C: A before C
                    if has(a, b, Before) && has(b, c, Overlap) {
                        new.push((a.clone(), c.clone(), Before));
                    }
                    // A before B, A overlap C: C before B
                    if has(a, b, Before) && has(a, c, Overlap) {
                        new.push((c.clone(), b.clone(), Before));
                    }
                }
            }
        }
        let mut changed = false;
        for (x, y, r) in new {
            changed |= facts.insert((y.clone(), x.clone(), r.inverse()));
            changed |= facts.insert((x, y, r));
        }
        if !changed {
            return facts;
        }
    }
}

/// Relations the oracle derives per unordered pair (keyed low, high).
pub fn oracle_pairs(facts: &BTreeSet<(String, String, Relation)>) -> BTreeMap<(String, String), BTreeSet<Relation>> {
    let mut out: BTreeMap<(String, String), BTreeSet<Relation>> = BTreeMap::new();
    for (a, b, r) in facts {
        if a < b {
            out.entry((a.clone(), b.clone())).or_default().insert(*r);
        }
    }
    out
}

/// Days since 1970-01-01 of a proleptic Gregorian date (civil-from-days
/// inverse).
pub fn days_from_civil(y: i64, m: i64, d: i64) -> i64 {
    let y = if m <= 2 { y - 1 } else { y };
    let era = if y >= 0 { y } else { y - 399 } / 400;
    let yoe = y - era * 400;
    let mp = (m + 9) % 12;
    let doy = (153 * mp + 2) / 5 + d - 1;
    let doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    era * 146097 + doe - 719468
}

pub fn civil_from_days(z: i64) -> (i64, i64, i64) {
    let z = z + 719468;
    let era = if z >= 0 { z } else { z - 146096 } / 146097;
    let doe = z - era * 146097;
    let yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    let y = yoe + era * 400;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let d = doy - (153 * mp + 2) / 5 + 1;
    let m = if mp < 10 { mp + 3 } else { mp - 9 };
    (if m <= 2 { y + 1 } else { y }, m, d)
}

pub fn iso(days: i64) -> String {
    let (y, m, d) = civil_from_days(days);
    format!("{y:04}-{m:02}-{d:02}")
}

/// Monday = 0.
pub fn weekday(days: i64) -> i64 {
    (days + 3).rem_euclid(7)
}

/// Plain SoftTFIDF: log-tf times idf weights, unit length, greedy best
/// partner per token by Jaro-Winkler computed from its definition.
pub fn soft_tfidf_reference(s: &str, t: &str, corpus: &[&str], theta: f64) -> f64 {
    let toks = |x: &str| -> Vec<String> {
        x.split(|c: char| !c.is_alphanumeric())
            .filter(|w| !w.is_empty())
            .map(|w| w.to_lowercase())
            .collect()
    };
    let n = corpus.len() as f64;
    let df = |w: &str| corpus.iter().filter(|d| toks(d).iter().any(|x| x == w)).count().max(1) as f64;
    let vec = |x: &str| -> BTreeMap<String, f64> {
        let mut tf: BTreeMap<String, f64> = BTreeMap::new();
        for w in toks(x) {
            *tf.entry(w).or_default() += 1.0;
        }
        let mut v: BTreeMap<String, f64> =
            tf.iter().map(|(w, c)| (w.clone(), (c.ln() + 1.0) * (n / df(w)).ln().max(0.0))).collect();
        if v.values().all(|x| *x == 0.0) {
            v = tf.iter().map(|(w, c)| (w.clone(), c.ln() + 1.0)).collect();
        }
        let norm = v.values().map(|x| x * x).sum::<f64>().sqrt();
        v.values_mut().for_each(|x| *x /= norm);
        v
    };
    let (vs, vt) = (vec(s), vec(t));
    let directed = |a: &BTreeMap<String, f64>, b: &BTreeMap<String, f64>| {
        let mut sum = 0.0;
        for (w, x) in a {
            let mut best = (String::new(), -1.0);
            for u in b.keys() {
                let j = jaro_winkler_reference(w, u);
                if j > best.1 {
                    best = (u.clone(), j);
                }
            }
            if best.1 >= theta {
                sum += x * b[&best.0] * best.1;
            }
        }
        sum
    };
    (0.5 * (directed(&vs, &vt) + directed(&vt, &vs))).clamp(0.0, 1.0)
}

/// Jaro-Winkler from its textbook definition: match window
/// `max(|s|,|t|)/2 - 1`, transpositions halved, prefix up to 4 with
/// scale 0.1.
pub fn jaro_winkler_reference(s: &str, t: &str) -> f64 {
    let a: Vec<char> = s.chars().collect();
    let b: Vec<char> = t.chars().collect();
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let window = (a.len().max(b.len()) / 2).saturating_sub(1);
    let mut used = vec![false; b.len()];
    let mut ma = Vec::new();
    for (i, &c) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(b.len());
        if let Some(j) = (lo..hi).find(|&j| !used[j] && b[j] == c) {
            used[j] = true;
            ma.push(c);
        }
    }
    let mb: Vec<char> = b.iter().zip(&used).filter(|(_, u)| **u).map(|(c, _)| *c).collect();
    let m = ma.len() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let trans = ma.iter().zip(&mb).filter(|(x, y)| x != y).count() as f64 / 2.0;
    let jaro = (m / a.len() as f64 + m / b.len() as f64 + (m - trans) / m) / 3.0;
    let prefix = a.iter().zip(&b).take(4).take_while(|(x, y)| x == y).count() as f64;
    jaro + prefix * 0.1 * (1.0 - jaro)
}
