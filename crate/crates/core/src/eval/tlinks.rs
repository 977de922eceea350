use std::collections::{BTreeSet, HashMap};

use crate::corpus::{cmp_ids, is_sectime_id, AnnotatedDocument, Relation, TLink};
use crate::tlink::{canonical_edge, Edge, TemporalGraph};

use super::spans::{match_spans, SpanMatchMode};
use super::Counts;

/// Which links take part in a TLINK evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TlinkSubset {
    /// Links with a section-time endpoint.
    Sectime,
    /// Links between two anchors of one sentence.
    Intra,
    /// Links between anchors of different sentences.
    Inter,
}

impl std::str::FromStr for TlinkSubset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sectime" => Ok(TlinkSubset::Sectime),
            "intra" => Ok(TlinkSubset::Intra),
            "inter" => Ok(TlinkSubset::Inter),
            _ => Err(format!("unknown tlink subset `{s}` (expected sectime, intra or inter)")),
        }
    }
}

fn sentence_index(ad: &AnnotatedDocument, id: &str) -> Option<usize> {
    let span = ad.event(id).map(|e| e.span).or_else(|| ad.timex(id).map(|t| t.span))?;
    ad.sentences
        .iter()
        .position(|s| s.span.start <= span.start && span.start < s.span.end)
}

pub fn in_subset(ad: &AnnotatedDocument, link: &TLink, subset: TlinkSubset) -> bool {
    let st = is_sectime_id(&link.source) || is_sectime_id(&link.target);
    match subset {
        TlinkSubset::Sectime => st,
        _ if st => false,
        TlinkSubset::Intra | TlinkSubset::Inter => {
            let same = matches!(
                (sentence_index(ad, &link.source), sentence_index(ad, &link.target)),
                (Some(a), Some(b)) if a == b
            );
            same == (subset == TlinkSubset::Intra)
        }
    }
}

/// Maps system anchor ids onto gold ids through lenient span matching of
/// events (same category) and timexes. Unmatched system anchors get ids
/// that cannot collide with gold ones.
pub fn align_anchors(gold: &AnnotatedDocument, sys: &AnnotatedDocument) -> HashMap<String, String> {
    let mut map = HashMap::new();
    let mut cats: Vec<_> = gold.events.iter().chain(&sys.events).map(|e| e.category).collect();
    cats.sort();
    cats.dedup();
    for cat in cats {
        let g: Vec<_> = gold.events.iter().filter(|e| e.category == cat).collect();
        let s: Vec<_> = sys.events.iter().filter(|e| e.category == cat).collect();
        let gs: Vec<_> = g.iter().map(|e| e.span).collect();
        let ss: Vec<_> = s.iter().map(|e| e.span).collect();
        for (gi, si) in match_spans(&gs, &ss, SpanMatchMode::Lenient).pairs {
            map.insert(s[si].id.clone(), g[gi].id.clone());
        }
    }
    let gs: Vec<_> = gold.timexes.iter().map(|t| t.span).collect();
    let ss: Vec<_> = sys.timexes.iter().map(|t| t.span).collect();
    for (gi, si) in match_spans(&gs, &ss, SpanMatchMode::Lenient).pairs {
        map.insert(sys.timexes[si].id.clone(), gold.timexes[gi].id.clone());
    }
    for id in sys.events.iter().map(|e| &e.id).chain(sys.timexes.iter().map(|t| &t.id)) {
        map.entry(id.clone()).or_insert_with(|| format!("sys:{id}"));
    }
    map
}

/// Canonical edges of links, optionally renaming endpoints.
pub fn link_edges<'a>(links: impl IntoIterator<Item = &'a TLink>, rename: Option<&HashMap<String, String>>) -> Vec<Edge> {
    let name = |id: &String| -> String {
        rename.and_then(|m| m.get(id)).cloned().unwrap_or_else(|| id.clone())
    };
    let set: BTreeSet<(String, String, Relation)> = links
        .into_iter()
        .map(|l| canonical_edge(&name(&l.source), &name(&l.target), l.relation))
        .collect();
    let mut v: Vec<Edge> = set.into_iter().collect();
    v.sort_by(|x, y| cmp_ids(&x.0, &y.0).then_with(|| cmp_ids(&x.1, &y.1)).then(x.2.cmp(&y.2)));
    v
}

/// Exact tuple matching on canonical edges, so Overlap is symmetric and
/// `After` equals the inverted `Before`.
pub fn customary_counts(gold: &[Edge], sys: &[Edge]) -> Counts {
    let g: BTreeSet<&Edge> = gold.iter().collect();
    let s: BTreeSet<&Edge> = sys.iter().collect();
    let tp = g.intersection(&s).count();
    Counts {
        tp,
        fp: s.len() - tp,
        fn_: g.len() - tp,
    }
}

/// Numerators and denominators of the closure-based TLINK metric.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TempEvalCounts {
    /// Reduced system edges found in the gold closure.
    pub sys_verified: usize,
    pub sys_total: usize,
    /// Reduced gold edges found in the system closure.
    pub gold_verified: usize,
    pub gold_total: usize,
}

impl TempEvalCounts {
    pub fn add(&mut self, o: &TempEvalCounts) {
        self.sys_verified += o.sys_verified;
        self.sys_total += o.sys_total;
        self.gold_verified += o.gold_verified;
        self.gold_total += o.gold_total;
    }

    /// Zero when the reduced system graph is empty.
    pub fn precision(&self) -> f64 {
        ratio(self.sys_verified, self.sys_total)
    }

    /// Zero when the reduced gold graph is empty.
    pub fn recall(&self) -> f64 {
        ratio(self.gold_verified, self.gold_total)
    }
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TempEvalScore {
    pub counts: TempEvalCounts,
    pub precision: f64,
    pub recall: f64,
    pub empty_gold: bool,
    pub empty_sys: bool,
    /// Edges left out because they contradict earlier edges of their graph.
    pub dropped_gold: Vec<Edge>,
    pub dropped_sys: Vec<Edge>,
}

/// Closure-reduced precision and recall:
/// `P = |reduce(sys) ∩ closure(gold)| / |reduce(sys)|` and
/// `R = |reduce(gold) ∩ closure(sys)| / |reduce(gold)|`.
/// Edges contradicting earlier ones (in canonical order) are dropped first
/// so both graphs are conflict-free.
pub fn tempeval3_score(gold: &[Edge], sys: &[Edge]) -> TempEvalScore {
    let (g, dropped_gold) = TemporalGraph::consistent(gold);
    let (s, dropped_sys) = TemporalGraph::consistent(sys);
    let (g_closed, s_closed) = (g.closure().graph, s.closure().graph);
    let (g_red, s_red) = (g.reduce().edges(), s.reduce().edges());
    let verified = |edges: &[Edge], closed: &TemporalGraph| {
        edges.iter().filter(|(a, b, r)| closed.relation(a, b) == Some(*r)).count()
    };
    let counts = TempEvalCounts {
        sys_verified: verified(&s_red, &g_closed),
        sys_total: s_red.len(),
        gold_verified: verified(&g_red, &s_closed),
        gold_total: g_red.len(),
    };
    TempEvalScore {
        precision: counts.precision(),
        recall: counts.recall(),
        empty_gold: counts.gold_total == 0,
        empty_sys: counts.sys_total == 0,
        counts,
        dropped_gold,
        dropped_sys,
    }
}
