use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::corpus::{cmp_ids, Relation, TLink};

/// Relation between two anchors, oriented from the first to the second.
pub type Edge = (String, String, Relation);

/// Anchors and at most one relation per pair. A pair is stored once, keyed
/// by its node indices in ascending order, with the relation oriented from
/// the lower to the higher index (so `After` is an inverted `Before`).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TemporalGraph {
    nodes: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insert {
    New,
    Duplicate,
    /// The pair already holds a different relation; nothing was changed.
    Conflict(Relation),
    SelfLoop,
}

/// Orders an edge canonically: `After` becomes the inverted `Before`, and
/// `Overlap` runs from the smaller id to the larger one.
pub fn canonical_edge(a: &str, b: &str, rel: Relation) -> Edge {
    match rel {
        Relation::After => (b.to_string(), a.to_string(), Relation::Before),
        Relation::Overlap if cmp_ids(a, b) == Ordering::Greater => (b.to_string(), a.to_string(), rel),
        _ => (a.to_string(), b.to_string(), rel),
    }
}

fn cmp_edges(x: &Edge, y: &Edge) -> Ordering {
    cmp_ids(&x.0, &y.0)
        .then_with(|| cmp_ids(&x.1, &y.1))
        .then_with(|| x.2.cmp(&y.2))
}

impl TemporalGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from links; links contradicting an earlier link on the
    /// same pair are skipped and returned.
    pub fn from_links<'a>(links: impl IntoIterator<Item = &'a TLink>) -> (Self, Vec<TLink>) {
        let mut g = Self::new();
        let mut rejected = Vec::new();
        for l in links {
            if let Insert::Conflict(_) | Insert::SelfLoop = g.insert(&l.source, &l.target, l.relation) {
                rejected.push(l.clone());
            }
        }
        (g, rejected)
    }

    pub fn from_edges<'a>(edges: impl IntoIterator<Item = &'a Edge>) -> Self {
        let mut g = Self::new();
        for (a, b, r) in edges {
            g.insert(a, b, *r);
        }
        g
    }

    pub fn node(&mut self, id: &str) -> usize {
        if let Some(&i) = self.index.get(id) {
            return i;
        }
        self.nodes.push(id.to_string());
        self.index.insert(id.to_string(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn insert(&mut self, a: &str, b: &str, rel: Relation) -> Insert {
        if a == b {
            return Insert::SelfLoop;
        }
        let (i, j) = (self.node(a), self.node(b));
        let (key, rel) = if i < j { ((i, j), rel) } else { ((j, i), rel.inverse()) };
        match self.edges.get(&key) {
            None => {
                self.edges.insert(key, rel);
                Insert::New
            }
            Some(&r) if r == rel => Insert::Duplicate,
            Some(&r) => Insert::Conflict(if i < j { r } else { r.inverse() }),
        }
    }

    pub fn remove(&mut self, a: &str, b: &str) -> Option<Relation> {
        let (&i, &j) = (self.index.get(a)?, self.index.get(b)?);
        if i < j {
            self.edges.remove(&(i, j))
        } else {
            self.edges.remove(&(j, i)).map(Relation::inverse)
        }
    }

    /// Relation from `a` to `b`, if stored.
    pub fn relation(&self, a: &str, b: &str) -> Option<Relation> {
        let (&i, &j) = (self.index.get(a)?, self.index.get(b)?);
        if i < j {
            self.edges.get(&(i, j)).copied()
        } else {
            self.edges.get(&(j, i)).map(|r| r.inverse())
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Stored edges in canonical form and canonical order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .edges
            .iter()
            .map(|(&(i, j), &r)| canonical_edge(&self.nodes[i], &self.nodes[j], r))
            .collect();
        out.sort_by(cmp_edges);
        out
    }

    /// True when `edge` is implied by the graph's closure.
    pub fn entails(&self, edge: &Edge) -> bool {
        let rel = Relations::compute(self);
        rel.holds(self, &edge.0, &edge.1, edge.2)
    }

    /// Adds edges in order, skipping self-loops and any edge that
    /// contradicts the closure of the edges kept so far.
    pub fn consistent<'a>(edges: impl IntoIterator<Item = &'a Edge>) -> (Self, Vec<Edge>) {
        let edges: Vec<&Edge> = edges.into_iter().collect();
        let mut g = Self::new();
        for (a, b, _) in &edges {
            g.node(a);
            g.node(b);
        }
        let mut rel = Relations::empty(g.nodes.len());
        let mut rejected = Vec::new();
        for e in edges {
            let (i, j) = (g.index[&e.0], g.index[&e.1]);
            let implied = rel.between(i, j);
            if i == j || !(implied.is_empty() || implied == [e.2]) {
                rejected.push(e.clone());
                continue;
            }
            g.insert(&e.0, &e.1, e.2);
            rel.assert(i, j, e.2);
        }
        (g, rejected)
    }

    /// Fixpoint under the composition rules. New pairs whose implied
    /// relation is unambiguous are added as derived edges; pairs that would
    /// receive more than one relation are reported and left untouched.
    pub fn closure(&self) -> Closure {
        let rel = Relations::compute(self);
        let n = self.nodes.len();
        let mut graph = self.clone();
        let mut derived = Vec::new();
        let mut conflicts = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let set = rel.between(i, j);
                if set.len() > 1 {
                    conflicts.push((self.nodes[i].clone(), self.nodes[j].clone()));
                } else if let (Some(&r), None) = (set.first(), self.edges.get(&(i, j))) {
                    graph.edges.insert((i, j), r);
                    derived.push(canonical_edge(&self.nodes[i], &self.nodes[j], r));
                }
            }
        }
        derived.sort_by(cmp_edges);
        conflicts.sort_by(|x, y| cmp_ids(&x.0, &y.0).then_with(|| cmp_ids(&x.1, &y.1)));
        Closure {
            graph,
            derived,
            conflicts,
        }
    }

    /// Removes redundant edges one at a time in canonical order: an edge is
    /// dropped when the remaining graph still implies it. A single pass
    /// reaches the fixpoint since removals only shrink later closures.
    pub fn reduce(&self) -> TemporalGraph {
        let mut g = self.clone();
        for e in self.edges() {
            let removed = g.remove(&e.0, &e.1).expect("edge present");
            if !g.entails(&e) {
                g.insert(&e.0, &e.1, removed);
            }
        }
        g
    }
}

#[derive(Debug, Clone)]
pub struct Closure {
    pub graph: TemporalGraph,
    pub derived: Vec<Edge>,
    /// Pairs for which both orderings (or an ordering and Overlap) follow.
    pub conflicts: Vec<(String, String)>,
}

/// Full implied relation sets: `before[a][b]` and symmetric `overlap`.
struct Relations {
    before: Vec<Vec<bool>>,
    overlap: Vec<Vec<bool>>,
}

#[derive(Clone, Copy)]
enum Fact {
    B(usize, usize),
    O(usize, usize),
}

impl Relations {
    fn empty(n: usize) -> Self {
        Relations {
            before: vec![vec![false; n]; n],
            overlap: vec![vec![false; n]; n],
        }
    }

    fn compute(g: &TemporalGraph) -> Self {
        let mut r = Relations::empty(g.nodes.len());
        for (&(i, j), &rel) in &g.edges {
            r.assert(i, j, rel);
        }
        r
    }

    /// Adds `i rel j` and everything it implies.
    fn assert(&mut self, i: usize, j: usize, rel: Relation) {
        let n = self.before.len();
        let r = self;
        let mut work = Vec::new();
        match rel {
            Relation::Before => r.add(Fact::B(i, j), &mut work),
            Relation::After => r.add(Fact::B(j, i), &mut work),
            Relation::Overlap => r.add(Fact::O(i, j), &mut work),
        }
        while let Some(f) = work.pop() {
            match f {
                Fact::B(a, b) => {
                    for c in 0..n {
                        // a<b<c, a<b~c
                        if r.before[b][c] || r.overlap[b][c] {
                            r.add(Fact::B(a, c), &mut work);
                        }
                        // c<a<b, c~a<b
                        if r.before[c][a] || r.overlap[c][a] {
                            r.add(Fact::B(c, b), &mut work);
                        }
                    }
                }
                Fact::O(a, b) => {
                    for (x, y) in [(a, b), (b, a)] {
                        for c in 0..n {
                            if c != x && r.overlap[y][c] {
                                r.add(Fact::O(x, c), &mut work);
                            }
                            // c<x~y
                            if r.before[c][x] {
                                r.add(Fact::B(c, y), &mut work);
                            }
                            // x~y<c
                            if r.before[y][c] {
                                r.add(Fact::B(x, c), &mut work);
                            }
                        }
                    }
                }
            }
        }
    }

    fn add(&mut self, f: Fact, work: &mut Vec<Fact>) {
        match f {
            Fact::B(a, b) if !self.before[a][b] => {
                self.before[a][b] = true;
                work.push(f);
            }
            Fact::O(a, b) if a != b && !self.overlap[a][b] => {
                self.overlap[a][b] = true;
                self.overlap[b][a] = true;
                work.push(f);
            }
            _ => {}
        }
    }

    /// Relations implied from `i` to `j`, in `Relation` order.
    fn between(&self, i: usize, j: usize) -> Vec<Relation> {
        let mut out = Vec::new();
        if self.before[i][j] {
            out.push(Relation::Before);
        }
        if self.before[j][i] {
            out.push(Relation::After);
        }
        if self.overlap[i][j] {
            out.push(Relation::Overlap);
        }
        out
    }

    fn holds(&self, g: &TemporalGraph, a: &str, b: &str, rel: Relation) -> bool {
        let (Some(&i), Some(&j)) = (g.index.get(a), g.index.get(b)) else {
            return false;
        };
        match rel {
            Relation::Before => self.before[i][j],
            Relation::After => self.before[j][i],
            Relation::Overlap => self.overlap[i][j],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Relation::*;

    fn g(edges: &[(&str, &str, Relation)]) -> TemporalGraph {
        let mut g = TemporalGraph::new();
        for &(a, b, r) in edges {
            g.insert(a, b, r);
        }
        g
    }

    #[test]
    fn composition_rows() {
        let c = g(&[("A", "B", Before), ("B", "C", Before)]).closure();
        assert_eq!(c.graph.relation("A", "C"), Some(Before));
        let c = g(&[("A", "B", After), ("B", "C", After)]).closure();
        assert_eq!(c.graph.relation("A", "C"), Some(After));
        let c = g(&[("A", "B", Overlap), ("B", "C", Overlap)]).closure();
        assert_eq!(c.graph.relation("A", "C"), Some(Overlap));
        let c = g(&[("A", "B", Before), ("B", "C", Overlap)]).closure();
        assert_eq!(c.graph.relation("A", "C"), Some(Before));
        let c = g(&[("A", "B", Before), ("A", "C", Overlap)]).closure();
        assert_eq!(c.graph.relation("C", "B"), Some(Before));
        assert!(TemporalGraph::new().closure().graph.is_empty());
    }

    #[test]
    fn storage_is_oriented() {
        let mut x = g(&[("B", "A", After)]);
        assert_eq!(x.relation("A", "B"), Some(Before));
        assert_eq!(x.edges(), vec![("A".into(), "B".into(), Before)]);
        assert_eq!(x.insert("A", "B", Overlap), Insert::Conflict(Before));
        assert_eq!(x.insert("A", "A", Overlap), Insert::SelfLoop);
    }

    #[test]
    fn conflicts_are_reported() {
        let c = g(&[("A", "B", Before), ("B", "C", Before), ("C", "A", Overlap)]).closure();
        assert!(!c.conflicts.is_empty());
        assert_eq!(c.graph.relation("C", "A"), Some(Overlap));
    }

    #[test]
    fn consistent_subset_skips_contradictions() {
        let edges: Vec<Edge> = [("A", "B", Before), ("B", "C", Before), ("C", "A", Before), ("A", "C", Before)]
            .iter()
            .map(|&(a, b, r)| (a.into(), b.into(), r))
            .collect();
        let (g, rejected) = TemporalGraph::consistent(&edges);
        assert_eq!(rejected, vec![edges[2].clone()]);
        assert_eq!(g.len(), 3);
        assert!(g.closure().conflicts.is_empty());
    }

    #[test]
    fn reduction() {
        let full = g(&[("A", "B", Before), ("B", "C", Before), ("A", "C", Before)]);
        let r = full.reduce();
        assert_eq!(r.len(), 2);
        assert_eq!(r.relation("A", "C"), None);
    }
}
