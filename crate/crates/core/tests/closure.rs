mod common;

use std::collections::BTreeSet;

use clintime::corpus::Relation::{self, *};
use clintime::eval::tempeval3_score;
use clintime::tlink::{Edge, TemporalGraph};
use common::fixtures::COMPOSITION_ROWS;
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn closure_edges(g: &TemporalGraph) -> BTreeSet<Edge> {
    g.closure().graph.edges().into_iter().collect()
}

#[test]
fn closure_matches_brute_force_fixpoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(1..=n * 2);
        let edges = random_edges(&mut rng, n, m);
        let (g, _) = TemporalGraph::consistent(&edges);
        // the oracle sees exactly the kept edges
        let kept = g.edges();
        let pairs = oracle_pairs(&closure_oracle(&kept));
        let c = g.closure();
        let conflicts: BTreeSet<(String, String)> = pairs
            .iter()
            .filter(|(_, s)| s.len() > 1)
            .map(|(k, _)| k.clone())
            .collect();
        assert!(conflicts.is_empty(), "consistent subset has conflicts: {kept:?}");
        for ((a, b), s) in &pairs {
            let r: Relation = *s.iter().next().unwrap();
            assert_eq!(c.graph.relation(a, b), Some(r), "{kept:?}");
        }
        assert_eq!(c.graph.len(), pairs.len());
    }
}

#[test]
fn conflicts_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..300 {
        let n = rng.gen_range(3..=6);
        let edges = random_edges(&mut rng, n, n + 2);
        let g = TemporalGraph::from_edges(&edges);
        let pairs = oracle_pairs(&closure_oracle(&g.edges()));
        let c = g.closure();
        let mut expected: Vec<(String, String)> =
            pairs.iter().filter(|(_, s)| s.len() > 1).map(|(k, _)| k.clone()).collect();
        let mut got: Vec<(String, String)> =
            c.conflicts.iter().map(|(a, b)| if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) }).collect();
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
    }
}

#[test]
fn composition_rows() {
    for (given, (x, y, r)) in COMPOSITION_ROWS {
        let edges: Vec<Edge> = given.iter().map(|&(a, b, r)| edge(a, b, r)).collect();
        let c = TemporalGraph::from_edges(&edges).closure();
        assert_eq!(c.graph.relation(x, y), Some(r), "{given:?}");
        assert_eq!(c.derived.len(), 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn closure_is_idempotent(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random_edges(&mut rng, n, n * 2);
        let once = TemporalGraph::from_edges(&edges).closure().graph;
        let twice = once.closure().graph;
        prop_assert_eq!(once.edges(), twice.edges());
    }

    #[test]
    fn closure_is_monotone(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = random_consistent_edges(&mut rng, n, n * 2);
        let k = rng.gen_range(0..=edges.len());
        let small = closure_edges(&TemporalGraph::from_edges(&edges[..k]));
        let big = closure_edges(&TemporalGraph::from_edges(&edges));
        prop_assert!(small.is_subset(&big));
    }

    #[test]
    fn reduction_preserves_closure(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = TemporalGraph::from_edges(&random_consistent_edges(&mut rng, n, n * 2));
        let r = g.reduce();
        prop_assert!(r.len() <= g.len());
        prop_assert_eq!(closure_edges(&r), closure_edges(&g));
    }
}

#[test]
fn tempeval_hand_example() {
    let gold = vec![edge("A", "B", Before), edge("B", "C", Before)];
    let sys = vec![edge("A", "C", Before)];
    let s = tempeval3_score(&gold, &sys);
    assert_eq!(s.precision, 1.0);
    assert_eq!(s.recall, 0.0);
}

#[test]
fn tempeval_self_score_and_reduction_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let edges = random_consistent_edges(&mut rng, n, n * 2);
        if edges.is_empty() {
            continue;
        }
        let s = tempeval3_score(&edges, &edges);
        assert_eq!((s.precision, s.recall), (1.0, 1.0), "{edges:?}");
        let g = TemporalGraph::from_edges(&edges);
        assert_eq!(closure_edges(&g.reduce()), closure_edges(&g));
    }
}

#[test]
fn tempeval_closure_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..100 {
        let edges = random_consistent_edges(&mut rng, 6, 8);
        let full = TemporalGraph::from_edges(&edges).closure().graph.edges();
        let s = tempeval3_score(&edges, &full);
        assert_eq!((s.precision, s.recall), (1.0, 1.0));
    }
}
