//! TempEval-3 temporal awareness scores against plain pairwise matching.

use clintime::corpus::Relation::*;
use clintime::eval::{customary_counts, tempeval3_score};
use clintime::tlink::Edge;

fn e(a: &str, b: &str, r: clintime::corpus::Relation) -> Edge {
    (a.into(), b.into(), r)
}

fn main() {
    let gold = vec![e("A", "B", Before), e("B", "C", Before), e("C", "D", Overlap)];
    let systems = [
        ("implied only", vec![e("A", "C", Before)]),
        ("inverse form", vec![e("B", "A", After), e("C", "B", After)]),
        ("one wrong", vec![e("A", "B", Before), e("D", "C", Before)]),
        ("closure of gold", vec![e("A", "B", Before), e("B", "C", Before), e("C", "D", Overlap), e("A", "D", Before)]),
    ];
    println!("{:<16} {:>6} {:>6} {:>6} | pairwise F1", "system", "P", "R", "F1");
    for (name, sys) in &systems {
        let s = tempeval3_score(&gold, sys);
        let f1 = clintime::eval::f1(s.precision, s.recall);
        println!("{name:<16} {:>6.3} {:>6.3} {f1:>6.3} | {:.3}", s.precision, s.recall, customary_counts(&gold, sys).f1());
    }
}
