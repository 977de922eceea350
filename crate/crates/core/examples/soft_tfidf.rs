//! SoftTFIDF scores between event surfaces and the co-reference decision
//! at the default threshold.

use clintime::string_sim::{build_stats, jaro_winkler, soft_tfidf, SoftTfidfParams};
use clintime::tlink::COREF_THRESHOLD;

fn main() {
    println!("JW(MARTHA, MARHTA) = {:.4}", jaro_winkler("MARTHA", "MARHTA"));
    let surfaces = ["chest pain", "chest pains", "the chest pain", "fever", "fevers", "back pain", "abdominal pain"];
    let stats = build_stats(&surfaces).unwrap();
    let p = SoftTfidfParams::default();
    for (i, a) in surfaces.iter().enumerate() {
        for b in &surfaces[i + 1..] {
            let s = soft_tfidf(a, b, &stats, &p);
            let mark = if s >= COREF_THRESHOLD { "coref" } else { "" };
            println!("{a:>15} | {b:<15} {s:.4} {mark}");
        }
    }
}
