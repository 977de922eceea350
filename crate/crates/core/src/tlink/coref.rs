use crate::corpus::{AnnotatedDocument, LinkOrigin, Relation, TLink};
use crate::string_sim::{soft_tfidf, SoftTfidfParams, TfidfCorpusStats};

pub const COREF_THRESHOLD: f64 = 0.8;

/// Compares every unordered pair of events and links those whose SoftTFIDF
/// score reaches `threshold` with Overlap, earlier event as source.
pub fn extract_coref(
    ad: &AnnotatedDocument,
    stats: &TfidfCorpusStats,
    params: &SoftTfidfParams,
    threshold: f64,
) -> Vec<TLink> {
    let surfaces: Vec<&str> = ad.events.iter().map(|e| ad.surface(e.span)).collect();
    let mut out = Vec::new();
    for i in 0..ad.events.len() {
        for j in i + 1..ad.events.len() {
            if soft_tfidf(surfaces[i], surfaces[j], stats, params) >= threshold {
                out.push(TLink {
                    id: String::new(),
                    source: ad.events[i].id.clone(),
                    target: ad.events[j].id.clone(),
                    relation: Relation::Overlap,
                    origin: LinkOrigin::Coref,
                });
            }
        }
    }
    out
}
