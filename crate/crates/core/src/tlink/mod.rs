//! Temporal links: intra-sentence rules, section-time anchoring,
//! co-reference by string similarity, and transitive closure.

mod coref;
mod graph;
mod intra;
mod sectime;

use std::collections::HashSet;

use crate::corpus::{AnnotatedDocument, LinkOrigin, Relation, TLink, ST_ADMISSION, ST_DISCHARGE};
use crate::string_sim::{build_stats, SoftTfidfParams, TfidfCorpusStats};

pub use coref::{extract_coref, COREF_THRESHOLD};
pub use graph::{canonical_edge, Closure, Edge, Insert, TemporalGraph};
pub use intra::{extract_intra, AnchorType, IntraKind, IntraRule, IntraRuleError, IntraRules, TypePattern};
pub use sectime::{
    detect_sections, extract_sectime, parse_routine, resolve_section_times, SectimeConfig, SectimeError,
    SectionClass, SectionLexicon, SectionTimes,
};

#[derive(Debug, Clone)]
pub struct TlinkConfig {
    pub intra_rules: IntraRules,
    pub sectime: SectimeConfig,
    pub similarity: SoftTfidfParams,
    pub coref_threshold: f64,
    pub enable_intra: bool,
    pub enable_sectime: bool,
    pub enable_coref: bool,
    pub closure: bool,
}

impl Default for TlinkConfig {
    fn default() -> Self {
        TlinkConfig {
            intra_rules: IntraRules::bundled(),
            sectime: SectimeConfig::default(),
            similarity: SoftTfidfParams::default(),
            coref_threshold: COREF_THRESHOLD,
            enable_intra: true,
            enable_sectime: true,
            enable_coref: true,
            closure: false,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct TlinkOutput {
    pub links: Vec<TLink>,
    pub warnings: Vec<String>,
    /// Pairs left unlinked because closure implied contradictory relations.
    pub conflicts: Vec<(String, String)>,
}

fn pair_key(l: &TLink) -> (String, String) {
    if l.source <= l.target {
        (l.source.clone(), l.target.clone())
    } else {
        (l.target.clone(), l.source.clone())
    }
}

/// Keeps one link per unordered pair: the one from the earliest stage, and
/// among those the first.
pub fn dedup_links(links: Vec<TLink>) -> Vec<TLink> {
    let mut indexed: Vec<(usize, TLink)> = links.into_iter().enumerate().collect();
    indexed.sort_by_key(|(i, l)| (l.origin.stage(), *i));
    let mut seen = HashSet::new();
    let mut kept: Vec<(usize, TLink)> = indexed.into_iter().filter(|(_, l)| seen.insert(pair_key(l))).collect();
    kept.sort_by_key(|(i, _)| *i);
    kept.into_iter().map(|(_, l)| l).collect()
}

/// Runs the enabled link extractors over a document whose sections, events
/// and timexes are filled. `stats` are the batch-level SoftTFIDF statistics;
/// without them statistics are built from this document's events. Links get
/// ids `L1`, `L2`, ...
pub fn extract_all(ad: &AnnotatedDocument, cfg: &TlinkConfig, stats: Option<&TfidfCorpusStats>) -> TlinkOutput {
    let mut out = TlinkOutput::default();
    let mut links = Vec::new();
    if cfg.enable_intra {
        links.extend(extract_intra(ad, &cfg.intra_rules));
    }
    let times = resolve_section_times(ad);
    if cfg.enable_sectime {
        match extract_sectime(ad, &times, &cfg.sectime) {
            Ok(l) => links.extend(l),
            Err(e) => out.warnings.push(e.to_string()),
        }
    }
    if cfg.enable_coref && ad.events.len() > 1 {
        let own;
        let stats = match stats {
            Some(s) => Some(s),
            None => {
                let surfaces: Vec<&str> = ad.events.iter().map(|e| ad.surface(e.span)).collect();
                own = build_stats(&surfaces).ok();
                own.as_ref()
            }
        };
        if let Some(s) = stats {
            links.extend(extract_coref(ad, s, &cfg.similarity, cfg.coref_threshold));
        }
    }
    let mut links = dedup_links(links);
    if cfg.closure {
        let (mut g, rejected) = TemporalGraph::from_links(&links);
        for r in rejected {
            out.warnings
                .push(format!("conflicting link {} {} {} ignored by closure", r.source, r.relation, r.target));
        }
        // admission precedes discharge
        if times.admission.is_some() && times.discharge.is_some() {
            g.insert(ST_ADMISSION, ST_DISCHARGE, Relation::Before);
        }
        let c = g.closure();
        for (a, b, r) in c.derived {
            if a == ST_ADMISSION && b == ST_DISCHARGE {
                continue;
            }
            links.push(TLink {
                id: String::new(),
                source: a,
                target: b,
                relation: r,
                origin: LinkOrigin::Closure,
            });
        }
        out.conflicts = c.conflicts;
    }
    for (i, l) in links.iter_mut().enumerate() {
        l.id = format!("L{}", i + 1);
    }
    out.links = links;
    out
}
