mod common;

use clintime::corpus::{EventCategory::*, LinkOrigin, Relation, Relation::*, TimexType, ST_DCT, ST_DISCHARGE};
use clintime::string_sim::{build_stats, soft_tfidf, SoftTfidfParams};
use clintime::tlink::{
    detect_sections, extract_all, extract_coref, extract_intra, extract_sectime, resolve_section_times, IntraRules,
    SectimeConfig, SectionLexicon, TlinkConfig, COREF_THRESHOLD,
};
use common::annotate;
use common::fixtures::*;

fn intra(
    text: &str,
    events: &[(&str, clintime::corpus::EventCategory)],
    timexes: &[(&str, TimexType)],
) -> Vec<(String, String, Relation)> {
    let ad = annotate(text, events, timexes);
    extract_intra(&ad, &IntraRules::bundled())
        .into_iter()
        .map(|l| (l.source, l.target, l.relation))
        .collect()
}

#[test]
fn pattern_rows() {
    for case in PATTERN_ROWS {
        let (a, b, r) = case.link;
        assert_eq!(intra(case.text, case.events, case.timexes), vec![(a.to_string(), b.to_string(), r)], "{}", case.text);
    }
}

#[test]
fn worked_sentences() {
    let ad = annotate(WORKED_TEXT, WORKED_EVENTS, WORKED_TIMEXES);
    let cfg = TlinkConfig { enable_sectime: false, enable_coref: false, ..Default::default() };
    let mut got: Vec<(String, String, Relation)> =
        extract_all(&ad, &cfg, None).links.into_iter().map(|l| (l.source, l.target, l.relation)).collect();
    got.sort();
    let want: Vec<(String, String, Relation)> =
        WORKED_LINKS.iter().map(|&(a, b, r)| (a.to_string(), b.to_string(), r)).collect();
    assert_eq!(got, want);
}

#[test]
fn section_times() {
    let text = "HISTORY OF PRESENT ILLNESS:\nShe had chest pain.\n\nHOSPITAL COURSE:\nShe was given aspirin.\n";
    let mut ad = annotate(text, &[("chest pain", Problem), ("aspirin", Treatment)], &[]);
    ad.doc = ad.doc.clone().with_meta("admission", "2012-03-01").with_meta("discharge", "2012-03-05");
    ad.sections = detect_sections(&ad.doc, &SectionLexicon::bundled());
    let links = extract_sectime(&ad, &resolve_section_times(&ad), &SectimeConfig::default()).unwrap();
    let got: Vec<(&str, &str, Relation)> = links.iter().map(|l| (l.source.as_str(), l.target.as_str(), l.relation)).collect();
    assert_eq!(got, vec![("E1", "ST-ADMISSION", Before), ("E2", ST_DISCHARGE, Before)]);
    assert!(links.iter().all(|l| l.origin == LinkOrigin::Sectime));

    let mut ad = annotate("Weight and blood pressure were checked. She has gout.", &[("Weight", Test), ("blood pressure", Test), ("gout", Problem)], &[]);
    ad.doc = ad.doc.clone().with_meta("dct", "2012-03-10");
    let links = extract_sectime(&ad, &resolve_section_times(&ad), &SectimeConfig::default()).unwrap();
    let got: Vec<(&str, &str, Relation)> = links.iter().map(|l| (l.source.as_str(), l.target.as_str(), l.relation)).collect();
    assert_eq!(got, vec![("E1", ST_DCT, Overlap), ("E2", ST_DCT, Overlap), ("E3", ST_DCT, Before)]);
}

#[test]
fn coreference_threshold() {
    let text = "She had chest pain. Later the chest pains resolved. Her fever persisted.";
    let ad = annotate(text, &[("chest pain", Problem), ("chest pains", Problem), ("fever", Problem)], &[]);
    let stats = build_stats(&["chest pain", "chest pains", "fever"]).unwrap();
    let p = SoftTfidfParams::default();
    let links = extract_coref(&ad, &stats, &p, COREF_THRESHOLD);
    assert_eq!(links.len(), 1);
    assert_eq!((links[0].source.as_str(), links[0].target.as_str(), links[0].relation), ("E1", "E2", Overlap));
    for l in &links {
        let s = |id: &str| ad.surface(ad.event(id).unwrap().span).to_string();
        assert!(soft_tfidf(&s(&l.source), &s(&l.target), &stats, &p) >= COREF_THRESHOLD);
    }
    // the same pair scores 0.9648, so a higher bar drops it
    assert!(extract_coref(&ad, &stats, &p, 0.97).is_empty());
}
