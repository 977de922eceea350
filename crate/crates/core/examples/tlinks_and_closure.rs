//! Intra-sentence TLINK rules on hand-annotated sentences, then closure
//! and reduction of the resulting graph.

use std::collections::BTreeMap;

use clintime::corpus::{AnnotatedDocument, Document, EventCategory, EventMention, Span};
use clintime::preproc::{preprocess, BaselineTagger, Gazetteer};
use clintime::tlink::{extract_intra, IntraRules, TemporalGraph};

fn main() {
    let text = "She had a rash and fever after penicillin. He received steroids for swelling.";
    let mut ad = AnnotatedDocument::new(Document::new("d", text));
    preprocess(&mut ad, &BaselineTagger, &Gazetteer::bundled());
    let events = [
        ("a rash", EventCategory::Problem),
        ("fever", EventCategory::Problem),
        ("penicillin", EventCategory::Treatment),
        ("steroids", EventCategory::Treatment),
        ("swelling", EventCategory::Problem),
    ];
    for (i, (s, c)) in events.iter().enumerate() {
        let start = text.find(s).unwrap();
        ad.events.push(EventMention { id: format!("E{}", i + 1), span: Span::new(start, start + s.len()), category: *c, negated: false });
    }
    let names: BTreeMap<String, &str> = events.iter().enumerate().map(|(i, (s, _))| (format!("E{}", i + 1), *s)).collect();

    let links = extract_intra(&ad, &IntraRules::bundled());
    for l in &links {
        println!("{:<10} {:<7} {:<10} {:?}", names[&l.source], l.relation.as_str(), names[&l.target], l.origin);
    }
    let (g, rejected) = TemporalGraph::from_links(&links);
    assert!(rejected.is_empty());
    let c = g.closure();
    for (a, b, r) in &c.derived {
        println!("derived: {} {} {}", names[a], r.as_str(), names[b]);
    }
    println!("{} edges, {} after closure, {} after reduction", g.len(), c.graph.len(), c.graph.reduce().len());
}
