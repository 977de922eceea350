//! Builds a small annotated note, writes it as standoff and parses it back.

use clintime::corpus::{
    parse_standoff, to_standoff_string, AnnotatedDocument, Document, EventCategory, EventMention, LinkOrigin, Modifier,
    Relation, Span, TLink, TimexMention, TimexType,
};

fn main() {
    let text = "Chest pain began on 03/08/2012.";
    let doc = Document::new("note1", text).with_meta("dct", "2012-03-10");
    let mut ad = AnnotatedDocument::new(doc);
    ad.events.push(EventMention { id: "E1".into(), span: Span::new(0, 10), category: EventCategory::Problem, negated: false });
    ad.timexes.push(TimexMention {
        id: "T1".into(),
        span: Span::new(20, 30),
        ttype: TimexType::Date,
        value: "2012-03-08".into(),
        modifier: Modifier::NA,
    });
    ad.tlinks.push(TLink {
        id: "L1".into(),
        source: "E1".into(),
        target: "T1".into(),
        relation: Relation::Overlap,
        origin: LinkOrigin::Prepositional,
    });
    ad.validate().expect("offsets inside the text");

    let s = to_standoff_string(&ad);
    print!("{s}");
    let back = parse_standoff(&s).expect("round trip");
    assert_eq!(back, ad);
    println!("round trip ok: {} event, {} timex, {} link", back.events.len(), back.timexes.len(), back.tlinks.len());
}
