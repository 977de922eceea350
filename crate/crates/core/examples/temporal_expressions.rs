//! Rule-based recognition, post filtering and normalization of temporal
//! expressions against a document date.

use clintime::corpus::{AnnotatedDocument, Document};
use clintime::preproc::{preprocess, BaselineTagger, Gazetteer};
use clintime::tern::{extract_timexes, normalize_surface, NormContext, TernConfig};
use clintime::corpus::TimexType;

fn main() {
    let text = "Admitted on 03/08/2012 with fever for two days. Started ceftriaxone bid. \
                BP 120/80, call 555-123-4567. Follow up next Monday at 10:30 am.";
    let doc = Document::new("d", text).with_meta("dct", "2012-03-10");
    let mut ad = AnnotatedDocument::new(doc);
    preprocess(&mut ad, &BaselineTagger, &Gazetteer::bundled());
    let ctx = NormContext::from_document(&ad.doc);
    let found = extract_timexes(&ad, None, ctx.as_ref(), &TernConfig::default()).unwrap();
    for t in &found {
        println!("{} {:<9} {:<24} {} {}", t.id, t.ttype.as_str(), ad.surface(t.span), t.value, t.modifier.as_str());
    }

    let ctx = NormContext::parse("2012-03-10").unwrap();
    for (s, ty) in [("three days ago", TimexType::Date), ("q4h", TimexType::Frequency), ("six months", TimexType::Duration)] {
        println!("{s:>16} -> {:?}", normalize_surface(s, ty, &ctx).map(|v| v.0));
    }
}
