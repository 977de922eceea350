//! Tokenization, sentence splitting, stemming, POS/chunk tags and
//! gazetteer tags for a short note.

use clintime::corpus::{AnnotatedDocument, Document};
use clintime::preproc::{preprocess, BaselineTagger, Gazetteer};

fn main() {
    let text = "HOSPITAL COURSE:\nDr. Smith started aspirin 81 mg bid on Monday. No fever for two days.";
    let mut ad = AnnotatedDocument::new(Document::new("d", text));
    preprocess(&mut ad, &BaselineTagger, &Gazetteer::bundled());
    for (i, s) in ad.sentences.iter().enumerate() {
        println!("sentence {i}: {:?}", ad.surface(s.span));
        for t in &ad.tokens[s.tokens.clone()] {
            println!(
                "  {:<10} {:<8} {:<5} {:<5} {:<12} {}",
                t.text,
                t.stem,
                t.pos,
                t.chunk,
                t.kind.as_str(),
                t.dictionary_feature()
            );
        }
    }
}
