//! End to end on a synthetic corpus: train, tag a held-out note and print
//! its timeline.

use clintime::corpus::Document;
use clintime::pipeline::{build_timeline, generate_corpus, timeline_table, train_models, Pipeline, PipelineConfig, SyntheticConfig};

fn main() {
    let corpus = generate_corpus(&SyntheticConfig { documents: 31, ..Default::default() });
    let (train, held_out) = corpus.split_at(30);
    let pipeline = Pipeline::new(PipelineConfig { label_fixer: false, ..Default::default() }).unwrap();
    let models = train_models(&pipeline, train).unwrap();
    let pipeline = pipeline.with_models(models.events, Some(models.ter));

    let gold = &held_out[0];
    let mut doc = Document::new(gold.doc.id.clone(), gold.doc.text());
    doc.meta = gold.doc.meta.clone();
    let tagged = pipeline.tag_document(doc).unwrap();
    println!("{}\n", tagged.doc.doc.text());
    print!("{}", timeline_table(&build_timeline(&tagged.doc)));
    for w in &tagged.warnings {
        println!("warning: {w}");
    }
}
