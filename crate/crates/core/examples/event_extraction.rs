//! Trains EVENT models on a synthetic corpus and tags a new note,
//! including negation.

use clintime::pipeline::{generate_corpus, train_models, Pipeline, PipelineConfig, SyntheticConfig};
use clintime::corpus::Document;

fn main() {
    let corpus = generate_corpus(&SyntheticConfig { documents: 30, ..Default::default() });
    let config = PipelineConfig { tern: false, tlink: false, ..Default::default() };
    let pipeline = Pipeline::new(config).unwrap();
    let models = train_models(&pipeline, &corpus).unwrap();
    for (name, r) in &models.reports {
        println!("{name}: {} iterations, converged {}", r.iterations, r.converged);
    }

    let text = "The patient reported chest pain and was given aspirin. A chest x-ray showed no pneumonia.";
    // the label fixer turns a lone B into B I, which lengthens single-token
    // mentions by one token
    for label_fixer in [true, false] {
        let config = PipelineConfig { tern: false, tlink: false, label_fixer, ..Default::default() };
        let p = Pipeline::new(config).unwrap().with_models(models.events.clone(), None);
        let tagged = p.tag_document(Document::new("note", text)).unwrap();
        println!("label fixer {label_fixer}:");
        for e in &tagged.doc.events {
            let neg = if e.negated { " (negated)" } else { "" };
            println!("  {} {:<9} {}{neg}", e.id, e.category.as_str(), tagged.doc.surface(e.span));
        }
    }
}
