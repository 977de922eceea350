//! Trains a BIO model on a few hand-labelled lines in CRF++ column format
//! and decodes an unseen sentence.

use clintime::crf::{
    decode_labels, parse_templates, train_with_report, FeatureMatrix, LabelSchema, SchemaKind, TrainParams,
};

const DATA: &str = "\
he PRP O
denies VBZ O
chest NN B
pain NN I

she PRP O
reports VBZ O
back NN B
pain NN I

no DT O
fever NN B
";

fn main() {
    // a position column is prepended, so the word is column 1 and the POS tag column 2
    let data = FeatureMatrix::parse_training_text(DATA);
    let templates = parse_templates("U00:%x[-1,1]\nU01:%x[0,1]\nU02:%x[1,1]\nU03:%x[0,2]\nU04:%x[-1,1]/%x[0,1]\n").unwrap();
    let schema = LabelSchema::new(SchemaKind::BIO, "Problem");
    let (model, report) = train_with_report(&data, Some(&schema), &templates, &TrainParams::default()).unwrap();
    println!(
        "{} features, {} iterations, objective {:.3} -> {:.3}",
        model.features().len(),
        report.iterations,
        report.initial_objective(),
        report.final_objective()
    );

    let words = ["patient", "denies", "back", "pain"];
    let pos = ["NN", "VBZ", "NN", "NN"];
    let m = FeatureMatrix::new(words.iter().zip(pos).enumerate().map(|(i, (w, p))| vec![i.to_string(), w.to_string(), p.to_string()]).collect());
    let labels = model.decode_constrained(&m, &schema).unwrap();
    println!("{:?}", words.iter().zip(&labels).collect::<Vec<_>>());
    for r in decode_labels(&labels, &schema) {
        println!("mention: {}", words[r].join(" "));
    }
}
