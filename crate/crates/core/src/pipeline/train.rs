use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;

use crate::corpus::{AnnotatedDocument, EventCategory};
use crate::crf::{train_with_report, CrfModel, LabelSchema, TrainParams, TrainReport};
use crate::events::{event_templates, event_training_sequences};
use crate::tern::{ter_schema, ter_templates, ter_training_sequences};

use super::{Pipeline, PipelineError};

pub const TER_MODEL_FILE: &str = "ter.model.json";

pub fn model_file(cat: EventCategory) -> String {
    format!("{}.model.json", cat.as_str().to_lowercase())
}

pub struct TrainedModels {
    pub events: BTreeMap<EventCategory, CrfModel>,
    pub ter: CrfModel,
    pub reports: Vec<(String, TrainReport)>,
}

impl TrainedModels {
    pub fn save(&self, dir: &Path) -> Result<(), PipelineError> {
        std::fs::create_dir_all(dir).map_err(|e| PipelineError::io(dir, e))?;
        for (cat, m) in &self.events {
            let p = dir.join(model_file(*cat));
            m.save(&p).map_err(|e| PipelineError::resource(&p, e))?;
        }
        let p = dir.join(TER_MODEL_FILE);
        self.ter.save(&p).map_err(|e| PipelineError::resource(&p, e))
    }
}

/// Trains one model per EVENT category with the configured schema and the
/// IO model for temporal expressions. Gold documents are preprocessed with
/// the pipeline's own tokenizer and gazetteer.
pub fn train_models(pipeline: &Pipeline, corpus: &[AnnotatedDocument]) -> Result<TrainedModels, PipelineError> {
    if corpus.is_empty() {
        return Err(PipelineError::EmptyCorpus);
    }
    let cfg = &pipeline.config;
    let params = TrainParams {
        c: cfg.crf_c,
        eta: cfg.crf_eta,
        max_iter: cfg.crf_max_iter,
        ..TrainParams::default()
    };
    let docs: Vec<AnnotatedDocument> = corpus
        .iter()
        .map(|g| {
            let mut ad = pipeline.preprocess(g.doc.clone());
            ad.events = g.events.clone();
            ad.timexes = g.timexes.clone();
            ad
        })
        .collect();
    let crf = |doc: &str| {
        let doc = doc.to_string();
        move |source| PipelineError::Crf { doc, source }
    };
    let mut events = BTreeMap::new();
    let mut reports = Vec::new();
    for cat in [EventCategory::Problem, EventCategory::Treatment, EventCategory::Test] {
        let schema = LabelSchema::new(cfg.schema(cat), cat.as_str());
        let mut data = Vec::new();
        for ad in &docs {
            data.extend(event_training_sequences(ad, cat, &schema).map_err(crf(&ad.doc.id))?);
        }
        let (m, r) = train_with_report(&data, Some(&schema), &event_templates(), &params).map_err(crf("<corpus>"))?;
        events.insert(cat, m);
        reports.push((cat.as_str().to_string(), r));
    }
    let ter_data: Vec<_> = docs
        .par_iter()
        .map(|ad| ter_training_sequences(ad).map_err(crf(&ad.doc.id)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let (ter, r) =
        train_with_report(&ter_data, Some(&ter_schema()), &ter_templates(), &params).map_err(crf("<corpus>"))?;
    reports.push(("TIMEX".to_string(), r));
    Ok(TrainedModels { events, ter, reports })
}
