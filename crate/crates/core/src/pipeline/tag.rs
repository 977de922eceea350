use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;

use crate::corpus::{AnnotatedDocument, Document, EventCategory};
use crate::crf::CrfModel;
use crate::events::{extract_events, parse_word_list, EventConfig, NegationLexicon};
use crate::preproc::{preprocess, BaselineTagger, Gazetteer};
use crate::string_sim::{build_stats, SoftTfidfParams, TfidfCorpusStats};
use crate::tern::{extract_timexes, NormContext, RuleSet, TernConfig};
use crate::tlink::{detect_sections, extract_all, parse_routine, IntraRules, SectionLexicon, TlinkConfig};

use super::train::{model_file, TER_MODEL_FILE};
use super::{PipelineConfig, PipelineError};

fn read(path: &Path) -> Result<String, PipelineError> {
    std::fs::read_to_string(path).map_err(|e| PipelineError::io(path, e))
}

#[derive(Debug, Clone)]
pub struct TaggedDocument {
    pub doc: AnnotatedDocument,
    pub warnings: Vec<String>,
}

/// Loaded resources and models. Immutable once built, so one pipeline
/// serves any number of worker threads.
pub struct Pipeline {
    pub config: PipelineConfig,
    gazetteer: Gazetteer,
    events: EventConfig,
    tern: TernConfig,
    tlink: TlinkConfig,
    event_models: BTreeMap<EventCategory, CrfModel>,
    ter_model: Option<CrfModel>,
}

impl Pipeline {
    /// Loads every lexicon and rule file the configuration names, falling
    /// back to the bundled ones. No models are loaded.
    pub fn new(config: PipelineConfig) -> Result<Self, PipelineError> {
        let gazetteer = match &config.gazetteer_dir {
            Some(d) => Gazetteer::load_dir(d).map_err(|e| PipelineError::resource(d, e))?,
            None => Gazetteer::bundled(),
        };
        let mut events = EventConfig::default();
        events.postprocess.enable_label_fixer = config.label_fixer;
        events.postprocess.enable_boundary_adjust = config.boundary_adjust;
        events.postprocess.enable_fp_filter = config.fp_filter;
        events.detect_negation = config.negation;
        events.constrained_decoding = config.constrained_decoding;
        if let Some(p) = &config.fp_lexicon {
            events.postprocess.fp_lexicon = parse_word_list(&read(p)?);
        }
        if let (Some(t), Some(x)) = (&config.negation_triggers, &config.negation_terminators) {
            events.negation = NegationLexicon::parse(&read(t)?, &read(x)?).map_err(|e| PipelineError::resource(t, e))?;
        }
        let mut tern = TernConfig {
            use_rules: config.ter_rules_enabled,
            use_ml: config.ter_ml,
            post_filter: config.ter_post_filter,
            ..TernConfig::default()
        };
        if let Some(p) = &config.ter_rules {
            tern.rules = RuleSet::load(p).map_err(|e| PipelineError::resource(p, e))?;
        }
        let mut tlink = TlinkConfig {
            similarity: SoftTfidfParams {
                inner_threshold: config.inner_threshold,
            },
            coref_threshold: config.coref_threshold,
            enable_intra: config.intra,
            enable_sectime: config.sectime,
            enable_coref: config.coref,
            closure: config.closure,
            ..TlinkConfig::default()
        };
        if let Some(p) = &config.intra_rules {
            tlink.intra_rules = IntraRules::load(p).map_err(|e| PipelineError::resource(p, e))?;
        }
        if let Some(p) = &config.section_lexicon {
            tlink.sectime.sections = SectionLexicon::load(p).map_err(|e| PipelineError::resource(p, e))?;
        }
        if let Some(p) = &config.routine_lexicon {
            tlink.sectime.routine = parse_routine(&read(p)?);
        }
        Ok(Pipeline {
            config,
            gazetteer,
            events,
            tern,
            tlink,
            event_models: BTreeMap::new(),
            ter_model: None,
        })
    }

    pub fn with_models(mut self, events: BTreeMap<EventCategory, CrfModel>, ter: Option<CrfModel>) -> Self {
        self.event_models = events;
        self.ter_model = ter;
        self
    }

    /// Reads the category models (all required when event extraction is
    /// on) and the TER model (optional) from `dir`.
    pub fn load_models(mut self, dir: &Path) -> Result<Self, PipelineError> {
        let load = |p: &Path| CrfModel::load(p).map_err(|e| PipelineError::resource(p, e));
        if self.config.events {
            for cat in [EventCategory::Problem, EventCategory::Treatment, EventCategory::Test] {
                let p = dir.join(model_file(cat));
                if !p.exists() {
                    return Err(PipelineError::MissingModel(p));
                }
                self.event_models.insert(cat, load(&p)?);
            }
        }
        let p = dir.join(TER_MODEL_FILE);
        if self.config.tern && self.config.ter_ml && p.exists() {
            self.ter_model = Some(load(&p)?);
        }
        Ok(self)
    }

    pub fn gazetteer(&self) -> &Gazetteer {
        &self.gazetteer
    }

    /// Tokens, sentences, tags and sections.
    pub fn preprocess(&self, doc: Document) -> AnnotatedDocument {
        let mut ad = AnnotatedDocument::new(doc);
        preprocess(&mut ad, &BaselineTagger, &self.gazetteer);
        ad.sections = detect_sections(&ad.doc, &self.tlink.sectime.sections);
        ad
    }

    fn extract_mentions(&self, doc: Document) -> Result<AnnotatedDocument, PipelineError> {
        let mut ad = self.preprocess(doc);
        let crf = |source| PipelineError::Crf {
            doc: ad.doc.id.clone(),
            source,
        };
        if self.config.events {
            ad.events = extract_events(&ad, &self.event_models, &self.events).map_err(crf)?;
        }
        if self.config.tern {
            let ctx = NormContext::from_document(&ad.doc);
            ad.timexes = extract_timexes(&ad, self.ter_model.as_ref(), ctx.as_ref(), &self.tern).map_err(crf)?;
        }
        Ok(ad)
    }

    /// SoftTFIDF statistics over every event surface of a batch, in batch
    /// order.
    pub fn batch_stats(docs: &[&AnnotatedDocument]) -> Option<TfidfCorpusStats> {
        let surfaces: Vec<&str> = docs
            .iter()
            .flat_map(|ad| ad.events.iter().map(|e| ad.surface(e.span)))
            .collect();
        build_stats(&surfaces).ok()
    }

    /// Runs the full pipeline over a batch on `config.workers` threads.
    /// Results keep the input order and do not depend on the worker count;
    /// a failing document yields an error without affecting the others,
    /// except that co-reference statistics are shared by the whole batch.
    pub fn tag_batch(&self, docs: Vec<Document>) -> Vec<Result<TaggedDocument, PipelineError>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.config.workers.max(1))
            .build()
            .expect("thread pool");
        pool.install(|| {
            let stage1: Vec<Result<AnnotatedDocument, PipelineError>> =
                docs.into_par_iter().map(|d| self.extract_mentions(d)).collect();
            let ok: Vec<&AnnotatedDocument> = stage1.iter().filter_map(|r| r.as_ref().ok()).collect();
            let stats = Self::batch_stats(&ok);
            stage1
                .into_par_iter()
                .map(|r| r.map(|ad| self.link(ad, stats.as_ref())))
                .collect()
        })
    }

    fn link(&self, mut ad: AnnotatedDocument, stats: Option<&TfidfCorpusStats>) -> TaggedDocument {
        let mut warnings = Vec::new();
        if self.config.tlink {
            let out = extract_all(&ad, &self.tlink, stats);
            ad.tlinks = out.links;
            warnings = out.warnings;
            warnings.extend(
                out.conflicts
                    .iter()
                    .map(|(a, b)| format!("closure left {a} and {b} unlinked: contradictory relations")),
            );
        }
        TaggedDocument { doc: ad, warnings }
    }

    pub fn tag_document(&self, doc: Document) -> Result<TaggedDocument, PipelineError> {
        self.tag_batch(vec![doc]).pop().expect("one result")
    }
}
