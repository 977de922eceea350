use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::viterbi::viterbi;
use super::{expand_features, log_sum_exp, parse_templates, CrfError, FeatureMatrix, FeatureTemplate, LabelSchema};

const FORMAT: &str = "clintime-crf";
const VERSION: u32 = 1;

/// A trained linear-chain CRF.
///
/// Weight layout: state weight of feature `f` for label `y` at `f·L + y`,
/// then the `L × L` transition block, row = previous label.
#[derive(Debug, Clone)]
pub struct CrfModel {
    labels: Vec<String>,
    features: Vec<String>,
    index: HashMap<String, u32>,
    weights: Vec<f64>,
    templates: Vec<FeatureTemplate>,
    c: f64,
    eta: f64,
    schema: Option<LabelSchema>,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format: String,
    version: u32,
    schema: Option<String>,
    entity: Option<String>,
    c: f64,
    eta: f64,
    labels: Vec<String>,
    templates: Vec<String>,
    features: Vec<String>,
    weights: Vec<f64>,
}

impl CrfModel {
    pub fn from_parts(
        labels: Vec<String>,
        features: Vec<String>,
        weights: Vec<f64>,
        templates: Vec<FeatureTemplate>,
        c: f64,
        eta: f64,
        schema: Option<LabelSchema>,
    ) -> Result<Self, CrfError> {
        let l = labels.len();
        if l == 0 {
            return Err(CrfError::Model("label set is empty".into()));
        }
        if weights.len() != features.len() * l + l * l {
            return Err(CrfError::Model(format!(
                "expected {} weights, found {}",
                features.len() * l + l * l,
                weights.len()
            )));
        }
        if !(c > 0.0) {
            return Err(CrfError::Model(format!("regularization constant {c} must be positive")));
        }
        let index: HashMap<String, u32> = features
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i as u32))
            .collect();
        if index.len() != features.len() {
            return Err(CrfError::Model("duplicate feature strings".into()));
        }
        Ok(CrfModel {
            labels,
            features,
            index,
            weights,
            templates,
            c,
            eta,
            schema,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn features(&self) -> &[String] {
        &self.features
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn templates(&self) -> &[FeatureTemplate] {
        &self.templates
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn schema(&self) -> Option<&LabelSchema> {
        self.schema.as_ref()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn transitions(&self) -> &[f64] {
        &self.weights[self.features.len() * self.labels.len()..]
    }

    fn unary(&self, matrix: &FeatureMatrix) -> Result<Vec<Vec<f64>>, CrfError> {
        let l = self.labels.len();
        let expanded = expand_features(matrix, &self.templates)?;
        Ok(expanded
            .iter()
            .map(|feats| {
                let mut row = vec![0.0; l];
                for f in feats {
                    if let Some(&id) = self.index.get(f) {
                        let base = id as usize * l;
                        for (y, r) in row.iter_mut().enumerate() {
                            *r += self.weights[base + y];
                        }
                    }
                }
                row
            })
            .collect())
    }

    /// Highest-scoring label sequence. Ties go to the lexicographically
    /// smallest sequence.
    pub fn decode(&self, matrix: &FeatureMatrix) -> Result<Vec<String>, CrfError> {
        let unary = self.unary(matrix)?;
        let path = viterbi(&unary, self.transitions(), None, None);
        Ok(path.into_iter().map(|y| self.labels[y].clone()).collect())
    }

    /// Decode with schema-invalid transitions, starts and ends forbidden.
    pub fn decode_constrained(
        &self,
        matrix: &FeatureMatrix,
        schema: &LabelSchema,
    ) -> Result<Vec<String>, CrfError> {
        let l = self.labels.len();
        let unary = self.unary(matrix)?;
        let mut trans = self.transitions().to_vec();
        let mut start = vec![0.0; l];
        let mut end = vec![0.0; l];
        for (y, cur) in self.labels.iter().enumerate() {
            if !schema.allowed(None, cur) {
                start[y] = f64::NEG_INFINITY;
            }
            if !schema.allowed_end(cur) {
                end[y] = f64::NEG_INFINITY;
            }
            for (p, prev) in self.labels.iter().enumerate() {
                if !schema.allowed(Some(prev), cur) {
                    trans[p * l + y] = f64::NEG_INFINITY;
                }
            }
        }
        let path = viterbi(&unary, &trans, Some(&start), Some(&end));
        Ok(path.into_iter().map(|y| self.labels[y].clone()).collect())
    }

    /// Unnormalized score of a label path.
    pub fn path_score(&self, matrix: &FeatureMatrix, labels: &[String]) -> Result<f64, CrfError> {
        let unary = self.unary(matrix)?;
        let ids = self.label_ids(labels)?;
        let l = self.labels.len();
        let trans = self.transitions();
        let mut s = 0.0;
        for (t, &y) in ids.iter().enumerate() {
            s += unary[t][y];
            if t > 0 {
                s += trans[ids[t - 1] * l + y];
            }
        }
        Ok(s)
    }

    /// `log p(labels | matrix)`.
    pub fn log_prob(&self, matrix: &FeatureMatrix, labels: &[String]) -> Result<f64, CrfError> {
        if labels.len() != matrix.len() {
            return Err(CrfError::Model("label count differs from token count".into()));
        }
        if labels.is_empty() {
            return Ok(0.0);
        }
        let unary = self.unary(matrix)?;
        let l = self.labels.len();
        let trans = self.transitions();
        let mut alpha = unary[0].clone();
        let mut buf = vec![0.0; l];
        for row in unary.iter().skip(1) {
            let next: Vec<f64> = (0..l)
                .map(|y| {
                    for p in 0..l {
                        buf[p] = alpha[p] + trans[p * l + y];
                    }
                    log_sum_exp(&buf) + row[y]
                })
                .collect();
            alpha = next;
        }
        Ok(self.path_score(matrix, labels)? - log_sum_exp(&alpha))
    }

    fn label_ids(&self, labels: &[String]) -> Result<Vec<usize>, CrfError> {
        labels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                self.label_index(l).ok_or_else(|| CrfError::InvalidGoldLabel {
                    sentence: 0,
                    position: i,
                    label: l.clone(),
                })
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            format: FORMAT.into(),
            version: VERSION,
            schema: self.schema.as_ref().map(|s| s.kind.to_string()),
            entity: self.schema.as_ref().map(|s| s.entity.clone()),
            c: self.c,
            eta: self.eta,
            labels: self.labels.clone(),
            templates: self.templates.iter().map(ToString::to_string).collect(),
            features: self.features.clone(),
            weights: self.weights.clone(),
        };
        serde_json::to_string(&file).expect("model serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, CrfError> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| CrfError::Model(e.to_string()))?;
        if file.format != FORMAT || file.version != VERSION {
            return Err(CrfError::Model(format!(
                "unsupported model format {} v{}",
                file.format, file.version
            )));
        }
        let templates = parse_templates(&file.templates.join("\n"))?;
        let schema = match (file.schema, file.entity) {
            (Some(kind), entity) => Some(LabelSchema::new(
                kind.parse().map_err(CrfError::Model)?,
                entity.unwrap_or_default(),
            )),
            (None, _) => None,
        };
        CrfModel::from_parts(
            file.labels,
            file.features,
            file.weights,
            templates,
            file.c,
            file.eta,
            schema,
        )
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), CrfError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CrfError> {
        CrfModel::from_json(&std::fs::read_to_string(path)?)
    }
}
