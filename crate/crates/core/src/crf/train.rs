use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::lbfgs::{minimize, LbfgsParams};
use super::{expand_features, log_sum_exp, CrfError, CrfModel, FeatureMatrix, FeatureTemplate, LabelSchema};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Optimizer {
    /// Batch limited-memory quasi-Newton.
    Lbfgs,
    /// Per-sentence stochastic gradient ascent with a decaying step.
    Sgd { learning_rate: f64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainParams {
    /// Inverse regularization strength: the penalty is `‖w‖² / (2c)`.
    pub c: f64,
    /// Relative objective change below which training stops.
    pub eta: f64,
    pub max_iter: usize,
    pub history: usize,
    pub optimizer: Optimizer,
}

impl Default for TrainParams {
    fn default() -> Self {
        TrainParams {
            c: 1.0,
            eta: 1e-4,
            max_iter: 1000,
            history: 10,
            optimizer: Optimizer::Lbfgs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    pub iterations: usize,
    pub converged: bool,
    pub num_features: usize,
    /// Penalized log-likelihood after each accepted step, starting at `w = 0`.
    pub objective_trace: Vec<f64>,
}

impl TrainReport {
    pub fn initial_objective(&self) -> f64 {
        self.objective_trace[0]
    }

    pub fn final_objective(&self) -> f64 {
        *self.objective_trace.last().unwrap()
    }
}

struct Compiled {
    feats: Vec<Vec<u32>>,
    gold: Vec<usize>,
}

/// Training sentences with features mapped to dense ids.
pub struct TrainingData {
    labels: Vec<String>,
    features: Vec<String>,
    templates: Vec<FeatureTemplate>,
    schema: Option<LabelSchema>,
    sentences: Vec<Compiled>,
}

// Fixed partition of the sentences for the parallel reduction, so the
// summation order does not depend on the thread count.
const REDUCTION_CHUNKS: usize = 32;

impl TrainingData {
    /// Expands features and checks gold labels. With a schema the label set
    /// is the schema's alphabet and every gold sequence must be valid under
    /// it; without one the label set is the set of observed labels.
    pub fn compile(
        data: &[(FeatureMatrix, Vec<String>)],
        templates: &[FeatureTemplate],
        schema: Option<&LabelSchema>,
    ) -> Result<Self, CrfError> {
        let labels: Vec<String> = match schema {
            Some(s) => s.labels(),
            None => data
                .iter()
                .flat_map(|(_, y)| y.iter().cloned())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        };
        let mut expanded = Vec::with_capacity(data.len());
        for (si, (m, y)) in data.iter().enumerate() {
            if m.len() != y.len() {
                return Err(CrfError::InvalidGoldLabel {
                    sentence: si,
                    position: m.len().min(y.len()),
                    label: "<length mismatch>".into(),
                });
            }
            if let Some(s) = schema {
                let mut prev: Option<&str> = None;
                for (i, l) in y.iter().enumerate() {
                    if !labels.contains(l) || !s.allowed(prev, l) {
                        return Err(CrfError::InvalidGoldLabel {
                            sentence: si,
                            position: i,
                            label: l.clone(),
                        });
                    }
                    prev = Some(l);
                }
                if let Some(last) = prev {
                    if !s.allowed_end(last) {
                        return Err(CrfError::InvalidGoldLabel {
                            sentence: si,
                            position: y.len() - 1,
                            label: last.to_string(),
                        });
                    }
                }
            }
            if !m.is_empty() {
                expanded.push((expand_features(m, templates)?, y));
            }
        }
        if expanded.is_empty() {
            return Err(CrfError::EmptyTrainingSet);
        }
        let features: Vec<String> = expanded
            .iter()
            .flat_map(|(f, _)| f.iter().flatten().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<&str, u32> = features
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_str(), i as u32))
            .collect();
        let label_index: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let sentences = expanded
            .iter()
            .map(|(f, y)| Compiled {
                feats: f
                    .iter()
                    .map(|row| row.iter().map(|s| index[s.as_str()]).collect())
                    .collect(),
                gold: y.iter().map(|l| label_index[l.as_str()]).collect(),
            })
            .collect();
        Ok(TrainingData {
            labels,
            features,
            templates: templates.to_vec(),
            schema: schema.cloned(),
            sentences,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_features(&self) -> usize {
        self.features.len()
    }

    pub fn num_sentences(&self) -> usize {
        self.sentences.len()
    }

    /// Length of the weight vector.
    pub fn dim(&self) -> usize {
        let l = self.labels.len();
        self.features.len() * l + l * l
    }

    /// Penalized conditional log-likelihood
    /// `Σ log p(y|x) − ‖w‖² / (2c)` and its gradient.
    pub fn objective_gradient(&self, w: &[f64], c: f64) -> (f64, Vec<f64>) {
        let dim = self.dim();
        let n = self.sentences.len();
        let chunk = n.div_ceil(REDUCTION_CHUNKS.min(n));
        let parts: Vec<(f64, Vec<f64>)> = self
            .sentences
            .par_chunks(chunk)
            .map(|part| {
                let mut g = vec![0.0; dim];
                let ll: f64 = part.iter().map(|s| self.sentence_terms(s, w, &mut g)).sum();
                (ll, g)
            })
            .collect();
        let mut ll = 0.0;
        let mut grad = vec![0.0; dim];
        for (pl, pg) in parts {
            ll += pl;
            for (a, b) in grad.iter_mut().zip(&pg) {
                *a += b;
            }
        }
        let mut norm = 0.0;
        for (gi, wi) in grad.iter_mut().zip(w) {
            norm += wi * wi;
            *gi -= wi / c;
        }
        (ll - norm / (2.0 * c), grad)
    }

    pub fn objective(&self, w: &[f64], c: f64) -> f64 {
        self.objective_gradient(w, c).0
    }

    /// Adds the gradient of `log p(gold | x)` to `grad` and returns it.
    fn sentence_terms(&self, s: &Compiled, w: &[f64], grad: &mut [f64]) -> f64 {
        let l = self.labels.len();
        let fl = self.features.len() * l;
        let trans = &w[fl..];
        let n = s.feats.len();
        let unary: Vec<Vec<f64>> = s
            .feats
            .iter()
            .map(|fs| {
                let mut row = vec![0.0; l];
                for &f in fs {
                    let base = f as usize * l;
                    for (y, r) in row.iter_mut().enumerate() {
                        *r += w[base + y];
                    }
                }
                row
            })
            .collect();
        let mut buf = vec![0.0; l];
        let mut alpha = vec![vec![0.0; l]; n];
        alpha[0].clone_from(&unary[0]);
        for t in 1..n {
            for y in 0..l {
                for p in 0..l {
                    buf[p] = alpha[t - 1][p] + trans[p * l + y];
                }
                alpha[t][y] = log_sum_exp(&buf) + unary[t][y];
            }
        }
        let mut beta = vec![vec![0.0; l]; n];
        for t in (0..n - 1).rev() {
            for p in 0..l {
                for y in 0..l {
                    buf[y] = trans[p * l + y] + unary[t + 1][y] + beta[t + 1][y];
                }
                beta[t][p] = log_sum_exp(&buf);
            }
        }
        let log_z = log_sum_exp(&alpha[n - 1]);

        let mut gold = 0.0;
        for t in 0..n {
            let y = s.gold[t];
            gold += unary[t][y];
            for &f in &s.feats[t] {
                grad[f as usize * l + y] += 1.0;
            }
            if t > 0 {
                let p = s.gold[t - 1];
                gold += trans[p * l + y];
                grad[fl + p * l + y] += 1.0;
            }
        }
        for t in 0..n {
            for y in 0..l {
                let m = (alpha[t][y] + beta[t][y] - log_z).exp();
                for &f in &s.feats[t] {
                    grad[f as usize * l + y] -= m;
                }
            }
            if t > 0 {
                for p in 0..l {
                    for y in 0..l {
                        let m = (alpha[t - 1][p] + trans[p * l + y] + unary[t][y] + beta[t][y]
                            - log_z)
                            .exp();
                        grad[fl + p * l + y] -= m;
                    }
                }
            }
        }
        gold - log_z
    }

    fn into_model(self, weights: Vec<f64>, params: &TrainParams) -> Result<CrfModel, CrfError> {
        CrfModel::from_parts(
            self.labels,
            self.features,
            weights,
            self.templates,
            params.c,
            params.eta,
            self.schema,
        )
    }
}

/// Trains a CRF; see [`train_with_report`].
pub fn train(
    data: &[(FeatureMatrix, Vec<String>)],
    schema: Option<&LabelSchema>,
    templates: &[FeatureTemplate],
    params: &TrainParams,
) -> Result<CrfModel, CrfError> {
    train_with_report(data, schema, templates, params).map(|(m, _)| m)
}

/// Maximizes the L2-penalized conditional log-likelihood starting from
/// `w = 0`.
pub fn train_with_report(
    data: &[(FeatureMatrix, Vec<String>)],
    schema: Option<&LabelSchema>,
    templates: &[FeatureTemplate],
    params: &TrainParams,
) -> Result<(CrfModel, TrainReport), CrfError> {
    if !(params.c > 0.0) {
        return Err(CrfError::Model(format!("regularization constant {} must be positive", params.c)));
    }
    let td = TrainingData::compile(data, templates, schema)?;
    let dim = td.dim();
    let c = params.c;
    let (weights, report) = match params.optimizer {
        Optimizer::Lbfgs => {
            let out = minimize(
                |w| {
                    let (f, g) = td.objective_gradient(w, c);
                    (-f, g.into_iter().map(|v| -v).collect())
                },
                vec![0.0; dim],
                &LbfgsParams {
                    history: params.history,
                    max_iter: params.max_iter,
                    eta: params.eta,
                },
            )?;
            let report = TrainReport {
                iterations: out.iterations,
                converged: out.converged,
                num_features: td.num_features(),
                objective_trace: out.trace.iter().map(|f| -f).collect(),
            };
            (out.x, report)
        }
        Optimizer::Sgd { learning_rate, seed } => sgd(&td, params, learning_rate, seed)?,
    };
    Ok((td.into_model(weights, params)?, report))
}

fn sgd(
    td: &TrainingData,
    params: &TrainParams,
    learning_rate: f64,
    seed: u64,
) -> Result<(Vec<f64>, TrainReport), CrfError> {
    let dim = td.dim();
    let n = td.sentences.len() as f64;
    let mut w = vec![0.0; dim];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..td.sentences.len()).collect();
    let mut trace = vec![td.objective(&w, params.c)];
    let mut small = 0;
    let mut converged = false;
    let mut epochs = 0;
    let mut g = vec![0.0; dim];
    for epoch in 0..params.max_iter {
        epochs = epoch + 1;
        order.shuffle(&mut rng);
        let rate = learning_rate / (1.0 + epoch as f64);
        for &i in &order {
            g.iter_mut().for_each(|v| *v = 0.0);
            td.sentence_terms(&td.sentences[i], &w, &mut g);
            for (wi, gi) in w.iter_mut().zip(&g) {
                *wi += rate * (gi - *wi / (params.c * n));
            }
        }
        let f = td.objective(&w, params.c);
        if !f.is_finite() {
            return Err(CrfError::NonFiniteObjective { iteration: epochs });
        }
        let prev = *trace.last().unwrap();
        trace.push(f);
        small = if ((f - prev) / prev).abs() < params.eta { small + 1 } else { 0 };
        if small >= 3 {
            converged = true;
            break;
        }
    }
    Ok((
        w,
        TrainReport {
            iterations: epochs,
            converged,
            num_features: td.num_features(),
            objective_trace: trace,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crf::parse_templates;

    fn sentence(words: &[&str], labels: &[&str]) -> (FeatureMatrix, Vec<String>) {
        (
            FeatureMatrix::new(
                words
                    .iter()
                    .enumerate()
                    .map(|(i, w)| vec![i.to_string(), w.to_string()])
                    .collect(),
            ),
            labels.iter().map(|s| s.to_string()).collect(),
        )
    }

    #[test]
    fn separable_case_is_reproduced() {
        let data = vec![sentence(&["x", "y", "x"], &["A", "B", "A"])];
        let t = parse_templates("U00:%x[0,1]").unwrap();
        let (m, report) = train_with_report(&data, None, &t, &TrainParams::default()).unwrap();
        assert_eq!(m.decode(&data[0].0).unwrap(), data[0].1);
        assert!(report.final_objective() >= report.initial_objective());
        assert!(report.objective_trace.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn invalid_gold_rejected() {
        let schema = LabelSchema::new(crate::crf::SchemaKind::BIO, "Problem");
        let t = parse_templates("U00:%x[0,1]").unwrap();
        let data = vec![sentence(&["x", "y"], &["O", "I"])];
        assert!(matches!(
            train(&data, Some(&schema), &t, &TrainParams::default()),
            Err(CrfError::InvalidGoldLabel { position: 1, .. })
        ));
        assert!(matches!(
            train(&[], Some(&schema), &t, &TrainParams::default()),
            Err(CrfError::EmptyTrainingSet)
        ));
    }

    #[test]
    fn sgd_fallback_learns() {
        let data = vec![
            sentence(&["x", "y", "x"], &["A", "B", "A"]),
            sentence(&["y", "y"], &["B", "B"]),
        ];
        let t = parse_templates("U00:%x[0,1]").unwrap();
        let params = TrainParams {
            optimizer: Optimizer::Sgd { learning_rate: 0.5, seed: 7 },
            max_iter: 50,
            ..TrainParams::default()
        };
        let (m, report) = train_with_report(&data, None, &t, &params).unwrap();
        assert_eq!(m.decode(&data[0].0).unwrap(), data[0].1);
        assert!(report.final_objective() > report.initial_objective());
    }
}
