use clintime::crf::{parse_templates, CrfModel, FeatureMatrix, FeatureTemplate, TrainingData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WORDS: &[&str] = &["a", "b", "c", "d", "e", "f"];

pub fn random_matrix(rng: &mut impl Rng, len: usize) -> FeatureMatrix {
    FeatureMatrix::new(
        (0..len)
            .map(|i| vec![i.to_string(), WORDS[rng.gen_range(0..WORDS.len())].to_string()])
            .collect(),
    )
}

pub fn templates() -> Vec<FeatureTemplate> {
    parse_templates("U00:%x[-1,1]\nU01:%x[0,1]\nU02:%x[1,1]\nU03:%x[0,1]/%x[1,1]\n").unwrap()
}

/// Model over every feature string the templates can produce, with random
/// weights.
pub fn random_model(rng: &mut impl Rng, labels: usize) -> CrfModel {
    let labels: Vec<String> = (0..labels).map(|i| format!("L{i}")).collect();
    let mut values: Vec<String> = WORDS.iter().map(|s| s.to_string()).collect();
    values.extend(["_B-1".to_string(), "_B+1".to_string()]);
    let mut features = Vec::new();
    for id in ["U00", "U01", "U02"] {
        for v in &values {
            features.push(format!("{id}:{v}"));
        }
    }
    for a in WORDS {
        for b in &values {
            features.push(format!("U03:{a}/{b}"));
        }
    }
    let l = labels.len();
    let weights = (0..features.len() * l + l * l).map(|_| rng.gen_range(-2.0..2.0)).collect();
    CrfModel::from_parts(labels, features, weights, templates(), 1.0, 1e-4, None).unwrap()
}

pub fn all_sequences(labels: &[String], len: usize) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p: Vec<String>| {
                labels.iter().map(move |l| {
                    let mut q = p.clone();
                    q.push(l.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// Relative error between the analytic gradient and central differences
/// for `vectors` random weight vectors over four 5-token, 3-label
/// sentences.
pub fn gradient_errors(seed: u64, vectors: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = ["A", "B", "C"];
    let data: Vec<(FeatureMatrix, Vec<String>)> = (0..4)
        .map(|_| {
            let m = random_matrix(&mut rng, 5);
            let y = (0..5).map(|_| labels[rng.gen_range(0..3)].to_string()).collect();
            (m, y)
        })
        .collect();
    let td = TrainingData::compile(&data, &templates(), None).unwrap();
    let h = 1e-5;
    (0..vectors)
        .map(|_| {
            let w: Vec<f64> = (0..td.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let (_, g) = td.objective_gradient(&w, 1.0);
            let mut num = vec![0.0; w.len()];
            for k in 0..w.len() {
                let mut p = w.clone();
                p[k] += h;
                let mut m = w.clone();
                m[k] -= h;
                num[k] = (td.objective(&p, 1.0) - td.objective(&m, 1.0)) / (2.0 * h);
            }
            let diff = g.iter().zip(&num).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            let norm = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
            diff / norm(&g).max(norm(&num))
        })
        .collect()
}

/// Number of random cases (≤ 6 tokens, 2 to 4 labels) where Viterbi agrees
/// with scoring every label sequence.
pub fn viterbi_agreements(seed: u64, cases: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agree = 0;
    for _ in 0..cases {
        let l = rng.gen_range(2..=4);
        let model = random_model(&mut rng, l);
        let n = rng.gen_range(1..=6);
        let m = random_matrix(&mut rng, n);
        let mut best: Option<(f64, Vec<String>)> = None;
        for seq in all_sequences(model.labels(), m.len()) {
            let s = model.path_score(&m, &seq).unwrap();
            if best.as_ref().map_or(true, |(b, _)| s > *b) {
                best = Some((s, seq));
            }
        }
        if model.decode(&m).unwrap() == best.unwrap().1 {
            agree += 1;
        }
    }
    agree
}
