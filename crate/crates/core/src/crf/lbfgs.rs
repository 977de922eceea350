use std::collections::VecDeque;

use super::CrfError;

pub(crate) struct LbfgsParams {
    pub history: usize,
    pub max_iter: usize,
    pub eta: f64,
}

pub(crate) struct LbfgsOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Objective value after each accepted step, starting with `f(x0)`.
    pub trace: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimizes `eval` with limited-memory BFGS and a backtracking Armijo line
/// search. Stops once the relative decrease stays below `eta` for three
/// consecutive iterations.
pub(crate) fn minimize<F>(mut eval: F, x0: Vec<f64>, p: &LbfgsParams) -> Result<LbfgsOutcome, CrfError>
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    let mut x = x0;
    let (mut f, mut g) = eval(&x);
    if !f.is_finite() {
        return Err(CrfError::NonFiniteObjective { iteration: 0 });
    }
    let mut trace = vec![f];
    let mut hist: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
    let mut small = 0;
    let mut converged = false;
    let mut iterations = 0;
    let n = x.len();

    for it in 1..=p.max_iter {
        iterations = it;
        let gnorm = dot(&g, &g).sqrt();
        if gnorm < 1e-10 {
            converged = true;
            break;
        }
        // two-loop recursion
        let mut d: Vec<f64> = g.iter().map(|v| -v).collect();
        let mut alphas = Vec::with_capacity(hist.len());
        for (s, y, rho) in hist.iter().rev() {
            let a = rho * dot(s, &d);
            for i in 0..n {
                d[i] -= a * y[i];
            }
            alphas.push(a);
        }
        let gamma = match hist.back() {
            Some((s, y, _)) => dot(s, y) / dot(y, y),
            None => 1.0 / gnorm,
        };
        for v in d.iter_mut() {
            *v *= gamma;
        }
        for ((s, y, rho), a) in hist.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(y, &d);
            for i in 0..n {
                d[i] += (a - b) * s[i];
            }
        }
        let mut slope = dot(&g, &d);
        if slope >= 0.0 {
            hist.clear();
            d = g.iter().map(|v| -v / gnorm).collect();
            slope = dot(&g, &d);
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let xn: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + step * b).collect();
            let (fn_, gn) = eval(&xn);
            if !fn_.is_finite() {
                return Err(CrfError::NonFiniteObjective { iteration: it });
            }
            if fn_ <= f + 1e-4 * step * slope {
                accepted = Some((xn, fn_, gn));
                break;
            }
            step *= 0.5;
        }
        let Some((xn, fn_, gn)) = accepted else {
            // no decrease possible along d: numerically at the optimum
            converged = true;
            break;
        };
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 {
            if hist.len() == p.history {
                hist.pop_front();
            }
            hist.push_back((s, y, 1.0 / sy));
        }
        let rel = (f - fn_).abs() / fn_.abs().max(1e-12);
        x = xn;
        f = fn_;
        g = gn;
        trace.push(f);
        small = if rel < p.eta { small + 1 } else { 0 };
        if small >= 3 {
            converged = true;
            break;
        }
    }
    Ok(LbfgsOutcome {
        x,
        iterations,
        converged,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_minimum() {
        // f(x) = (x0 - 3)^2 + 10 (x1 + 1)^2
        let eval = |x: &[f64]| {
            let f = (x[0] - 3.0).powi(2) + 10.0 * (x[1] + 1.0).powi(2);
            (f, vec![2.0 * (x[0] - 3.0), 20.0 * (x[1] + 1.0)])
        };
        let out = minimize(
            eval,
            vec![0.0, 0.0],
            &LbfgsParams {
                history: 10,
                max_iter: 200,
                eta: 1e-12,
            },
        )
        .unwrap();
        assert!((out.x[0] - 3.0).abs() < 1e-5);
        assert!((out.x[1] + 1.0).abs() < 1e-5);
        assert!(out.trace.windows(2).all(|w| w[1] <= w[0]));
    }
}
