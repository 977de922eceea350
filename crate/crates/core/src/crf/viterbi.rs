/// Best label path under unary scores `unary[t][y]` and a row-major
/// `L × L` transition matrix. `start` and `end` are added at the first and
/// last positions (use `-inf` to forbid a label there).
///
/// Among equally scored paths the lexicographically smallest label-index
/// sequence is returned: suffix maxima are computed right to left, then the
/// path is read left to right taking the lowest index that attains the
/// maximum.
pub(crate) fn viterbi(
    unary: &[Vec<f64>],
    trans: &[f64],
    start: Option<&[f64]>,
    end: Option<&[f64]>,
) -> Vec<usize> {
    let n = unary.len();
    if n == 0 {
        return Vec::new();
    }
    let l = unary[0].len();
    // best[t][y]: best score of positions t..n given label y at t
    let mut best = vec![vec![0.0; l]; n];
    for y in 0..l {
        best[n - 1][y] = unary[n - 1][y] + end.map_or(0.0, |e| e[y]);
    }
    for t in (0..n - 1).rev() {
        for y in 0..l {
            let mut m = f64::NEG_INFINITY;
            for z in 0..l {
                let s = trans[y * l + z] + best[t + 1][z];
                if s > m {
                    m = s;
                }
            }
            best[t][y] = unary[t][y] + m;
        }
    }
    let pick = |scores: &mut dyn Iterator<Item = f64>| -> usize {
        let mut arg = 0;
        let mut m = f64::NEG_INFINITY;
        for (y, s) in scores.enumerate() {
            if s > m {
                m = s;
                arg = y;
            }
        }
        arg
    };
    let mut path = Vec::with_capacity(n);
    let first = pick(&mut (0..l).map(|y| best[0][y] + start.map_or(0.0, |s| s[y])));
    path.push(first);
    for t in 1..n {
        let prev = path[t - 1];
        path.push(pick(&mut (0..l).map(|z| trans[prev * l + z] + best[t][z])));
    }
    path
}
