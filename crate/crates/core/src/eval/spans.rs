use crate::corpus::Span;

use super::Counts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpanMatchMode {
    /// Exact offsets.
    Strict,
    /// Any character overlap.
    Lenient,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpanMatch {
    /// `(gold index, system index)` pairs.
    pub pairs: Vec<(usize, usize)>,
    pub counts: Counts,
}

/// One-to-one greedy matching in gold order. Each gold span takes an
/// unmatched system span with identical offsets if one exists, otherwise
/// (lenient mode) the unmatched one with the largest overlap, ties to the
/// lowest index.
pub fn match_spans(gold: &[Span], sys: &[Span], mode: SpanMatchMode) -> SpanMatch {
    let mut used = vec![false; sys.len()];
    let mut pairs = Vec::new();
    for (gi, g) in gold.iter().enumerate() {
        let exact = (0..sys.len()).find(|&si| !used[si] && sys[si] == *g);
        let pick = exact.or_else(|| match mode {
            SpanMatchMode::Strict => None,
            SpanMatchMode::Lenient => (0..sys.len())
                .filter(|&si| !used[si] && g.overlap_len(&sys[si]) > 0)
                .max_by_key(|&si| (g.overlap_len(&sys[si]), std::cmp::Reverse(si))),
        });
        if let Some(si) = pick {
            used[si] = true;
            pairs.push((gi, si));
        }
    }
    let tp = pairs.len();
    SpanMatch {
        counts: Counts {
            tp,
            fp: sys.len() - tp,
            fn_: gold.len() - tp,
        },
        pairs,
    }
}
