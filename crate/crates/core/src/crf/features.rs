use super::{CrfError, FeatureTemplate};
use crate::preproc::Token;

/// Attribute grid for one sentence: one row per token, column 0 holds the
/// token position.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FeatureMatrix {
    pub rows: Vec<Vec<String>>,
}

impl FeatureMatrix {
    pub fn new(rows: Vec<Vec<String>>) -> Self {
        FeatureMatrix { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Smallest column count over all rows.
    pub fn columns(&self) -> usize {
        self.rows.iter().map(Vec::len).min().unwrap_or(usize::MAX)
    }

    /// Parses CRF++-style training text: whitespace-separated columns, one
    /// token per line, blank line between sentences. The last column is the
    /// gold label; a position column is prepended.
    pub fn parse_training_text(text: &str) -> Vec<(FeatureMatrix, Vec<String>)> {
        let mut out = Vec::new();
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        let mut flush = |rows: &mut Vec<Vec<String>>, labels: &mut Vec<String>| {
            if !rows.is_empty() {
                out.push((FeatureMatrix::new(std::mem::take(rows)), std::mem::take(labels)));
            }
        };
        for line in text.lines() {
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols.is_empty() {
                flush(&mut rows, &mut labels);
                continue;
            }
            let mut row = vec![rows.len().to_string()];
            row.extend(cols[..cols.len() - 1].iter().map(|s| s.to_string()));
            labels.push(cols[cols.len() - 1].to_string());
            rows.push(row);
        }
        flush(&mut rows, &mut labels);
        out
    }
}

/// Boundary value for a row outside the sentence: `_B-1`, `_B-2`, ... to the
/// left and `_B+1`, `_B+2`, ... to the right.
pub fn sentinel(row: i64, len: usize) -> String {
    if row < 0 {
        format!("_B{row}")
    } else {
        format!("_B+{}", row - len as i64 + 1)
    }
}

/// Feature strings per token: template id, `:`, then the referenced cell
/// values joined with `/`.
pub fn expand_features(
    matrix: &FeatureMatrix,
    templates: &[FeatureTemplate],
) -> Result<Vec<Vec<String>>, CrfError> {
    let n = matrix.len();
    if n > 0 {
        let available = matrix.columns();
        for t in templates {
            if let Some(&(_, col)) = t.cells.iter().find(|(_, c)| *c >= available) {
                return Err(CrfError::ColumnOutOfRange {
                    template: t.id.clone(),
                    column: col,
                    available,
                });
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut feats = Vec::with_capacity(templates.len());
        for t in templates {
            let mut s = String::with_capacity(t.id.len() + 16);
            s.push_str(&t.id);
            s.push(':');
            for (k, &(off, col)) in t.cells.iter().enumerate() {
                if k > 0 {
                    s.push('/');
                }
                let r = i as i64 + off as i64;
                if r < 0 || r >= n as i64 {
                    s.push_str(&sentinel(r, n));
                } else {
                    s.push_str(&matrix.rows[r as usize][col]);
                }
            }
            feats.push(s);
        }
        out.push(feats);
    }
    Ok(out)
}

/// EVENT columns: position, token, stem, POS, chunk.
pub fn event_matrix(tokens: &[Token]) -> FeatureMatrix {
    FeatureMatrix::new(
        tokens
            .iter()
            .enumerate()
            .map(|(i, t)| {
                vec![
                    i.to_string(),
                    t.text.clone(),
                    t.stem.clone(),
                    t.pos.clone(),
                    t.chunk.clone(),
                ]
            })
            .collect(),
    )
}

/// TER columns: position, token, dictionary, lowercase token, case, kind,
/// case. Case appears twice so both the combined template (column 4) and the
/// case window (column 6) see it.
pub fn ter_matrix(tokens: &[Token]) -> FeatureMatrix {
    FeatureMatrix::new(
        tokens
            .iter()
            .enumerate()
            .map(|(i, t)| {
                vec![
                    i.to_string(),
                    t.text.clone(),
                    t.dictionary_feature(),
                    t.lower(),
                    t.case.as_str().to_string(),
                    t.kind.as_str().to_string(),
                    t.case.as_str().to_string(),
                ]
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crf::parse_templates;

    fn grid(words: &[&str]) -> FeatureMatrix {
        FeatureMatrix::new(
            words
                .iter()
                .enumerate()
                .map(|(i, w)| vec![i.to_string(), w.to_string()])
                .collect(),
        )
    }

    #[test]
    fn sentinels_at_edges() {
        let t = parse_templates("U00:%x[-2,1]\nU04:%x[2,1]\nU02:%x[0,1]").unwrap();
        let f = expand_features(&grid(&["no", "pain"]), &t).unwrap();
        assert_eq!(f[0], ["U00:_B-2", "U04:_B+1", "U02:no"]);
        assert_eq!(f[1], ["U00:_B-1", "U04:_B+2", "U02:pain"]);
    }

    #[test]
    fn missing_column() {
        let t = parse_templates("U07:%x[0,2]").unwrap();
        assert!(matches!(
            expand_features(&grid(&["pain"]), &t),
            Err(CrfError::ColumnOutOfRange { column: 2, .. })
        ));
        assert!(expand_features(&FeatureMatrix::default(), &t).unwrap().is_empty());
    }

    #[test]
    fn training_text() {
        let s = FeatureMatrix::parse_training_text("chest NN B\npain NN I\n\nok JJ O\n");
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].0.rows[1], ["1", "pain", "NN"]);
        assert_eq!(s[0].1, ["B", "I"]);
    }
}
