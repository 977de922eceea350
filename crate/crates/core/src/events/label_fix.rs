use crate::crf::{LabelSchema, SchemaKind};

fn is(s: &[String], k: usize, label: &str) -> bool {
    s.get(k).is_some_and(|l| l == label)
}

/// Repairs a predicted B/I/O (or W/B/I/O) sequence in one left-to-right
/// pass. At each position the rewrites are tried in this order:
///
/// * a: `O I` → `B I` (the `O` opens the mention)
/// * b/c: `B O` → `B I` (the mention is extended, filling a gap)
/// * d: `I B` → `I I` (adjacent mentions are merged)
///
/// An `I` at sentence start becomes `B`. Under W-BIO a `W` followed by `I`
/// becomes `B` and a `B` with no following `I` becomes `W`. IO sequences
/// are returned unchanged.
pub fn label_fix(seq: &[String], schema: &LabelSchema) -> Vec<String> {
    let mut s = seq.to_vec();
    if schema.kind == SchemaKind::IO {
        return s;
    }
    let wbio = schema.kind == SchemaKind::WBIO;
    for k in 0..s.len() {
        if k == 0 && is(&s, 0, "I") {
            s[0] = "B".into();
        }
        if is(&s, k, "O") && is(&s, k + 1, "I") {
            s[k] = "B".into();
        }
        if wbio && is(&s, k, "W") && is(&s, k + 1, "I") {
            s[k] = "B".into();
        }
        if is(&s, k, "B") && is(&s, k + 1, "O") {
            s[k + 1] = "I".into();
        }
        if k > 0 && is(&s, k, "B") && is(&s, k - 1, "I") {
            s[k] = "I".into();
        }
        if wbio && is(&s, k, "B") && !is(&s, k + 1, "I") {
            s[k] = "W".into();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fix(s: &str, kind: SchemaKind) -> String {
        let seq: Vec<String> = s.split_whitespace().map(String::from).collect();
        label_fix(&seq, &LabelSchema::new(kind, "Problem")).join(" ")
    }

    #[test]
    fn table_rows() {
        for kind in [SchemaKind::BIO, SchemaKind::WBIO] {
            assert_eq!(fix("O O O I I I I", kind), "O O B I I I I");
            assert_eq!(fix("O O O B O O O", kind), "O O O B I O O");
            assert_eq!(fix("O O O B O I I", kind), "O O O B I I I");
            assert_eq!(fix("O O O B I I B I I", kind), "O O O B I I I I I");
        }
    }

    #[test]
    fn extra_repairs() {
        assert_eq!(fix("I I O", SchemaKind::BIO), "B I O");
        assert_eq!(fix("W I O", SchemaKind::WBIO), "B I O");
        assert_eq!(fix("B B", SchemaKind::WBIO), "W W");
        assert_eq!(fix("B B", SchemaKind::BIO), "B B");
        assert_eq!(fix("I O I", SchemaKind::IO), "I O I");
    }
}
