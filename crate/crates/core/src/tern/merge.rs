use crate::corpus::{Span, TimexMention};

/// Union of rule and ML output. Mentions that overlap (transitively) are
/// merged into one covering the union of their spans; the type comes from
/// the earliest rule mention in the group, or the earliest ML mention when
/// the rules found nothing there. Ids are reassigned `T1`, `T2`, ...
pub fn merge_hybrid(rule_out: &[TimexMention], ml_out: &[TimexMention]) -> Vec<TimexMention> {
    let mut all: Vec<(&TimexMention, bool)> = rule_out
        .iter()
        .map(|m| (m, true))
        .chain(ml_out.iter().map(|m| (m, false)))
        .collect();
    all.sort_by_key(|(m, from_rule)| (m.span.start, m.span.end, !from_rule));
    let mut groups: Vec<(Span, Vec<(&TimexMention, bool)>)> = Vec::new();
    for (m, from_rule) in all {
        match groups.last_mut() {
            Some((span, members)) if m.span.start < span.end => {
                *span = span.union(&m.span);
                members.push((m, from_rule));
            }
            _ => groups.push((m.span, vec![(m, from_rule)])),
        }
    }
    groups
        .into_iter()
        .enumerate()
        .map(|(i, (span, members))| {
            let (lead, _) = members
                .iter()
                .find(|(_, r)| *r)
                .copied()
                .unwrap_or(members[0]);
            TimexMention {
                id: format!("T{}", i + 1),
                span,
                ..lead.clone()
            }
        })
        .collect()
}
