use std::collections::BTreeMap;
use std::fmt::Write as _;

use chrono::NaiveDate;

use crate::corpus::{sectime_meta_key, AnnotatedDocument, Relation, TimexType, ST_ADMISSION, ST_DCT, ST_DISCHARGE};
use crate::tlink::{canonical_edge, Edge, TemporalGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DctRelation {
    Before,
    After,
    Overlap,
    Unknown,
}

impl DctRelation {
    pub fn as_str(&self) -> &'static str {
        match self {
            DctRelation::Before => "Before",
            DctRelation::After => "After",
            DctRelation::Overlap => "Overlap",
            DctRelation::Unknown => "Unknown",
        }
    }
}

impl From<Option<Relation>> for DctRelation {
    fn from(r: Option<Relation>) -> Self {
        match r {
            Some(Relation::Before) => DctRelation::Before,
            Some(Relation::After) => DctRelation::After,
            Some(Relation::Overlap) => DctRelation::Overlap,
            None => DctRelation::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimelineRow {
    pub anchor_id: String,
    pub surface: String,
    pub resolved_date: Option<String>,
    pub relation_to_dct: DctRelation,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Timeline {
    pub rows: Vec<TimelineRow>,
    pub notes: Vec<String>,
}

fn day(value: &str) -> Option<NaiveDate> {
    NaiveDate::parse_from_str(value.get(..10)?, "%Y-%m-%d").ok()
}

/// Calendar-dated anchors: Date and Time mentions with a day-precise value,
/// and the section times backed by document metadata.
fn dated_anchors(ad: &AnnotatedDocument) -> Vec<(String, NaiveDate)> {
    let mut out: Vec<(String, NaiveDate)> = ad
        .timexes
        .iter()
        .filter(|t| matches!(t.ttype, TimexType::Date | TimexType::Time))
        .filter_map(|t| day(&t.value).map(|d| (t.id.clone(), d)))
        .collect();
    for id in [ST_ADMISSION, ST_DISCHARGE, ST_DCT] {
        let key = sectime_meta_key(id).expect("section time id");
        if let Some(d) = ad.doc.meta.get(key).and_then(|v| day(v)) {
            out.push((id.to_string(), d));
        }
    }
    out
}

/// Orders the events of a tagged document. The document's links plus the
/// calendar order of dated anchors are closed; an event takes the date of
/// the earliest dated anchor it overlaps. Events are emitted in an order
/// consistent with every inferred Before relation, ties broken by date
/// (undated last) and then document order. Events related to nothing come
/// last. Contradictory links are left out with a note, and the rows then
/// keep document order.
pub fn build_timeline(ad: &AnnotatedDocument) -> Timeline {
    let mut events: Vec<_> = ad.events.iter().collect();
    events.sort_by_key(|e| (e.span.start, e.span.end));
    let dated = dated_anchors(ad);
    let mut edges: Vec<Edge> = ad
        .tlinks
        .iter()
        .map(|l| canonical_edge(&l.source, &l.target, l.relation))
        .collect();
    let mut by_date = dated.clone();
    by_date.sort_by_key(|(_, d)| *d);
    for w in by_date.windows(2) {
        let rel = if w[0].1 == w[1].1 { Relation::Overlap } else { Relation::Before };
        edges.push(canonical_edge(&w[0].0, &w[1].0, rel));
    }
    let (graph, rejected) = TemporalGraph::consistent(&edges);
    let mut notes: Vec<String> = rejected
        .iter()
        .map(|(a, b, r)| format!("conflict: {a} {r} {b} contradicts other links and was ignored"))
        .collect();
    let closed = graph.closure().graph;
    let dates: BTreeMap<&str, NaiveDate> = dated.iter().map(|(id, d)| (id.as_str(), *d)).collect();

    let rows: Vec<TimelineRow> = events
        .iter()
        .map(|e| {
            let resolved = dated
                .iter()
                .filter(|(id, _)| closed.relation(&e.id, id) == Some(Relation::Overlap))
                .map(|(_, d)| *d)
                .min();
            TimelineRow {
                anchor_id: e.id.clone(),
                surface: ad.surface(e.span).to_string(),
                resolved_date: resolved.map(|d| d.format("%Y-%m-%d").to_string()),
                relation_to_dct: if dates.contains_key(ST_DCT) {
                    closed.relation(&e.id, ST_DCT).into()
                } else {
                    DctRelation::Unknown
                },
            }
        })
        .collect();
    if !rejected.is_empty() {
        notes.push("rows kept in document order".into());
        return Timeline { rows, notes };
    }

    let related = |id: &str| closed.nodes().iter().any(|n| n != id && closed.relation(id, n).is_some());
    let (placed, unplaced): (Vec<usize>, Vec<usize>) = (0..rows.len())
        .partition(|&i| rows[i].resolved_date.is_some() || related(&rows[i].anchor_id));
    // Kahn's algorithm over inferred Before relations between placed events
    let mut indeg: BTreeMap<usize, usize> = placed.iter().map(|&i| (i, 0)).collect();
    let before = |a: usize, b: usize| closed.relation(&rows[a].anchor_id, &rows[b].anchor_id) == Some(Relation::Before);
    for &a in &placed {
        for &b in &placed {
            if a != b && before(a, b) {
                *indeg.get_mut(&b).unwrap() += 1;
            }
        }
    }
    let key = |i: usize| (rows[i].resolved_date.is_none(), rows[i].resolved_date.clone(), i);
    let mut order = Vec::with_capacity(rows.len());
    while let Some(next) = indeg.iter().filter(|(_, &d)| d == 0).map(|(&i, _)| i).min_by_key(|&i| key(i)) {
        indeg.remove(&next);
        order.push(next);
        for (&b, d) in indeg.iter_mut() {
            if before(next, b) {
                *d -= 1;
            }
        }
    }
    order.extend(unplaced);
    let mut rows: Vec<Option<TimelineRow>> = rows.into_iter().map(Some).collect();
    Timeline {
        rows: order.into_iter().map(|i| rows[i].take().expect("each row once")).collect(),
        notes,
    }
}

pub fn timeline_csv(t: &Timeline) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["anchor_id", "surface", "resolved_date", "relation_to_dct"])
        .expect("in-memory write");
    for r in &t.rows {
        w.write_record([
            r.anchor_id.as_str(),
            r.surface.as_str(),
            r.resolved_date.as_deref().unwrap_or(""),
            r.relation_to_dct.as_str(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn timeline_table(t: &Timeline) -> String {
    let width = t.rows.iter().map(|r| r.surface.chars().count()).max().unwrap_or(0).max(7);
    let mut s = String::new();
    for r in &t.rows {
        let _ = writeln!(
            s,
            "{:<6} {:<width$}  {:<10}  {}",
            r.anchor_id,
            r.surface,
            r.resolved_date.as_deref().unwrap_or("-"),
            r.relation_to_dct.as_str()
        );
    }
    for n in &t.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}
