use std::path::Path;

use thiserror::Error;

use crate::corpus::{
    AnnotatedDocument, Document, LinkOrigin, Relation, Section, TLink, TimexType, META_ADMISSION, META_DCT,
    META_DISCHARGE, ST_ADMISSION, ST_DCT, ST_DISCHARGE,
};

#[derive(Debug, Error)]
pub enum SectimeError {
    #[error("document {0} has no admission, discharge or creation date")]
    MissingAnchorDate(String),
    #[error("section lexicon line {line}: {reason}")]
    Lexicon { line: usize, reason: String },
    #[error("reading lexicon: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectionClass {
    Admission,
    Discharge,
    Other,
}

impl SectionClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            SectionClass::Admission => "admission",
            SectionClass::Discharge => "discharge",
            SectionClass::Other => "other",
        }
    }

    fn from_label(s: &str) -> Self {
        match s {
            "admission" => SectionClass::Admission,
            "discharge" => SectionClass::Discharge,
            _ => SectionClass::Other,
        }
    }
}

fn normalize_header(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

#[derive(Debug, Clone)]
pub struct SectionLexicon {
    headers: Vec<(String, SectionClass)>,
}

impl SectionLexicon {
    pub fn bundled() -> Self {
        Self::parse(include_str!("../../data/sections.tsv")).expect("bundled section lexicon parses")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SectimeError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// `header<TAB>admission|discharge` lines.
    pub fn parse(text: &str) -> Result<Self, SectimeError> {
        let mut headers = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| SectimeError::Lexicon { line: n + 1, reason };
            let (h, c) = line.split_once('\t').ok_or_else(|| err("expected header<TAB>class".into()))?;
            let class = match c.trim() {
                "admission" => SectionClass::Admission,
                "discharge" => SectionClass::Discharge,
                other => return Err(err(format!("unknown class `{other}`"))),
            };
            headers.push((normalize_header(h), class));
        }
        Ok(SectionLexicon { headers })
    }

    /// Class of a header line, if the line is one. Known headers match in
    /// any case; other all-caps lines of up to six words (optionally ending
    /// in `:`) are headers of class `Other`.
    pub fn classify(&self, line: &str) -> Option<SectionClass> {
        let line = line.trim();
        let head = match line.split_once(':') {
            Some((h, _)) => h,
            None => line,
        };
        let norm = normalize_header(head);
        if norm.is_empty() || norm.split(' ').count() > 6 {
            return None;
        }
        if let Some((_, c)) = self.headers.iter().find(|(h, _)| *h == norm) {
            return Some(*c);
        }
        let letters: Vec<char> = head.chars().filter(|c| c.is_alphabetic()).collect();
        (letters.len() >= 3 && letters.iter().all(|c| c.is_uppercase())).then_some(SectionClass::Other)
    }
}

/// Section boundary detection: every header line opens a section that runs
/// to the next header or the end of the text.
pub fn detect_sections(doc: &Document, lexicon: &SectionLexicon) -> Vec<Section> {
    let text = doc.text();
    let mut starts: Vec<(usize, SectionClass)> = Vec::new();
    let mut byte = 0;
    for line in text.split_inclusive('\n') {
        if let Some(c) = lexicon.classify(line) {
            let lead = line.len() - line.trim_start().len();
            starts.push((doc.char_offset(byte + lead), c));
        }
        byte += line.len();
    }
    let end = doc.char_len();
    starts
        .iter()
        .enumerate()
        .map(|(i, &(s, c))| Section {
            label: c.as_str().to_string(),
            span: crate::corpus::Span::new(s, starts.get(i + 1).map_or(end, |x| x.0)),
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SectionTimes {
    pub admission: Option<String>,
    pub discharge: Option<String>,
    pub dct: Option<String>,
}

fn full_date(v: &str) -> bool {
    v.len() == 10 && crate::corpus::timex_value_is_valid(TimexType::Date, v)
}

/// Admission and discharge dates from the metadata, else from the first
/// two fully specified Date mentions preceding the first admission or
/// discharge section.
pub fn resolve_section_times(ad: &AnnotatedDocument) -> SectionTimes {
    let meta = |k: &str| ad.doc.meta.get(k).cloned();
    let mut t = SectionTimes {
        admission: meta(META_ADMISSION),
        discharge: meta(META_DISCHARGE),
        dct: meta(META_DCT),
    };
    if t.admission.is_none() && t.discharge.is_none() {
        let body_start = ad
            .sections
            .iter()
            .find(|s| SectionClass::from_label(&s.label) != SectionClass::Other)
            .map(|s| s.span.start);
        if let Some(limit) = body_start {
            let mut dates = ad
                .timexes
                .iter()
                .filter(|x| x.ttype == TimexType::Date && x.span.end <= limit && full_date(&x.value))
                .map(|x| x.value.clone());
            t.admission = dates.next();
            t.discharge = dates.next();
        }
    }
    t
}

#[derive(Debug, Clone)]
pub struct SectimeConfig {
    pub sections: SectionLexicon,
    /// Lowercased word sequences of routine measurements.
    pub routine: Vec<Vec<String>>,
}

impl Default for SectimeConfig {
    fn default() -> Self {
        SectimeConfig {
            sections: SectionLexicon::bundled(),
            routine: parse_routine(include_str!("../../data/routine_measurements.txt")),
        }
    }
}

pub fn parse_routine(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(crate::string_sim::sim_tokens)
        .filter(|w| !w.is_empty())
        .collect()
}

fn is_routine(surface: &str, routine: &[Vec<String>]) -> bool {
    let words = crate::string_sim::sim_tokens(surface);
    routine
        .iter()
        .any(|r| words.windows(r.len()).any(|w| w == r.as_slice()))
}

/// SECTIME links. With admission or discharge dates, events in admission
/// sections link Before `ST-ADMISSION` and events in discharge sections
/// Before `ST-DISCHARGE`. With only a creation date every event links to
/// `ST-DCT`, Before by default and Overlap for routine measurements.
pub fn extract_sectime(
    ad: &AnnotatedDocument,
    times: &SectionTimes,
    cfg: &SectimeConfig,
) -> Result<Vec<TLink>, SectimeError> {
    if ad.events.is_empty() {
        return Ok(Vec::new());
    }
    let link = |source: &str, target: &str, relation| TLink {
        id: String::new(),
        source: source.to_string(),
        target: target.to_string(),
        relation,
        origin: LinkOrigin::Sectime,
    };
    let mut out = Vec::new();
    if times.admission.is_some() || times.discharge.is_some() {
        for e in &ad.events {
            let class = ad
                .sections
                .iter()
                .find(|s| s.span.start <= e.span.start && e.span.start < s.span.end)
                .map(|s| SectionClass::from_label(&s.label));
            match class {
                Some(SectionClass::Admission) if times.admission.is_some() => {
                    out.push(link(&e.id, ST_ADMISSION, Relation::Before))
                }
                Some(SectionClass::Discharge) if times.discharge.is_some() => {
                    out.push(link(&e.id, ST_DISCHARGE, Relation::Before))
                }
                _ => {}
            }
        }
    } else if times.dct.is_some() {
        for e in &ad.events {
            let rel = if is_routine(ad.surface(e.span), &cfg.routine) {
                Relation::Overlap
            } else {
                Relation::Before
            };
            out.push(link(&e.id, ST_DCT, rel));
        }
    } else {
        return Err(SectimeError::MissingAnchorDate(ad.doc.id.clone()));
    }
    Ok(out)
}
