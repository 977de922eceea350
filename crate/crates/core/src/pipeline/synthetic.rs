use std::collections::HashMap;

use chrono::{Duration, NaiveDate};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{
    AnnotatedDocument, Document, EventCategory, EventMention, LinkOrigin, Modifier, Relation, Span, TLink,
    TimexMention, TimexType, META_ADMISSION, META_DCT, META_DISCHARGE, ST_ADMISSION, ST_DISCHARGE,
};

/// Creation date stamped on generated documents when no discharge date
/// applies; kept for callers that need a fixed reference.
pub const SYNTHETIC_DCT: &str = "2012-03-10";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyntheticConfig {
    pub documents: usize,
    /// Template sentences per document, split between the admission and
    /// hospital-course sections. Header lines come on top.
    pub sentences_per_document: usize,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            documents: 50,
            sentences_per_document: 10,
            seed: 7,
        }
    }
}

const PROBLEMS: &[&str] = &[
    "chest pain", "shortness of breath", "fever", "nausea", "vomiting", "headache", "cough",
    "abdominal pain", "hypertension", "pneumonia", "anemia", "dizziness", "swelling", "rash",
    "back pain", "fatigue", "atrial fibrillation", "diarrhea", "palpitations", "edema",
];
const TREATMENTS: &[&str] = &[
    "aspirin", "metoprolol", "lisinopril", "heparin", "insulin", "antibiotics", "ceftriaxone",
    "furosemide", "morphine", "prednisone", "steroids", "albuterol", "vancomycin", "warfarin",
];
const TESTS: &[&str] = &[
    "chest x-ray", "CT scan", "echocardiogram", "blood cultures", "EKG", "MRI", "urinalysis",
    "ultrasound", "troponin", "CBC",
];
const FREQUENCIES: &[(&str, &str)] = &[
    ("bid", "RP12H"),
    ("qd", "RP24H"),
    ("tid", "RP8H"),
    ("twice daily", "RP12H"),
    ("every morning", "RP24H"),
];
const MONTHS: &[&str] = &[
    "January", "February", "March", "April", "May", "June", "July", "August", "September", "October",
    "November", "December",
];

struct Builder {
    text: String,
    len: usize,
    events: Vec<EventMention>,
    timexes: Vec<TimexMention>,
    links: Vec<TLink>,
}

impl Builder {
    fn push(&mut self, s: &str) {
        self.text.push_str(s);
        self.len += s.chars().count();
    }

    fn span(&mut self, s: &str) -> Span {
        let start = self.len;
        self.push(s);
        Span::new(start, self.len)
    }

    fn event(&mut self, s: &str, category: EventCategory, negated: bool) -> String {
        let id = format!("E{}", self.events.len() + 1);
        let span = self.span(s);
        self.events.push(EventMention {
            id: id.clone(),
            span,
            category,
            negated,
        });
        id
    }

    fn timex(&mut self, s: &str, ttype: TimexType, value: String) -> String {
        let id = format!("T{}", self.timexes.len() + 1);
        let span = self.span(s);
        self.timexes.push(TimexMention {
            id: id.clone(),
            span,
            ttype,
            value,
            modifier: Modifier::NA,
        });
        id
    }

    fn link(&mut self, source: &str, target: &str, relation: Relation, origin: LinkOrigin) {
        self.links.push(TLink {
            id: String::new(),
            source: source.into(),
            target: target.into(),
            relation,
            origin,
        });
    }
}

fn ymd(d: NaiveDate) -> String {
    d.format("%Y-%m-%d").to_string()
}

fn slash(d: NaiveDate) -> String {
    d.format("%m/%d/%Y").to_string()
}

fn spelled(d: NaiveDate) -> String {
    use chrono::Datelike;
    format!("{} {}, {}", MONTHS[d.month0() as usize], d.day(), d.year())
}

/// Distinct entries from a lexicon.
fn pick<'a>(rng: &mut ChaCha8Rng, list: &[&'a str], n: usize) -> Vec<&'a str> {
    list.choose_multiple(rng, n).copied().collect()
}

fn article(word: &str) -> &'static str {
    // initialisms read letter by letter
    let spoken = if word.chars().take(2).all(|c| c.is_ascii_uppercase()) {
        matches!(word.as_bytes()[0], b'A' | b'E' | b'F' | b'H' | b'I' | b'L' | b'M' | b'N' | b'O' | b'R' | b'S' | b'X')
    } else {
        matches!(word.as_bytes()[0].to_ascii_lowercase(), b'a' | b'e' | b'i' | b'o' | b'u')
    };
    if spoken {
        "An"
    } else {
        "A"
    }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) if s.chars().all(|x| !x.is_uppercase()) => f.to_uppercase().chain(c).collect(),
        _ => s.to_string(),
    }
}

/// One template sentence. `anchor` is the admission date against which
/// relative expressions are written.
fn sentence(b: &mut Builder, rng: &mut ChaCha8Rng, anchor: NaiveDate, hospital: bool) {
    use EventCategory::*;
    use LinkOrigin::*;
    use Relation::*;
    let n: i64 = rng.gen_range(2..10);
    let template = if hospital { rng.gen_range(8..15) } else { rng.gen_range(0..9) };
    match template {
        0 => {
            let p = pick(rng, PROBLEMS, 2);
            b.push("The patient reported ");
            let a = b.event(p[0], Problem, false);
            b.push(" and ");
            let c = b.event(p[1], Problem, false);
            b.push(".");
            b.link(&a, &c, Overlap, Coordinate);
        }
        1 => {
            let p = pick(rng, PROBLEMS, 3);
            b.push("She complained of ");
            let a = b.event(p[0], Problem, false);
            b.push(", ");
            let c = b.event(p[1], Problem, false);
            b.push(" and ");
            let d = b.event(p[2], Problem, false);
            b.push(".");
            b.link(&a, &c, Overlap, Coordinate);
            b.link(&c, &d, Overlap, Coordinate);
            b.link(&a, &d, Overlap, Coordinate);
        }
        2 => {
            let t = pick(rng, TREATMENTS, 1)[0];
            let p = pick(rng, PROBLEMS, 1)[0];
            b.push("He was given ");
            let a = b.event(t, Treatment, false);
            b.push(" for ");
            let c = b.event(p, Problem, false);
            b.push(".");
            b.link(&a, &c, Before, Prepositional);
        }
        3 => {
            let t = pick(rng, TESTS, 1)[0];
            let p = pick(rng, PROBLEMS, 1)[0];
            let a = b.event(&format!("The {t}"), Test, false);
            b.push(" showed ");
            let c = b.event(p, Problem, false);
            b.push(".");
            b.link(&a, &c, Before, LinkOrigin::Other);
        }
        4 => {
            let p = pick(rng, PROBLEMS, 1)[0];
            b.push("He has had ");
            let a = b.event(p, Problem, false);
            b.push(" for ");
            let unit = if rng.gen_bool(0.5) { ("days", "D") } else { ("weeks", "W") };
            let d = b.timex(&format!("{n} {}", unit.0), TimexType::Duration, format!("P{n}{}", unit.1));
            b.push(".");
            b.link(&a, &d, Overlap, Prepositional);
        }
        5 => {
            let p = pick(rng, PROBLEMS, 1)[0];
            b.push("The patient denies ");
            b.event(p, Problem, true);
            b.push(".");
        }
        6 => {
            let p = pick(rng, PROBLEMS, 1)[0];
            b.event(&capitalize(p), Problem, false);
            b.push(" began ");
            b.timex(&format!("{n} days ago"), TimexType::Date, ymd(anchor - Duration::days(n)));
            b.push(".");
        }
        7 => {
            let t = pick(rng, TREATMENTS, 1)[0];
            let (f, v) = *FREQUENCIES.choose(rng).unwrap();
            b.push("She takes ");
            let a = b.event(t, Treatment, false);
            b.push(" ");
            let c = b.timex(f, TimexType::Frequency, v.to_string());
            b.push(" at home.");
            b.link(&a, &c, Overlap, LinkOrigin::Other);
        }
        8 => {
            let t = pick(rng, TESTS, 1)[0];
            let day = anchor + Duration::days(rng.gen_range(0..3));
            let surface = if rng.gen_bool(0.5) { slash(day) } else { spelled(day) };
            let a = b.event(&format!("{} {t}", article(t)), Test, false);
            b.push(" was done on ");
            let c = b.timex(&surface, TimexType::Date, ymd(day));
            b.push(".");
            b.link(&a, &c, Overlap, Prepositional);
        }
        9 => {
            let p = pick(rng, PROBLEMS, 1)[0];
            let t = pick(rng, TREATMENTS, 1)[0];
            let a = b.event(&format!("Her {p}"), Problem, false);
            b.push(" improved after ");
            let c = b.event(t, Treatment, false);
            b.push(".");
            b.link(&a, &c, After, Prepositional);
        }
        10 => {
            let t = pick(rng, TREATMENTS, 1)[0];
            let p = pick(rng, PROBLEMS, 1)[0];
            let day = anchor + Duration::days(rng.gen_range(0..3));
            b.push("She was treated with ");
            let a = b.event(t, Treatment, false);
            b.push(" for ");
            let c = b.event(p, Problem, false);
            b.push(" on ");
            let d = b.timex(&slash(day), TimexType::Date, ymd(day));
            b.push(".");
            b.link(&a, &c, Before, Prepositional);
            b.link(&c, &d, Overlap, Prepositional);
        }
        11 => {
            let t = pick(rng, TREATMENTS, 1)[0];
            b.push("He received ");
            let a = b.event(t, Treatment, false);
            b.push(" ");
            let c = b.timex(&format!("every {n} hours"), TimexType::Frequency, format!("RP{n}H"));
            b.push(".");
            b.link(&a, &c, Overlap, LinkOrigin::Other);
        }
        12 => {
            b.event("Her blood pressure", Test, false);
            b.push(" remained stable.");
        }
        13 => {
            let t = pick(rng, TREATMENTS, 1)[0];
            b.event(&format!("The {t}"), Treatment, false);
            b.push(" was stopped ");
            b.timex(&format!("{n} days later"), TimexType::Date, ymd(anchor + Duration::days(n)));
            b.push(".");
        }
        _ => {
            let t = pick(rng, TESTS, 2);
            let a = b.event(&format!("The {}", t[0]), Test, false);
            b.push(" and ");
            let c = b.event(t[1], Test, false);
            b.push(" were normal.");
            b.link(&a, &c, Overlap, Coordinate);
        }
    }
}

/// Template-built discharge summaries with gold events, temporal
/// expressions and links. Output depends only on the configuration.
pub fn generate_corpus(cfg: &SyntheticConfig) -> Vec<AnnotatedDocument> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let base = NaiveDate::from_ymd_opt(2010, 1, 1).expect("valid date");
    (0..cfg.documents)
        .map(|i| {
            let admission = base + Duration::days(rng.gen_range(0..1400));
            let discharge = admission + Duration::days(rng.gen_range(2..8));
            let mut b = Builder {
                text: String::new(),
                len: 0,
                events: Vec::new(),
                timexes: Vec::new(),
                links: Vec::new(),
            };
            b.push("ADMISSION DATE:\n");
            b.timex(&slash(admission), TimexType::Date, ymd(admission));
            b.push("\n\nDISCHARGE DATE:\n");
            b.timex(&slash(discharge), TimexType::Date, ymd(discharge));
            b.push("\n\nHISTORY OF PRESENT ILLNESS:\n");
            let first_hpi = b.events.len();
            let hpi = cfg.sentences_per_document.div_ceil(2);
            for k in 0..hpi {
                if k > 0 {
                    b.push(" ");
                }
                sentence(&mut b, &mut rng, admission, false);
            }
            let first_course = b.events.len();
            b.push("\n\nHOSPITAL COURSE:\n");
            for k in 0..cfg.sentences_per_document - hpi {
                if k > 0 {
                    b.push(" ");
                }
                sentence(&mut b, &mut rng, admission, true);
            }
            b.push("\n");
            for e in first_hpi..b.events.len() {
                let (id, target) = if e < first_course {
                    (b.events[e].id.clone(), ST_ADMISSION)
                } else {
                    (b.events[e].id.clone(), ST_DISCHARGE)
                };
                b.link(&id, target, Relation::Before, LinkOrigin::Sectime);
            }
            // identical surfaces co-refer
            let mut seen: HashMap<String, Vec<String>> = HashMap::new();
            let surfaces: Vec<(String, String)> = b
                .events
                .iter()
                .map(|e| {
                    let s: String = b.text.chars().skip(e.span.start).take(e.span.len()).collect();
                    (e.id.clone(), s.to_lowercase())
                })
                .collect();
            for (id, s) in surfaces {
                let earlier = seen.entry(s).or_default();
                for prev in earlier.iter() {
                    b.links.push(TLink {
                        id: String::new(),
                        source: prev.clone(),
                        target: id.clone(),
                        relation: Relation::Overlap,
                        origin: LinkOrigin::Coref,
                    });
                }
                earlier.push(id);
            }
            let mut links = crate::tlink::dedup_links(std::mem::take(&mut b.links));
            for (k, l) in links.iter_mut().enumerate() {
                l.id = format!("L{}", k + 1);
            }
            let doc = Document::new(format!("synth{:04}", i + 1), b.text)
                .with_meta(META_ADMISSION, ymd(admission))
                .with_meta(META_DISCHARGE, ymd(discharge))
                .with_meta(META_DCT, ymd(discharge));
            let mut ad = AnnotatedDocument::new(doc);
            ad.events = b.events;
            ad.timexes = b.timexes;
            ad.tlinks = links;
            ad
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        let cfg = SyntheticConfig {
            documents: 5,
            ..Default::default()
        };
        let a = generate_corpus(&cfg);
        assert_eq!(a, generate_corpus(&cfg));
        for d in &a {
            d.validate().unwrap();
            for e in &d.events {
                let s = d.surface(e.span);
                assert_eq!(s.trim(), s);
                assert!(!s.is_empty());
            }
        }
    }
}
