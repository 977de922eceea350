use regex::Regex;
use std::sync::OnceLock;

use crate::corpus::{AnnotatedDocument, TimexMention};
use crate::preproc::{tokens_in_span, GazetteerCategory};

/// Words that introduce room, ward and telephone numbers.
pub const NUMBER_CONTEXT_WORDS: &[&str] =
    &["ward", "room", "ext", "fax", "tel", "phone", "pager", "bed", "mrn", "unit", "extension", "beeper"];

fn regexes() -> &'static [Regex; 3] {
    static R: OnceLock<[Regex; 3]> = OnceLock::new();
    R.get_or_init(|| {
        [
            Regex::new(r"^(\d{1,4})/(\d{1,4})$").unwrap(),
            Regex::new(r"^\(?\d{3}\)?[-. ]?\d{3}[-. ]\d{4}$|^\d{3}-\d{4}$").unwrap(),
            Regex::new(r"\d{7,}").unwrap(),
        ]
    })
}

/// True for `a/b` pairs that cannot be a month/day or month/year.
fn invalid_pair(s: &str) -> bool {
    let Some(c) = regexes()[0].captures(s) else {
        return false;
    };
    let a: u32 = c[1].parse().unwrap_or(0);
    let b: u32 = c[2].parse().unwrap_or(0);
    let month_year = c[2].len() == 4;
    !(1..=12).contains(&a) || (!month_year && !(1..=31).contains(&b))
}

fn phone_like(s: &str) -> bool {
    let [_, phone, long] = regexes();
    phone.is_match(s) || long.is_match(s)
}

/// Drops numeric false positives: impossible `a/b` dates (blood or artery
/// pressures such as 42/21), phone and fax shaped digit runs, and numbers
/// right after a ward, room or telephone word. Mentions containing a month
/// or weekday name are always kept.
pub fn post_filter(mentions: Vec<TimexMention>, ad: &AnnotatedDocument) -> Vec<TimexMention> {
    mentions
        .into_iter()
        .filter(|m| {
            let toks = tokens_in_span(&ad.tokens, m.span);
            let calendar_word = ad.tokens[toks.clone()].iter().any(|t| {
                t.gazetteer.contains(&GazetteerCategory::Month) || t.gazetteer.contains(&GazetteerCategory::Weekday)
            });
            if calendar_word {
                return true;
            }
            let surface = ad.surface(m.span).trim();
            if invalid_pair(surface) || phone_like(surface) {
                return false;
            }
            let mut i = toks.start;
            while i > 0 && matches!(ad.tokens[i - 1].text.as_str(), ":" | "#" | "." | "no" | "No" | "number") {
                i -= 1;
            }
            let starts_numeric = ad.tokens.get(toks.start).is_some_and(|t| t.text.starts_with(|c: char| c.is_ascii_digit()));
            !(starts_numeric && i > 0 && NUMBER_CONTEXT_WORDS.contains(&ad.tokens[i - 1].lower().as_str()))
        })
        .collect()
}
