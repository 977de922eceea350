use clintime::corpus::{EventCategory, EventCategory::*, Relation, Relation::*, TimexType, TimexType::*};
use clintime::crf::FeatureMatrix;

use super::{days_from_civil, iso, weekday};

/// Label-fixer input and expected output, for BIO and W-BIO alike.
pub const LABEL_FIX_ROWS: [(&str, &str); 4] = [
    ("O O O I I I I", "O O B I I I I"),
    ("O O O B O O O", "O O O B I O O"),
    ("O O O B O I I", "O O O B I I I"),
    ("O O O B I I B I I", "O O O B I I I I I"),
];

/// Feature matrix with a leading position column, as the pipeline builds.
pub fn grid(rows: &[&[&str]]) -> FeatureMatrix {
    FeatureMatrix::new(
        rows.iter()
            .enumerate()
            .map(|(i, r)| std::iter::once(i.to_string()).chain(r.iter().map(|s| s.to_string())).collect())
            .collect(),
    )
}

// token, stem, POS, chunk
pub const EVENT_ROWS: &[&[&str]] = &[
    &["He", "he", "PRP", "B-NP"],
    &["denies", "deni", "VBZ", "B-VP"],
    &["chest", "chest", "NN", "B-NP"],
    &["pain", "pain", "NN", "I-NP"],
    &[".", ".", ".", "O"],
];

pub const EVENT_EXPANSIONS: &[(usize, [&str; 20])] = &[
    (
        1,
        [
            "U00:_B-1", "U01:He", "U02:denies", "U03:chest", "U04:pain",
            "U05:_B-1", "U06:he", "U07:deni", "U08:chest", "U09:pain",
            "U10:_B-1", "U11:PRP", "U12:VBZ", "U13:NN", "U14:NN",
            "U15:_B-1", "U16:B-NP", "U17:B-VP", "U18:B-NP", "U19:I-NP",
        ],
    ),
    (
        4,
        [
            "U00:chest", "U01:pain", "U02:.", "U03:_B+1", "U04:_B+2",
            "U05:chest", "U06:pain", "U07:.", "U08:_B+1", "U09:_B+2",
            "U10:NN", "U11:NN", "U12:.", "U13:_B+1", "U14:_B+2",
            "U15:B-NP", "U16:I-NP", "U17:O", "U18:_B+1", "U19:_B+2",
        ],
    ),
];

// token, dictionary, lowercase, case, kind, case
pub const TER_ROWS: &[&[&str]] = &[
    &["Seen", "O", "seen", "UpperInitial", "Word", "UpperInitial"],
    &["on", "TemporalModifier", "on", "LowerCase", "Word", "LowerCase"],
    &["Monday", "Weekday", "monday", "UpperInitial", "Word", "UpperInitial"],
    &["at", "O", "at", "LowerCase", "Word", "LowerCase"],
    &["10", "O", "10", "LowerCase", "Number", "LowerCase"],
];

pub const TER_EXPANSIONS: &[(usize, [&str; 19])] = &[
    (
        2,
        [
            "U00:Seen", "U01:on", "U02:Monday", "U03:at", "U04:10",
            "U05:Weekday", "U06:O", "U07:O",
            "U08:Word", "U09:Word", "U10:Word", "U11:Word", "U12:Number",
            "U13:UpperInitial", "U14:LowerCase", "U15:UpperInitial", "U16:LowerCase", "U17:LowerCase",
            "U18:Monday/Weekday/UpperInitial",
        ],
    ),
    (
        0,
        [
            "U00:_B-2", "U01:_B-1", "U02:Seen", "U03:on", "U04:Monday",
            "U05:O", "U06:TemporalModifier", "U07:Weekday",
            "U08:_B-2", "U09:_B-1", "U10:Word", "U11:Word", "U12:Word",
            "U13:_B-2", "U14:_B-1", "U15:UpperInitial", "U16:LowerCase", "U17:UpperInitial",
            "U18:Seen/O/UpperInitial",
        ],
    ),
];

/// (sentence, expected surface, expected type)
pub const SLASH_DATES: &[(&str, &str, TimexType)] = &[
    ("Admitted on 01/04/1988 for pain.", "01/04/1988", Date),
    ("Admitted on 1/4/88 for pain.", "1/4/88", Date),
    ("Seen on 1988/25/01 in clinic.", "1988/25/01", Date),
    ("Seen on 12/25 in clinic.", "12/25", Date),
];

pub const LEXICAL: &[(&str, &str, TimexType)] = &[
    ("He was seen today.", "today", Date),
    ("Fever began yesterday.", "yesterday", Date),
    ("Drain removed on postoperative day one.", "postoperative day one", Date),
    ("Extubated on hospital day five.", "hospital day five", Date),
    ("Pain started three days ago.", "three days ago", Date),
    ("Seen 2 weeks before admission.", "2 weeks before admission", Date),
];

/// One sentence per gazetteer family.
pub const GAZETTEER_FAMILIES: &[(&str, &str, TimexType)] = &[
    ("Aspirin bid was continued.", "bid", Frequency),
    ("Cough for several weeks.", "several weeks", Duration),
    ("Admitted at Christmas 2010.", "Christmas 2010", Date),
    ("Fell in the summer of 2009.", "summer of 2009", Date),
    ("Seen on Monday.", "Monday", Date),
    ("Diagnosed in March 1998.", "March 1998", Date),
    ("Vomited last night.", "last night", Time),
    ("Diagnosed in late 2009.", "late 2009", Date),
    ("Drain removed on hospital day third.", "hospital day third", Date),
    ("Nausea for two days.", "two days", Duration),
];

/// Text whose numeric fragments must not survive the post filter, and the
/// fragments.
pub const POST_FILTER_TEXT: &str = "Pressures 42/21 noted. Call 555-123-4567 or room 12/14.";
pub const POST_FILTER_DROPS: &[&str] = &["42/21", "555-123-4567", "12/14"];

pub enum Expect {
    Fixed(&'static str),
    Days(i64),
    /// `mode` 0: on or before the anchor, -1: strictly before, 1: strictly
    /// after.
    Weekday { target: i64, mode: i8 },
    MonthsBack(i64),
}

pub type Anchor = (i64, i64, i64);

pub fn expected_value(anchor: Anchor, e: &Expect) -> String {
    let a = days_from_civil(anchor.0, anchor.1, anchor.2);
    match *e {
        Expect::Fixed(v) => v.to_string(),
        Expect::Days(d) => iso(a + d),
        Expect::Weekday { target, mode } => {
            let back = (weekday(a) - target).rem_euclid(7);
            let d = match mode {
                0 => -back,
                -1 => -(if back == 0 { 7 } else { back }),
                _ => {
                    let fwd = (7 - back) % 7;
                    if fwd == 0 {
                        7
                    } else {
                        fwd
                    }
                }
            };
            iso(a + d)
        }
        Expect::MonthsBack(k) => {
            let idx = anchor.0 * 12 + anchor.1 - 1 - k;
            format!("{:04}-{:02}", idx.div_euclid(12), idx.rem_euclid(12) + 1)
        }
    }
}

pub fn normalization_cases() -> Vec<(Anchor, &'static str, TimexType, Expect)> {
    use Expect::*;
    const A: Anchor = (2012, 3, 10);
    const LEAP: Anchor = (2000, 3, 1);
    const NEW_YEAR: Anchor = (2011, 12, 31);
    const JAN: Anchor = (2013, 1, 5);
    vec![
        (A, "today", Date, Days(0)),
        (A, "yesterday", Date, Days(-1)),
        (A, "tomorrow", Date, Days(1)),
        (A, "three days ago", Date, Days(-3)),
        (A, "10 days ago", Date, Days(-10)),
        (A, "a week ago", Date, Days(-7)),
        (A, "2 weeks before admission", Date, Days(-14)),
        (A, "two days later", Date, Days(2)),
        (A, "postoperative day one", Date, Days(1)),
        (A, "postoperative day 3", Date, Days(3)),
        (A, "hospital day five", Date, Days(4)),
        (A, "two months ago", Date, MonthsBack(2)),
        (A, "Monday", Date, Weekday { target: 0, mode: 0 }),
        (A, "Friday", Date, Weekday { target: 4, mode: 0 }),
        (A, "next Monday", Date, Weekday { target: 0, mode: 1 }),
        (A, "last Saturday", Date, Weekday { target: 5, mode: -1 }),
        (A, "next Tuesday", Date, Weekday { target: 1, mode: 1 }),
        (LEAP, "yesterday", Date, Days(-1)),
        (LEAP, "two days ago", Date, Days(-2)),
        (LEAP, "5 days ago", Date, Days(-5)),
        (NEW_YEAR, "tomorrow", Date, Days(1)),
        (NEW_YEAR, "three days later", Date, Days(3)),
        (NEW_YEAR, "last Sunday", Date, Weekday { target: 6, mode: -1 }),
        (JAN, "10 days ago", Date, Days(-10)),
        (JAN, "three months ago", Date, MonthsBack(3)),
        (JAN, "next Monday", Date, Weekday { target: 0, mode: 1 }),
        (A, "01/04/1988", Date, Fixed("1988-01-04")),
        (A, "1/4/88", Date, Fixed("1988-01-04")),
        (A, "1988/25/01", Date, Fixed("1988-01-25")),
        (A, "12/25", Date, Fixed("2012-12-25")),
        (A, "March 1998", Date, Fixed("1998-03")),
        (A, "January 4 1988", Date, Fixed("1988-01-04")),
        (A, "two weeks", Duration, Fixed("P2W")),
        (A, "3 days", Duration, Fixed("P3D")),
        (A, "six months", Duration, Fixed("P6M")),
        (A, "10 years", Duration, Fixed("P10Y")),
        (A, "48 hours", Duration, Fixed("PT48H")),
        (A, "30 minutes", Duration, Fixed("PT30M")),
        (A, "qd", Frequency, Fixed("RP24H")),
        (A, "bid", Frequency, Fixed("RP12H")),
        (A, "tid", Frequency, Fixed("RP8H")),
        (A, "qid", Frequency, Fixed("RP6H")),
        (A, "q4h", Frequency, Fixed("RP4H")),
        (A, "every other day", Frequency, Fixed("RP2D")),
        (A, "every 3 days", Frequency, Fixed("RP3D")),
        (A, "three times a day", Frequency, Fixed("RP8H")),
        (A, "twice a week", Frequency, Fixed("R2P1W")),
        (A, "once a week", Frequency, Fixed("RP1W")),
        (A, "10:30 pm", Time, Fixed("2012-03-10T22:30")),
        (A, "1400 hours", Time, Fixed("2012-03-10T14:00")),
    ]
}

/// Published normalization components: value accuracy and the primary
/// score, plus the rule-based lenient TER F1 from the test-set table.
pub const PUBLISHED_VALUE_ACCURACY: f64 = 0.7044;
pub const PUBLISHED_TYPE_ACCURACY: f64 = 0.8473;
pub const PUBLISHED_RULE_LENIENT_F1: f64 = 0.8927;
pub const PUBLISHED_PRIMARY: f64 = 0.63;

pub type Composition = (&'static [(&'static str, &'static str, Relation)], (&'static str, &'static str, Relation));

pub const COMPOSITION_ROWS: [Composition; 5] = [
    (&[("A", "B", Before), ("B", "C", Before)], ("A", "C", Before)),
    (&[("A", "B", After), ("B", "C", After)], ("A", "C", After)),
    (&[("A", "B", Overlap), ("B", "C", Overlap)], ("A", "C", Overlap)),
    (&[("A", "B", Before), ("B", "C", Overlap)], ("A", "C", Before)),
    (&[("A", "B", Before), ("A", "C", Overlap)], ("C", "B", Before)),
];

pub struct PatternCase {
    pub text: &'static str,
    pub events: &'static [(&'static str, EventCategory)],
    pub timexes: &'static [(&'static str, TimexType)],
    pub link: (&'static str, &'static str, Relation),
}

/// One sentence per intra-sentence pattern row.
pub const PATTERN_ROWS: &[PatternCase] = &[
    PatternCase { text: "She had fever and chills.", events: &[("fever", Problem), ("chills", Problem)], timexes: &[], link: ("E1", "E2", Overlap) },
    PatternCase { text: "She had fever, chills.", events: &[("fever", Problem), ("chills", Problem)], timexes: &[], link: ("E1", "E2", Overlap) },
    PatternCase { text: "She started aspirin on 05/12/2006.", events: &[("aspirin", Treatment)], timexes: &[("05/12/2006", Date)], link: ("E1", "T1", Overlap) },
    PatternCase { text: "She started aspirin in 2006.", events: &[("aspirin", Treatment)], timexes: &[("2006", Date)], link: ("E1", "T1", Overlap) },
    PatternCase { text: "He received steroids for swelling.", events: &[("steroids", Treatment), ("swelling", Problem)], timexes: &[], link: ("E1", "E2", Before) },
    PatternCase { text: "He underwent a resection of the tumor.", events: &[("a resection", Treatment), ("the tumor", Problem)], timexes: &[], link: ("E1", "E2", Before) },
    PatternCase { text: "The CT showed a mass.", events: &[("The CT", Test), ("a mass", Problem)], timexes: &[], link: ("E1", "E2", Before) },
    PatternCase { text: "She had a rash after penicillin.", events: &[("a rash", Problem), ("penicillin", Treatment)], timexes: &[], link: ("E1", "E2", After) },
    PatternCase { text: "He restarted heparin post the biopsy.", events: &[("heparin", Treatment), ("the biopsy", Test)], timexes: &[], link: ("E1", "E2", After) },
];

/// The two worked sentences and the six links they yield.
pub const WORKED_TEXT: &str =
    "The patient reported vomiting, nausea and headaches. The patient received steroids for his swelling in 2006.";
pub const WORKED_EVENTS: &[(&str, EventCategory)] =
    &[("vomiting", Problem), ("nausea", Problem), ("headaches", Problem), ("steroids", Treatment), ("his swelling", Problem)];
pub const WORKED_TIMEXES: &[(&str, TimexType)] = &[("2006", Date)];
pub const WORKED_LINKS: &[(&str, &str, Relation)] = &[
    ("E1", "E2", Overlap),
    ("E1", "E3", Overlap),
    ("E2", "E3", Overlap),
    ("E4", "E5", Before),
    ("E4", "T1", Overlap),
    ("E5", "T1", Overlap),
];
