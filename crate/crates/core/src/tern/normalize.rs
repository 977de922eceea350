use chrono::{Datelike, Duration, Months, NaiveDate, Weekday};
use regex::Regex;
use std::sync::OnceLock;
use thiserror::Error;

use crate::corpus::{Document, Modifier, TimexMention, TimexType, META_ADMISSION, META_DCT};
use crate::preproc::tokenize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("cannot normalize `{0}`")]
    UnnormalizableExpression(String),
    #[error("invalid anchor date `{0}`")]
    InvalidAnchor(String),
}

/// Dates that relative expressions resolve against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormContext {
    pub anchor_date: NaiveDate,
    /// Overrides the anchor for section-relative expressions such as
    /// postoperative days.
    pub section_anchor: Option<NaiveDate>,
}

impl NormContext {
    pub fn new(anchor_date: NaiveDate) -> Self {
        NormContext {
            anchor_date,
            section_anchor: None,
        }
    }

    pub fn parse(anchor: &str) -> Result<Self, NormalizeError> {
        NaiveDate::parse_from_str(anchor.trim(), "%Y-%m-%d")
            .map(Self::new)
            .map_err(|_| NormalizeError::InvalidAnchor(anchor.to_string()))
    }

    pub fn with_section_anchor(mut self, date: NaiveDate) -> Self {
        self.section_anchor = Some(date);
        self
    }

    /// Admission date from the document metadata, else the creation time.
    pub fn from_document(doc: &Document) -> Option<Self> {
        [META_ADMISSION, META_DCT]
            .iter()
            .filter_map(|k| doc.meta.get(*k))
            .find_map(|v| Self::parse(v.get(..10).unwrap_or(v)).ok())
    }

    fn section(&self) -> NaiveDate {
        self.section_anchor.unwrap_or(self.anchor_date)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Unit {
    Second,
    Minute,
    Hour,
    Day,
    Week,
    Month,
    Year,
    Decade,
}

fn unit_of(w: &str) -> Option<Unit> {
    Some(match w {
        "second" | "seconds" | "sec" | "secs" => Unit::Second,
        "minute" | "minutes" | "min" | "mins" => Unit::Minute,
        "hour" | "hours" | "hr" | "hrs" | "h" => Unit::Hour,
        "day" | "days" | "d" => Unit::Day,
        "week" | "weeks" | "wk" | "wks" => Unit::Week,
        "month" | "months" | "mo" | "mos" => Unit::Month,
        "year" | "years" | "yr" | "yrs" => Unit::Year,
        "decade" | "decades" => Unit::Decade,
        _ => return None,
    })
}

const NUMBER_WORDS: &[&str] = &[
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven", "twelve",
    "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen", "twenty",
];
const ORDINAL_WORDS: &[&str] = &[
    "", "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth",
    "eleventh", "twelfth", "thirteenth", "fourteenth", "fifteenth", "sixteenth", "seventeenth",
    "eighteenth", "nineteenth", "twentieth",
];

fn number_of(w: &str) -> Option<f64> {
    if w.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        return w.parse().ok();
    }
    if let Some(i) = NUMBER_WORDS.iter().position(|x| *x == w) {
        return Some(i as f64);
    }
    if let Some(i) = ORDINAL_WORDS.iter().position(|x| *x == w).filter(|&i| i > 0) {
        return Some(i as f64);
    }
    Some(match w {
        "a" | "an" | "once" => 1.0,
        "couple" | "twice" => 2.0,
        "thrice" => 3.0,
        "thirty" | "thirtieth" => 30.0,
        "forty" => 40.0,
        "fifty" => 50.0,
        "sixty" => 60.0,
        "hundred" => 100.0,
        _ => return None,
    })
}

fn is_vague_quantity(w: &str) -> bool {
    matches!(w, "few" | "several" | "many" | "multiple" | "some")
}

fn month_of(w: &str) -> Option<u32> {
    const NAMES: [&str; 12] = [
        "january", "february", "march", "april", "may", "june", "july", "august", "september", "october",
        "november", "december",
    ];
    if w.len() < 3 {
        return None;
    }
    let i = NAMES
        .iter()
        .position(|n| *n == w || (w.len() <= 4 && n.starts_with(w) && (w.len() == 3 || w == "sept")))?;
    Some(i as u32 + 1)
}

fn weekday_of(w: &str) -> Option<Weekday> {
    Some(match w {
        "monday" | "mon" => Weekday::Mon,
        "tuesday" | "tue" | "tues" => Weekday::Tue,
        "wednesday" | "wed" => Weekday::Wed,
        "thursday" | "thu" | "thur" | "thurs" => Weekday::Thu,
        "friday" | "fri" => Weekday::Fri,
        "saturday" | "sat" => Weekday::Sat,
        "sunday" | "sun" => Weekday::Sun,
        _ => return None,
    })
}

/// Two-digit years below 30 fall in the 2000s, the rest in the 1900s.
pub fn expand_year(y: u32, digits: usize) -> i32 {
    if digits > 2 {
        y as i32
    } else if y < 30 {
        2000 + y as i32
    } else {
        1900 + y as i32
    }
}

fn year_of(w: &str) -> Option<i32> {
    (w.len() == 4 && w.chars().all(|c| c.is_ascii_digit()))
        .then(|| w.parse().ok())
        .flatten()
        .filter(|y| (1000..3000).contains(y))
}

fn ymd(d: NaiveDate) -> String {
    d.format("%Y-%m-%d").to_string()
}

fn fmt_num(n: f64) -> String {
    if n.fract() == 0.0 {
        format!("{}", n as i64)
    } else {
        let s = format!("{n:.3}");
        s.trim_end_matches('0').to_string()
    }
}

fn words_of(surface: &str) -> Vec<String> {
    tokenize(surface)
        .iter()
        .map(|t| t.lower())
        .filter(|w| !matches!(w.as_str(), "," | "." | "#" | "'"))
        .collect()
}

const MODIFIERS: &[(&str, Modifier)] = &[
    ("more than", Modifier::More),
    ("greater than", Modifier::More),
    ("longer than", Modifier::More),
    ("at least", Modifier::More),
    ("over", Modifier::More),
    ("less than", Modifier::Less),
    ("fewer than", Modifier::Less),
    ("shorter than", Modifier::Less),
    ("at most", Modifier::Less),
    ("up to", Modifier::Less),
    ("under", Modifier::Less),
    ("within", Modifier::Less),
    ("about", Modifier::Approx),
    ("approximately", Modifier::Approx),
    ("around", Modifier::Approx),
    ("nearly", Modifier::Approx),
    ("almost", Modifier::Approx),
    ("roughly", Modifier::Approx),
    ("approx", Modifier::Approx),
    ("~", Modifier::Approx),
    ("beginning of", Modifier::Start),
    ("start of", Modifier::Start),
    ("early", Modifier::Start),
    ("middle of", Modifier::Mid),
    ("mid", Modifier::Mid),
    ("end of", Modifier::End),
    ("late", Modifier::End),
];

/// Strips leading approximators and position words, returning the
/// modifier they express.
fn take_modifier(w: &mut Vec<String>) -> Modifier {
    let mut out = Modifier::NA;
    loop {
        if w.first().is_some_and(|x| x == "the") && w.len() > 1 {
            w.remove(0);
        }
        let hit = MODIFIERS.iter().find(|(p, _)| {
            let p: Vec<&str> = p.split(' ').collect();
            w.len() > p.len() && w.iter().zip(&p).all(|(a, b)| a == b)
        });
        let Some((p, m)) = hit else { break };
        w.drain(..p.split(' ').count());
        while w.first().is_some_and(|x| x == "-" || x == "of") {
            w.remove(0);
        }
        if out == Modifier::NA {
            out = *m;
        }
    }
    out
}

fn re(cell: &'static OnceLock<Regex>, pat: &str) -> &'static Regex {
    cell.get_or_init(|| Regex::new(pat).expect("static regex"))
}

fn numeric_date(w: &str, ctx: &NormContext) -> Option<String> {
    static ISO: OnceLock<Regex> = OnceLock::new();
    static SLASH: OnceLock<Regex> = OnceLock::new();
    static DASH: OnceLock<Regex> = OnceLock::new();
    if let Some(c) = re(&ISO, r"^(\d{4})-(\d{1,2})-(\d{1,2})$").captures(w) {
        let d = NaiveDate::from_ymd_opt(c[1].parse().ok()?, c[2].parse().ok()?, c[3].parse().ok()?)?;
        return Some(ymd(d));
    }
    let parts: Vec<&str> = if re(&SLASH, r"^\d{1,4}(/\d{1,4}){1,2}$").is_match(w) {
        w.split('/').collect()
    } else if re(&DASH, r"^\d{1,2}-\d{1,2}-(\d{2}|\d{4})$").is_match(w) {
        w.split('-').collect()
    } else {
        return None;
    };
    let n: Vec<u32> = parts.iter().map(|p| p.parse().ok()).collect::<Option<_>>()?;
    match n.len() {
        3 if parts[0].len() == 4 => {
            // YYYY/DD/MM, falling back to YYYY/MM/DD when the day/month
            // reading is impossible
            let y = n[0] as i32;
            NaiveDate::from_ymd_opt(y, n[2], n[1])
                .or_else(|| NaiveDate::from_ymd_opt(y, n[1], n[2]))
                .map(ymd)
        }
        3 => NaiveDate::from_ymd_opt(expand_year(n[2], parts[2].len()), n[0], n[1]).map(ymd),
        2 if parts[1].len() == 4 => (1..=12).contains(&n[0]).then(|| format!("{}-{:02}", n[1], n[0])),
        2 => NaiveDate::from_ymd_opt(ctx.anchor_date.year(), n[0], n[1]).map(ymd),
        _ => None,
    }
}

fn shift_months(d: NaiveDate, n: i64) -> Option<NaiveDate> {
    if n >= 0 {
        d.checked_add_months(Months::new(n as u32))
    } else {
        d.checked_sub_months(Months::new((-n) as u32))
    }
}

fn offset(base: NaiveDate, unit: Unit, n: f64, sign: i64) -> Option<String> {
    let whole = n.fract() == 0.0;
    let k = n as i64 * sign;
    Some(match unit {
        Unit::Second | Unit::Minute | Unit::Hour => ymd(base),
        Unit::Day if whole => ymd(base.checked_add_signed(Duration::days(k))?),
        Unit::Week if whole => ymd(base.checked_add_signed(Duration::days(7 * k))?),
        Unit::Day | Unit::Week => return None,
        Unit::Month => shift_months(base, if whole { k } else { (n * sign as f64).round() as i64 })?
            .format("%Y-%m")
            .to_string(),
        Unit::Year => format!("{:04}", base.year() as i64 + (n * sign as f64).round() as i64),
        Unit::Decade => format!("{:04}", base.year() as i64 + (10.0 * n * sign as f64).round() as i64),
    })
}

/// Quantity read from the words before a unit: the last number (the upper
/// bound of a range), `None` (unspecified) for vague amounts and bare
/// plurals, 1 for a bare singular unit.
fn quantity(before: &[String], unit_word: &str) -> Option<f64> {
    if before.iter().any(|w| is_vague_quantity(w)) {
        return None;
    }
    if let Some(n) = before.iter().rev().find_map(|w| number_of(w)) {
        return Some(n);
    }
    if unit_word.ends_with('s') && unit_word.len() > 3 {
        None
    } else {
        Some(1.0)
    }
}

fn unit_position(w: &[String]) -> Option<(usize, Unit)> {
    w.iter().enumerate().rev().find_map(|(i, x)| unit_of(x).map(|u| (i, u)))
}

fn easter(year: i32) -> Option<NaiveDate> {
    // anonymous Gregorian computus
    let a = year % 19;
    let b = year / 100;
    let c = year % 100;
    let d = b / 4;
    let e = b % 4;
    let f = (b + 8) / 25;
    let g = (b - f + 1) / 3;
    let h = (19 * a + b - d - g + 15) % 30;
    let i = c / 4;
    let k = c % 4;
    let l = (32 + 2 * e + 2 * i - h - k) % 7;
    let m = (a + 11 * h + 22 * l) / 451;
    let month = (h + l - 7 * m + 114) / 31;
    let day = (h + l - 7 * m + 114) % 31 + 1;
    NaiveDate::from_ymd_opt(year, month as u32, day as u32)
}

fn festival(w: &[String], year: i32) -> Option<String> {
    let has = |x: &str| w.iter().any(|y| y == x);
    let date = |m, d| NaiveDate::from_ymd_opt(year, m, d).map(ymd);
    if has("christmas") {
        return if has("eve") { date(12, 24) } else { date(12, 25) };
    }
    if has("new") && has("year") {
        return date(1, 1);
    }
    if has("easter") {
        return easter(year).map(ymd);
    }
    if has("thanksgiving") {
        return NaiveDate::from_weekday_of_month_opt(year, 11, Weekday::Thu, 4).map(ymd);
    }
    if has("halloween") {
        return date(10, 31);
    }
    if has("independence") {
        return date(7, 4);
    }
    if has("nowruz") {
        return date(3, 21);
    }
    if has("kippur") || has("hanukkah") || has("ramadan") {
        return Some(format!("{year:04}"));
    }
    None
}

fn season_code(w: &str) -> Option<&'static str> {
    Some(match w {
        "spring" => "SP",
        "summer" => "SU",
        "autumn" | "fall" => "FA",
        "winter" => "WI",
        _ => return None,
    })
}

fn direction(w: &[String]) -> i64 {
    if w.iter().any(|x| matches!(x.as_str(), "last" | "previous" | "past" | "prior")) {
        -1
    } else if w.iter().any(|x| matches!(x.as_str(), "next" | "following" | "coming")) {
        1
    } else {
        0
    }
}

fn nearest_weekday(anchor: NaiveDate, wd: Weekday, dir: i64) -> NaiveDate {
    let back = (anchor.weekday().num_days_from_monday() as i64 - wd.num_days_from_monday() as i64).rem_euclid(7);
    match dir {
        d if d < 0 => anchor - Duration::days(if back == 0 { 7 } else { back }),
        d if d > 0 => {
            let fwd = (7 - back) % 7;
            anchor + Duration::days(if fwd == 0 { 7 } else { fwd })
        }
        _ => anchor - Duration::days(back),
    }
}

fn date_value(w: &[String], ctx: &NormContext) -> Option<String> {
    let anchor = ctx.anchor_date;
    let has = |x: &str| w.iter().any(|y| y == x);
    let explicit_year = w.iter().find_map(|x| year_of(x));

    if let Some(v) = w.iter().find_map(|x| numeric_date(x, ctx)) {
        return Some(v);
    }
    match w {
        [x] if x == "today" || x == "tonight" => return Some(ymd(anchor)),
        [x] if x == "yesterday" => return Some(ymd(anchor - Duration::days(1))),
        [x] if x == "tomorrow" => return Some(ymd(anchor + Duration::days(1))),
        _ => {}
    }
    let after_day = |key: &str| -> Option<i64> {
        let i = w.iter().position(|x| x == key)?;
        w[i + 1..].iter().find_map(|x| number_of(x)).map(|n| n as i64)
    };
    if has("pod") {
        return after_day("pod").map(|n| ymd(ctx.section() + Duration::days(n)));
    }
    if has("day") && (has("postoperative") || has("postop") || has("op") || has("operative")) {
        return after_day("day").map(|n| ymd(ctx.section() + Duration::days(n)));
    }
    if has("hospital") && has("day") {
        return after_day("day").map(|n| ymd(anchor + Duration::days(n - 1)));
    }
    if has("day") && has("of") && w.len() == 3 {
        return Some(ymd(ctx.section()));
    }

    if let Some((ui, unit)) = unit_position(w) {
        let tail = &w[ui + 1..];
        let sign = if tail
            .iter()
            .any(|x| matches!(x.as_str(), "ago" | "earlier" | "before" | "prior"))
        {
            Some(-1)
        } else if tail
            .iter()
            .any(|x| matches!(x.as_str(), "later" | "after" | "following" | "post"))
        {
            Some(1)
        } else {
            None
        };
        if let Some(sign) = sign {
            let n = quantity(&w[..ui], &w[ui])?;
            return offset(anchor, unit, n, sign);
        }
        if ui + 1 == w.len() && month_of(&w[ui]).is_none() {
            // the following day, last week, this month ...
            let dir = direction(&w[..ui]);
            let same = has("same") || has("this");
            if dir != 0 || same {
                return offset(anchor, unit, 1.0, dir);
            }
        }
    }
    if w.iter().any(|x| matches!(x.as_str(), "night" | "morning" | "evening")) {
        if has("before") || has("prior") {
            return Some(ymd(anchor - Duration::days(1)));
        }
        if has("after") {
            return Some(ymd(anchor + Duration::days(1)));
        }
    }
    if has("weekend") {
        let dir = direction(w);
        return Some(ymd(nearest_weekday(anchor, Weekday::Sat, if dir == 0 { -1 } else { dir })));
    }

    let year = explicit_year.unwrap_or(anchor.year());
    if let Some(v) = festival(w, year) {
        return Some(v);
    }
    if let Some(code) = w.iter().find_map(|x| season_code(x)) {
        let y = if explicit_year.is_some() { year } else { year + direction(w) as i32 };
        return Some(format!("{y:04}-{code}"));
    }
    if let Some(mi) = w.iter().position(|x| month_of(x).is_some()) {
        let month = month_of(&w[mi])?;
        let day = w
            .iter()
            .enumerate()
            .filter(|(i, x)| *i != mi && year_of(x).is_none())
            .find_map(|(_, x)| number_of(x))
            .filter(|d| d.fract() == 0.0 && (1.0..=31.0).contains(d));
        return match day {
            Some(d) => NaiveDate::from_ymd_opt(year, month, d as u32).map(ymd),
            None => Some(format!("{year:04}-{month:02}")),
        };
    }
    if let Some(wd) = w.iter().find_map(|x| weekday_of(x)) {
        return Some(ymd(nearest_weekday(anchor, wd, direction(w))));
    }
    explicit_year.map(|y| format!("{y:04}"))
}

fn clock(w: &[String]) -> Option<(u32, u32)> {
    static HM: OnceLock<Regex> = OnceLock::new();
    static HHMM: OnceLock<Regex> = OnceLock::new();
    let meridiem = |i: usize| -> Option<bool> {
        let x = w.get(i + 1)?.replace('.', "");
        match x.as_str() {
            "am" => Some(false),
            "pm" => Some(true),
            _ => None,
        }
    };
    for (i, x) in w.iter().enumerate() {
        let (mut h, m, has_mer) = if let Some(c) = re(&HM, r"^(\d{1,2}):(\d{2})(?::\d{2})?$").captures(x) {
            (c[1].parse::<u32>().ok()?, c[2].parse::<u32>().ok()?, true)
        } else if re(&HHMM, r"^\d{3,4}$").is_match(x)
            && w.get(i + 1).is_some_and(|y| matches!(y.as_str(), "hours" | "hrs" | "h"))
        {
            let v: u32 = x.parse().ok()?;
            (v / 100, v % 100, false)
        } else if x.len() <= 2 && x.chars().all(|c| c.is_ascii_digit()) && meridiem(i).is_some() {
            (x.parse().ok()?, 0, true)
        } else {
            continue;
        };
        if has_mer {
            match meridiem(i) {
                Some(true) if h < 12 => h += 12,
                Some(false) if h == 12 => h = 0,
                _ => {}
            }
        }
        return (h < 24 && m < 60).then_some((h, m));
    }
    None
}

fn time_value(w: &[String], ctx: &NormContext) -> Option<String> {
    let anchor = ctx.anchor_date;
    let has = |x: &str| w.iter().any(|y| y == x);
    let explicit = w
        .iter()
        .any(|x| numeric_date(x, ctx).is_some() || month_of(x).is_some());
    let date = if explicit {
        let rest: Vec<String> = w.iter().filter(|x| !x.contains(':')).cloned().collect();
        date_value(&rest, ctx)?
    } else if has("yesterday") || has("last") {
        ymd(anchor - Duration::days(1))
    } else if has("tomorrow") {
        ymd(anchor + Duration::days(1))
    } else {
        ymd(anchor)
    };
    if let Some((h, m)) = clock(w) {
        return Some(format!("{date}T{h:02}:{m:02}"));
    }
    if has("noon") {
        return Some(format!("{date}T12:00"));
    }
    if has("midnight") {
        return Some(format!("{date}T00:00"));
    }
    let part = w.iter().find_map(|x| match x.as_str() {
        "morning" => Some("MO"),
        "afternoon" => Some("AF"),
        "evening" => Some("EV"),
        "night" | "tonight" => Some("NI"),
        _ => None,
    })?;
    Some(format!("{date}T{part}"))
}

fn period(unit: Unit, n: Option<f64>) -> String {
    let q = n.map(fmt_num).unwrap_or_else(|| "X".into());
    match unit {
        Unit::Second => format!("PT{q}S"),
        Unit::Minute => format!("PT{q}M"),
        Unit::Hour => format!("PT{q}H"),
        Unit::Day => format!("P{q}D"),
        Unit::Week => format!("P{q}W"),
        Unit::Month => format!("P{q}M"),
        Unit::Year => format!("P{q}Y"),
        Unit::Decade => format!("P{}Y", n.map(|v| fmt_num(v * 10.0)).unwrap_or_else(|| "X".into())),
    }
}

fn duration_value(w: &[String]) -> Option<String> {
    let joined = w.join(" ");
    match joined.as_str() {
        "overnight" | "night" => return Some("PT12H".into()),
        "weekend" => return Some("P2D".into()),
        _ => {}
    }
    let (ui, unit) = unit_position(w)?;
    if w[..ui].iter().any(|x| x == "half") {
        return Some(period(unit, Some(0.5)));
    }
    Some(period(unit, quantity(&w[..ui], &w[ui])))
}

// Hour periods in repetitions are written without the time designator
// (RP8H), the customary clinical encoding.
fn rep(unit: Unit, n: f64) -> String {
    match unit {
        Unit::Hour => format!("RP{}H", fmt_num(n)),
        _ => format!("R{}", period(unit, Some(n))),
    }
}

fn per_unit(times: f64, unit: Unit) -> String {
    let (base, sub) = match unit {
        Unit::Day => (24.0, Unit::Hour),
        Unit::Hour => (60.0, Unit::Minute),
        Unit::Week => (7.0, Unit::Day),
        _ => (0.0, unit),
    };
    if times == 1.0 && unit != Unit::Day {
        return rep(unit, 1.0);
    }
    let each = base / times;
    if base > 0.0 && each.fract() == 0.0 && each >= 1.0 {
        rep(sub, each)
    } else {
        format!("R{}{}", fmt_num(times), period(unit, Some(1.0)))
    }
}

fn frequency_value(w: &[String]) -> Option<String> {
    let compact: String = w.concat().replace('.', "");
    let daily = per_unit(1.0, Unit::Day);
    let fixed = match compact.as_str() {
        "qd" | "daily" | "oncedaily" | "onceaday" | "everyday" | "qhs" | "qam" | "qpm" | "nightly" | "atbedtime"
        | "perday" => Some(daily.clone()),
        "bid" | "twicedaily" | "twiceaday" => Some(per_unit(2.0, Unit::Day)),
        "tid" | "threetimesdaily" | "threetimesaday" | "thricedaily" => Some(per_unit(3.0, Unit::Day)),
        "qid" | "fourtimesdaily" | "fourtimesaday" => Some(per_unit(4.0, Unit::Day)),
        "qod" | "everyotherday" => Some(rep(Unit::Day, 2.0)),
        "weekly" | "onceaweek" | "perweek" | "onceweekly" => Some(per_unit(1.0, Unit::Week)),
        "twiceweekly" | "twiceaweek" => Some(per_unit(2.0, Unit::Week)),
        "monthly" | "permonth" => Some(per_unit(1.0, Unit::Month)),
        "hourly" | "perhour" => Some(per_unit(1.0, Unit::Hour)),
        "yearly" | "annually" => Some(per_unit(1.0, Unit::Year)),
        _ => None,
    };
    if fixed.is_some() {
        return fixed;
    }
    // every morning / every night
    if matches!(w.first().map(String::as_str), Some("every" | "each"))
        && w.iter().any(|x| matches!(x.as_str(), "morning" | "evening" | "night" | "afternoon"))
    {
        return Some(daily);
    }
    let unit_at = unit_position(w);
    // q4h, q 4-6 hours
    if w.first().is_some_and(|x| x == "q") {
        let (_, unit) = unit_at?;
        let n = w.iter().find_map(|x| number_of(x))?;
        return Some(rep(unit, n));
    }
    if matches!(w.first().map(String::as_str), Some("every" | "each")) {
        let (ui, unit) = unit_at?;
        if w[..ui].iter().any(|x| x == "other") {
            return Some(rep(unit, 2.0));
        }
        let n = w[1..ui].iter().find_map(|x| number_of(x)).unwrap_or(1.0);
        return Some(rep(unit, n));
    }
    // once a week, 3 times a day, twice weekly
    let times = w.first().and_then(|x| number_of(x))?;
    let unit = match w.last().map(String::as_str) {
        Some("daily" | "nightly") => Unit::Day,
        Some("weekly") => Unit::Week,
        Some("monthly") => Unit::Month,
        Some("hourly") => Unit::Hour,
        Some("yearly") => Unit::Year,
        _ => unit_at?.1,
    };
    Some(per_unit(times, unit))
}


/// Normalizes a temporal expression surface to a TIMEX3 value and modifier.
pub fn normalize_surface(
    surface: &str,
    ttype: TimexType,
    ctx: &NormContext,
) -> Result<(String, Modifier), NormalizeError> {
    let mut w = words_of(surface);
    let fail = || NormalizeError::UnnormalizableExpression(surface.to_string());
    let joined = w.join(" ");
    if ttype == TimexType::Duration && (joined == "over night" || joined == "overnight") {
        return Ok(("PT12H".into(), Modifier::NA));
    }
    let modifier = if ttype == TimexType::Frequency {
        Modifier::NA
    } else {
        take_modifier(&mut w)
    };
    if ttype == TimexType::Duration {
        // "the past two weeks" is a plain two-week duration
        while w
            .first()
            .is_some_and(|x| matches!(x.as_str(), "the" | "past" | "last" | "next" | "previous" | "prior" | "following"))
        {
            w.remove(0);
        }
    }
    let value = match ttype {
        TimexType::Date => date_value(&w, ctx),
        TimexType::Time => time_value(&w, ctx),
        TimexType::Duration => duration_value(&w),
        TimexType::Frequency => frequency_value(&w),
    }
    .ok_or_else(fail)?;
    debug_assert!(crate::corpus::timex_value_is_valid(ttype, &value), "{value}");
    Ok((value, modifier))
}

/// Fills `value` and `modifier`; expressions that cannot be resolved keep
/// their span and type with value `UNK`.
pub fn normalize(mention: &TimexMention, doc: &Document, ctx: &NormContext) -> TimexMention {
    let surface = doc.slice(mention.span).unwrap_or("");
    let (value, modifier) =
        normalize_surface(surface, mention.ttype, ctx).unwrap_or_else(|_| ("UNK".to_string(), Modifier::NA));
    TimexMention {
        value,
        modifier,
        ..mention.clone()
    }
}
