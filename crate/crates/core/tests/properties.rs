mod common;

use clintime::corpus::{
    parse_standoff, to_standoff_string, AnnotatedDocument, Document, EventCategory, EventMention, LinkOrigin, Modifier,
    Relation, Span, TLink, TimexMention, TimexType,
};
use clintime::crf::{LabelSchema, SchemaKind};
use clintime::events::label_fix;
use clintime::string_sim::{build_stats, jaro_winkler, soft_tfidf, SoftTfidfParams};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WORDS: &[&str] = &["pain", "chest", "fever", "x-ray", "naïve", "dose", "2012", "B.P.", "Ödem", "q4h"];

fn random_document(rng: &mut impl Rng, n: usize) -> AnnotatedDocument {
    let mut text = String::new();
    for i in 0..rng.gen_range(3..30) {
        if i > 0 {
            text.push_str([" ", " ", "\n", "\t", ", "].choose(rng).unwrap());
        }
        text.push_str(WORDS.choose(rng).unwrap());
    }
    if rng.gen_bool(0.3) {
        text.push('\n');
    }
    let mut doc = Document::new(format!("doc{n}"), text.clone()).with_meta("dct", "2012-03-10");
    if rng.gen_bool(0.5) {
        doc = doc.with_meta("note", "tab\there\\and\nnewline");
    }
    let mut ad = AnnotatedDocument::new(doc);
    let chars: Vec<char> = text.chars().collect();
    let words: Vec<Span> = {
        let mut v = Vec::new();
        let mut start = None;
        for (i, c) in chars.iter().enumerate() {
            match (c.is_whitespace() || *c == ',', start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    v.push(Span::new(s, i));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            v.push(Span::new(s, chars.len()));
        }
        v
    };
    let cats = [EventCategory::Problem, EventCategory::Treatment, EventCategory::Test];
    for (k, w) in words.iter().enumerate() {
        match rng.gen_range(0..4) {
            0 => ad.events.push(EventMention {
                id: format!("E{}", k + 1),
                span: *w,
                category: *cats.choose(rng).unwrap(),
                negated: rng.gen_bool(0.2),
            }),
            1 => ad.timexes.push(TimexMention {
                id: format!("T{}", k + 1),
                span: *w,
                ttype: TimexType::Duration,
                value: format!("P{}D", rng.gen_range(1..30)),
                modifier: *[Modifier::NA, Modifier::Approx, Modifier::More].choose(rng).unwrap(),
            }),
            _ => {}
        }
    }
    let anchors: Vec<String> = ad
        .events
        .iter()
        .map(|e| e.id.clone())
        .chain(ad.timexes.iter().map(|t| t.id.clone()))
        .chain(["ST-DCT".to_string()])
        .collect();
    let rels = [Relation::Before, Relation::After, Relation::Overlap];
    for k in 0..rng.gen_range(0..6) {
        let a = anchors.choose(rng).unwrap().clone();
        let b = anchors.choose(rng).unwrap().clone();
        if a != b {
            ad.tlinks.push(TLink {
                id: format!("L{}", k + 1),
                source: a,
                target: b,
                relation: *rels.choose(rng).unwrap(),
                origin: LinkOrigin::Other,
            });
        }
    }
    ad.canonicalize();
    ad
}

#[test]
fn standoff_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for n in 0..100 {
        let ad = random_document(&mut rng, n);
        ad.validate().unwrap();
        let text = to_standoff_string(&ad);
        let back = parse_standoff(&text).unwrap();
        assert_eq!(back, ad, "{text}");
        assert_eq!(to_standoff_string(&back), text);
    }
}

fn labels(kind: SchemaKind) -> impl Strategy<Value = Vec<String>> {
    let alphabet: Vec<String> = LabelSchema::new(kind, "Problem").labels();
    prop::collection::vec(prop::sample::select(alphabet), 0..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn label_fix_is_idempotent_bio(seq in labels(SchemaKind::BIO)) {
        let s = LabelSchema::new(SchemaKind::BIO, "Problem");
        let once = label_fix(&seq, &s);
        prop_assert_eq!(label_fix(&once, &s), once.clone());
        prop_assert!(s.is_valid(&once));
    }

    #[test]
    fn label_fix_is_idempotent_wbio(seq in labels(SchemaKind::WBIO)) {
        let s = LabelSchema::new(SchemaKind::WBIO, "Problem");
        let once = label_fix(&seq, &s);
        prop_assert_eq!(label_fix(&once, &s), once.clone());
    }

    #[test]
    fn soft_tfidf_stays_in_range(a in "[a-c ]{0,12}", b in "[a-c ]{0,12}", extra in "[a-d ]{1,12}") {
        let stats = build_stats(&[a.as_str(), b.as_str(), extra.as_str()]).unwrap();
        let p = SoftTfidfParams::default();
        let s = soft_tfidf(&a, &b, &stats, &p);
        prop_assert!((0.0..=1.0).contains(&s));
        prop_assert!((s - soft_tfidf(&b, &a, &stats, &p)).abs() < 1e-12);
    }
}

#[test]
fn soft_tfidf_matches_reference() {
    let vocab = ["chest", "pain", "pains", "fever", "fevers", "x", "ray", "martha", "marhta", "dixon", "dicksonx"];
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let phrase = |rng: &mut ChaCha8Rng| {
        (0..rng.gen_range(1..4)).map(|_| *vocab.choose(rng).unwrap()).collect::<Vec<_>>().join(" ")
    };
    for _ in 0..500 {
        let corpus: Vec<String> = (0..rng.gen_range(1..6)).map(|_| phrase(&mut rng)).collect();
        let refs: Vec<&str> = corpus.iter().map(String::as_str).collect();
        let stats = build_stats(&refs).unwrap();
        let (s, t) = (phrase(&mut rng), phrase(&mut rng));
        let got = soft_tfidf(&s, &t, &stats, &SoftTfidfParams::default());
        let want = common::soft_tfidf_reference(&s, &t, &refs, 0.9);
        assert!((got - want).abs() < 1e-9, "{s} | {t} | {corpus:?}: {got} vs {want}");
    }
}

#[test]
fn soft_tfidf_frozen_values() {
    let p = SoftTfidfParams::default();
    // single tokens: JW(pain, pains) = (1 + 4/5 + 1)/3 + 4 * 0.1 * (1 - jaro) = 0.96
    let stats = build_stats(&["pain", "pains", "fever"]).unwrap();
    assert!((soft_tfidf("pain", "pains", &stats, &p) - 0.96).abs() < 1e-9);
    // idf(chest) = ln 1.5, idf(pain) = idf(pains) = ln 3; the chest weight
    // squared is ln²1.5 / (ln²1.5 + ln²3)
    let stats = build_stats(&["chest pain", "chest pains", "fever"]).unwrap();
    let wc = 1.5f64.ln().powi(2) / (1.5f64.ln().powi(2) + 3f64.ln().powi(2));
    let want = wc + 0.96 * (1.0 - wc);
    assert!((want - 0.9647953).abs() < 1e-6);
    assert!((soft_tfidf("chest pain", "chest pains", &stats, &p) - want).abs() < 1e-9);
}

#[test]
fn jaro_winkler_against_definition() {
    assert!((jaro_winkler("MARTHA", "MARHTA") - 0.9611).abs() < 1e-4);
    assert!((common::jaro_winkler_reference("MARTHA", "MARHTA") - 0.9611).abs() < 1e-4);
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..2000 {
        let w = |rng: &mut ChaCha8Rng| (0..rng.gen_range(1..8)).map(|_| *[b'a', b'b', b'c', b'd'].choose(rng).unwrap() as char).collect::<String>();
        let (a, b) = (w(&mut rng), w(&mut rng));
        assert!((jaro_winkler(&a, &b) - common::jaro_winkler_reference(&a, &b)).abs() < 1e-12, "{a} {b}");
    }
}
