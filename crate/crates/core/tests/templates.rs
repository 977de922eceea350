mod common;

use clintime::crf::expand_features;
use clintime::events::event_templates;
use clintime::tern::ter_templates;
use common::fixtures::*;

#[test]
fn event_template_expansion() {
    let t = event_templates();
    assert_eq!(t.len(), 20);
    let f = expand_features(&grid(EVENT_ROWS), &t).unwrap();
    for (pos, want) in EVENT_EXPANSIONS {
        assert_eq!(f[*pos], want, "position {pos}");
    }
}

#[test]
fn ter_template_expansion() {
    let t = ter_templates();
    assert_eq!(t.len(), 19);
    let f = expand_features(&grid(TER_ROWS), &t).unwrap();
    for (pos, want) in TER_EXPANSIONS {
        assert_eq!(f[*pos], want, "position {pos}");
    }
}

#[test]
fn template_ids_are_numbered_in_order() {
    let ids = |t: Vec<clintime::crf::FeatureTemplate>| t.into_iter().map(|x| x.id).collect::<Vec<_>>();
    let expected: Vec<String> = (0..20).map(|i| format!("U{i:02}")).collect();
    assert_eq!(ids(event_templates()), expected);
    assert_eq!(ids(ter_templates()), expected[..19].to_vec());
}
