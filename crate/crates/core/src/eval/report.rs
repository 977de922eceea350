use std::fmt::Write as _;

use super::{EvalReport, SpanScores};

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdViolation {
    pub key: String,
    pub minimum: f64,
    /// `None` when the key names no score.
    pub actual: Option<f64>,
}

impl std::fmt::Display for ThresholdViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.actual {
            Some(a) => write!(f, "{} = {:.4} is below {:.4}", self.key, a, self.minimum),
            None => write!(f, "{} is not a reported score", self.key),
        }
    }
}

fn prf(out: &mut Vec<(String, f64)>, key: &str, c: &super::Counts) {
    out.push((format!("{key}.precision"), c.precision()));
    out.push((format!("{key}.recall"), c.recall()));
    out.push((format!("{key}.f1"), c.f1()));
}

fn span_keys(out: &mut Vec<(String, f64)>, key: &str, s: &SpanScores) {
    prf(out, &format!("{key}.strict"), &s.strict);
    prf(out, &format!("{key}.lenient"), &s.lenient);
}

impl EvalReport {
    /// Every score under a stable dotted key, in a fixed order.
    pub fn scores(&self) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        for (cat, s) in &self.events {
            span_keys(&mut out, &format!("events.{}", cat.as_str().to_lowercase()), s);
        }
        span_keys(&mut out, "events.micro", &self.events_micro());
        span_keys(&mut out, "timex", &self.timexes.spans);
        out.push(("timex.type_accuracy".into(), self.timexes.type_accuracy()));
        out.push(("timex.value_accuracy".into(), self.timexes.value_accuracy()));
        out.push(("timex.modifier_accuracy".into(), self.timexes.modifier_accuracy()));
        out.push(("timex.primary".into(), self.timexes.primary()));
        prf(&mut out, "tlink.customary", &self.tlink_customary);
        let te = &self.tlink_tempeval3;
        out.push(("tlink.tempeval3.precision".into(), te.precision()));
        out.push(("tlink.tempeval3.recall".into(), te.recall()));
        out.push(("tlink.tempeval3.f1".into(), super::f1(te.precision(), te.recall())));
        out
    }

    pub fn score(&self, key: &str) -> Option<f64> {
        self.scores().into_iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// `key=value` lines, values with four decimals.
    pub fn to_key_values(&self) -> String {
        let mut s = format!("documents={}\n", self.documents);
        if let Some(sub) = self.tlink_subset {
            let _ = writeln!(s, "tlink.subset={}", format!("{sub:?}").to_lowercase());
        }
        for (k, v) in self.scores() {
            let _ = writeln!(s, "{k}={v:.4}");
        }
        s
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "documents: {}", self.documents);
        let _ = writeln!(
            s,
            "{:<12} {:>7} {:>7} {:>7}   {:>7} {:>7} {:>7}",
            "", "P", "R", "F1", "P(len)", "R(len)", "F1(len)"
        );
        let mut row = |name: &str, sc: &SpanScores| {
            let _ = writeln!(
                s,
                "{:<12} {:>7.4} {:>7.4} {:>7.4}   {:>7.4} {:>7.4} {:>7.4}",
                name,
                sc.strict.precision(),
                sc.strict.recall(),
                sc.strict.f1(),
                sc.lenient.precision(),
                sc.lenient.recall(),
                sc.lenient.f1()
            );
        };
        for (cat, sc) in &self.events {
            row(cat.as_str(), sc);
        }
        row("EVENT micro", &self.events_micro());
        row("TIMEX3", &self.timexes.spans);
        let t = &self.timexes;
        let _ = writeln!(
            s,
            "TIMEX3 accuracy  type {:.4}  value {:.4}  modifier {:.4}  primary {:.4}",
            t.type_accuracy(),
            t.value_accuracy(),
            t.modifier_accuracy(),
            t.primary()
        );
        if let Some(sub) = self.tlink_subset {
            let _ = writeln!(s, "TLINK subset: {sub:?}");
        }
        let c = &self.tlink_customary;
        let _ = writeln!(s, "TLINK customary  P {:.4}  R {:.4}  F1 {:.4}", c.precision(), c.recall(), c.f1());
        let te = &self.tlink_tempeval3;
        let _ = writeln!(
            s,
            "TLINK TempEval-3 P {:.4}  R {:.4}  F1 {:.4}",
            te.precision(),
            te.recall(),
            super::f1(te.precision(), te.recall())
        );
        s
    }

    /// Scores falling short of their minimum.
    pub fn check_thresholds(&self, minimums: &[(String, f64)]) -> Vec<ThresholdViolation> {
        minimums
            .iter()
            .filter_map(|(key, min)| {
                let actual = self.score(key);
                match actual {
                    Some(a) if a >= *min => None,
                    _ => Some(ThresholdViolation { key: key.clone(), minimum: *min, actual }),
                }
            })
            .collect()
    }
}
