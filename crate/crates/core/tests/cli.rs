use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn clintime(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clintime")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(code(&clintime(&[])), 1);
    assert_eq!(code(&clintime(&["frobnicate"])), 1);
    assert_eq!(code(&clintime(&["eval", "--gold"])), 1);
    assert_eq!(code(&clintime(&["--help"])), 0);
    let dir = tempfile::tempdir().unwrap();
    let o = clintime(&["tag", "--input", p(dir.path()), "--output", p(dir.path()), "--set", "no_such_key=1"]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    let o = clintime(&["eval", "--gold", p(dir.path()), "--system", p(dir.path()), "--min", "nonsense"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn data_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing");
    assert_eq!(code(&clintime(&["eval", "--gold", p(&missing), "--system", p(&missing)])), 2);
    let bad = dir.path().join("bad.standoff");
    fs::write(&bad, "not a document\n").unwrap();
    assert_eq!(code(&clintime(&["timeline", p(&bad)])), 2);
    let o = clintime(&["tag", "--models", p(&missing), "--input", p(dir.path()), "--output", p(&dir.path().join("out"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn pipeline_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let gold = dir.path().join("gold");
    let models = dir.path().join("models");
    let o = clintime(&["gen-synthetic", "--output", p(&gold), "--documents", "6", "--sentences", "6", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let o = clintime(&["train", "--corpus", p(&gold), "--models", p(&models)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["problem.model.json", "treatment.model.json", "test.model.json", "ter.model.json"] {
        assert!(models.join(f).exists(), "{f}");
    }

    // inputs: the gold documents plus a raw text note and a broken file
    let input = dir.path().join("input");
    fs::create_dir(&input).unwrap();
    for (name, bytes) in files(&gold) {
        fs::write(input.join(name), bytes).unwrap();
    }
    fs::write(input.join("note.txt"), "He was given aspirin for chest pain.\n").unwrap();
    fs::write(input.join("broken.standoff"), "#DOC broken\n#TEXT 5\nshort\n").unwrap();

    let one = dir.path().join("one");
    let eight = dir.path().join("eight");
    for (out, workers) in [(&one, "1"), (&eight, "8")] {
        let o = clintime(&["tag", "--models", p(&models), "--input", p(&input), "--output", p(out), "--workers", workers]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let log = fs::read_to_string(out.join("errors.log")).unwrap();
        assert!(log.contains("broken.standoff"), "{log}");
        assert_eq!(log.lines().count(), 1);
    }
    assert_eq!(files(&one), files(&eight));
    assert!(one.join("note.standoff").exists());

    let sys = dir.path().join("sys");
    fs::create_dir(&sys).unwrap();
    for (name, bytes) in files(&one) {
        if name.starts_with("synth") {
            fs::write(sys.join(name), bytes).unwrap();
        }
    }
    let report = dir.path().join("report.txt");
    let o = clintime(&["eval", "--gold", p(&gold), "--system", p(&sys), "--report", p(&report)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let kv = fs::read_to_string(&report).unwrap();
    assert!(kv.contains("timex.lenient.f1="), "{kv}");
    let o = clintime(&["eval", "--gold", p(&gold), "--system", p(&sys), "--min", "timex.lenient.f1=1.01"]);
    assert_eq!(code(&o), 3);
    let o = clintime(&["eval", "--gold", p(&gold), "--system", p(&sys), "--tlink-subset", "sectime"]);
    assert_eq!(code(&o), 0);

    let o = clintime(&["timeline", "--csv", p(&one.join("synth0001.standoff"))]);
    assert_eq!(code(&o), 0);
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.starts_with("anchor_id,surface,resolved_date,relation_to_dct\n"), "{csv}");
}
