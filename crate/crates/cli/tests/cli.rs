use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn example(name: &str) -> String {
    examples().join(name).display().to_string()
}

fn qarev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qarev"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> String {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn lines(text: &str) -> BTreeSet<String> {
    text.lines().map(str::to_string).collect()
}

fn contraction(extra: &[&str]) -> Output {
    let (psi, mu) = (example("boole_psi.qa"), example("boole_mu.qa"));
    let mut args = vec!["contract", "--algebra", "allen", "--psi", &psi, "--mu", &mu];
    args.extend_from_slice(extra);
    qarev(&args)
}

#[test]
fn contraction_output_is_stable() {
    let out = contraction(&[]);
    assert_eq!(out.status.code(), Some(0));
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/boole_contraction.golden")).unwrap();
    assert_eq!(stdout(&out), golden);
}

#[test]
fn contraction_keeps_old_beliefs_within_published_result() {
    let out = contraction(&["--format", "scenarios"]);
    let got: BTreeSet<String> = stdout(&out).lines().skip(1).map(str::to_string).collect();
    let published = lines(&std::fs::read_to_string(example("boole_contraction_expected.scenarios")).unwrap());
    assert!(got.is_subset(&published), "{got:?}");

    let old = qarev(&["scenarios", "--formula", &example("boole_psi.qa")]);
    assert!(lines(&stdout(&old)).is_subset(&got));
    assert!(got.len() > 1);
}

#[test]
fn published_fixture_matches_its_formula() {
    let out = qarev(&["scenarios", "--formula", &example("boole_contraction_expected.qa")]);
    let fixture = std::fs::read_to_string(example("boole_contraction_expected.scenarios")).unwrap();
    assert_eq!(lines(&stdout(&out)), lines(&fixture));
}

#[test]
fn courses_are_consistent() {
    let out = qarev(&["check", "--algebra", "allen", "--formula", &example("courses.qa")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "CONSISTENT\n");
}

#[test]
fn self_revision_changes_nothing() {
    let f = example("courses.qa");
    let out = qarev(&["revise", "--psi", &f, "--mu", &f]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("delta = 0"));
    let printed = scratch("self_revision.qa", &text.lines().skip(1).collect::<Vec<_>>().join("\n"));
    let a = qarev(&["scenarios", "--formula", &printed]);
    let b = qarev(&["scenarios", "--formula", &f]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn printed_dnf_round_trips() {
    let cases = [
        ("X {b} Y | X {bi} Y", "X {m} Y"),
        ("X {b,m} Y & Y {o} Z", "!(X {b,m} Z) & Y {d} Z"),
        ("A {d} B & B {s} C", "A {eq} C | (A {b} B & B {b} C)"),
        ("P {o} Q", "Q {o} R & P {bi} R"),
    ];
    for (k, (psi, mu)) in cases.iter().enumerate() {
        let p = scratch(&format!("rt_psi_{k}.qa"), psi);
        let m = scratch(&format!("rt_mu_{k}.qa"), mu);
        let dnf = stdout(&qarev(&["revise", "--psi", &p, "--mu", &m, "--format", "dnf"]));
        let scen = stdout(&qarev(&["revise", "--psi", &p, "--mu", &m, "--format", "scenarios"]));
        assert_eq!(dnf.lines().next(), scen.lines().next());
        let body = scratch(&format!("rt_out_{k}.qa"), &dnf.lines().skip(1).collect::<Vec<_>>().join("\n"));
        let reparsed = qarev(&["scenarios", "--formula", &body]);
        assert_eq!(reparsed.status.code(), Some(0), "{}", stderr(&reparsed));
        let expected: Vec<&str> = scen.lines().skip(1).collect();
        let got: Vec<&str> = std::str::from_utf8(&reparsed.stdout).unwrap().lines().collect();
        assert_eq!(got, expected, "case {k}");
    }
}

#[test]
fn output_is_deterministic() {
    for format in ["dnf", "scenarios", "json"] {
        let a = contraction(&["--format", format, "--trace"]);
        let b = contraction(&["--format", format, "--trace"]);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stderr, b.stderr);
    }
}

#[test]
fn pruning_does_not_change_output() {
    for format in ["dnf", "scenarios"] {
        assert_eq!(contraction(&["--format", format]).stdout, contraction(&["--format", format, "--no-prune"]).stdout);
    }
}

#[test]
fn json_document_has_the_documented_fields() {
    let out = contraction(&["--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let keys: BTreeSet<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, BTreeSet::from(["delta", "dnf", "pair_report", "scenarios"]));
    assert_eq!(doc["delta"], 4);
    assert_eq!(doc["scenarios"].as_array().unwrap().len(), 3);
    let row = &doc["pair_report"][0];
    assert_eq!(row.as_array().unwrap().len(), 4);
}

#[test]
fn trace_goes_to_stderr() {
    let out = contraction(&["--trace"]);
    assert_eq!(stderr(&out), "0\t0\t4\tfalse\n");
    assert!(!stdout(&out).contains('\t'));
}

#[test]
fn distance_prints_delta_only() {
    let p = scratch("dist_psi.qa", "X {b} Y");
    let m = scratch("dist_mu.qa", "X {bi} Y");
    assert_eq!(stdout(&qarev(&["distance", "--psi", &p, "--mu", &m])), "16\n");
}

#[test]
fn inconsistent_new_belief_is_data() {
    let p = scratch("inc_psi.qa", "X {b} Y");
    let m = scratch("inc_mu.qa", "X {b} Y & Y {b} X");
    let out = qarev(&["revise", "--psi", &p, "--mu", &m]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "delta = undefined\n# inconsistent: no model\n");
    assert!(stderr(&out).starts_with("warning:"));
    let check = qarev(&["check", "--formula", &m]);
    assert_eq!(stdout(&check), "INCONSISTENT\n");
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn tautology_cannot_be_contracted() {
    let p = scratch("taut_psi.qa", "X {b} Y");
    let m = scratch("taut_mu.qa", "X {b} Y | !X {b} Y");
    let out = qarev(&["contract", "--psi", &p, "--mu", &m, "--format", "scenarios"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "delta = undefined\nX b Y\n");
    assert!(stderr(&out).contains("tautology"));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let bad = scratch("bad.qa", "X {b} Y &\nY {b|m} Z");
    let out = qarev(&["check", "--formula", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains(&format!("{bad}:2:5:")), "{}", stderr(&out));

    let unknown = scratch("unknown.qa", "X {zz} Y");
    assert_eq!(qarev(&["check", "--formula", &unknown]).status.code(), Some(2));

    let malformed = scratch("malformed.json", "{\"name\": ");
    let out = qarev(&["validate-algebra", "--algebra", &malformed]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("malformed.json"));
}

#[test]
fn law_violations_exit_3() {
    let allen = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/allen.json");
    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(allen).unwrap()).unwrap();
    doc["neighborhood"] = serde_json::json!([]);
    let path = scratch("disconnected.json", &doc.to_string());

    let out = qarev(&["validate-algebra", "--algebra", &path]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("FAIL\tneighborhood-connectivity\tneighborhood graph disconnected"));

    let f = example("courses.qa");
    let out = qarev(&["check", "--algebra", &path, "--formula", &f]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_files_exit_4() {
    let out = qarev(&["check", "--formula", "/nonexistent/formula.qa"]);
    assert_eq!(out.status.code(), Some(4));
    let out = qarev(&["check", "--algebra", "/nonexistent/algebra.json", "--formula", &example("courses.qa")]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn custom_algebra_file_is_usable() {
    let rcc8 = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/rcc8.json");
    let rcc8 = rcc8.display().to_string();
    let p = scratch("rcc_psi.qa", "A {NTPP} B & B {NTPP} C");
    let m = scratch("rcc_mu.qa", "A {DC,EC} C");
    let from_file = qarev(&["revise", "--algebra", &rcc8, "--psi", &p, "--mu", &m]);
    let builtin = qarev(&["revise", "--algebra", "rcc8", "--psi", &p, "--mu", &m]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, builtin.stdout);
    assert!(!stdout(&builtin).starts_with("delta = 0"));
}

#[test]
fn realizations_are_allen_only() {
    let out = qarev(&["scenarios", "--formula", &example("courses.qa"), "--realize"]);
    assert!(stdout(&out).contains("Maths=[0,1] Physics=[1,2]"));
    let f = scratch("rcc_f.qa", "A {PO} B");
    let out = qarev(&["scenarios", "--algebra", "rcc8", "--formula", &f, "--realize"]);
    assert_ne!(out.status.code(), Some(0));
}
