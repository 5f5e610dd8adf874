use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qtopo::homology::export::parse_barcode_json;

fn qtopo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtopo")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn line<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines().find(|l| l.starts_with(key)).unwrap_or_else(|| panic!("no `{key}` line in\n{text}"))[key.len()..].trim()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn ghz5_tsallis_barcode() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("ghz5.json");
    let out = qtopo(&["analyze", "--builtin", "ghz", "--n", "5", "--functional", "tsallis2-total", "--out-json", p(&json)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(line(&text, "bars H0"), "5 (1 essential)");
    assert_eq!(line(&text, "bars H1"), "6 (0 essential)");
    assert_eq!(line(&text, "epsilon_max"), "2.5");

    let file = parse_barcode_json(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(file.n, 5);
    let h0: Vec<_> = file.intervals.iter().filter(|i| i.dim == 0).collect();
    assert_eq!(h0.len(), 5);
    assert_eq!(h0.iter().filter(|i| i.death == Some(0.5)).count(), 4);
    assert_eq!(h0.iter().filter(|i| i.death.is_none()).count(), 1);
    let h1: Vec<_> = file.intervals.iter().filter(|i| i.dim == 1).collect();
    assert_eq!(h1.len(), 6);
    assert!(h1.iter().all(|i| i.birth == 0.5 && i.death == Some(1.0)));
}

#[test]
fn pentagon5_with_oracle() {
    let out = qtopo(&["analyze", "--builtin", "pentagon5", "--oracle"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(line(&text, "ade"), "1.5625");
    assert_eq!(line(&text, "epsilon_max"), "5");
    for check in ["ade", "iec-subset-sum", "betti", "stabilizer-count"] {
        assert_eq!(line(&text, &format!("oracle {check}")), "ok");
    }
}

#[test]
fn product_state_file_has_one_bar() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("product.json");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    fs::write(&state, format!(r#"{{"n": 2, "amplitudes": [[{h}, 0], [{h}, 0], [0, 0], [0, 0]]}}"#)).unwrap();
    let csv = dir.path().join("bars.csv");
    let out = qtopo(&["analyze", "--state", p(&state), "--out-csv", p(&csv)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(line(&text, "bars H0"), "1 (1 essential)");
    assert!(!text.contains("bars H1"));
    assert_eq!(line(&text, "epsilon_max"), "0");
    assert!(fs::read_to_string(&csv).unwrap().starts_with("epsilon,beta0"));
}

#[test]
fn graph_file_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("c5.txt");
    fs::write(&graph, "# five-cycle\nn 5\n1 2\n2 3\n3 4\n4 5\n5 1\n").unwrap();
    let from_file = qtopo(&["analyze", "--graph", p(&graph)]);
    let builtin = qtopo(&["analyze", "--builtin", "pentagon5"]);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    let strip = |o: &Output| stdout(o).lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&from_file), strip(&builtin));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let json = dir.path().join(format!("{tag}.json"));
        let csv = dir.path().join(format!("{tag}.csv"));
        let svg = dir.path().join(format!("{tag}.svg"));
        let out = qtopo(&[
            "analyze", "--random", "5,17", "--out-json", p(&json), "--out-csv", p(&csv), "--out-svg", p(&svg),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        (stdout(&out), fs::read(json).unwrap(), fs::read(csv).unwrap(), fs::read(svg).unwrap())
    };
    let a = run("a");
    let b = run("b");
    assert_eq!(a, b);
    assert!(String::from_utf8(a.3).unwrap().starts_with("<svg"));
}

#[test]
fn verify_appendix_passes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = qtopo(&["verify", "--suite", "appendix", "--out-json", p(&report)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(value["passed"], true);
    assert_eq!(value["failures"], 0);
}

#[test]
fn verify_ghz_footprint_passes() {
    let out = qtopo(&["verify", "--suite", "ghz-footprint"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn verify_refuses_mismatched_functional() {
    let out = qtopo(&["verify", "--suite", "ghz-footprint", "--functional", "vn-total"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("tsallis2-total"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["analyze"][..],
        &["analyze", "--builtin", "ghz"],
        &["analyze", "--builtin", "nosuchgraph"],
        &["analyze", "--random", "five"],
        &["analyze", "--builtin", "pentagon5", "--n", "6"],
        &["analyze", "--builtin", "ghz", "--n", "4", "--functional", "renyi"],
        &["verify", "--suite", "everything"],
    ] {
        let out = qtopo(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn unreadable_state_is_a_run_failure() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("bad.json");
    fs::write(&state, r#"{"n": 1, "amplitudes": [[1, 0], [1, 0]]}"#).unwrap();
    let out = qtopo(&["analyze", "--state", p(&state)]);
    assert_ne!(out.status.code(), Some(0));
    assert!(!stderr(&out).is_empty());
}

#[test]
fn pentagon5_tsallis_grid() {
    let out = qtopo(&["analyze", "--builtin", "pentagon5", "--functional", "tsallis2-total"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(line(&text, "critical"), "0 0.25 0.75 1.5 2.5");
    assert_eq!(text.lines().filter(|l| l.trim() == "H1 [0.25, 0.75)").count(), 6);
    assert_eq!(text.lines().filter(|l| l.trim() == "H0 [0, 0.25)").count(), 4);
}
