use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn tbn(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tbn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const PAIR: &str = "\
A: a b
B: a* b*
C: a
D: b
conf apart: {A} {B} {C} {D}
conf paired: {A B} {C} {D}
conf swapped: {A} {B C D}
conf half: {A C} {B D}
";

#[test]
fn grid_pipe_gives_barrier_two() {
    let grid = tbn(&["gen", "grid", "--n", "2"], None);
    assert!(grid.status.success());
    let o = tbn(
        &["barrier", "-", "--from", "base_H", "--to", "base_V", "--w", "2"],
        Some(&stdout(&grid)),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("barrier 2"));
}

#[test]
fn json_reports_follow_the_schema() {
    let grid = stdout(&tbn(&["gen", "grid", "--n", "2", "--w", "2"], None));
    let o = tbn(
        &["--format", "json", "barrier", "-", "--from", "base_H", "--to", "base_V"],
        Some(&grid),
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for key in [
        "command",
        "tbn_hash",
        "w",
        "result",
        "witness",
        "explored",
        "budget_hit",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["w"], "2/1");
    assert_eq!(v["result"]["barrier"], "2");
    assert_eq!(v["result"]["unreachable"], false);
    assert!(v["explored"].is_string());
    assert_eq!(v["witness"]["height"], "2");
}

#[test]
fn translator_offset_suite_passes() {
    let o = tbn(&["verify", "translator-offset", "--n", "2"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn failing_suite_exits_one() {
    let o = tbn(&["--format", "json", "verify", "translator-cheat"], None);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["result"]["passed"], false);
}

#[test]
fn unreachable_saturated_target_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "pair.tbn", PAIR);
    let o = tbn(
        &[
            "--format",
            "json",
            "barrier",
            f.to_str().unwrap(),
            "--from",
            "paired",
            "--to",
            "apart",
            "--w",
            "2",
            "--saturated",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["result"]["unreachable"], true);
}

#[test]
fn capped_polymer_size_can_make_a_target_unreachable() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "pair.tbn", PAIR);
    let o = tbn(
        &[
            "--format",
            "json",
            "barrier",
            f.to_str().unwrap(),
            "--from",
            "apart",
            "--to",
            "swapped",
            "--w",
            "2",
            "--max-polymer-size",
            "2",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["result"]["unreachable"], true);
    assert_eq!(v["result"]["upper_bound_only"], true);
}

#[test]
fn decimal_strength_is_a_usage_error() {
    let grid = stdout(&tbn(&["gen", "grid", "--n", "2"], None));
    let o = tbn(
        &["barrier", "-", "--from", "base_H", "--to", "base_V", "--w", "1.5"],
        Some(&grid),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("1.5"));
}

#[test]
fn missing_strength_is_a_usage_error() {
    let grid = stdout(&tbn(&["gen", "grid", "--n", "2"], None));
    let o = tbn(&["stable", "-"], Some(&grid));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_report_position() {
    let o = tbn(&["saturated", "-", "--conf", "x"], Some("A: a\nconf x: {A} {Z}\n"));
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(tbn(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(tbn(&["--help"], None).status.code(), Some(0));
}

#[test]
fn budget_exhaustion_exits_three() {
    let grid = stdout(&tbn(&["gen", "grid", "--n", "3"], None));
    let o = tbn(
        &[
            "--format",
            "json",
            "barrier",
            "-",
            "--from",
            "base_H",
            "--to",
            "base_V",
            "--w",
            "2",
            "--max-states",
            "5",
        ],
        Some(&grid),
    );
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert_eq!(v["budget_hit"], true);
    assert!(v["result"]["lower_bound"].is_string());
}

#[test]
fn witness_replays_through_path() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "pair.tbn", PAIR);
    let f = f.to_str().unwrap();
    let o = tbn(
        &[
            "--format", "json", "barrier", f, "--from", "paired", "--to", "swapped", "--w", "2",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let report = json(&o);
    let p = write(&dir, "path.json", &stdout(&o));
    let o = tbn(
        &["--format", "json", "path", f, "--path", p.to_str().unwrap(), "--w", "2"],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["valid"], true);
    assert_eq!(v["result"]["height"], report["result"]["barrier"]);

    // jump straight from one endpoint to the other
    let mut bad = report["witness"].clone();
    let confs = bad["configurations"].as_array().unwrap().clone();
    bad["configurations"] = Value::Array(vec![confs[0].clone(), confs[confs.len() - 1].clone()]);
    let p = write(&dir, "bad.json", &bad.to_string());
    let o = tbn(&["--format", "json", "path", f, "--path", p.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["result"]["valid"], false);
}

#[test]
fn stable_and_energy_on_a_grid() {
    let grid = stdout(&tbn(&["gen", "grid", "--n", "2", "--w", "2"], None));
    let o = tbn(&["--format", "json", "stable", "-"], Some(&grid));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["stable"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"]["max_s"], 3);
    let o = tbn(
        &["--format", "json", "energy", "-", "--conf", "base_H", "--gibbs"],
        Some(&grid),
    );
    let v = json(&o);
    assert_eq!(v["result"]["energy"], "-11");
    assert_eq!(v["result"]["saturated"], true);
    assert!(v["result"]["gibbs_kcal_per_mol"].as_f64().unwrap() < 0.0);
}

#[test]
fn catalyzed_translator_barrier_is_one() {
    let tr = stdout(&tbn(
        &["gen", "translator", "--z", "2", "--c", "4", "--catalysts", "1"],
        None,
    ));
    let o = tbn(
        &["barrier", "-", "--from", "initial", "--to", "triggered", "--w", "2"],
        Some(&tr),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("barrier 1"));
}

#[test]
fn bond_aware_barrier() {
    let doc = "A: a\nB: a*\nconf apart: {A} {B}\nconf together: {A B}\n";
    let o = tbn(
        &[
            "--format",
            "json",
            "barrier",
            "-",
            "--from",
            "together",
            "--to",
            "apart",
            "--w",
            "2",
            "--bond-aware",
        ],
        Some(doc),
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["bond_aware"], true);
    // breaking the bond costs w, the split after it gains 1
    assert_eq!(v["result"]["barrier"], "2");
    let first = &v["witness"]["configurations"][0];
    assert_eq!(first["bonds"].as_array().unwrap().len(), 1);
}

#[test]
fn saturated_reports_bond_counts() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "pair.tbn", PAIR);
    let o = tbn(
        &["--format", "json", "saturated", f.to_str().unwrap(), "--conf", "half"],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["saturated"], false);
    assert_eq!(v["result"]["max_bonds"], 2);
}
