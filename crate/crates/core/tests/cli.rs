use std::path::Path;
use std::process::{Command, Output};

use markov_j::cli::{read_value_csv, ValueRow, CSV_HEADER};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_markov-j")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn tree_at_depth_two() {
    let text = stdout(&["tree", "--depth", "2"]);
    let fractions: Vec<String> = text
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            format!("{}/{}", f[2], f[3])
        })
        .collect();
    assert_eq!(fractions, ["0/1", "1/2", "1/3", "1/4", "2/5"]);
    assert!(text.starts_with("path,level,p,q,c,period\n"));
    assert!(text.contains("root,1,1,3,5,\"2,3,4\""));
}

#[test]
fn tree_at_depth_twelve_counts_vertices() {
    let text = stdout(&["tree", "--depth", "12"]);
    assert_eq!(text.lines().count(), 1 + 4095 + 2);
}

#[test]
fn values_of_single_vertices() {
    let row = |spec: &str| -> ValueRow {
        let text = stdout(&["value", spec, "--format", "json"]);
        serde_json::from_str(&text).unwrap()
    };
    assert_eq!(row("0/1").jq_re, 1359.56741044);
    assert_eq!(row("0").jq_re, 1359.56741044);
    assert_eq!(row("1/2").j_re, 709.892890920);
    let r = row("12/25");
    assert_eq!((r.j_re, r.j_im), (709.773605298, -0.0334131593620));
    assert_eq!(row("RRRRRRRRRRR"), r);
    let text = stdout(&["value", "12/25"]);
    assert!(text.contains("j         709.773605298 - 0.0334131593620i"), "{text}");
}

#[test]
fn fractions_off_the_tree_name_neighbours() {
    for spec in ["2/4", "3/5"] {
        let out = run(&["value", spec]);
        assert_eq!(out.status.code(), Some(2));
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("nearest nodes"), "{err}");
    }
}

#[test]
fn table_at_depth_twelve() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("t.csv");
    let json_path = dir.path().join("t.json");
    stdout(&["table", "--depth", "12", "-o", arg(&csv_path)]);
    stdout(&["table", "--depth", "12", "--format", "json", "-o", arg(&json_path)]);
    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    let rows = read_value_csv(text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 4097);
    assert_eq!((rows[0].p, rows[0].q, rows[0].jq_re), (0, 1, 1359.56741044));
    let last = rows.last().unwrap();
    assert_eq!((last.p, last.q, last.j_re), (1, 2, 709.892890920));
    assert!(rows.windows(2).all(|w| w[0].p * w[1].q < w[1].p * w[0].q));
    // both formats carry the same 12-digit values
    let json: Vec<ValueRow> = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(json, rows);
}

#[test]
fn warm_cache_gives_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    stdout(&["table", "--depth", "6", "--cache", arg(&cache), "-o", arg(&a)]);
    let lines = std::fs::read_to_string(&cache).unwrap().lines().count();
    assert_eq!(lines, 1 + 65);
    stdout(&["table", "--depth", "6", "--cache", arg(&cache), "-o", arg(&b)]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    // the cache is not rewritten when nothing is missing
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), lines);
    // a deeper run extends it, and values come back unchanged
    stdout(&["table", "--depth", "7", "--cache", arg(&cache), "-o", arg(&b)]);
    assert_eq!(std::fs::read_to_string(&cache).unwrap().lines().count(), 1 + 129);
    let cold = stdout(&["value", "2/7"]);
    let warm = stdout(&["value", "2/7", "--cache", arg(&cache)]);
    assert_eq!(cold, warm);
    // so does a parallel run without a cache
    assert_eq!(stdout(&["table", "--depth", "6", "--jobs", "2"]), std::fs::read_to_string(&a).unwrap());
}

#[test]
fn corrupted_cache_is_fatal() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    stdout(&["table", "--depth", "3", "--cache", arg(&cache)]);
    let text = std::fs::read_to_string(&cache).unwrap();
    std::fs::write(&cache, text.replacen("\"j_re\":7", "\"j_re\":8", 1)).unwrap();
    let out = run(&["verify", "--depth", "3", "--cache", arg(&cache)]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt cache"));

    std::fs::write(&cache, &text[..text.len() / 2]).unwrap();
    assert_ne!(run(&["table", "--depth", "3", "--cache", arg(&cache)]).status.code(), Some(0));

    // settings that differ from the header are refused
    std::fs::write(&cache, &text).unwrap();
    let out = run(&["table", "--depth", "3", "--tol", "1e-8", "--cache", arg(&cache)]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn verify_passes() {
    let out = run(&["verify", "--depth", "9"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(!text.contains("[FAIL]"));
    assert!(run(&["verify", "--depth", "1", "--grid", "20"]).status.success());
}

#[test]
fn report_commands() {
    let text = stdout(&["bounds", "--k0", "12"]);
    assert!(text.contains("Re j lower             681.500902253"), "{text}");
    let json: serde_json::Value = serde_json::from_str(&stdout(&["bounds", "--format", "json"])).unwrap();
    assert_eq!(json["k0"], 12);
    stdout(&["bounds", "--computed", "--depth", "5"]);
    assert_eq!(run(&["bounds", "--k0", "1"]).status.code(), Some(2));

    let text = stdout(&["interlace", "--depth", "6"]);
    assert!(text.starts_with("[PASS] interlacing"), "{text}");
    // the complex-segment reading fails at low levels; the run says so
    let out = run(&["interlace", "--depth", "4", "--mode", "segment", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 1 + 14);
    assert!(csv.contains("\nL,2,0.0288"), "{csv}");

    let text = stdout(&["asymptotics", "--max-q", "100", "--max-log10-c", "30"]);
    assert!(text.contains("monotone approach: true"), "{text}");
}

#[test]
fn bad_flags_are_rejected() {
    for args in [
        &["tree", "--depth", "0"][..],
        &["table", "--tol", "0.01"],
        &["table", "--series-order", "5"],
        &["tree", "--format", "xml"],
    ] {
        assert!(!run(args).status.success(), "{args:?}");
    }
}

#[test]
fn series_file_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("j.txt");
    let a = stdout(&["value", "1/3", "--series-file", arg(&file)]);
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("40\n1\n744\n196884\n"));
    let b = stdout(&["value", "1/3", "--series-file", arg(&file)]);
    assert_eq!(a, b);
}
