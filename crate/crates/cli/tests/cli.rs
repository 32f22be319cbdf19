mod common;

use common::*;
use serde_json::{json, Value};

fn eval_json(dir: &std::path::Path, truth: &str, pred: &str, metrics: &str) -> (i32, Value) {
    let t = write(dir, "truth.csv", truth);
    let p = write(dir, "pred.csv", pred);
    let o = run(&[
        "eval",
        "--truth",
        t.to_str().unwrap(),
        "--pred",
        p.to_str().unwrap(),
        "--metrics",
        metrics,
        "--format",
        "json",
    ]);
    (code(&o), serde_json::from_str(&stdout(&o)).unwrap())
}

#[test]
fn identical_graphs_score_zero() {
    let dir = tempfile::tempdir().unwrap();
    let (c, v) = eval_json(
        dir.path(),
        CHAIN3,
        CHAIN3,
        "shd,dshd,hd,mre,edit-distance,reversed-edges,shd-c,csd,kd,sid,ced,f1,cbc",
    );
    assert_eq!(c, 0);
    check_report_schema(&v).unwrap();
    for (name, val) in v["metrics"].as_object().unwrap() {
        let want = if name == "f1" || name == "cbc" { 1.0 } else { 0.0 };
        assert_eq!(val.as_f64().unwrap(), want, "{name}");
    }
}

#[test]
fn drop_example_values() {
    let dir = tempfile::tempdir().unwrap();
    let (c, v) = eval_json(dir.path(), CHAIN3, DROP, "csd,kd,ced");
    assert_eq!(c, 0);
    assert_eq!(v["metrics"], json!({"csd": 1, "kd": 2, "ced": 4}));
}

#[test]
fn cpdag_prediction_gives_sid_interval() {
    let dir = tempfile::tempdir().unwrap();
    let (c, v) = eval_json(dir.path(), CHAIN3, UND3, "sid");
    assert_eq!(c, 0);
    assert_eq!(v["metrics"]["sid"]["lo"], 0);
    let t = causaldiff_core::io::parse_adjacency_csv(CHAIN3, true).unwrap();
    let p = causaldiff_core::io::parse_adjacency_csv(UND3, true).unwrap();
    let hi = causaldiff_core::enumerate_mec(&p, 16)
        .unwrap()
        .iter()
        .map(|m| causaldiff_core::sid(&t, m).unwrap())
        .max()
        .unwrap();
    assert_eq!(v["metrics"]["sid"]["hi"], hi);
}

#[test]
fn not_applicable_metric_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let (c, v) = eval_json(dir.path(), CHAIN3, CYCLE3, "sid,ced");
    assert_eq!(c, 2);
    assert!(v["metrics"]["sid"]["na"].is_string());
    assert!(v["metrics"]["ced"].is_u64());
}

#[test]
fn usage_and_parse_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.csv", CHAIN3);
    let bad = write(dir.path(), "bad.csv", "0,1\n0,2\n");
    let four = write(dir.path(), "four.csv", "0,0,0,0\n0,0,0,0\n0,0,0,0\n0,0,0,0\n");
    let other = write(dir.path(), "other.csv", "a,b,z\n0,0,0\n0,0,0\n0,0,0\n");
    let t = t.to_str().unwrap();
    for args in [
        vec!["eval", "--truth", t],
        vec!["eval", "--truth", t, "--pred", "/nonexistent.csv"],
        vec!["eval", "--truth", t, "--pred", bad.to_str().unwrap()],
        vec!["eval", "--truth", t, "--pred", four.to_str().unwrap()],
        vec!["eval", "--truth", t, "--pred", other.to_str().unwrap()],
        vec!["eval", "--truth", t, "--pred", t, "--metrics", "csd,nope"],
        vec!["frobnicate"],
        vec!["gen", "--nodes", "1"],
        vec!["gen", "--nodes", "5", "--density", "2"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 1, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn table_and_csv_carry_the_same_values() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.csv", CHAIN3);
    let p = write(dir.path(), "p.csv", UND3);
    let base = ["eval", "--truth", t.to_str().unwrap(), "--pred", p.to_str().unwrap(), "--metrics", "csd,sid,ced,cbc"];
    let table = stdout(&run(&[&base[..], &["--format", "table"]].concat()));
    let csv = stdout(&run(&[&base[..], &["--format", "csv"]].concat()));
    let mut csv_rows = csv.lines().skip(1);
    for line in table.lines().skip_while(|l| !l.starts_with("metric")).skip(1) {
        let name = line.split_whitespace().next().unwrap();
        let value = line[name.len()..].trim_start().rsplitn(2, "  ").nth(1).unwrap().trim();
        let row = csv_rows.next().unwrap();
        assert!(row.starts_with(&format!("{name},")));
        let rendered = if value.contains(',') { format!("\"{value}\"") } else { value.to_string() };
        assert!(row.contains(&rendered), "{row} vs {value}");
    }
}

#[test]
fn eval_dir_flags_best_and_reports_errors() {
    let dir = tempfile::tempdir().unwrap();
    dataset(
        dir.path(),
        &[
            ("exact", "predictions/exact.csv", CHAIN3),
            ("drop", "predictions/drop.csv", DROP),
            ("broken", "predictions/broken.csv", "0,1\n"),
        ],
    );
    let d = dir.path().to_str().unwrap();
    let o = run(&["eval-dir", "--dataset", d, "--metrics", "csd,ced,f1", "--format", "json"]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["model"], "exact");
    check_report_schema(&rows[0]["report"]).unwrap();
    assert!(rows[2]["error"].is_string());
    for m in ["csd", "ced", "f1"] {
        assert_eq!(v["best"][m], json!(["exact"]), "{m}");
    }

    let o = run(&["eval-dir", "--dataset", d, "--metrics", "csd,ced"]);
    let table = stdout(&o);
    let exact = table.lines().find(|l| l.starts_with("exact")).unwrap();
    assert_eq!(exact.matches('*').count(), 2, "{table}");
    assert!(!table.lines().find(|l| l.starts_with("drop")).unwrap().contains('*'));
}

#[test]
fn eval_dir_writes_out_file_and_handles_empty_lists() {
    let dir = tempfile::tempdir().unwrap();
    dataset(dir.path(), &[]);
    let out = dir.path().join("report.csv");
    let o = run(&[
        "eval-dir",
        "--dataset",
        dir.path().to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text, "model,shd-c,csd,sid,ced,error\n");
}

#[test]
fn eval_dir_rejects_bad_manifest() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "manifest.json", r#"{"name": "x"}"#);
    let o = run(&["eval-dir", "--dataset", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = run(&["gen", "--nodes", "10", "--density", "0.1", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert_eq!(String::from_utf8_lossy(&o.stderr).trim(), "4 edges");
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let o = run(&["gen", "--nodes", "6", "--density", "0", "--format", "edgelist"]);
    assert!(!stdout(&o).contains("->"));
}

#[test]
fn bench_small_sizes() {
    let o = run(&["bench-ced", "--sizes", "5", "--seeds", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,seed,edges,ced,elapsed_ms"));
    assert_eq!(lines.count(), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("slope"));
}

#[test]
fn convert_modes() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain.csv", CHAIN3);
    let collider = write(dir.path(), "collider.csv", COLLIDER);
    let cycle = write(dir.path(), "cycle.csv", CYCLE3);

    let o = run(&["convert", "--in", chain.to_str().unwrap(), "--to", "cpdag"]);
    assert_eq!(stdout(&o), UND3);
    let o = run(&["convert", "--in", collider.to_str().unwrap(), "--to", "cpdag"]);
    assert_eq!(stdout(&o), COLLIDER);
    assert_eq!(code(&run(&["convert", "--in", cycle.to_str().unwrap(), "--to", "cpdag"])), 1);

    let el = dir.path().join("rev.txt");
    run(&["convert", "--in", write(dir.path(), "rev.csv", REV23).to_str().unwrap(), "--to", "edgelist", "--out", el.to_str().unwrap()]);
    let back = run(&["convert", "--in", el.to_str().unwrap(), "--to", "csv"]);
    assert_eq!(stdout(&back), REV23);
}

#[test]
fn output_does_not_depend_on_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.csv", &stdout(&run(&["gen", "--nodes", "40", "--density", "0.2", "--seed", "1"])));
    let p = write(dir.path(), "p.csv", &stdout(&run(&["gen", "--nodes", "40", "--density", "0.2", "--seed", "2"])));
    let go = |jobs: &str| {
        let o = run(&[
            "--jobs", jobs, "eval", "--truth", t.to_str().unwrap(), "--pred", p.to_str().unwrap(),
            "--metrics", "shd,csd,kd,cbc,sid,ced,f1", "--format", "json",
        ]);
        strip_timing(serde_json::from_str(&stdout(&o)).unwrap())
    };
    assert_eq!(go("1"), go("8"));
}
