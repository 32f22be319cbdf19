#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const CHAIN3: &str = "a,b,c\n0,1,0\n0,0,1\n0,0,0\n";
pub const DROP: &str = "a,b,c\n0,1,0\n0,0,0\n0,0,0\n";
pub const REV23: &str = "a,b,c\n0,1,0\n0,0,0\n0,1,0\n";
pub const UND3: &str = "a,b,c\n0,1,0\n1,0,1\n0,1,0\n";
pub const COLLIDER: &str = "a,b,c\n0,0,1\n0,0,1\n0,0,0\n";
pub const CYCLE3: &str = "a,b,c\n0,1,0\n0,0,1\n1,0,0\n";

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_causaldiff"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    if let Some(parent) = p.parent() {
        std::fs::create_dir_all(parent).unwrap();
    }
    std::fs::write(&p, text).unwrap();
    p
}

/// Dataset directory with CHAIN3 truth and the given `(model, file, contents)` predictions.
pub fn dataset(dir: &Path, preds: &[(&str, &str, &str)]) {
    write(dir, "graph.csv", CHAIN3);
    let entries: Vec<String> = preds
        .iter()
        .map(|(m, f, text)| {
            write(dir, f, text);
            format!(r#"{{"model": "{m}", "file": "{f}"}}"#)
        })
        .collect();
    write(
        dir,
        "manifest.json",
        &format!(
            r#"{{"name": "toy", "category": "static", "graph": "graph.csv", "predictions": [{}]}}"#,
            entries.join(", ")
        ),
    );
}

/// Checks the documented report shape; returns a description of the first problem.
pub fn check_report_schema(v: &serde_json::Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("report is not an object")?;
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    if keys != ["truth", "pred", "n", "metrics", "elapsed_ms", "version"] {
        return Err(format!("keys {keys:?}"));
    }
    for k in ["truth", "pred", "version"] {
        if !obj[k].is_string() {
            return Err(format!("{k} is not a string"));
        }
    }
    if !obj["n"].is_u64() {
        return Err("n is not an integer".into());
    }
    let metrics = obj["metrics"].as_object().ok_or("metrics is not an object")?;
    let times = obj["elapsed_ms"].as_object().ok_or("elapsed_ms is not an object")?;
    if metrics.keys().collect::<Vec<_>>() != times.keys().collect::<Vec<_>>() {
        return Err("metrics and elapsed_ms keys differ".into());
    }
    for (name, val) in metrics {
        let ok = match val {
            serde_json::Value::Number(_) => true,
            serde_json::Value::Object(o) => {
                let ks: Vec<&str> = o.keys().map(String::as_str).collect();
                (ks == ["lo", "hi"] && o["lo"].is_u64() && o["hi"].is_u64())
                    || (ks == ["na"] && o["na"].is_string())
            }
            _ => false,
        };
        if !ok {
            return Err(format!("metric {name} has value {val}"));
        }
        if !times[name].is_number() {
            return Err(format!("elapsed_ms.{name} is not a number"));
        }
    }
    Ok(())
}

/// The report with timing fields removed.
pub fn strip_timing(mut v: serde_json::Value) -> serde_json::Value {
    fn walk(v: &mut serde_json::Value) {
        match v {
            serde_json::Value::Object(o) => {
                o.remove("elapsed_ms");
                o.values_mut().for_each(walk);
            }
            serde_json::Value::Array(a) => a.iter_mut().for_each(walk),
            _ => {}
        }
    }
    walk(&mut v);
    v
}
