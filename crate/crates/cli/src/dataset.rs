//! Dataset directories: a `manifest.json` naming the ground-truth graph and
//! one prediction file per model.
//!
//! ```json
//! {
//!   "name": "sachs",
//!   "category": "static",
//!   "graph": "graph.csv",
//!   "predictions": [{"model": "pc", "file": "predictions/pc.csv"}]
//! }
//! ```

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::load::{align, load_graph, Loaded};
use crate::metrics::{evaluate, Metric};
use crate::report::{DatasetReport, MetricReport, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Static,
    MultiTimeSeries,
    EventSequence,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Static => "static",
            Category::MultiTimeSeries => "multi_time_series",
            Category::EventSequence => "event_sequence",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Prediction {
    pub model: String,
    pub file: PathBuf,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub name: String,
    pub category: Category,
    pub graph: PathBuf,
    #[serde(default)]
    pub predictions: Vec<Prediction>,
}

impl Manifest {
    pub fn read(dir: &Path) -> Result<Self> {
        let path = dir.join("manifest.json");
        let text =
            std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Evaluates every prediction in manifest order. Prediction-level failures
/// become error rows; a bad manifest or truth graph is an error.
pub fn run_dataset(dir: &Path, metrics: &[Metric]) -> Result<DatasetReport> {
    let manifest = Manifest::read(dir)?;
    let truth_path = dir.join(&manifest.graph);
    let truth = load_graph(&truth_path)?;
    let rows = manifest
        .predictions
        .par_iter()
        .map(|p| evaluate_one(&truth, &truth_path, dir, p, metrics))
        .collect();
    Ok(DatasetReport::new(
        manifest.name.clone(),
        manifest.category.as_str().to_string(),
        metrics,
        rows,
    ))
}

fn evaluate_one(
    truth: &Loaded,
    truth_path: &Path,
    dir: &Path,
    p: &Prediction,
    metrics: &[Metric],
) -> Row {
    let path = dir.join(&p.file);
    let aligned = load_graph(&path).and_then(|pred| align(truth, &pred));
    match aligned {
        Ok(pred) => {
            let (values, times) = evaluate(metrics, &truth.graph, &pred);
            Row::Ok {
                model: p.model.clone(),
                report: MetricReport {
                    truth: truth_path.display().to_string(),
                    pred: path.display().to_string(),
                    n: pred.n(),
                    metrics: values,
                    elapsed_ms: times,
                    version: crate::VERSION.to_string(),
                },
            }
        }
        Err(e) => Row::Failed {
            model: p.model.clone(),
            pred: path.display().to_string(),
            error: format!("{e:#}"),
        },
    }
}
