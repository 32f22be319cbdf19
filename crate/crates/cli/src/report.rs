use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::metrics::Metric;

#[derive(Debug, Clone, PartialEq)]
pub enum MetricValue {
    Int(u64),
    Real(f64),
    Interval { lo: u64, hi: u64 },
    NotApplicable(String),
}

impl MetricValue {
    pub fn is_na(&self) -> bool {
        matches!(self, MetricValue::NotApplicable(_))
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            MetricValue::Int(v) => Some(v as f64),
            MetricValue::Real(v) => Some(v),
            _ => None,
        }
    }

    /// Text form shared by the table and CSV outputs.
    pub fn render(&self) -> String {
        match self {
            MetricValue::Int(v) => v.to_string(),
            MetricValue::Real(v) => v.to_string(),
            MetricValue::Interval { lo, hi } => format!("[{lo}, {hi}]"),
            MetricValue::NotApplicable(why) => format!("n/a: {why}"),
        }
    }
}

impl Serialize for MetricValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            MetricValue::Int(v) => s.serialize_u64(*v),
            MetricValue::Real(v) => s.serialize_f64(*v),
            MetricValue::Interval { lo, hi } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("lo", lo)?;
                m.serialize_entry("hi", hi)?;
                m.end()
            }
            MetricValue::NotApplicable(why) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("na", why)?;
                m.end()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricReport {
    pub truth: String,
    pub pred: String,
    pub n: usize,
    pub metrics: IndexMap<String, MetricValue>,
    pub elapsed_ms: IndexMap<String, f64>,
    pub version: String,
}

impl MetricReport {
    pub fn has_na(&self) -> bool {
        self.metrics.values().any(MetricValue::is_na)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json_line(self),
            Format::Csv => {
                let mut out = String::from("metric,value,elapsed_ms\n");
                for (name, v) in &self.metrics {
                    let _ = writeln!(
                        out,
                        "{},{},{:.3}",
                        name,
                        csv_field(&v.render()),
                        self.elapsed_ms[name]
                    );
                }
                out
            }
            Format::Table => {
                let mut out = format!(
                    "truth: {}\npred:  {}\nn:     {}\n\n",
                    self.truth, self.pred, self.n
                );
                let rows: Vec<Vec<String>> = self
                    .metrics
                    .iter()
                    .map(|(name, v)| {
                        vec![
                            name.clone(),
                            v.render(),
                            format!("{:.3}", self.elapsed_ms[name]),
                        ]
                    })
                    .collect();
                out.push_str(&table(&["metric", "value", "ms"], &rows));
                out
            }
        }
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (k, c) in r.iter().enumerate() {
            width[k] = width[k].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (k, c) in cells.iter().enumerate() {
            if k + 1 == cells.len() {
                s.push_str(c);
            } else {
                let _ = write!(s, "{:w$}  ", c, w = width[k]);
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

/// One prediction's outcome in a dataset run.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Row {
    Ok { model: String, report: MetricReport },
    Failed { model: String, pred: String, error: String },
}

impl Row {
    pub fn model(&self) -> &str {
        match self {
            Row::Ok { model, .. } | Row::Failed { model, .. } => model,
        }
    }

    pub fn degraded(&self) -> bool {
        match self {
            Row::Ok { report, .. } => report.has_na(),
            Row::Failed { .. } => true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DatasetReport {
    pub dataset: String,
    pub category: String,
    pub metrics: Vec<String>,
    pub rows: Vec<Row>,
    /// Per metric, the models attaining the best value.
    pub best: IndexMap<String, Vec<String>>,
    pub version: String,
}

impl DatasetReport {
    pub fn new(dataset: String, category: String, metrics: &[Metric], rows: Vec<Row>) -> Self {
        let best = metrics
            .iter()
            .map(|&m| (m.name().to_string(), best_models(m, &rows)))
            .collect();
        Self {
            dataset,
            category,
            metrics: metrics.iter().map(|m| m.name().to_string()).collect(),
            rows,
            best,
            version: crate::VERSION.to_string(),
        }
    }

    pub fn degraded(&self) -> bool {
        self.rows.iter().any(Row::degraded)
    }

    fn cells(&self, flag_best: bool) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|row| {
                let mut cells = vec![row.model().to_string()];
                match row {
                    Row::Ok { model, report } => {
                        for name in &self.metrics {
                            let mut c = report.metrics[name].render();
                            if flag_best && self.best[name].iter().any(|b| b == model) {
                                c.push('*');
                            }
                            cells.push(c);
                        }
                        cells.push(String::new());
                    }
                    Row::Failed { error, .. } => {
                        cells.extend(self.metrics.iter().map(|_| String::new()));
                        cells.push(error.clone());
                    }
                }
                cells
            })
            .collect()
    }

    pub fn render(&self, format: Format) -> String {
        let mut header = vec!["model"];
        header.extend(self.metrics.iter().map(String::as_str));
        header.push("error");
        match format {
            Format::Json => json_line(self),
            Format::Csv => {
                let mut out = header.join(",") + "\n";
                for r in self.cells(false) {
                    let fields: Vec<String> = r.iter().map(|c| csv_field(c)).collect();
                    out.push_str(&fields.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Table => {
                let mut out = format!("dataset: {} ({})\n\n", self.dataset, self.category);
                out.push_str(&table(&header, &self.cells(true)));
                if !self.rows.is_empty() {
                    out.push_str("\n* best in column\n");
                }
                out
            }
        }
    }
}

fn best_models(m: Metric, rows: &[Row]) -> Vec<String> {
    let scored: Vec<(&str, f64)> = rows
        .iter()
        .filter_map(|r| match r {
            Row::Ok { model, report } => report.metrics.get(m.name())?.as_f64().map(|v| (model.as_str(), v)),
            Row::Failed { .. } => None,
        })
        .collect();
    let pick = if m.higher_is_better() { f64::max } else { f64::min };
    let Some(best) = scored.iter().map(|s| s.1).reduce(pick) else {
        return Vec::new();
    };
    scored
        .into_iter()
        .filter(|s| s.1 == best)
        .map(|s| s.0.to_string())
        .collect()
}
