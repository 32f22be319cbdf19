use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Result};
use causaldiff_core::structure::SeLikePreset;
use causaldiff_core::{self as core, CausalGraph, GraphKind};
use indexmap::IndexMap;

use crate::report::MetricValue;

pub const DEFAULT_METRICS: &str = "shd-c,csd,sid,ced";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    SeLike(SeLikePreset),
    ShdC,
    Csd,
    F1,
    Tpr,
    Fpr,
    Precision,
    Kd,
    Cbc,
    Sid,
    Ced,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::SeLike(p) => p.name(),
            Metric::ShdC => "shd-c",
            Metric::Csd => "csd",
            Metric::F1 => "f1",
            Metric::Tpr => "tpr",
            Metric::Fpr => "fpr",
            Metric::Precision => "precision",
            Metric::Kd => "kd",
            Metric::Cbc => "cbc",
            Metric::Sid => "sid",
            Metric::Ced => "ced",
        }
    }

    /// Whether larger values are better.
    pub fn higher_is_better(self) -> bool {
        matches!(self, Metric::F1 | Metric::Tpr | Metric::Precision | Metric::Cbc)
    }

    pub fn compute(self, truth: &CausalGraph, pred: &CausalGraph) -> MetricValue {
        let int = |r: core::Result<usize>| r.map(|v| MetricValue::Int(v as u64));
        let real = |r: core::Result<f64>| r.map(MetricValue::Real);
        let out = match self {
            Metric::SeLike(p) => real(p.eval(truth, pred)),
            Metric::ShdC => int(core::shd_c(truth, pred)),
            Metric::Csd => int(core::csd(truth, pred)),
            Metric::F1 => real(core::classification_metrics(truth, pred).map(|c| c.f1())),
            Metric::Tpr => real(core::classification_metrics(truth, pred).map(|c| c.tpr())),
            Metric::Fpr => real(core::classification_metrics(truth, pred).map(|c| c.fpr())),
            Metric::Precision => {
                real(core::classification_metrics(truth, pred).map(|c| c.precision()))
            }
            Metric::Kd => int(core::kd(truth, pred)),
            Metric::Cbc => real(core::cbc(truth, pred)),
            Metric::Ced => int(core::ced(truth, pred)),
            Metric::Sid => match pred.kind() {
                GraphKind::Cpdag => core::sid_range(truth, pred).map(|r| MetricValue::Interval {
                    lo: r.lo as u64,
                    hi: r.hi as u64,
                }),
                _ => int(core::sid(truth, pred)),
            },
        };
        out.unwrap_or_else(|e| MetricValue::NotApplicable(e.to_string()))
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if let Some(p) = SeLikePreset::from_name(&s) {
            return Ok(Metric::SeLike(p));
        }
        Ok(match s.as_str() {
            "shd-c" | "shdc" => Metric::ShdC,
            "csd" => Metric::Csd,
            "f1" => Metric::F1,
            "tpr" | "recall" => Metric::Tpr,
            "fpr" => Metric::Fpr,
            "precision" => Metric::Precision,
            "kd" => Metric::Kd,
            "cbc" => Metric::Cbc,
            "sid" => Metric::Sid,
            "ced" => Metric::Ced,
            other => bail!("unknown metric {other:?}"),
        })
    }
}

/// Comma-separated metric names, duplicates dropped, order kept.
pub fn parse_list(list: &str) -> Result<Vec<Metric>> {
    let mut out: Vec<Metric> = Vec::new();
    for part in list.split(',').filter(|p| !p.trim().is_empty()) {
        let m: Metric = part.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        bail!("no metrics requested");
    }
    Ok(out)
}

/// Values and wall times (ms) for each metric, in request order.
pub fn evaluate(
    metrics: &[Metric],
    truth: &CausalGraph,
    pred: &CausalGraph,
) -> (IndexMap<String, MetricValue>, IndexMap<String, f64>) {
    let mut values = IndexMap::new();
    let mut times = IndexMap::new();
    for &m in metrics {
        let start = Instant::now();
        let v = m.compute(truth, pred);
        times.insert(m.name().to_string(), start.elapsed().as_secs_f64() * 1e3);
        values.insert(m.name().to_string(), v);
    }
    (values, times)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_vocabulary() {
        let all = "shd,dshd,hd,mre,edit-distance,reversed-edges,shd-c,csd,f1,tpr,fpr,precision,kd,cbc,sid,ced";
        let ms = parse_list(all).unwrap();
        assert_eq!(ms.len(), 16);
        let names: Vec<_> = ms.iter().map(|m| m.name()).collect();
        assert_eq!(names.join(","), all);
        assert!(parse_list("csd,bogus").is_err());
        assert_eq!(parse_list("csd, CSD").unwrap(), vec![Metric::Csd]);
    }

    #[test]
    fn sid_on_cyclic_prediction_is_not_applicable() {
        let t = CausalGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let p = CausalGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(Metric::Sid.compute(&t, &p), MetricValue::NotApplicable(_)));
        assert_eq!(Metric::Ced.compute(&t, &p), Metric::Ced.compute(&t, &p));
        assert!(matches!(Metric::Ced.compute(&t, &p), MetricValue::Int(_)));
    }
}
