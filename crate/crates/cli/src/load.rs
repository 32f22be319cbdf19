use std::collections::HashMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use causaldiff_core::io::{csv_has_header, parse_adjacency_csv, parse_edge_list};
use causaldiff_core::CausalGraph;

/// A graph read from disk, and whether its labels came from the file.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub graph: CausalGraph,
    pub labelled: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    Csv,
    EdgeList,
}

impl FileFormat {
    /// `.csv` is adjacency CSV; anything else is an edge list.
    pub fn of(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => FileFormat::Csv,
            _ => FileFormat::EdgeList,
        }
    }
}

pub fn parse_text(text: &str, format: FileFormat) -> Result<Loaded> {
    Ok(match format {
        FileFormat::Csv => {
            let labelled = csv_has_header(text);
            Loaded {
                graph: parse_adjacency_csv(text, labelled)?,
                labelled,
            }
        }
        FileFormat::EdgeList => Loaded {
            graph: parse_edge_list(text)?,
            labelled: true,
        },
    })
}

pub fn load_graph(path: &Path) -> Result<Loaded> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_text(&text, FileFormat::of(path)).with_context(|| format!("parsing {}", path.display()))
}

/// Puts `pred` on `truth`'s node order: by label when both carry labels,
/// otherwise by position (taking the truth's labels).
pub fn align(truth: &Loaded, pred: &Loaded) -> Result<CausalGraph> {
    let (t, p) = (&truth.graph, &pred.graph);
    if t.n() != p.n() {
        bail!("node count differs: truth has {}, prediction has {}", t.n(), p.n());
    }
    if truth.labelled && pred.labelled {
        let index: HashMap<&str, usize> =
            p.labels().iter().enumerate().map(|(k, l)| (l.as_str(), k)).collect();
        let mut order = Vec::with_capacity(t.n());
        for l in t.labels() {
            match index.get(l.as_str()) {
                Some(&k) => order.push(k),
                None => bail!("node {l:?} is missing from the prediction"),
            }
        }
        Ok(p.permuted(&order)?)
    } else {
        Ok(p.with_labels(t.labels().to_vec())?)
    }
}
