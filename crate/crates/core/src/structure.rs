//! Structure-error metrics: CSD, the FA/FD/FR edit taxonomy and the weighted
//! SE-like family built on it, SHD over CPDAGs, and edge classification rates.

use std::fmt;

use crate::cpdag::dag_to_cpdag;
use crate::error::{Error, Result};
use crate::graph::{check_same_nodes, CausalGraph, GraphKind};

/// Falsely added, deleted and reversed edges of `pred` relative to `truth`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EditCounts {
    pub fa: usize,
    pub fd: usize,
    pub fr: usize,
}

fn reject_undirected(g: &CausalGraph) -> Result<()> {
    match g.undirected_edges().first() {
        Some(&(a, b)) => Err(Error::UndirectedEdge(
            g.label(a).to_string(),
            g.label(b).to_string(),
        )),
        None => Ok(()),
    }
}

/// Edit counts over unordered pairs. Both graphs must be fully oriented.
pub fn edit_counts(truth: &CausalGraph, pred: &CausalGraph) -> Result<EditCounts> {
    check_same_nodes(truth, pred)?;
    reject_undirected(truth)?;
    reject_undirected(pred)?;
    let n = truth.n();
    let mut c = EditCounts::default();
    for i in 0..n {
        for j in i + 1..n {
            let t = (truth.has_edge(i, j), truth.has_edge(j, i));
            let p = (pred.has_edge(i, j), pred.has_edge(j, i));
            match (t == (false, false), p == (false, false)) {
                (true, true) => {}
                (true, false) => c.fa += 1,
                (false, true) => c.fd += 1,
                (false, false) if t != p => c.fr += 1,
                _ => {}
            }
        }
    }
    Ok(c)
}

/// Entrywise L1 distance between the adjacency matrices.
pub fn csd(truth: &CausalGraph, pred: &CausalGraph) -> Result<usize> {
    check_same_nodes(truth, pred)?;
    Ok(truth.adjacency().l1_distance(pred.adjacency()))
}

/// `alpha·FA + beta·FD + gamma·FR`.
pub fn se_like(
    truth: &CausalGraph,
    pred: &CausalGraph,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Result<f64> {
    let c = edit_counts(truth, pred)?;
    Ok(alpha * c.fa as f64 + beta * c.fd as f64 + gamma * c.fr as f64)
}

/// Named weightings of [`se_like`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeLikePreset {
    Shd,
    DShd,
    Hd,
    EditDistance,
    ReversedEdges,
    Mre,
    RelErr,
}

impl SeLikePreset {
    pub const ALL: [SeLikePreset; 7] = [
        SeLikePreset::Shd,
        SeLikePreset::DShd,
        SeLikePreset::Hd,
        SeLikePreset::EditDistance,
        SeLikePreset::ReversedEdges,
        SeLikePreset::Mre,
        SeLikePreset::RelErr,
    ];

    /// `(alpha, beta, gamma)` for a graph on `n` nodes.
    pub fn weights(self, n: usize) -> (f64, f64, f64) {
        match self {
            SeLikePreset::Shd | SeLikePreset::EditDistance => (1.0, 1.0, 1.0),
            SeLikePreset::DShd | SeLikePreset::Hd | SeLikePreset::RelErr => (1.0, 1.0, 2.0),
            SeLikePreset::ReversedEdges => (0.0, 0.0, 1.0),
            SeLikePreset::Mre => {
                let s = 1.0 / (n * n) as f64;
                (s, s, 2.0 * s)
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SeLikePreset::Shd => "shd",
            SeLikePreset::DShd => "dshd",
            SeLikePreset::Hd => "hd",
            SeLikePreset::EditDistance => "edit-distance",
            SeLikePreset::ReversedEdges => "reversed-edges",
            SeLikePreset::Mre => "mre",
            SeLikePreset::RelErr => "relerr",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn eval(self, truth: &CausalGraph, pred: &CausalGraph) -> Result<f64> {
        let (a, b, g) = self.weights(truth.n());
        se_like(truth, pred, a, b, g)
    }
}

impl fmt::Display for SeLikePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn as_cpdag(g: &CausalGraph) -> Result<CausalGraph> {
    match g.kind() {
        GraphKind::Dag => dag_to_cpdag(g),
        GraphKind::Cpdag => Ok(g.clone()),
        GraphKind::Digraph => Err(Error::Cyclic(g.kind())),
    }
}

/// SHD between CPDAGs: the number of unordered pairs whose edge marks differ.
/// DAG inputs are converted first.
pub fn shd_c(truth: &CausalGraph, pred: &CausalGraph) -> Result<usize> {
    check_same_nodes(truth, pred)?;
    let t = as_cpdag(truth)?;
    let p = as_cpdag(pred)?;
    let n = t.n();
    let mut d = 0;
    for i in 0..n {
        for j in i + 1..n {
            if (t.has_edge(i, j), t.has_edge(j, i)) != (p.has_edge(i, j), p.has_edge(j, i)) {
                d += 1;
            }
        }
    }
    Ok(d)
}

/// Edge-level confusion counts over ordered pairs `i != j`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassificationCounts {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub tn: usize,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl ClassificationCounts {
    pub fn precision(&self) -> f64 {
        ratio(self.tp, self.tp + self.fp)
    }

    pub fn tpr(&self) -> f64 {
        ratio(self.tp, self.tp + self.fn_)
    }

    pub fn fpr(&self) -> f64 {
        ratio(self.fp, self.fp + self.tn)
    }

    pub fn f1(&self) -> f64 {
        ratio(2 * self.tp, 2 * self.tp + self.fp + self.fn_)
    }
}

pub fn classification_metrics(
    truth: &CausalGraph,
    pred: &CausalGraph,
) -> Result<ClassificationCounts> {
    check_same_nodes(truth, pred)?;
    reject_undirected(truth)?;
    reject_undirected(pred)?;
    let n = truth.n();
    let mut tp = 0;
    for i in 0..n {
        let mut row = truth.child_bits(i).clone();
        row.intersect_with(pred.child_bits(i));
        tp += row.count();
    }
    let fp = pred.entry_count() - tp;
    let fn_ = truth.entry_count() - tp;
    Ok(ClassificationCounts {
        tp,
        fp,
        fn_,
        tn: n * (n - 1) - tp - fp - fn_,
    })
}
