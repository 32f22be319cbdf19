//! Node-labelled causal graphs over a boolean adjacency matrix.
//!
//! Directed edges `i -> j` set `adj[i][j]`. An undirected edge `i -- j` sets
//! both `adj[i][j]` and `adj[j][i]`; there is no separate undirected edge list.

use std::collections::HashMap;
use std::fmt;

use crate::bitset::{BitMatrix, BitSet};
use crate::error::{Error, Result};

/// The class a graph belongs to, verified on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// Acyclic, no symmetric pairs.
    Dag,
    /// Symmetric pairs are undirected edges; the strictly directed part is acyclic.
    Cpdag,
    /// Anything with a zero diagonal.
    Digraph,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Dag => "DAG",
            GraphKind::Cpdag => "CPDAG",
            GraphKind::Digraph => "digraph",
        })
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct CausalGraph {
    labels: Vec<String>,
    adj: BitMatrix,
    // Transpose of `adj`, kept so parent sets are O(1) to borrow.
    parents: BitMatrix,
    kind: GraphKind,
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl CausalGraph {
    /// Builds a graph and infers its kind.
    pub fn new(labels: Vec<String>, adj: BitMatrix) -> Result<Self> {
        let n = adj.n();
        if n == 0 {
            return Err(Error::Empty);
        }
        if labels.len() != n {
            return Err(Error::NodeMismatch(format!(
                "{} labels for {} nodes",
                labels.len(),
                n
            )));
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for i in 0..n {
            if adj.get(i, i) {
                return Err(Error::SelfLoop(labels[i].clone()));
            }
        }
        let parents = adj.transpose();
        let kind = classify(&adj);
        Ok(Self {
            labels,
            adj,
            parents,
            kind,
        })
    }

    /// Graph with default labels `x1..xn` from an edge list of `(from, to)` indices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = BitMatrix::zeros(n);
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidNode {
                    index: a.max(b),
                    n,
                });
            }
            adj.set(a, b, true);
        }
        Self::new(default_labels(n), adj)
    }

    /// Builds from nested rows of 0/1 values with default labels.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut adj = BitMatrix::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::NonSquare {
                    row: i,
                    expected: n,
                    found: r.len(),
                });
            }
            for (j, &v) in r.iter().enumerate() {
                match v {
                    0 => {}
                    1 => adj.set(i, j, true),
                    other => {
                        return Err(Error::BadCell {
                            row: i,
                            col: j,
                            value: other.to_string(),
                        })
                    }
                }
            }
        }
        Self::new(default_labels(n), adj)
    }

    /// Checks that the graph belongs to `claimed`.
    ///
    /// A DAG is accepted as a CPDAG (zero undirected edges) and anything is a
    /// digraph.
    pub fn expect_kind(&self, claimed: GraphKind) -> Result<&Self> {
        let ok = match claimed {
            GraphKind::Dag => self.kind == GraphKind::Dag,
            GraphKind::Cpdag => self.kind != GraphKind::Digraph,
            GraphKind::Digraph => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::KindMismatch {
                claimed,
                found: self.kind,
            })
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.n()
    }

    #[inline]
    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    /// `adj[i][j]`: the encoding asserts `i -> j` (possibly as half of an undirected edge).
    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj.get(i, j)
    }

    #[inline]
    pub fn is_undirected(&self, i: usize, j: usize) -> bool {
        self.adj.get(i, j) && self.adj.get(j, i)
    }

    /// `i -> j` and not `j -> i`.
    #[inline]
    pub fn is_directed(&self, i: usize, j: usize) -> bool {
        self.adj.get(i, j) && !self.adj.get(j, i)
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj.get(i, j) || self.adj.get(j, i)
    }

    /// `{z : adj[z][i] = 1}` as a bit set.
    #[inline]
    pub fn parent_bits(&self, i: usize) -> &BitSet {
        self.parents.row(i)
    }

    #[inline]
    pub fn child_bits(&self, i: usize) -> &BitSet {
        self.adj.row(i)
    }

    /// Number of asserted ordered entries (undirected edges count twice).
    pub fn entry_count(&self) -> usize {
        self.adj.count_ones()
    }

    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in self.adj.row(i).iter().filter(|&j| j > i) {
                if self.adj.get(j, i) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Strictly directed edges `(from, to)` in row-major order.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in self.adj.row(i).iter() {
                if !self.adj.get(j, i) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Unordered adjacent pairs `(i, j)` with `i < j`.
    pub fn skeleton(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.adj.to_vecs()
    }

    /// Same graph with nodes reordered so that new node `k` is old node `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let n = self.n();
        if order.len() != n {
            return Err(Error::NodeMismatch(format!(
                "permutation of length {} for {} nodes",
                order.len(),
                n
            )));
        }
        let mut adj = BitMatrix::zeros(n);
        for (a, &oa) in order.iter().enumerate() {
            for (b, &ob) in order.iter().enumerate() {
                if self.adj.get(oa, ob) {
                    adj.set(a, b, true);
                }
            }
        }
        let labels = order.iter().map(|&o| self.labels[o].clone()).collect();
        Self::new(labels, adj)
    }

    /// Same adjacency under new labels.
    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        Self::new(labels, self.adj.clone())
    }

    pub(crate) fn check_node(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidNode {
                index: i,
                n: self.n(),
            })
        }
    }
}

impl fmt::Debug for CausalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CausalGraph({}, n={}; ", self.kind, self.n())?;
        let mut first = true;
        for i in 0..self.n() {
            for j in self.adj.row(i).iter() {
                let und = self.adj.get(j, i);
                if und && j < i {
                    continue;
                }
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                let op = if und { "--" } else { "->" };
                write!(f, "{} {op} {}", self.labels[i], self.labels[j])?;
            }
        }
        f.write_str(")")
    }
}

fn classify(adj: &BitMatrix) -> GraphKind {
    let n = adj.n();
    let mut directed = BitMatrix::zeros(n);
    let mut symmetric = false;
    for i in 0..n {
        for j in adj.row(i).iter() {
            if adj.get(j, i) {
                symmetric = true;
            } else {
                directed.set(i, j, true);
            }
        }
    }
    if !is_acyclic(&directed) {
        return GraphKind::Digraph;
    }
    if symmetric {
        GraphKind::Cpdag
    } else {
        GraphKind::Dag
    }
}

/// Errors unless both graphs have the same labels in the same order.
pub fn check_same_nodes(a: &CausalGraph, b: &CausalGraph) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::NodeMismatch(format!("{} vs {} nodes", a.n(), b.n())));
    }
    if let Some(k) = (0..a.n()).find(|&k| a.labels[k] != b.labels[k]) {
        return Err(Error::NodeMismatch(format!(
            "position {k} is {:?} vs {:?}",
            a.labels[k], b.labels[k]
        )));
    }
    Ok(())
}

/// Kahn's algorithm on the directed relation `m`.
pub(crate) fn is_acyclic(m: &BitMatrix) -> bool {
    topological_order(m).is_some()
}

pub(crate) fn topological_order(m: &BitMatrix) -> Option<Vec<usize>> {
    let n = m.n();
    let mut indeg = vec![0usize; n];
    for i in 0..n {
        for j in m.row(i).iter() {
            indeg[j] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = stack.pop() {
        order.push(u);
        for v in m.row(u).iter() {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                stack.push(v);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Deduplicated, sorted subset of node indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&m| m >= n) {
            return Err(Error::InvalidNode { index: bad, n });
        }
        v.sort_unstable();
        v.dedup();
        Ok(Self(v))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub(crate) fn from_bits(bits: &BitSet) -> Self {
        Self(bits.iter().collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn without(&self, i: usize) -> Self {
        Self(self.0.iter().copied().filter(|&m| m != i).collect())
    }

    pub fn to_bits(&self, n: usize) -> BitSet {
        BitSet::from_indices(n, self.0.iter().copied())
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}
