//! Slow reference implementations, written from the path-level definitions
//! and sharing nothing with the fast code beyond the graph type.
//!
//! Everything here is exponential in the worst case and meant for tests on
//! small graphs.

use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::graph::CausalGraph;
use crate::reach::ReachabilityMatrix;

/// Node budget for [`ced_oracle`].
pub const CED_ORACLE_MAX_NODES: usize = 8;
/// Skeleton-edge budget for [`mec_oracle`].
pub const MEC_ORACLE_MAX_EDGES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeMark {
    /// `a -> b` for the step from `a` to `b`.
    Forward,
    /// `a <- b`.
    Backward,
    /// `a -- b`.
    Undirected,
}

/// A simple path between two nodes with its edge marks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathWitness {
    pub nodes: Vec<usize>,
    pub edge_marks: Vec<EdgeMark>,
    /// Node that blocks the path under the adjustment set, if any.
    pub blocked_by: Option<usize>,
}

impl PathWitness {
    /// Every step can be followed forward.
    pub fn is_directed(&self) -> bool {
        self.edge_marks.iter().all(|m| *m != EdgeMark::Backward)
    }

    /// Whether interior node `nodes[k]` has both neighbouring edges pointing into it.
    pub fn is_collider(&self, k: usize) -> bool {
        k > 0
            && k + 1 < self.nodes.len()
            && self.edge_marks[k - 1] == EdgeMark::Forward
            && self.edge_marks[k] == EdgeMark::Backward
    }

    pub fn render(&self, g: &CausalGraph) -> String {
        let mut s = g.label(self.nodes[0]).to_string();
        for (k, m) in self.edge_marks.iter().enumerate() {
            s.push_str(match m {
                EdgeMark::Forward => " -> ",
                EdgeMark::Backward => " <- ",
                EdgeMark::Undirected => " -- ",
            });
            s.push_str(g.label(self.nodes[k + 1]));
        }
        s
    }
}

fn mark(g: &CausalGraph, a: usize, b: usize) -> Option<EdgeMark> {
    match (g.has_edge(a, b), g.has_edge(b, a)) {
        (true, true) => Some(EdgeMark::Undirected),
        (true, false) => Some(EdgeMark::Forward),
        (false, true) => Some(EdgeMark::Backward),
        (false, false) => None,
    }
}

/// Nodes reachable from `start` by following edges forward (undirected edges
/// both ways), `start` included. Out-edges of `cut` are ignored.
fn descendants(g: &CausalGraph, start: usize, cut: Option<usize>) -> Vec<bool> {
    let n = g.n();
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        if Some(u) == cut {
            continue;
        }
        for v in 0..n {
            if g.has_edge(u, v) && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// Depth-first reachability, reflexive on the diagonal.
pub fn reach_oracle(g: &CausalGraph) -> ReachabilityMatrix {
    let n = g.n();
    let mut m = BitMatrix::zeros(n);
    for i in 0..n {
        for (j, r) in descendants(g, i, None).into_iter().enumerate() {
            if r {
                m.set(i, j, true);
            }
        }
    }
    ReachabilityMatrix::from_closed(m)
}

/// All simple paths from `i` to `j` through the skeleton.
pub fn simple_paths(g: &CausalGraph, i: usize, j: usize) -> Vec<PathWitness> {
    fn walk(
        g: &CausalGraph,
        j: usize,
        path: &mut Vec<usize>,
        marks: &mut Vec<EdgeMark>,
        on: &mut Vec<bool>,
        out: &mut Vec<PathWitness>,
    ) {
        let u = *path.last().unwrap();
        if u == j {
            out.push(PathWitness {
                nodes: path.clone(),
                edge_marks: marks.clone(),
                blocked_by: None,
            });
            return;
        }
        for v in 0..g.n() {
            if on[v] {
                continue;
            }
            if let Some(m) = mark(g, u, v) {
                on[v] = true;
                path.push(v);
                marks.push(m);
                walk(g, j, path, marks, on, out);
                marks.pop();
                path.pop();
                on[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; g.n()];
    on[i] = true;
    walk(g, j, &mut vec![i], &mut Vec::new(), &mut on, &mut out);
    out
}

/// The first interior node that blocks `path` given `z`: a non-collider in
/// `z`, or a collider with no descendant (itself included) in `z`.
fn blocker(g: &CausalGraph, path: &PathWitness, z: &[bool]) -> Option<usize> {
    (1..path.nodes.len() - 1).find_map(|k| {
        let m = path.nodes[k];
        let blocks = if path.is_collider(k) {
            !descendants(g, m, None)
                .iter()
                .zip(z)
                .any(|(&d, &inz)| d && inz)
        } else {
            z[m]
        };
        blocks.then_some(m)
    })
}

/// Why the reference check rejects an adjustment set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleFailure {
    /// `z` descends from `w`, a node on a directed path `i -> ... -> j`.
    Descendant { w: usize, z: usize },
    /// A non-directed path left open.
    OpenPath(PathWitness),
}

/// Adjustment-set check from the path definitions.
///
/// Valid iff (a) when a directed path from `i` to `j` exists, no member of
/// `z` is a descendant of a node on such a path (`i` included, `j`
/// excluded; descendants reached only through `j` do not count), and (b)
/// every other simple path between `i` and `j` is blocked by `z`.
pub fn adjustment_oracle(
    truth: &CausalGraph,
    i: usize,
    j: usize,
    z: &[usize],
) -> std::result::Result<(), OracleFailure> {
    let n = truth.n();
    let mut inz = vec![false; n];
    for &m in z {
        inz[m] = true;
    }
    let paths = simple_paths(truth, i, j);

    let mut on_directed = vec![false; n];
    for p in paths.iter().filter(|p| p.is_directed()) {
        for &w in &p.nodes[..p.nodes.len() - 1] {
            on_directed[w] = true;
        }
    }
    for w in (0..n).filter(|&w| on_directed[w]) {
        let d = descendants(truth, w, Some(j));
        if let Some(zz) = (0..n).find(|&m| d[m] && inz[m]) {
            return Err(OracleFailure::Descendant { w, z: zz });
        }
    }

    for mut p in paths.into_iter().filter(|p| !p.is_directed()) {
        match blocker(truth, &p, &inz) {
            Some(b) => p.blocked_by = Some(b),
            None => return Err(OracleFailure::OpenPath(p)),
        }
    }
    Ok(())
}

pub fn adjustment_valid_oracle(truth: &CausalGraph, i: usize, j: usize, z: &[usize]) -> bool {
    adjustment_oracle(truth, i, j, z).is_ok()
}

/// Per-pair reference verdict for the adjustment set implied by `pred`.
/// `true` means the pair contributes to the distance.
pub fn pair_fails_oracle(
    truth: &CausalGraph,
    truth_reach: &ReachabilityMatrix,
    pred: &CausalGraph,
    i: usize,
    j: usize,
) -> bool {
    let pa: Vec<usize> = (0..pred.n()).filter(|&p| pred.has_edge(p, i)).collect();
    if pa.contains(&j) && !truth_reach.get(i, j) {
        return false;
    }
    let z: Vec<usize> = pa.into_iter().filter(|&p| p != j).collect();
    !adjustment_valid_oracle(truth, i, j, &z)
}

/// Reachability disagreements plus failing adjustment sets on the agreeing pairs.
pub fn ced_oracle(truth: &CausalGraph, pred: &CausalGraph) -> Result<usize> {
    let n = truth.n();
    if n != pred.n() {
        return Err(Error::NodeMismatch(format!("{} vs {} nodes", n, pred.n())));
    }
    if n > CED_ORACLE_MAX_NODES {
        return Err(Error::Budget {
            what: "ced_oracle",
            limit: CED_ORACLE_MAX_NODES,
            n,
        });
    }
    let rt = reach_oracle(truth);
    let rp = reach_oracle(pred);
    let mut total = 0;
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            if rt.get(i, j) != rp.get(i, j) {
                total += 1;
            } else if pair_fails_oracle(truth, &rt, pred, i, j) {
                total += 1;
            }
        }
    }
    Ok(total)
}

fn colliders(g: &CausalGraph) -> Vec<(usize, usize, usize)> {
    let n = g.n();
    let strict = |a: usize, b: usize| g.has_edge(a, b) && !g.has_edge(b, a);
    let mut out = Vec::new();
    for c in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if strict(a, c) && strict(b, c) && mark(g, a, b).is_none() {
                    out.push((a, c, b));
                }
            }
        }
    }
    out
}

fn acyclic(g: &CausalGraph) -> bool {
    (0..g.n()).all(|i| {
        (0..g.n())
            .filter(|&c| g.has_edge(i, c))
            .all(|c| !descendants(g, c, None)[i])
    })
}

/// Every acyclic orientation of `g`'s skeleton with exactly `g`'s
/// unshielded colliders.
pub fn mec_oracle(g: &CausalGraph) -> Result<Vec<CausalGraph>> {
    let n = g.n();
    let mut skeleton = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if mark(g, a, b).is_some() {
                skeleton.push((a, b));
            }
        }
    }
    if skeleton.len() > MEC_ORACLE_MAX_EDGES {
        return Err(Error::Budget {
            what: "mec_oracle",
            limit: MEC_ORACLE_MAX_EDGES,
            n: skeleton.len(),
        });
    }
    let target = colliders(g);
    let mut out = Vec::new();
    for bits in 0u32..(1u32 << skeleton.len()) {
        let edges: Vec<(usize, usize)> = skeleton
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| if bits >> k & 1 == 0 { (a, b) } else { (b, a) })
            .collect();
        let mut adj = BitMatrix::zeros(n);
        for (a, b) in edges {
            adj.set(a, b, true);
        }
        let cand = CausalGraph::new(g.labels().to_vec(), adj)?;
        if acyclic(&cand) && colliders(&cand) == target {
            out.push(cand);
        }
    }
    Ok(out)
}

/// Pairs `(i, j)` where `pred` has an undirected neighbour `k` of `i` that is
/// `j` itself or reaches `j` without passing through `i`.
pub fn case3_pairs(pred: &CausalGraph) -> Vec<(usize, usize)> {
    let n = pred.n();
    let mut out = Vec::new();
    for i in 0..n {
        let nbrs: Vec<usize> = (0..n)
            .filter(|&k| mark(pred, i, k) == Some(EdgeMark::Undirected))
            .collect();
        if nbrs.is_empty() {
            continue;
        }
        for j in (0..n).filter(|&j| j != i) {
            let hit = nbrs.iter().any(|&k| {
                if k == j {
                    return true;
                }
                // reach from k with i removed
                let mut seen = vec![false; n];
                seen[i] = true;
                seen[k] = true;
                let mut stack = vec![k];
                while let Some(u) = stack.pop() {
                    for v in 0..n {
                        if pred.has_edge(u, v) && !seen[v] {
                            seen[v] = true;
                            stack.push(v);
                        }
                    }
                }
                seen[j]
            });
            if hit {
                out.push((i, j));
            }
        }
    }
    out
}
