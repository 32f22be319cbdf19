//! Causal-effect metrics: CED, SID (point and MEC range), KD and CBC, plus the
//! adjustment-set check they share.
//!
//! For an ordered pair `(i, j)` the adjustment set proposed by the prediction
//! is `Z = parents_in(pred, i) \ {j}`. It is checked against the truth graph
//! with three controlled reachability matrices, in this order:
//!
//! * H: every `z ∈ Z` gets edges to its parents (read from the matrix as it is
//!   being modified, `z` ascending), row `j` is cleared. Fails if some `z` is
//!   reachable from `i` and reaches `j`.
//! * T: rows and columns of `Z` and row `i` cleared. Fails if some `k` reaches
//!   both `i` and `j` (diagonal included, so `k = j` counts).
//! * M: row `j` cleared, diagonal entries `(i,i)` and `(j,j)` cleared after
//!   closure. Fails if some `k` on an `i → j` path reaches a member of `Z`.
//!
//! When `j` is a predicted parent of `i` and `i` does not reach `j` in the
//! truth, the prediction's implied effect of `i` on `j` (none) is correct and
//! the pair counts as valid without running the checks.
//!
//! [`ced`] evaluates the checks with per-pair graph searches over bitsets;
//! [`ced_matrix`] builds the three closures literally. They are equal on every
//! input.

use rayon::prelude::*;

use crate::bitset::{BitMatrix, BitSet};
use crate::cpdag::{enumerate_mec, DEFAULT_MEC_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{check_same_nodes, CausalGraph, GraphKind, NodeSet};
use crate::reach::{closure, reachability, ReachabilityMatrix};

/// `{z : adj[z][i] = 1}`; undirected neighbours are included.
///
/// Panics if `i` is out of range.
pub fn parents_in(g: &CausalGraph, i: usize) -> NodeSet {
    NodeSet::from_bits(g.parent_bits(i))
}

/// First failed check, in evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdjustmentFailure {
    None,
    /// H-check: conditioning on `Z` opened a collider path.
    OpenedColliderPath,
    /// T-check: a non-directed path between `i` and `j` is left unblocked.
    UnblockedConfoundingPath,
    /// M-check: some `z` descends from a node on a directed `i → j` path.
    DescendantInZ,
}

impl AdjustmentFailure {
    pub fn is_valid(self) -> bool {
        self == AdjustmentFailure::None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjustmentCheck {
    pub pair: (usize, usize),
    pub z: NodeSet,
    pub verdict: bool,
    pub failure: AdjustmentFailure,
}

/// The three controlled closures for one `(i, j, Z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlledReach {
    pub t_reach: ReachabilityMatrix,
    pub h_reach: ReachabilityMatrix,
    pub m_reach: ReachabilityMatrix,
}

/// Adjacency with collider opening for every `z ∈ Z` (ascending), before row
/// `j` is cleared.
fn opened_rows(adj: &BitMatrix, z: &BitSet) -> BitMatrix {
    let n = adj.n();
    let mut h = adj.clone();
    for zz in z.iter() {
        let pa: Vec<usize> = (0..n).filter(|&p| h.get(p, zz)).collect();
        for p in pa {
            h.set(zz, p, true);
        }
    }
    h
}

impl ControlledReach {
    pub fn new(truth: &CausalGraph, i: usize, j: usize, z: &NodeSet) -> Self {
        let n = truth.n();
        let adj = truth.adjacency();
        let zb = z.to_bits(n);

        let mut t = adj.clone();
        for zz in z {
            t.clear_row(zz);
            t.clear_col(zz);
        }
        t.clear_row(i);

        let mut h = opened_rows(adj, &zb);
        h.clear_row(j);

        let mut m = adj.clone();
        m.clear_row(j);
        let mut m_reach = closure(&m);
        m_reach.set(i, i, false);
        m_reach.set(j, j, false);

        Self {
            t_reach: ReachabilityMatrix::from_closed(closure(&t)),
            h_reach: ReachabilityMatrix::from_closed(closure(&h)),
            m_reach: ReachabilityMatrix::from_closed(m_reach),
        }
    }

    pub fn h_fails(&self, i: usize, j: usize, z: &NodeSet) -> bool {
        z.iter()
            .any(|zz| self.h_reach.get(i, zz) && self.h_reach.get(zz, j))
    }

    pub fn t_fails(&self, i: usize, j: usize) -> bool {
        (0..self.t_reach.n()).any(|k| self.t_reach.get(k, i) && self.t_reach.get(k, j))
    }

    pub fn m_fails(&self, i: usize, j: usize, z: &NodeSet) -> bool {
        let m = &self.m_reach;
        !z.is_empty()
            && (0..m.n()).any(|k| m.get(i, k) && m.get(k, j) && z.iter().any(|zz| m.get(k, zz)))
    }

    pub fn failure(&self, i: usize, j: usize, z: &NodeSet) -> AdjustmentFailure {
        if self.h_fails(i, j, z) {
            AdjustmentFailure::OpenedColliderPath
        } else if self.t_fails(i, j) {
            AdjustmentFailure::UnblockedConfoundingPath
        } else if self.m_fails(i, j, z) {
            AdjustmentFailure::DescendantInZ
        } else {
            AdjustmentFailure::None
        }
    }
}

/// Whether `z` is a valid adjustment set for the effect of `i` on `j` in `truth`.
pub fn adjustment_valid(
    truth: &CausalGraph,
    i: usize,
    j: usize,
    z: &NodeSet,
) -> Result<AdjustmentCheck> {
    truth.check_node(i)?;
    truth.check_node(j)?;
    if let Some(&bad) = z.as_slice().iter().find(|&&m| m >= truth.n()) {
        return Err(Error::InvalidNode {
            index: bad,
            n: truth.n(),
        });
    }
    if i == j {
        return Err(Error::SamePair(i));
    }
    if z.contains(j) {
        return Err(Error::TargetInAdjustmentSet(j));
    }
    let failure = ControlledReach::new(truth, i, j, z).failure(i, j, z);
    Ok(AdjustmentCheck {
        pair: (i, j),
        z: z.clone(),
        verdict: failure.is_valid(),
        failure,
    })
}

fn parent_target(pred: &CausalGraph, reach_truth: &ReachabilityMatrix, i: usize, j: usize) -> bool {
    pred.has_edge(j, i) && !reach_truth.get(i, j)
}

/// Outcome for the pair `(i, j)` with `Z = parents_in(pred, i) \ {j}`, built
/// from the literal closures.
pub fn pair_failure(
    truth: &CausalGraph,
    pred: &CausalGraph,
    i: usize,
    j: usize,
) -> Result<AdjustmentFailure> {
    check_same_nodes(truth, pred)?;
    let reach = reachability(truth);
    pair_failure_literal(truth, &reach, pred, i, j)
}

fn pair_failure_literal(
    truth: &CausalGraph,
    reach: &ReachabilityMatrix,
    pred: &CausalGraph,
    i: usize,
    j: usize,
) -> Result<AdjustmentFailure> {
    if parent_target(pred, reach, i, j) {
        return Ok(AdjustmentFailure::None);
    }
    let z = parents_in(pred, i).without(j);
    Ok(adjustment_valid(truth, i, j, &z)?.failure)
}

/// Graph search from `seed`, never entering `wall`. `row(u)` gives the
/// successors of `u`, or `None` for a cleared row. The result contains `seed`.
fn spread<'r>(
    seed: &BitSet,
    wall: Option<&BitSet>,
    row: impl Fn(usize) -> Option<&'r BitSet>,
) -> BitSet {
    let mut mark = seed.clone();
    if let Some(w) = wall {
        mark.union_with(w);
    }
    let mut out = seed.clone();
    let mut stack: Vec<usize> = seed.iter().collect();
    let mut fresh = Vec::new();
    while let Some(u) = stack.pop() {
        let Some(r) = row(u) else { continue };
        fresh.extend(r.iter_minus(&mark));
        for v in fresh.drain(..) {
            mark.insert(v);
            out.insert(v);
            stack.push(v);
        }
    }
    out
}

/// Truth-side data shared by all pairs.
struct Truth<'a> {
    adj: &'a BitMatrix,
    parents: BitMatrix,
    reach: ReachabilityMatrix,
    // ancestors (reflexive) of each node: transpose of `reach`
    anc: BitMatrix,
}

impl<'a> Truth<'a> {
    fn new(g: &'a CausalGraph) -> Self {
        let reach = reachability(g);
        let anc = reach.matrix().transpose();
        Self {
            adj: g.adjacency(),
            parents: g.adjacency().transpose(),
            reach,
            anc,
        }
    }

    fn n(&self) -> usize {
        self.adj.n()
    }
}

/// Everything about the checks for a source `i` and set `Z` that does not
/// depend on the target `j`.
struct Controlled {
    i: usize,
    z: BitSet,
    h: BitMatrix,
    // nodes reachable from i in H before row j is cleared
    h_from_i: BitSet,
    // targets failing the T-check
    t_hit: BitSet,
}

impl Controlled {
    fn new(t: &Truth<'_>, i: usize, z: BitSet) -> Self {
        let n = t.n();
        let h = opened_rows(t.adj, &z);
        let src = BitSet::from_indices(n, [i]);
        let h_from_i = spread(&src, None, |u| Some(h.row(u)));

        // ancestors of i once Z is cut out and i's out-edges are dropped
        let up = spread(&src, Some(&z), |v| Some(t.parents.row(v)));
        let t_hit = spread(&up, Some(&z), |u| (u != i).then(|| t.adj.row(u)));

        Self {
            i,
            z,
            h,
            h_from_i,
            t_hit,
        }
    }

    fn failure(&self, t: &Truth<'_>, j: usize) -> AdjustmentFailure {
        let (i, n) = (self.i, t.n());
        let src = BitSet::from_indices(n, [i]);

        if self.h_from_i.contains(j) {
            let h_row = |u: usize| (u != j).then(|| self.h.row(u));
            let mut hit = spread(&src, None, h_row);
            hit.intersect_with(&self.z);
            if !hit.is_empty() && spread(&hit, None, h_row).contains(j) {
                return AdjustmentFailure::OpenedColliderPath;
            }
        }

        if self.t_hit.contains(j) {
            return AdjustmentFailure::UnblockedConfoundingPath;
        }

        if !self.z.is_empty() && t.reach.get(i, j) {
            let m_row = |u: usize| (u != j).then(|| t.adj.row(u));
            let mut mid = spread(&src, None, m_row);
            mid.intersect_with(t.anc.row(j));
            mid.remove(i);
            mid.remove(j);
            if !mid.is_empty() && spread(&mid, None, m_row).intersects(&self.z) {
                return AdjustmentFailure::DescendantInZ;
            }
        }
        AdjustmentFailure::None
    }
}

/// Number of failing pairs `(i, j)` with source `i`, over the targets
/// selected by `want`.
fn failures_from(t: &Truth<'_>, pred: &CausalGraph, i: usize, want: impl Fn(usize) -> bool) -> usize {
    let pa = pred.parent_bits(i);
    let base = Controlled::new(t, i, pa.clone());
    let mut count = 0;
    for j in (0..t.n()).filter(|&j| j != i && want(j)) {
        let failed = if pa.contains(j) {
            if !t.reach.get(i, j) {
                continue;
            }
            let mut z = pa.clone();
            z.remove(j);
            !Controlled::new(t, i, z).failure(t, j).is_valid()
        } else {
            !base.failure(t, j).is_valid()
        };
        count += failed as usize;
    }
    count
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CedBreakdown {
    /// `‖reach(truth) − reach(pred)‖₁`.
    pub kd: usize,
    /// Pairs with agreeing reachability whose implied adjustment set fails.
    pub ide: usize,
}

impl CedBreakdown {
    pub fn total(&self) -> usize {
        self.kd + self.ide
    }
}

pub fn ced_breakdown(truth: &CausalGraph, pred: &CausalGraph) -> Result<CedBreakdown> {
    check_same_nodes(truth, pred)?;
    let t = Truth::new(truth);
    let rp = reachability(pred);
    let kd = t.reach.l1_distance(&rp);
    let ide = (0..t.n())
        .into_par_iter()
        .map(|i| failures_from(&t, pred, i, |j| t.reach.get(i, j) == rp.get(i, j)))
        .sum();
    Ok(CedBreakdown { kd, ide })
}

/// Causal effect distance.
pub fn ced(truth: &CausalGraph, pred: &CausalGraph) -> Result<usize> {
    Ok(ced_breakdown(truth, pred)?.total())
}

/// [`ced`] evaluated with the literal controlled closures for every pair.
pub fn ced_matrix(truth: &CausalGraph, pred: &CausalGraph) -> Result<usize> {
    check_same_nodes(truth, pred)?;
    let rt = reachability(truth);
    let rp = reachability(pred);
    let mut total = rt.l1_distance(&rp);
    for i in 0..truth.n() {
        for j in 0..truth.n() {
            if i != j
                && rt.get(i, j) == rp.get(i, j)
                && !pair_failure_literal(truth, &rt, pred, i, j)?.is_valid()
            {
                total += 1;
            }
        }
    }
    Ok(total)
}

fn require_dag(g: &CausalGraph) -> Result<()> {
    match g.kind() {
        GraphKind::Dag => Ok(()),
        other => Err(Error::NotDag(other)),
    }
}

/// Structural intervention distance: failing pairs over all `i != j`.
pub fn sid(truth: &CausalGraph, pred: &CausalGraph) -> Result<usize> {
    check_same_nodes(truth, pred)?;
    require_dag(truth)?;
    require_dag(pred)?;
    Ok(sid_unchecked(&Truth::new(truth), pred))
}

fn sid_unchecked(t: &Truth<'_>, pred: &CausalGraph) -> usize {
    (0..t.n())
        .into_par_iter()
        .map(|i| failures_from(t, pred, i, |_| true))
        .sum()
}

/// `[lo, hi]` of [`sid`] over the members of a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SidRange {
    pub lo: usize,
    pub hi: usize,
}

/// SID of `truth` against every DAG in the class represented by `pred`.
pub fn sid_range(truth: &CausalGraph, pred: &CausalGraph) -> Result<SidRange> {
    sid_range_with_limit(truth, pred, DEFAULT_MEC_LIMIT)
}

pub fn sid_range_with_limit(
    truth: &CausalGraph,
    pred: &CausalGraph,
    limit: usize,
) -> Result<SidRange> {
    check_same_nodes(truth, pred)?;
    require_dag(truth)?;
    let members = enumerate_mec(pred, limit)?;
    let t = Truth::new(truth);
    let scores: Vec<usize> = members.iter().map(|m| sid_unchecked(&t, m)).collect();
    match (scores.iter().min(), scores.iter().max()) {
        (Some(&lo), Some(&hi)) => Ok(SidRange { lo, hi }),
        _ => Err(Error::EmptyMec),
    }
}

/// `‖reach(truth) − reach(pred)‖₁`.
pub fn kd(truth: &CausalGraph, pred: &CausalGraph) -> Result<usize> {
    check_same_nodes(truth, pred)?;
    Ok(reachability(truth).l1_distance(&reachability(pred)))
}

/// One minus the fraction of truth-adjacent ordered pairs whose reachability
/// bit differs.
pub fn cbc(truth: &CausalGraph, pred: &CausalGraph) -> Result<f64> {
    check_same_nodes(truth, pred)?;
    let skeleton = truth.skeleton();
    if skeleton.is_empty() {
        return Err(Error::EdgelessTruth);
    }
    let rt = reachability(truth);
    let rp = reachability(pred);
    let diff = skeleton
        .iter()
        .flat_map(|&(a, b)| [(a, b), (b, a)])
        .filter(|&(a, b)| rt.get(a, b) != rp.get(a, b))
        .count();
    let e = 2 * skeleton.len();
    Ok((1.0 - diff as f64 / e as f64).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> CausalGraph {
        CausalGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }
    fn rev23() -> CausalGraph {
        CausalGraph::from_edges(3, &[(0, 1), (2, 1)]).unwrap()
    }
    fn drop() -> CausalGraph {
        CausalGraph::from_edges(3, &[(0, 1)]).unwrap()
    }
    fn und3() -> CausalGraph {
        CausalGraph::from_edges(3, &[(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap()
    }
    fn collider() -> CausalGraph {
        CausalGraph::from_edges(3, &[(0, 2), (1, 2)]).unwrap()
    }
    fn set(n: usize, m: &[usize]) -> NodeSet {
        NodeSet::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn parent_sets() {
        assert_eq!(parents_in(&chain(), 1).as_slice(), &[0]);
        assert_eq!(parents_in(&und3(), 1).as_slice(), &[0, 2]);
        assert!(parents_in(&chain(), 0).is_empty());
    }

    #[test]
    fn adjustment_examples() {
        let g = chain();
        let c = adjustment_valid(&g, 2, 0, &NodeSet::empty()).unwrap();
        assert!(!c.verdict);
        assert_eq!(c.failure, AdjustmentFailure::UnblockedConfoundingPath);
        assert!(adjustment_valid(&g, 1, 2, &set(3, &[0])).unwrap().verdict);
    }

    #[test]
    fn adjustment_errors() {
        let g = chain();
        assert!(matches!(
            adjustment_valid(&g, 1, 0, &set(3, &[0])),
            Err(Error::TargetInAdjustmentSet(0))
        ));
        assert!(matches!(
            adjustment_valid(&g, 1, 1, &NodeSet::empty()),
            Err(Error::SamePair(1))
        ));
        assert!(matches!(
            adjustment_valid(&g, 5, 1, &NodeSet::empty()),
            Err(Error::InvalidNode { index: 5, n: 3 })
        ));
    }

    #[test]
    fn predicted_parent_without_effect_is_valid() {
        // truth 0 -> 1, pred says 1 is a parent of 0
        let t = CausalGraph::from_edges(2, &[(0, 1)]).unwrap();
        let p = CausalGraph::from_edges(2, &[(1, 0)]).unwrap();
        assert_eq!(pair_failure(&t, &p, 0, 1).unwrap(), AdjustmentFailure::None);
        assert_eq!(pair_failure(&t, &t, 1, 0).unwrap(), AdjustmentFailure::None);
    }

    #[test]
    fn ced_examples() {
        assert_eq!(ced(&chain(), &chain()).unwrap(), 0);
        assert_eq!(
            ced_breakdown(&chain(), &drop()).unwrap(),
            CedBreakdown { kd: 2, ide: 2 }
        );
        assert_eq!(
            ced_breakdown(&chain(), &rev23()).unwrap(),
            CedBreakdown { kd: 3, ide: 1 }
        );
        assert_eq!(ced_matrix(&chain(), &drop()).unwrap(), 4);
        assert_eq!(ced_matrix(&chain(), &rev23()).unwrap(), 4);
    }

    #[test]
    fn drop_failures_are_the_two_sink_pairs() {
        let (t, p) = (chain(), drop());
        let failing: Vec<_> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && !pair_failure(&t, &p, i, j).unwrap().is_valid())
            .collect();
        assert_eq!(failing, vec![(2, 0), (2, 1)]);
    }

    #[test]
    fn sid_examples() {
        assert_eq!(sid(&chain(), &chain()).unwrap(), 0);
        assert_eq!(sid(&chain(), &drop()).unwrap(), 2);
        assert!(matches!(sid(&chain(), &und3()), Err(Error::NotDag(GraphKind::Cpdag))));
    }

    #[test]
    fn sid_range_examples() {
        let r = sid_range(&chain(), &und3()).unwrap();
        assert_eq!(r.lo, 0);
        let members = enumerate_mec(&und3(), DEFAULT_MEC_LIMIT).unwrap();
        let hi = members.iter().map(|m| sid(&chain(), m).unwrap()).max().unwrap();
        assert_eq!(r.hi, hi);

        let cp = crate::cpdag::dag_to_cpdag(&collider()).unwrap();
        assert_eq!(sid_range(&collider(), &cp).unwrap(), SidRange { lo: 0, hi: 0 });

        let s = sid(&chain(), &drop()).unwrap();
        assert_eq!(sid_range(&chain(), &drop()).unwrap(), SidRange { lo: s, hi: s });
    }

    #[test]
    fn kd_and_cbc_examples() {
        assert_eq!(kd(&chain(), &drop()).unwrap(), 2);
        assert_eq!(kd(&chain(), &chain()).unwrap(), 0);
        assert_eq!(cbc(&chain(), &drop()).unwrap(), 0.75);
        assert_eq!(cbc(&chain(), &chain()).unwrap(), 1.0);
        let empty = CausalGraph::from_edges(3, &[]).unwrap();
        assert!(matches!(cbc(&empty, &chain()), Err(Error::EdgelessTruth)));
        let v = cbc(&chain(), &empty).unwrap();
        assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn fast_failure_matches_literal_closures() {
        let graphs = [chain(), rev23(), drop(), und3(), collider()];
        for t in &graphs {
            let truth = Truth::new(t);
            for p in &graphs {
                for i in 0..3 {
                    for j in (0..3).filter(|&j| j != i) {
                        let z = parents_in(p, i).without(j);
                        let fast = Controlled::new(&truth, i, z.to_bits(3)).failure(&truth, j);
                        let lit = ControlledReach::new(t, i, j, &z).failure(i, j, &z);
                        assert_eq!(fast, lit, "{t:?} {p:?} ({i},{j})");
                    }
                }
            }
        }
    }
}
