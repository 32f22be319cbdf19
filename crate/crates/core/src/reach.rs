//! Reachability (descendant-closure) matrices.
//!
//! The reachability matrix of a graph with adjacency `A` on `n` nodes is the
//! indicator of `(A + I)^(n-1)`: reflexive on the diagonal, and `reach[i][j]`
//! for `i != j` iff a directed path `i -> ... -> j` exists. Undirected edges are
//! symmetric pairs in `A`, so they are traversed both ways.

use crate::bitset::BitMatrix;
use crate::graph::CausalGraph;

#[derive(Clone, PartialEq, Eq)]
pub struct ReachabilityMatrix {
    reach: BitMatrix,
}

impl ReachabilityMatrix {
    #[inline]
    pub fn n(&self) -> usize {
        self.reach.n()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.reach.get(i, j)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.reach
    }

    pub fn into_matrix(self) -> BitMatrix {
        self.reach
    }

    /// `‖self − other‖₁` over all n² entries.
    pub fn l1_distance(&self, other: &ReachabilityMatrix) -> usize {
        self.reach.l1_distance(&other.reach)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.reach.to_vecs()
    }

    /// Wraps an existing boolean matrix. The caller is responsible for it being closed.
    pub fn from_closed(reach: BitMatrix) -> Self {
        Self { reach }
    }
}

impl std::fmt::Debug for ReachabilityMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.reach)
    }
}

pub fn reachability(g: &CausalGraph) -> ReachabilityMatrix {
    ReachabilityMatrix {
        reach: closure(g.adjacency()),
    }
}

/// Indicator of `(adj + I)^(n-1)`, computed by repeated boolean squaring.
///
/// `(adj + I)^k` only grows with `k` and is stable once `k >= n - 1`, so
/// squaring until the exponent reaches `n - 1` gives the same matrix in
/// `⌈log₂(n-1)⌉` products.
pub fn closure(adj: &BitMatrix) -> BitMatrix {
    let n = adj.n();
    let target = n.saturating_sub(1);
    if target == 0 {
        return BitMatrix::identity(n);
    }
    let mut m = adj.clone();
    for i in 0..n {
        m.set(i, i, true);
    }
    let mut exponent = 1usize;
    while exponent < target {
        let next = m.bool_mul(&m);
        exponent *= 2;
        if next == m {
            break;
        }
        m = next;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Literal `(A + I)^r` by `r - 1` sequential products.
    fn literal_power(adj: &BitMatrix) -> BitMatrix {
        let n = adj.n();
        let mut base = adj.clone();
        for i in 0..n {
            base.set(i, i, true);
        }
        let mut acc = BitMatrix::identity(n);
        for _ in 0..n.saturating_sub(1) {
            acc = acc.bool_mul(&base);
        }
        acc
    }

    #[test]
    fn chain_closure() {
        let g = CausalGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = reachability(&g);
        assert_eq!(r.to_rows(), vec![vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]]);
    }

    #[test]
    fn edgeless_is_identity() {
        let g = CausalGraph::from_edges(4, &[]).unwrap();
        assert_eq!(reachability(&g).matrix(), &BitMatrix::identity(4));
    }

    #[test]
    fn undirected_chain_is_all_ones() {
        let g = CausalGraph::from_edges(3, &[(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
        assert_eq!(reachability(&g).matrix().count_ones(), 9);
    }

    #[test]
    fn single_node() {
        let g = CausalGraph::from_edges(1, &[]).unwrap();
        assert_eq!(reachability(&g).to_rows(), vec![vec![1]]);
    }

    #[test]
    fn squaring_equals_literal_power_on_long_paths() {
        // a path of length n-1 needs every hop of the exponent
        for n in 1usize..40 {
            let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            let g = CausalGraph::from_edges(n, &edges).unwrap();
            assert_eq!(
                reachability(&g).matrix(),
                &literal_power(g.adjacency()),
                "n={n}"
            );
        }
    }

    #[test]
    fn squaring_equals_literal_power_on_cycles() {
        let g = CausalGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let r = reachability(&g);
        assert_eq!(r.matrix(), &literal_power(g.adjacency()));
        assert_eq!(r.matrix().count_ones(), 25);
    }
}
