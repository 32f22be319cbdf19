//! Seeded random DAGs.

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::graph::{default_labels, CausalGraph};

/// Edge count `floor(density · n(n−1)/2)` used by [`random_dag`].
pub fn edge_budget(n: usize, density: f64) -> usize {
    let pairs = n * n.saturating_sub(1) / 2;
    ((density * pairs as f64).floor() as usize).min(pairs)
}

/// Random DAG with exactly [`edge_budget`] edges.
///
/// Draws a uniform topological order, then a uniform subset of the
/// order-respecting pairs. Deterministic in `(n, density, seed)`.
pub fn random_dag(n: usize, density: f64, seed: u64) -> Result<CausalGraph> {
    if n < 2 {
        return Err(Error::Parameter(format!("need at least 2 nodes, got {n}")));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Parameter(format!("density {density} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);

    let pairs = n * (n - 1) / 2;
    let m = edge_budget(n, density);
    let mut adj = BitMatrix::zeros(n);
    for k in index::sample(&mut rng, pairs, m) {
        let (a, b) = unrank_pair(n, k);
        adj.set(order[a], order[b], true);
    }
    CausalGraph::new(default_labels(n), adj)
}

/// k-th pair `(a, b)`, `a < b`, in row-major order.
fn unrank_pair(n: usize, mut k: usize) -> (usize, usize) {
    let mut a = 0;
    loop {
        let row = n - 1 - a;
        if k < row {
            return (a, a + 1 + k);
        }
        k -= row;
        a += 1;
    }
}
