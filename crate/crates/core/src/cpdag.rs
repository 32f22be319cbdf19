//! Markov equivalence classes: DAG → CPDAG conversion and consistent-extension
//! enumeration.

use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::graph::{CausalGraph, GraphKind};

/// Default cap on undirected edges for [`enumerate_mec`].
pub const DEFAULT_MEC_LIMIT: usize = 16;

/// Unshielded colliders `(a, c, b)` with `a < b`, `a -> c <- b` strictly directed
/// and `a`, `b` non-adjacent. Sorted.
pub fn v_structures(g: &CausalGraph) -> Vec<(usize, usize, usize)> {
    let n = g.n();
    let mut out = Vec::new();
    for c in 0..n {
        let pa: Vec<usize> = g
            .parent_bits(c)
            .iter()
            .filter(|&p| g.is_directed(p, c))
            .collect();
        for (x, &a) in pa.iter().enumerate() {
            for &b in &pa[x + 1..] {
                if !g.adjacent(a, b) {
                    out.push((a, c, b));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// CPDAG of the Markov equivalence class containing `g`.
///
/// Keeps the skeleton, orients the v-structures, then closes under Meek's
/// rules 1–3. Remaining unoriented edges are written as symmetric pairs.
pub fn dag_to_cpdag(g: &CausalGraph) -> Result<CausalGraph> {
    if g.kind() != GraphKind::Dag {
        return Err(Error::NotDag(g.kind()));
    }
    let n = g.n();
    let mut pdag = BitMatrix::zeros(n);
    for (a, b) in g.skeleton() {
        pdag.set(a, b, true);
        pdag.set(b, a, true);
    }
    for (a, c, b) in v_structures(g) {
        pdag.set(c, a, false);
        pdag.set(c, b, false);
    }
    meek_closure(&mut pdag);
    CausalGraph::new(g.labels().to_vec(), pdag)
}

#[inline]
fn directed(m: &BitMatrix, a: usize, b: usize) -> bool {
    m.get(a, b) && !m.get(b, a)
}

#[inline]
fn undirected(m: &BitMatrix, a: usize, b: usize) -> bool {
    m.get(a, b) && m.get(b, a)
}

#[inline]
fn adjacent(m: &BitMatrix, a: usize, b: usize) -> bool {
    m.get(a, b) || m.get(b, a)
}

fn orient(m: &mut BitMatrix, a: usize, b: usize) {
    m.set(b, a, false);
}

fn meek_closure(m: &mut BitMatrix) {
    let n = m.n();
    loop {
        let mut changed = false;
        for b in 0..n {
            for c in 0..n {
                if !undirected(m, b, c) {
                    continue;
                }
                // R1: a -> b -- c, a and c non-adjacent  =>  b -> c
                let r1 = (0..n).any(|a| a != c && directed(m, a, b) && !adjacent(m, a, c));
                // R2: b -> a -> c with b -- c  =>  b -> c
                let r2 = || (0..n).any(|a| directed(m, b, a) && directed(m, a, c));
                // R3: b -- a1, b -- a2, a1 -> c <- a2, a1 and a2 non-adjacent  =>  b -> c
                let r3 = || {
                    let mids: Vec<usize> = (0..n)
                        .filter(|&a| a != c && undirected(m, b, a) && directed(m, a, c))
                        .collect();
                    mids.iter().enumerate().any(|(x, &a1)| {
                        mids[x + 1..].iter().any(|&a2| !adjacent(m, a1, a2))
                    })
                };
                if r1 || r2() || r3() {
                    orient(m, b, c);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// All DAGs in the class represented by `g`: every acyclic orientation of its
/// undirected edges that creates no v-structure beyond those already in `g`.
///
/// Undirected edges are taken in row-major order `(i, j)`, `i < j`; bit 0
/// orients `i -> j`, bit 1 orients `j -> i`. Results are in lexicographic
/// order of that bit vector (first edge most significant).
pub fn enumerate_mec(g: &CausalGraph, limit: usize) -> Result<Vec<CausalGraph>> {
    if g.kind() == GraphKind::Digraph {
        return Err(Error::Cyclic(g.kind()));
    }
    let und = g.undirected_edges();
    if und.len() > limit {
        return Err(Error::MecTooLarge {
            undirected: und.len(),
            limit,
        });
    }
    let n = g.n();
    let mut dir = BitMatrix::zeros(n);
    for (a, b) in g.directed_edges() {
        dir.set(a, b, true);
    }
    let mut out = Vec::new();
    extend(g, &und, 0, &mut dir, &mut out)?;
    Ok(out)
}

fn extend(
    g: &CausalGraph,
    und: &[(usize, usize)],
    k: usize,
    dir: &mut BitMatrix,
    out: &mut Vec<CausalGraph>,
) -> Result<()> {
    if k == und.len() {
        out.push(CausalGraph::new(g.labels().to_vec(), dir.clone())?);
        return Ok(());
    }
    let (i, j) = und[k];
    for (x, y) in [(i, j), (j, i)] {
        if admissible(g, dir, x, y) {
            dir.set(x, y, true);
            extend(g, und, k + 1, dir, out)?;
            dir.set(x, y, false);
        }
    }
    Ok(())
}

/// Whether adding `x -> y` to the partial orientation keeps it acyclic and
/// introduces no unshielded collider at `y`.
fn admissible(g: &CausalGraph, dir: &BitMatrix, x: usize, y: usize) -> bool {
    let n = dir.n();
    for p in 0..n {
        if p != x && dir.get(p, y) && !g.adjacent(p, x) {
            return false;
        }
    }
    // cycle iff y already reaches x
    let mut seen = vec![false; n];
    let mut stack = vec![y];
    seen[y] = true;
    while let Some(u) = stack.pop() {
        if u == x {
            return false;
        }
        for v in dir.row(u).iter() {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    true
}
