//! CED timing on pairs of independent random DAGs.

use std::fmt::Write as _;
use std::time::Instant;

use anyhow::Result;
use causaldiff_core::random::random_dag;
use causaldiff_core::ced;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub seed: u64,
    pub edges: usize,
    pub ced: usize,
    pub elapsed_ms: f64,
}

pub const CSV_HEADER: &str = "n,seed,edges,ced,elapsed_ms";

/// Seeds `base..base + seeds` for each size; seed `s` draws the truth from
/// `2s` and the prediction from `2s + 1`.
pub fn run(sizes: &[usize], density: f64, seeds: u64, base: u64) -> Result<Vec<BenchRow>> {
    // first call pays for thread-pool start-up
    let warm = random_dag(8, 0.5, 0)?;
    ced(&warm, &warm)?;

    let mut rows = Vec::new();
    for &n in sizes {
        for seed in base..base + seeds {
            let truth = random_dag(n, density, seed.wrapping_mul(2))?;
            let pred = random_dag(n, density, seed.wrapping_mul(2).wrapping_add(1))?;
            let start = Instant::now();
            let d = ced(&truth, &pred)?;
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            rows.push(BenchRow {
                n,
                seed,
                edges: truth.entry_count(),
                ced: d,
                elapsed_ms,
            });
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{},{:.3}", r.n, r.seed, r.edges, r.ced, r.elapsed_ms);
    }
    out
}

/// Median time per size, in order of first appearance.
pub fn medians(rows: &[BenchRow]) -> Vec<(usize, f64)> {
    let mut sizes: Vec<usize> = Vec::new();
    for r in rows {
        if !sizes.contains(&r.n) {
            sizes.push(r.n);
        }
    }
    sizes
        .into_iter()
        .map(|n| {
            let mut t: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.elapsed_ms).collect();
            t.sort_by(f64::total_cmp);
            let m = t.len();
            let med = if m % 2 == 1 { t[m / 2] } else { (t[m / 2 - 1] + t[m / 2]) / 2.0 };
            (n, med)
        })
        .collect()
}

/// Least-squares slope of `ln t` against `ln n`. `None` with fewer than two
/// distinct sizes or a non-positive time.
pub fn loglog_slope(points: &[(usize, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|p| p.0 == 0 || p.1 <= 0.0) {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}
