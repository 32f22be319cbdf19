//! Comparison metrics for causal graphs: structural distances (CSD, SHD and
//! its relatives), causal-effect distances (CED, SID, KD, CBC), Markov
//! equivalence class utilities and slow reference implementations used to
//! cross-check the fast code.
//!
//! Graphs are 0/1 adjacency matrices. An undirected edge `a -- b` is the
//! symmetric pair `adj[a][b] = adj[b][a] = 1`.

pub mod bitset;
pub mod cpdag;
pub mod effect;
pub mod error;
pub mod graph;
pub mod io;
pub mod random;
pub mod reach;
pub mod reference;
pub mod structure;

pub use cpdag::{dag_to_cpdag, enumerate_mec, v_structures, DEFAULT_MEC_LIMIT};
pub use effect::{
    adjustment_valid, cbc, ced, ced_breakdown, kd, parents_in, sid, sid_range, AdjustmentCheck,
    AdjustmentFailure, CedBreakdown, ControlledReach, SidRange,
};
pub use error::{Error, Result};
pub use graph::{CausalGraph, GraphKind, NodeSet};
pub use random::random_dag;
pub use reach::{reachability, ReachabilityMatrix};
pub use structure::{
    classification_metrics, csd, edit_counts, se_like, shd_c, ClassificationCounts, EditCounts,
    SeLikePreset,
};
