use thiserror::Error;

use crate::graph::GraphKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no nodes")]
    Empty,
    #[error("row {row} has {found} cells, expected {expected}")]
    NonSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("cell ({row}, {col}) is {value:?}, expected 0 or 1")]
    BadCell {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("self-loop on node {0:?}")]
    SelfLoop(String),
    #[error("duplicate node label {0:?}")]
    DuplicateLabel(String),
    #[error("line {line}: cannot parse {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("conflicting declarations for pair {0:?} -- {1:?}")]
    ConflictingEdge(String, String),
    #[error("graph declared as {claimed} but is {found}")]
    KindMismatch { claimed: GraphKind, found: GraphKind },
    #[error("node sets differ: {0}")]
    NodeMismatch(String),
    #[error("undirected edge {0:?} -- {1:?} not allowed here")]
    UndirectedEdge(String, String),
    #[error("expected a DAG, got a {0}")]
    NotDag(GraphKind),
    #[error("expected a DAG or CPDAG, got a {0}")]
    Cyclic(GraphKind),
    #[error("Markov equivalence class has {undirected} undirected edges, limit is {limit}")]
    MecTooLarge { undirected: usize, limit: usize },
    #[error("Markov equivalence class of the CPDAG is empty (no consistent extension)")]
    EmptyMec,
    #[error("node index {index} out of range for {n} nodes")]
    InvalidNode { index: usize, n: usize },
    #[error("source and target are the same node {0}")]
    SamePair(usize),
    #[error("target {0} is a member of the adjustment set")]
    TargetInAdjustmentSet(usize),
    #[error("truth graph has no edges")]
    EdgelessTruth,
    #[error("{what} requires at most {limit} nodes, got {n}")]
    Budget {
        what: &'static str,
        limit: usize,
        n: usize,
    },
    #[error("invalid parameter: {0}")]
    Parameter(String),
}
