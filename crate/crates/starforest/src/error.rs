use serde::Serialize;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{0} edges cannot be written as n(n+1)/2 for a positive integer n")]
    NotTriangular(usize),

    #[error("degree sum {sum} does not equal n(n+1)/2 = {expected} for n = {n}")]
    SumMismatch {
        sum: usize,
        n: usize,
        expected: usize,
    },

    #[error("degree sequence misses the size condition: d[{position}] = {value} < {bound} (1-based position)")]
    ConditionFailed {
        position: usize,
        value: usize,
        bound: usize,
    },

    /// The backtracking search for an ascending matrix ran out of options.
    /// Existence is guaranteed for every admissible row-sum sequence, so this
    /// either exposes a solver bug or a genuine counterexample; never ignore it.
    #[error("no ascending matrix with row sums {d:?} and column sums 1..={m} was found; this contradicts a guaranteed existence result")]
    SearchExhausted { d: Vec<usize>, m: usize },

    #[error("matching plan needs cell (x{x}, z{z}) but its multiplicity is zero")]
    MatchingUnavailable { x: usize, z: usize },

    #[error("no matching saturates the maximum-degree vertices")]
    HallViolation,

    #[error("the multigraph admits no sequential coloring")]
    Unsatisfiable,

    #[error("heuristic solver gave up; rerun with the exact solver for a definite answer")]
    HeuristicIncomplete,

    /// A step that the degree condition guarantees failed anyway. The report
    /// carries the full instance so the failure can be reproduced; such an
    /// instance is a counterexample candidate and is worth preserving.
    #[error("a guaranteed decomposition step failed; counterexample candidate: {0}")]
    TheoremStress(Box<TheoremStressReport>),

    #[error("host graph is not reduced")]
    NotReduced,

    #[error("edge coloring is not sequential")]
    NotSequential,

    #[error("list coloring left {0} edges unassigned")]
    Incomplete(usize),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("color lists must match degrees: x{x} has degree {degree} but a list of size {list}")]
    ListSizeMismatch {
        x: usize,
        degree: usize,
        list: usize,
    },

    #[error("instance has {edges} edges, above the exhaustive-search cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },

    #[error("degree sequence {d:?} is not realizable with {m} leaves")]
    Infeasible { d: Vec<usize>, m: usize },

    #[error("no decomposition with the requested part sizes exists")]
    NoDecomposition,

    #[error("invalid query: {0}")]
    InvalidQuery(String),
}

/// Everything needed to replay a failed guaranteed step offline.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremStressReport {
    pub degrees: Vec<usize>,
    pub order: usize,
    pub matrix: Vec<Vec<usize>>,
    pub note: String,
}

impl std::fmt::Display for TheoremStressReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "d={:?}, n={}, matrix={:?}: {}",
            self.degrees, self.order, self.matrix, self.note
        )
    }
}
