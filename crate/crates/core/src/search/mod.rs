//! Exact optimal folds and edge-isoperimetric enumeration.

mod bnb;
mod iso;

pub use bnb::{enumerate_optima, optimal, SearchOutcome};
pub use iso::{ball_vs_square, ball_vs_square_report, canonical_set, max_internal_edges, BallSquare, IsoResult};

use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: u64,
    pub max_time: Duration,
    pub workers: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_nodes: 1_000_000_000, max_time: Duration::from_secs(600), workers: 1 }
    }
}

impl SearchLimits {
    pub fn with_workers(self, workers: usize) -> Self {
        SearchLimits { workers: workers.max(1), ..self }
    }

    pub fn with_nodes(self, max_nodes: u64) -> Self {
        SearchLimits { max_nodes, ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("letter 2 is not part of the HP model")]
    LetterTwo,
    #[error("no closed fold of length {0} exists on this lattice")]
    NoClosedFold(usize),
    #[error("budget exceeded after {nodes} nodes (best so far {best})")]
    Budget { best: usize, nodes: u64 },
    #[error("n = {n} exceeds the enumeration limit {limit} for {kind}")]
    TooLarge { kind: crate::lattice::LatticeKind, n: usize, limit: usize },
}
