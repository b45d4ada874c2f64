//! Recovering every edge weight of a graph from the weights of closed
//! non-backtracking walks based at a single vertex.
//!
//! The pieces, bottom up:
//!
//! * [`graph`]: graphs, walks, the walk algebra and the odometric predicate.
//! * [`decomposition`]: block-cut tree and the path searches built on it.
//! * [`revealer`]: explicit integer certificates that express each edge
//!   weight through closed walks from the start vertex.
//! * [`solver`]: exact walk-matrix rank, minimal measuring sets, weight
//!   recovery and certificate checking.
//! * [`oracle`]: the measuring odometer and an exhaustive span oracle for
//!   small graphs.

pub mod decomposition;
pub mod fixtures;
pub mod graph;
pub mod oracle;
pub mod revealer;
pub mod solver;

/// Exact rational numbers used for every weight.
pub type Rational = num_rational::BigRational;

pub use decomposition::{block_cut_tree, BlockCutTree, BlockId, BlockKind};
pub use graph::{EdgeId, Graph, GraphError, VertexId, Violation, Walk, WalkError, WeightedGraph};

pub use oracle::{Odometer, RejectedWalk, SpanReport};
pub use revealer::{reveal_all, RevealCertificate, RevealError, Revelation, Target};
pub use solver::{
    extract_minimal_basis, rational_rank, recover_weights, verify_certificate, SolverError,
    WalkMatrix,
};
