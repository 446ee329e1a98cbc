//! Spectral analysis of k-uniform hypergraphs.
//!
//! The crate models finite hypergraphs whose weighted adjacency matrix gives
//! each vertex pair `{i, j}` the entry `Σ_{e ∋ i,j} 1/(|e| − 1)`, computes
//! spectral radii and principal eigenvectors, constructs the extremal
//! unicyclic families built from the two-edge 2-cycle, implements the two
//! radius-increasing edge transforms, and verifies the extremal ordering of
//! unicyclic hypergraphs by isomorph-free enumeration at desk scale.
//!
//! Modules:
//! - [`hypercore`]: the `Hypergraph` model plus structural analysis
//!   (degrees, connectivity, distances, cycle detection, r-cyclicity).
//! - [`canon`]: canonical forms, isomorphism tests, automorphism generators,
//!   vertex orbits.
//! - [`spectra`]: adjacency matrix, power-iteration eigensolver, Rayleigh
//!   quotients, closed-form eigenvector checks.
//! - [`families`]: deterministic constructors for the named unicyclic
//!   families with documented anchor-vertex conventions.
//! - [`transforms`]: edge relocation and the two-edge block exchange, with
//!   the exact Rayleigh-delta identity.
//! - [`xlab`]: isomorph-free enumeration, brute-force cross-check, and the
//!   extremal-theorem verdicts.
//! - [`cli`]: the `hyperspec` command-line surface.

pub mod canon;
pub mod cli;
pub mod families;
pub mod hypercore;
pub mod spectra;
pub mod transforms;
pub mod xlab;

/// Crate-wide error type. Variants correspond to violated preconditions and
/// to the few runtime failures (convergence, size guards) that operations
/// can hit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {0:?} has fewer than 2 vertices")]
    EdgeTooSmall(Vec<usize>),

    #[error("edge {0:?} lists a vertex more than once")]
    RepeatedVertex(Vec<usize>),

    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),

    #[error("edge {0:?} is not present")]
    MissingEdge(Vec<usize>),

    #[error("hypergraph has no edges")]
    NoEdges,

    #[error("hypergraph is not connected")]
    NotConnected,

    #[error("hypergraph is not uniform")]
    NotUniform,

    #[error("hypergraph is not unicyclic: {0}")]
    NotUnicyclic(String),

    #[error("{0:?} is not a permutation of 0..{1}")]
    InvalidPermutation(Vec<usize>, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid swap: {0}")]
    InvalidSwap(String),

    #[error("invalid relocation: {0}")]
    InvalidRelocation(String),

    #[error("vector has wrong length: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("power iteration did not converge within {0} iterations")]
    ConvergenceFailure(usize),

    #[error("size guard exceeded: {0} (set HYPERSPEC_MAX_N to override)")]
    SizeGuard(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
