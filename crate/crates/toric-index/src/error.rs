//! Error types shared across the crate.
//!
//! Geometry and index computations are exact, so every failure is a
//! structural fact about the input (a non-Delzant cone, a tie in the moment
//! values, a critical level) rather than a numerical accident. The one
//! exception is the spectral module, whose kernel detection can genuinely
//! fail to separate near-zero singular values; that case is reported as
//! [`Error::IndeterminateKernel`] instead of being rounded into an answer.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("weight vector has length {got}, character rank is {expected}")]
    WeightLength { expected: usize, got: usize },

    #[error("vector {0:?} is not primitive (entries share a common factor or are all zero)")]
    NotPrimitive(Vec<i64>),

    #[error("polytope must be described by at least dim+1 = {need} half-spaces, got {got}")]
    TooFewFacets { need: usize, got: usize },

    #[error("facet {index} has a normal of length {got}, ambient dimension is {dim}")]
    FacetDimension { index: usize, dim: usize, got: usize },

    #[error("polytope is unbounded (recession direction {direction:?})")]
    Unbounded { direction: Vec<i64> },

    #[error("half-space system has empty intersection")]
    EmptyPolytope,

    #[error("polytope is not full-dimensional (affine hull has dimension {rank} < {dim})")]
    NotFullDimensional { dim: usize, rank: usize },

    #[error("vertex {vertex:?} is not a lattice point")]
    NonIntegralVertex { vertex: Vec<String> },

    #[error("vertex {vertex:?} lies on {active} facets, expected exactly {dim} (polytope is not simple)")]
    NonSimpleVertex { vertex: Vec<i64>, active: usize, dim: usize },

    #[error(
        "vertex cone at {vertex:?} is not unimodular (edge determinant {det}); \
         the half-space system describes an orbifold, not a manifold"
    )]
    NonUnimodularCone { vertex: Vec<i64>, det: i64 },

    #[error("facet {index} supports no vertex (redundant half-space)")]
    RedundantFacet { index: usize },

    #[error(
        "circle direction {xi:?} is not generic: vertices {first:?} and {second:?} \
         share the moment value {value}"
    )]
    NonGenericCircle { xi: Vec<i64>, first: Vec<i64>, second: Vec<i64>, value: i64 },

    #[error("level {level} is outside the moment image [{min}, {max}]")]
    LevelOutOfRange { level: String, min: i64, max: i64 },

    #[error("level {level} contains the fixed vertex {vertex:?}; orbit acyclicity is not defined there")]
    FixedLevelQuery { level: i64, vertex: Vec<i64> },

    #[error("level {level} is not an integer; the level set is acyclic and carries no local index")]
    AcyclicLevel { level: String },

    #[error(
        "{level} is a critical value of the moment map; the reduced space is singular \
         and its Riemann-Roch number is not defined by this library"
    )]
    CriticalValue { level: i64 },

    #[error("deformation parameter t = {t} is below the trust threshold {t_min:.3} for this model")]
    DeformationTooWeak { t: f64, t_min: f64 },

    #[error("grid too coarse: {detail}")]
    GridTooCoarse { detail: String },

    #[error("invalid spectral model: {0}")]
    BadModel(String),

    #[error(
        "kernel detection indeterminate for mode {mode} (degree {degree}): \
         {candidates} singular values below threshold {threshold:.3e} but no factor-10 gap \
         (smallest: {sigmas:?})"
    )]
    IndeterminateKernel { mode: i64, degree: u8, candidates: usize, threshold: f64, sigmas: Vec<f64> },

    #[error("invalid input: {0}")]
    BadInput(String),
}

impl Error {
    /// Coarse classification used by the command-line frontend: input/parse
    /// problems, violated mathematical preconditions, and indeterminate
    /// spectral output map to distinct process exit codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::BadInput(_) => ErrorKind::Input,
            Error::IndeterminateKernel { .. } => ErrorKind::Indeterminate,
            _ => ErrorKind::Precondition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input (unparsable file, wrong arity, ...).
    Input,
    /// The input parses but violates a mathematical precondition.
    Precondition,
    /// A spectral computation could not certify its answer.
    Indeterminate,
}
