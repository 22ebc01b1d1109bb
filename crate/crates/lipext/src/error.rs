//! Error type shared by all modules.
//!
//! Diagnostic magnitudes are carried as `f64` regardless of the working
//! scalar type; they are for reporting, not for further arithmetic.

use thiserror::Error;

pub type Result<V, E = Error> = std::result::Result<V, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("norm exponent p = {p} rejected: strict convexity requires 1 < p < inf")]
    InvalidExponent { p: f64 },

    #[error("target dimension must be at least 1")]
    InvalidDimension,

    #[error(
        "distance matrix must be square with side >= 2 (row {row} has length {len}, side {side})"
    )]
    NotSquare { row: usize, len: usize, side: usize },

    #[error("distance matrix side {side} is too small (need at least 2 points)")]
    TooSmall { side: usize },

    #[error("distance matrix not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("off-diagonal distance at ({i},{j}) must be strictly positive")]
    NegativeOrZeroOffDiagonal { i: usize, j: usize },

    #[error("distance at ({i},{j}) is not finite")]
    NonFiniteDistance { i: usize, j: usize },

    #[error("point row {row} contains a non-finite value")]
    NonFiniteValue { row: usize },

    #[error("displacement at node {node} is not finite")]
    NonFiniteDisplacement { node: usize },

    #[error("diagonal entry at ({i},{i}) must be zero")]
    NonzeroDiagonal { i: usize },

    #[error("triangle inequality violated: d({i},{j}) > d({i},{k}) + d({k},{j})")]
    TriangleViolation { i: usize, j: usize, k: usize },

    #[error("negative tolerance")]
    NegativeTolerance,

    #[error("point is not a member: pair ({i},{j}) has |y_i - y_j| = {norm}, bound {bound}")]
    NotAMember {
        i: usize,
        j: usize,
        norm: f64,
        bound: f64,
    },

    #[error("cut subset is empty")]
    EmptyCut,

    #[error("cut subset must not contain the basepoint index 0")]
    BasepointInCut,

    #[error("node index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("cut is not a slack cut: pair ({i},{j}) is tight")]
    NotASlackCut { i: usize, j: usize },

    #[error("cut is invalid for this point: minimum slack {slack} is not usable")]
    InvalidCut { slack: f64 },

    #[error("brute-force enumeration refused: n = {n} exceeds the limit {max}")]
    TooLarge { n: usize, max: usize },

    #[error("direction must have unit norm: |v| = {norm}")]
    InvalidDirection { norm: f64 },

    #[error("displacement vector must have t[0] = 0")]
    NonzeroBasepointDisplacement,

    #[error("displacement bound exceeded at node {node}: |t| = {value} > {bound}")]
    DisplacementBound { node: usize, value: f64, bound: f64 },

    #[error("no progress after {limit} iterations; tolerances are inconsistent")]
    IterationOverflow { limit: usize },

    #[error("weight reduction needs at least {needed} atoms, got {count}")]
    TooFewAtoms { count: usize, needed: usize },

    #[error("weight at index {index} is negative")]
    NegativeWeight { index: usize },

    #[error("weight reduction failed: no affine dependence within numerical tolerance")]
    ReductionFailure,

    #[error("generator configuration invalid: {what}")]
    InvalidGenConfig { what: &'static str },
}
