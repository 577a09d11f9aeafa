use thiserror::Error;

use crate::halfint::HalfInt;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("denominator must be 1 or 2, got {0}")]
    BadDenominator(i64),
    #[error("{0} is not an integer or half-integer")]
    NotHalfInteger(String),
    #[error("invalid index combination: {0}")]
    InvalidIndices(String),
    #[error("Pauli criterion rejects lambda = {lam}, j = {j}")]
    Disallowed { lam: HalfInt, j: HalfInt },
    #[error("j = {j} is below j_min = {j_min} for k = {k}")]
    BelowJmin { j: HalfInt, j_min: HalfInt, k: HalfInt },
    #[error("j = {j} is the minimal value for k = {k}; use the j_min assembly")]
    UseJminAssembly { j: HalfInt, k: HalfInt },
    #[error("quadrature order must be at least 1")]
    EmptyQuadrature,
    #[error("grid needs at least {min} nodes along {axis}, got {got}")]
    GridTooSmall { axis: &'static str, min: usize, got: usize },
    #[error("negative angular momentum j = {0}")]
    NegativeJ(HalfInt),
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("no decaying branch at m = 0")]
    NoBoundBranch,
    #[error("mass must be positive for the partner amplitude")]
    ZeroMass,
    #[error("{0}")]
    Domain(String),
    #[error("operator expects {expected} frame/tetrad/gauge, field is {found}")]
    TagMismatch { expected: String, found: String },
    #[error("ordinary P-reflection does not commute with the Hamiltonian at k = {0}; use the N operator")]
    ParityNotConserved(HalfInt),
    #[error("no state for k = 0 at j_min")]
    NoJminState,
    #[error("charge eg = {0} is not quantized (2eg must be an integer)")]
    NotQuantized(String),
    #[error("WY patch {patch} queried at theta = {theta} outside its region")]
    OutsidePatch { patch: &'static str, theta: f64 },
    #[error("metric factor must be positive, got {0}")]
    NonPositiveMetric(f64),
    #[error("B(k) is singular (det = 0)")]
    Singular,
    #[error("invalid parity eigenvalue {0}")]
    InvalidParity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
