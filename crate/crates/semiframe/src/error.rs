//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. Variants carry the
//! offending quantities so callers can report diagnostics without
//! re-deriving them.

/// Errors produced by construction and operator routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A matrix that must be square is not.
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// Relative asymmetry ‖A − A*‖/‖A‖ exceeds the Hermiticity tolerance.
    #[error("matrix is not Hermitian: relative asymmetry {asymmetry:.3e}")]
    NotHermitian { asymmetry: f64 },

    /// An eigenvalue falls below the (relative) positive semi-definite floor.
    #[error("operator is not positive semi-definite: lambda_min = {lambda_min:.3e}")]
    NotPositiveSemiDefinite { lambda_min: f64 },

    /// Strict positivity required but the smallest eigenvalue is numerically zero
    /// or negative.
    #[error("operator is not strictly positive: lambda_min = {lambda_min:.3e}")]
    NotPositiveDefinite { lambda_min: f64 },

    /// A spectral function evaluated to a non-finite value on an eigenvalue.
    #[error("functional calculus is singular at eigenvalue {eigenvalue:.3e}")]
    SingularCalculus { eigenvalue: f64 },

    /// The dense eigendecomposition backend violated one of its own
    /// invariants (orthonormality or reconstruction). Indicates a backend
    /// defect, not bad user input.
    #[error("spectral backend violated {what}: residual {residual:.3e}")]
    BackendInvariant {
        what: &'static str,
        residual: f64,
    },

    /// Vector or operator dimensions do not match.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A vector family with no members.
    #[error("vector family is empty")]
    EmptyFamily,

    /// Quadrature weights must be strictly positive.
    #[error("weight {weight:.3e} at index {index} is not strictly positive")]
    NonpositiveWeight { index: usize, weight: f64 },

    /// Two families that must share a measure grid do not.
    #[error("families live on different measure grids")]
    GridMismatch,

    /// Truncation-scan levels must be strictly increasing.
    #[error("truncation scan is inconsistent: {reason}")]
    InconsistentScan { reason: String },

    /// A declared domain spanning set contains a (numerically) dependent
    /// vector.
    #[error("spanning set is dependent at index {index}")]
    DependentSpanningSet { index: usize },

    /// An operator that must be invertible on its support is singular there.
    #[error("operator is singular on its support: lambda_min = {lambda_min:.3e} \
             below threshold {threshold:.3e}")]
    NotInvertible { lambda_min: f64, threshold: f64 },

    /// A theorem's hypotheses are not satisfied by the supplied data.
    #[error("hypothesis violated: {reason}")]
    HypothesisViolated { reason: String },

    /// Two families fail the biorthogonality test.
    #[error("families are not biorthogonal: max |<psi_n, phi_m> - delta_nm| = \
             {max_deviation:.3e}")]
    NotBiorthogonal { max_deviation: f64 },

    /// A family required to be total has a nontrivial null direction.
    #[error("family is not total: frame operator has numerically zero eigenvalue \
             {lambda_min:.3e}")]
    NotTotal { lambda_min: f64 },

    /// A point index beyond the family size.
    #[error("index {index} out of range for family of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    /// Invalid modulation step for the weighted-exponential gallery.
    #[error("invalid modulation step b = {b:.6}: need b in (0, 1] with 1/b integer")]
    InvalidB { b: f64 },

    /// The reproducing-kernel gallery requires a weight function m ≥ 1.
    #[error("weight function dips below one: min m(x) = {min:.6}")]
    WeightBelowOne { min: f64 },

    /// The spherical gallery requires a strictly positive symbol.
    #[error("symbol is not strictly positive at degree l = {degree}: s(l) = {value:.3e}")]
    NonpositiveSymbol { degree: usize, value: f64 },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
