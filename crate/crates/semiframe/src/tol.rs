//! Centralized numerical tolerances.
//!
//! Every comparison threshold in the crate lives here, with a documented
//! origin. Nothing downstream hard-codes an epsilon: tests and library
//! code alike import these constants, so a tolerance change is a
//! one-line, reviewable event.
//!
//! Two regimes appear throughout:
//!
//! - **Backend fidelity** (`1e-10` .. `1e-12` relative): how closely a
//!   dense Hermitian eigendecomposition in `f64` reproduces its input at
//!   dimensions up to a few hundred. These bound *our own arithmetic*.
//! - **Identity verification** (`1e-8` .. `1e-9` relative): how closely a
//!   mathematically exact identity survives a chain of decompositions,
//!   functional calculus, and weighted quadrature sums. These bound
//!   *accumulated* roundoff and are deliberately looser.

// ═══════════════════════════════════════════════════════════════════════════
// Spectral backend fidelity
// ═══════════════════════════════════════════════════════════════════════════

/// Maximum allowed relative Frobenius asymmetry ‖A − A*‖_F / ‖A‖_F for a
/// matrix admitted as Hermitian. Inputs beyond this are rejected rather
/// than silently symmetrized.
pub const HERMITICITY: f64 = 1e-10;

/// Maximum allowed max-entry deviation |⟨v_i, v_j⟩ − δ_ij| of a computed
/// eigenbasis from orthonormality.
pub const ORTHONORMALITY: f64 = 1e-10;

/// Maximum allowed relative Frobenius reconstruction error
/// ‖A − V Λ V*‖_F / ‖A‖_F of a cached eigendecomposition.
pub const RECONSTRUCTION: f64 = 1e-10;

/// Relative floor for admitting an operator as positive semi-definite:
/// λ_min ≥ −PSD_FLOOR_REL · ‖A‖ is accepted, anything lower is an error.
/// Slightly negative eigenvalues at this scale are roundoff, not signal.
pub const PSD_FLOOR_REL: f64 = 1e-10;

/// Relative null threshold: eigenvalues ≤ NULL_REL · λ_max are treated as
/// exact zeros when inverting, taking inverse powers, or testing
/// injectivity/totality. Below this scale an `f64` eigenvalue of a dense
/// decomposition carries no information.
pub const NULL_REL: f64 = 1e-12;

// ═══════════════════════════════════════════════════════════════════════════
// Functional calculus and derived operators
// ═══════════════════════════════════════════════════════════════════════════

/// Relative tolerance for operator-level consequences of the functional
/// calculus (e.g. the square of a computed square root recovering the
/// original operator, round-trips through inverses). One decomposition
/// plus one or two matrix products at desk-scale dimensions.
pub const CALCULUS: f64 = 1e-8;

/// Relative tolerance for identities that are exact in finite dimension
/// (quadratic-form factorizations through the operator square root,
/// weighted energy identities, weak-form reconstructions). Tighter than
/// [`CALCULUS`] because the compared quantities are scalars — a single
/// quadratic form each side — rather than full matrices.
pub const IDENTITY: f64 = 1e-9;

/// Relative tolerance for exact adjoint duality ⟨Cf, ξ⟩ = ⟨f, C*ξ⟩ and
/// other single-product pairings with no decomposition in the loop.
pub const ADJOINT: f64 = 1e-10;

// ═══════════════════════════════════════════════════════════════════════════
// Frame classification
// ═══════════════════════════════════════════════════════════════════════════

/// Absolute tolerance on |bound − 1| for declaring frame bounds Parseval,
/// and on weighted bounds produced by canonical-tight constructions.
/// Accumulated quadrature roundoff at dimensions up to 512.
pub const PARSEVAL: f64 = 1e-8;

/// Normalized-residual tolerance for duality certificates
/// |⟨f,g⟩ − Σ_i w_i ⟨f,φ_i⟩⟨ψ_i,g⟩| / (‖f‖‖g‖) on probe pairs.
pub const DUALITY: f64 = 1e-8;

/// Minimum log–log regression slope of λ_max against refinement level for
/// an upper bound to count as diverging. Unboundedness is a limit
/// statement; the scan makes it falsifiable at desk scale. Heuristic —
/// always reported in evidence, never applied silently.
pub const DIVERGENCE_SLOPE: f64 = 0.5;

/// Minimum last/first ratio of λ_max across the scan for divergence.
/// Guards the slope test against fitting noise on near-flat data.
pub const DIVERGENCE_RATIO: f64 = 1e2;

/// Minimum number of scan levels before any divergence/decay verdict is
/// allowed. Fewer points cannot distinguish a trend from a transient.
pub const TREND_MIN_LEVELS: usize = 4;

/// Maximum log–log regression slope of λ_min against refinement level for
/// a lower bound to count as decaying to zero (mirror image of
/// [`DIVERGENCE_SLOPE`]).
pub const DECAY_SLOPE: f64 = -0.5;

/// Minimum first/last ratio of λ_min across the scan for decay. Looser
/// than [`DIVERGENCE_RATIO`]: decaying lower bounds are bounded below by
/// the truncation's resolution, so their observable dynamic range is
/// smaller than a diverging upper bound's.
pub const DECAY_RATIO: f64 = 10.0;

// ═══════════════════════════════════════════════════════════════════════════
// Generalized frame operator
// ═══════════════════════════════════════════════════════════════════════════

/// Relative dependence threshold for modified Gram–Schmidt with
/// re-orthogonalization when orthonormalizing a domain spanning set: a
/// candidate whose residual norm falls below this fraction of its input
/// norm is discarded as dependent.
pub const SPAN_DEPENDENCE: f64 = 1e-10;

/// Relative residual ‖T y − v‖ / ‖v‖ below which the pseudo-inverse
/// solution certifies v ∈ Range(T). Range membership is otherwise
/// untestable numerically.
pub const RANGE_MEMBERSHIP: f64 = 1e-8;

// ═══════════════════════════════════════════════════════════════════════════
// Metric transforms
// ═══════════════════════════════════════════════════════════════════════════

/// Snap width for the critical exponent: a user-supplied k with
/// |k − (m + 1/2)| < K_SNAP is treated as exactly the boundary value.
/// Iff-at-a-point conditions need an explicit equality convention.
pub const K_SNAP: f64 = 1e-12;

// ═══════════════════════════════════════════════════════════════════════════
// Lattice of Hilbert spaces
// ═══════════════════════════════════════════════════════════════════════════

/// Relative residual ‖BT − TA‖_F / (‖A‖_F · ‖T‖) below which T is
/// accepted as an intertwiner certifying similarity of A and B.
pub const SIMILARITY: f64 = 1e-9;

/// Maximum per-eigenvalue deviation when matching the spectra of similar
/// operators as sorted multisets. Looser than [`SIMILARITY`] because
/// eigenvalues of non-normal matrices amplify perturbations.
pub const SPECTRUM_MATCH: f64 = 1e-7;

/// Relative residual for exact norm identities inside the lattice
/// (graph-norm factorizations such as ‖f‖² + ‖G^{1/2}f‖² against the
/// squared node norm). Single decomposition, scalar comparison.
pub const LATTICE_EXACT: f64 = 1e-10;

// ═══════════════════════════════════════════════════════════════════════════
// Probe sets
// ═══════════════════════════════════════════════════════════════════════════

/// Number of random unit-vector probes appended to the standard basis in
/// the default probe set. Enough to catch non-diagonal defects at desk
/// dimensions while keeping residual sweeps fast.
pub const RANDOM_PROBES: usize = 32;

/// Default RNG seed for probe generation when neither configuration nor
/// environment supplies one. Recorded in every emitted report.
pub const DEFAULT_SEED: u64 = 0x5EED_0001;
