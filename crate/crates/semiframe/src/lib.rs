//! Numerical laboratory for discretized continuous frames and semi-frames.
//!
//! A weakly measurable family `φ : X → H` over a measure space `(X, μ)` is
//! discretized here as a finite list of vectors `φ_i ∈ C^d` with positive
//! quadrature weights `w_i`. The crate builds the standard operators of
//! frame theory on top of that data — the analysis operator `C_φ`, the
//! frame operator `S_φ = C_φ* C_φ`, and the generalized frame operator
//! `T_φ` of the closure of the quadratic form `f ↦ Σ w_i |⟨f, φ_i⟩|²` —
//! and uses their spectra to classify the family as a frame, a Parseval
//! frame, an upper or lower semi-frame, or none of these.
//!
//! # Scope
//!
//! - [`hilbert`]: complex vectors, Hermitian operators with cached
//!   eigendecompositions, spectral functional calculus, weighted inner
//!   products and norms.
//! - [`frames`]: vector families, analysis/synthesis/frame operators,
//!   frame bounds, totality, truncation scans, and the classification
//!   verdicts.
//! - [`genframe`]: the generalized frame operator on the closed span
//!   `H_φ`, its Moore–Penrose calculus, lower-bound certificates,
//!   canonical dual and tight families, Riesz-type representers, and the
//!   biorthogonal route to orthonormal bases.
//! - [`transforms`]: metric-operator transforms `T^{-k} φ` and `h(T) φ`,
//!   boundary classification of the transformed family, and the
//!   transformability report for a family that fails to be a frame.
//! - [`lattice`]: the lattice of Hilbert spaces generated by a metric
//!   operator `G`, with node norms, edge embeddings, dualities, the scale
//!   of spaces `H_n = D(G^{n/2})`, and similarity checks.
//! - [`gallery`]: reproducible example families — weighted exponentials,
//!   a diagonal reproducing-kernel model, spherical-harmonic symbols, and
//!   pathological sequences that defeat every metric transform.
//! - [`checks`]: the self-verification suite used by the command-line
//!   front end, with deliberate fault injection to prove the checks can
//!   fail.
//!
//! # Design principles
//!
//! - Deterministic: every randomized probe set derives from an explicit
//!   seed, and all reports order their keys.
//! - Oracle-backed: numerical claims are tested against independently
//!   computed references, not against the code that produced them.
//! - Spectral honesty: operators carry their eigendecompositions, and
//!   every tolerance lives in [`tol`] with a documented origin.

#![forbid(unsafe_code)]

pub mod checks;
pub mod error;
pub mod frames;
pub mod gallery;
pub mod genframe;
pub mod hilbert;
pub mod lattice;
pub mod probe;
pub mod tol;
pub mod transforms;

pub use error::{Error, Result};
