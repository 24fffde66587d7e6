//! Deterministic probe vectors and seeded random builders.
//!
//! Residual checks throughout the crate evaluate identities on a probe
//! set: the standard basis (catches coordinate-aligned defects) plus a
//! seeded batch of random unit vectors (catches everything else). The
//! seed is recorded so every report is reproducible.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::hilbert::{CMat, CVec};
use crate::tol;

/// A reproducible collection of probe vectors in a fixed dimension.
#[derive(Clone, Debug)]
pub struct ProbeSet {
    dim: usize,
    seed: u64,
    vectors: Vec<CVec>,
}

impl ProbeSet {
    /// Standard basis plus [`tol::RANDOM_PROBES`] seeded random unit
    /// vectors — the default probe set for residual sweeps.
    pub fn standard(dim: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vectors = Vec::with_capacity(dim + tol::RANDOM_PROBES);
        for i in 0..dim {
            let mut e = CVec::zeros(dim);
            e[i] = Complex64::new(1.0, 0.0);
            vectors.push(e);
        }
        for _ in 0..tol::RANDOM_PROBES {
            vectors.push(random_unit(dim, &mut rng));
        }
        Self { dim, seed, vectors }
    }

    /// `count` seeded random unit vectors, no basis.
    pub fn random(dim: usize, count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vectors = (0..count).map(|_| random_unit(dim, &mut rng)).collect();
        Self { dim, seed, vectors }
    }

    /// Ambient dimension of the probes.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Seed used to generate the random portion.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The probe vectors.
    pub fn vectors(&self) -> &[CVec] {
        &self.vectors
    }

    /// Extend with extra vectors (e.g. spectral witnesses); keeps the seed.
    pub fn with_extra(mut self, extra: impl IntoIterator<Item = CVec>) -> Self {
        self.vectors.extend(extra);
        self
    }
}

/// One standard complex Gaussian scalar (unit-variance real and imaginary
/// parts).
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Standard complex Gaussian vector.
pub fn random_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVec {
    CVec::from_fn(dim, |_, _| random_complex(rng))
}

/// Random unit vector, uniform on the sphere.
pub fn random_unit<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVec {
    loop {
        let v = random_vector(dim, rng);
        let n = v.norm();
        if n > 1e-6 {
            return v / Complex64::new(n, 0.0);
        }
    }
}

/// Square standard complex Gaussian matrix.
pub fn random_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMat {
    CMat::from_fn(dim, dim, |_, _| random_complex(rng))
}

/// Random Hermitian matrix (Hermitian part of a Gaussian matrix).
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMat {
    let a = random_matrix(dim, rng);
    (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Random unitary matrix (QR factor of a Gaussian matrix).
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMat {
    let a = random_matrix(dim, rng);
    a.qr().q()
}

/// Random Hermitian positive-definite matrix with eigenvalues log-uniform
/// in [lambda_lo, lambda_hi], conjugated by a random unitary.
pub fn random_positive_definite<R: Rng + ?Sized>(
    dim: usize,
    lambda_lo: f64,
    lambda_hi: f64,
    rng: &mut R,
) -> CMat {
    assert!(0.0 < lambda_lo && lambda_lo <= lambda_hi);
    let q = random_unitary(dim, rng);
    let log_lo = lambda_lo.ln();
    let log_hi = lambda_hi.ln();
    let lambda = CMat::from_fn(dim, dim, |i, j| {
        if i == j {
            let t: f64 = rng.random();
            Complex64::new((log_lo + t * (log_hi - log_lo)).exp(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let m = &q * lambda * q.adjoint();
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Random well-conditioned invertible matrix (singular values log-uniform
/// in [sigma_lo, sigma_hi]).
pub fn random_invertible<R: Rng + ?Sized>(
    dim: usize,
    sigma_lo: f64,
    sigma_hi: f64,
    rng: &mut R,
) -> CMat {
    assert!(0.0 < sigma_lo && sigma_lo <= sigma_hi);
    let u = random_unitary(dim, rng);
    let v = random_unitary(dim, rng);
    let log_lo = sigma_lo.ln();
    let log_hi = sigma_hi.ln();
    let sigma = CMat::from_fn(dim, dim, |i, j| {
        if i == j {
            let t: f64 = rng.random();
            Complex64::new((log_lo + t * (log_hi - log_lo)).exp(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    u * sigma * v.adjoint()
}

/// Random family of `count` Gaussian vectors in dimension `dim`.
pub fn random_family<R: Rng + ?Sized>(dim: usize, count: usize, rng: &mut R) -> Vec<CVec> {
    (0..count).map(|_| random_vector(dim, rng)).collect()
}

/// Biorthogonal pair of total families: φ_n = A e_n and ψ_n = (A^{-1})* e_n
/// for a well-conditioned random invertible A, so ⟨ψ_n, φ_m⟩ = δ_nm exactly
/// up to solve error.
pub fn random_biorthogonal_pair<R: Rng + ?Sized>(
    dim: usize,
    rng: &mut R,
) -> (Vec<CVec>, Vec<CVec>) {
    let a = random_invertible(dim, 0.5, 2.0, rng);
    let a_inv = a
        .clone()
        .try_inverse()
        .expect("matrix built with singular values >= 0.5 is invertible");
    let a_inv_adj = a_inv.adjoint();
    let phi = (0..dim).map(|n| a.column(n).into_owned()).collect();
    let psi = (0..dim).map(|n| a_inv_adj.column(n).into_owned()).collect();
    (phi, psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::inner;

    #[test]
    fn standard_probe_set_is_deterministic_and_unit() {
        let a = ProbeSet::standard(4, 42);
        let b = ProbeSet::standard(4, 42);
        assert_eq!(a.vectors().len(), 4 + tol::RANDOM_PROBES);
        for (u, v) in a.vectors().iter().zip(b.vectors()) {
            assert_eq!(u, v);
            assert!((u.norm() - 1.0).abs() <= 1e-12);
        }
        let c = ProbeSet::standard(4, 43);
        assert_ne!(a.vectors()[4], c.vectors()[4]);
    }

    #[test]
    fn random_unitary_has_orthonormal_columns() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = random_unitary(5, &mut rng);
        let gram = q.adjoint() * &q;
        for i in 0..5 {
            for j in 0..5 {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((gram[(i, j)] - Complex64::new(target, 0.0)).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn positive_definite_builder_respects_spectrum_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_positive_definite(6, 0.25, 4.0, &mut rng);
        let op = crate::hilbert::SymOp::new(a).unwrap();
        assert!(op.lambda_min() >= 0.25 - 1e-9);
        assert!(op.lambda_max() <= 4.0 + 1e-9);
    }

    #[test]
    fn biorthogonal_pair_has_kronecker_gram() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (phi, psi) = random_biorthogonal_pair(5, &mut rng);
        for (n, dual) in psi.iter().enumerate() {
            for (m, vector) in phi.iter().enumerate() {
                let target = if n == m { 1.0 } else { 0.0 };
                let g = inner(dual, vector);
                assert!(
                    (g - Complex64::new(target, 0.0)).norm() <= 1e-10,
                    "gram deviation at ({n},{m}): {g}"
                );
            }
        }
    }
}
