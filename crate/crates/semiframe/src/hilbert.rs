//! Finite-dimensional complex Hilbert space substrate.
//!
//! Vectors are dense complex columns; operators are Hermitian matrices
//! that carry their eigendecomposition (ascending eigenvalues, orthonormal
//! eigenvectors) from the moment of construction. All spectral work —
//! powers, functional calculus, weighted inner products — runs through
//! that single cached decomposition, so every derived operator shares the
//! eigenbasis of its parent exactly.
//!
//! The inner product is linear in the **first** argument and conjugate
//! linear in the second.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::tol;

/// Dense complex column vector.
pub type CVec = DVector<Complex64>;
/// Dense complex matrix.
pub type CMat = DMatrix<Complex64>;

/// Inner product ⟨f, g⟩ = Σ_i f_i · conj(g_i), linear in the first
/// argument. Panics on dimension mismatch (callers validate dimensions at
/// their public boundary).
pub fn inner(f: &CVec, g: &CVec) -> Complex64 {
    // dotc conjugates its receiver: g.dotc(f) = Σ conj(g_i) f_i.
    g.dotc(f)
}

/// Euclidean norm ‖f‖.
pub fn norm(f: &CVec) -> f64 {
    f.norm()
}

/// Frobenius distance ‖a − b‖_F relative to ‖a‖_F (absolute when a = 0).
pub fn rel_frobenius_distance(a: &CMat, b: &CMat) -> f64 {
    let denom = a.norm();
    let dist = (a - b).norm();
    if denom > 0.0 {
        dist / denom
    } else {
        dist
    }
}

/// Hermitian part (A + A*)/2. Exactly Hermitian in floating point.
pub(crate) fn hermitian_part(a: &CMat) -> CMat {
    (a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Real-valued function of a real spectral argument, with a label for
/// reports. Applied entrywise to eigenvalues by the functional calculus.
#[derive(Clone)]
pub struct SpectralFn {
    label: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl SpectralFn {
    /// Wrap an arbitrary spectral function with a human-readable label.
    pub fn new(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    /// The identity function i(t) = t.
    pub fn identity() -> Self {
        Self::new("t", |t| t)
    }

    /// The constant function t ↦ c.
    pub fn constant(c: f64) -> Self {
        Self::new(format!("{c}"), move |_| c)
    }

    /// The power function t ↦ t^p (0^0 evaluates to 1).
    pub fn power(p: f64) -> Self {
        Self::new(format!("t^{p}"), move |t| t.powf(p))
    }

    /// Pointwise product (self · other)(t).
    pub fn mul(&self, other: &SpectralFn) -> SpectralFn {
        let a = Arc::clone(&self.f);
        let b = Arc::clone(&other.f);
        SpectralFn {
            label: format!("({})*({})", self.label, other.label),
            f: Arc::new(move |t| a(t) * b(t)),
        }
    }

    /// Evaluate at t.
    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    /// The report label.
    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for SpectralFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpectralFn({})", self.label)
    }
}

/// Specification of a weighted norm: either a power m ≥ 0 of a base
/// operator or an arbitrary spectral function of it.
#[derive(Clone, Debug)]
pub enum WeightSpec {
    /// Weight operator T^m (requires m ≥ 0).
    Power(f64),
    /// Weight operator h(T).
    Fn(SpectralFn),
}

/// Hermitian operator with a cached eigendecomposition.
///
/// Invariants established at construction:
/// - the stored matrix is exactly Hermitian (inputs are admitted up to a
///   relative asymmetry of [`tol::HERMITICITY`], then symmetrized);
/// - eigenvalues are ascending;
/// - eigenvectors are orthonormal within [`tol::ORTHONORMALITY`];
/// - `V Λ V*` reproduces the matrix within [`tol::RECONSTRUCTION`]
///   (relative Frobenius).
#[derive(Clone, Debug)]
pub struct SymOp {
    matrix: CMat,
    eigenvalues: DVector<f64>,
    eigenvectors: CMat,
}

impl SymOp {
    /// Build from a (numerically) Hermitian matrix, validating and caching
    /// the eigendecomposition.
    pub fn new(matrix: CMat) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let norm = matrix.norm();
        let asym = (&matrix - matrix.adjoint()).norm();
        let rel_asym = if norm > 0.0 { asym / norm } else { asym };
        if rel_asym > tol::HERMITICITY {
            return Err(Error::NotHermitian {
                asymmetry: rel_asym,
            });
        }
        let h = hermitian_part(&matrix);

        let (eigenvalues, eigenvectors) = if is_exactly_diagonal(&h) {
            diagonal_eigensystem(&h)
        } else {
            let eig = nalgebra::linalg::SymmetricEigen::new(h.clone());
            sort_eigensystem(eig.eigenvalues, eig.eigenvectors)
        };

        let op = Self {
            matrix: h,
            eigenvalues,
            eigenvectors,
        };
        op.validate()?;
        Ok(op)
    }

    /// Identity operator on a dim-dimensional space.
    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(&vec![1.0; dim])
    }

    /// Diagonal operator with the given real diagonal (eigensystem exact).
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let matrix = CMat::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let (eigenvalues, eigenvectors) = diagonal_eigensystem(&matrix);
        Self {
            matrix,
            eigenvalues,
            eigenvectors,
        }
    }

    /// Assemble from a known eigensystem (sorted on entry here); used by
    /// the functional calculus so derived operators share the parent's
    /// eigenbasis exactly.
    pub(crate) fn from_eigensystem(eigenvalues: DVector<f64>, eigenvectors: CMat) -> Self {
        let (eigenvalues, eigenvectors) = sort_eigensystem(eigenvalues, eigenvectors);
        let lambda = CMat::from_fn(eigenvalues.len(), eigenvalues.len(), |i, j| {
            if i == j {
                Complex64::new(eigenvalues[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let matrix = hermitian_part(&(&eigenvectors * lambda * eigenvectors.adjoint()));
        Self {
            matrix,
            eigenvalues,
            eigenvectors,
        }
    }

    fn validate(&self) -> Result<()> {
        let v = &self.eigenvectors;
        let gram = v.adjoint() * v;
        let mut max_dev: f64 = 0.0;
        for i in 0..gram.nrows() {
            for j in 0..gram.ncols() {
                let target = if i == j { 1.0 } else { 0.0 };
                max_dev = max_dev.max((gram[(i, j)] - Complex64::new(target, 0.0)).norm());
            }
        }
        if max_dev > tol::ORTHONORMALITY {
            return Err(Error::BackendInvariant {
                what: "eigenvector orthonormality",
                residual: max_dev,
            });
        }
        let lambda = CMat::from_fn(self.dim(), self.dim(), |i, j| {
            if i == j {
                Complex64::new(self.eigenvalues[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let recon = v * lambda * v.adjoint();
        let residual = rel_frobenius_distance(&self.matrix, &recon);
        if residual > tol::RECONSTRUCTION {
            return Err(Error::BackendInvariant {
                what: "spectral reconstruction",
                residual,
            });
        }
        Ok(())
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// The stored (exactly Hermitian) matrix.
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors, columns matching [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &CMat {
        &self.eigenvectors
    }

    /// Smallest eigenvalue.
    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Largest eigenvalue.
    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// Spectral norm max |λ|.
    pub fn spectral_norm(&self) -> f64 {
        self.lambda_min().abs().max(self.lambda_max().abs())
    }

    /// Threshold below which eigenvalues count as numerically zero.
    pub fn null_threshold(&self) -> f64 {
        tol::NULL_REL * self.lambda_max().max(0.0)
    }

    /// Whether the operator is positive semi-definite up to the relative
    /// floor [`tol::PSD_FLOOR_REL`].
    pub fn is_psd(&self) -> bool {
        self.lambda_min() >= -tol::PSD_FLOOR_REL * self.spectral_norm()
    }

    /// Matrix–vector product.
    pub fn apply(&self, f: &CVec) -> Result<CVec> {
        if f.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: f.len(),
            });
        }
        Ok(&self.matrix * f)
    }

    /// Spectral functional calculus V · fn(Λ) · V*.
    ///
    /// Requires positive semi-definiteness up to the relative floor.
    /// Eigenvalues below the null threshold are snapped to exact zero
    /// before evaluation; a non-finite value at any (snapped) eigenvalue —
    /// e.g. t^{-1/2} at a numerically zero eigenvalue — is an error.
    pub fn fn_calculus(&self, func: &SpectralFn) -> Result<SymOp> {
        self.calculus_impl(func, false)
    }

    /// Functional calculus on the support: like [`Self::fn_calculus`] but
    /// numerically zero eigenvalues map to zero regardless of fn(0)
    /// (Moore–Penrose convention for inverse powers of singular
    /// operators).
    pub fn support_calculus(&self, func: &SpectralFn) -> Result<SymOp> {
        self.calculus_impl(func, true)
    }

    fn calculus_impl(&self, func: &SpectralFn, support_only: bool) -> Result<SymOp> {
        if !self.is_psd() {
            return Err(Error::NotPositiveSemiDefinite {
                lambda_min: self.lambda_min(),
            });
        }
        let thr = self.null_threshold();
        let mut mapped = DVector::zeros(self.dim());
        for (i, &lambda) in self.eigenvalues.iter().enumerate() {
            let snapped = if lambda <= thr { 0.0 } else { lambda };
            let value = if support_only && snapped == 0.0 {
                0.0
            } else {
                func.eval(snapped)
            };
            if !value.is_finite() {
                return Err(Error::SingularCalculus {
                    eigenvalue: snapped,
                });
            }
            mapped[i] = value;
        }
        Ok(SymOp::from_eigensystem(mapped, self.eigenvectors.clone()))
    }

    /// Operator power T^p via the functional calculus.
    pub fn pow(&self, p: f64) -> Result<SymOp> {
        self.fn_calculus(&SpectralFn::power(p))
    }

    /// Operator power on the support (Moore–Penrose for p < 0).
    pub fn support_pow(&self, p: f64) -> Result<SymOp> {
        self.support_calculus(&SpectralFn::power(p))
    }
}

/// Weight operator W for a weighted inner product: T^m or h(T).
pub fn weight_operator(base: &SymOp, weight: &WeightSpec) -> Result<SymOp> {
    match weight {
        WeightSpec::Power(m) => {
            if *m < 0.0 || !m.is_finite() {
                return Err(Error::HypothesisViolated {
                    reason: format!("weight power m = {m} must be a finite nonnegative real"),
                });
            }
            base.pow(*m)
        }
        WeightSpec::Fn(h) => base.fn_calculus(h),
    }
}

/// Weighted inner product ⟨f, g⟩_W = ⟨W f, W g⟩ with W = T^m or h(T).
/// Linear in the first argument; conjugate symmetric.
pub fn inner_weighted(base: &SymOp, weight: &WeightSpec, f: &CVec, g: &CVec) -> Result<Complex64> {
    let w = weight_operator(base, weight)?;
    let wf = w.apply(f)?;
    let wg = w.apply(g)?;
    Ok(inner(&wf, &wg))
}

/// Weighted norm ‖f‖_W = ‖W f‖.
pub fn weighted_norm(base: &SymOp, weight: &WeightSpec, f: &CVec) -> Result<f64> {
    let w = weight_operator(base, weight)?;
    Ok(w.apply(f)?.norm())
}

fn is_exactly_diagonal(m: &CMat) -> bool {
    let zero = Complex64::new(0.0, 0.0);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i != j && m[(i, j)] != zero {
                return false;
            }
        }
    }
    true
}

/// Exact eigensystem of a diagonal matrix: sorted diagonal plus
/// permutation eigenvectors. Keeps large diagonal models (gallery scans)
/// out of the dense decomposition path.
fn diagonal_eigensystem(m: &CMat) -> (DVector<f64>, CMat) {
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        m[(a, a)]
            .re
            .partial_cmp(&m[(b, b)].re)
            .expect("diagonal entries must be comparable")
    });
    let eigenvalues = DVector::from_fn(n, |k, _| m[(order[k], order[k])].re);
    let eigenvectors = CMat::from_fn(n, n, |i, k| {
        if i == order[k] {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    (eigenvalues, eigenvectors)
}

fn sort_eigensystem(values: DVector<f64>, vectors: CMat) -> (DVector<f64>, CMat) {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .expect("eigenvalues must be comparable")
    });
    let sorted_values = DVector::from_fn(n, |k, _| values[order[k]]);
    let cols: Vec<_> = order.iter().map(|&k| vectors.column(k)).collect();
    let sorted_vectors = CMat::from_columns(&cols);
    (sorted_values, sorted_vectors)
}
