//! The generalized frame operator on the closed span of a declared domain.
//!
//! For a family φ with quadratic form `Ω(f, g) = Σ_i w_i ⟨f, φ_i⟩⟨φ_i, g⟩`,
//! the generalized frame operator T is the non-negative self-adjoint
//! operator representing the form on the closure H_φ of the declared
//! domain: `Ω(f, g) = ⟨T f, g⟩` there, and `Ω(f, g) = ⟨T^{1/2} f, T^{1/2} g⟩`
//! — both exact in finite dimension. At a truncation T is the compression
//! `P S P` of the frame operator by the orthogonal projection P onto H_φ;
//! with a full domain it coincides with S entrywise.
//!
//! T is stored on the full ambient space, acting as 0 on H_φ^⊥; inverse
//! powers are Moore–Penrose (supported on H_φ). The reduced matrix in an
//! orthonormal basis of H_φ drives invertibility tests and bound
//! measurements "restricted to H_φ".

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frames::{frame_operator, FrameBounds, VectorFamily};
use crate::hilbert::{inner, CMat, CVec, SymOp};
use crate::probe::ProbeSet;
use crate::tol;

/// Generalized frame operator of a family with respect to a domain
/// subspace H_φ.
#[derive(Clone, Debug)]
pub struct GenFrameOp {
    op: SymOp,
    projector: SymOp,
    basis: CMat,
    reduced: SymOp,
    domain_dim: usize,
}

impl GenFrameOp {
    /// T on the full ambient space (0 on H_φ^⊥).
    pub fn op(&self) -> &SymOp {
        &self.op
    }

    /// Orthogonal projection P onto H_φ.
    pub fn projector(&self) -> &SymOp {
        &self.projector
    }

    /// Orthonormal basis of H_φ (dim × domain_dim matrix of columns).
    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    /// T compressed to H_φ in the basis coordinates.
    pub fn reduced(&self) -> &SymOp {
        &self.reduced
    }

    /// Dimension of H_φ.
    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    /// Project onto H_φ.
    pub fn project(&self, f: &CVec) -> Result<CVec> {
        self.projector.apply(f)
    }

    /// Whether T is invertible on H_φ (smallest reduced eigenvalue above
    /// the null threshold).
    pub fn invertible_on_domain(&self) -> bool {
        self.reduced.lambda_min() > self.op.null_threshold()
    }

    /// Error unless T is invertible on H_φ.
    pub fn ensure_invertible(&self) -> Result<()> {
        if self.invertible_on_domain() {
            Ok(())
        } else {
            Err(Error::NotInvertible {
                lambda_min: self.reduced.lambda_min(),
                threshold: self.op.null_threshold(),
            })
        }
    }

    /// Moore–Penrose power T^p on H_φ (kernel maps to zero).
    pub fn support_pow(&self, p: f64) -> Result<SymOp> {
        self.op.support_pow(p)
    }
}

/// Build the generalized frame operator. The domain is, in order of
/// preference: the explicit `domain` argument, the family's declared
/// domain, or the whole ambient space.
pub fn build_genframe(family: &VectorFamily, domain: Option<&[CVec]>) -> Result<GenFrameOp> {
    let s = frame_operator(family)?;
    let dim = family.dim();
    let span = domain.or(family.domain());
    match span {
        None => Ok(GenFrameOp {
            projector: SymOp::identity(dim),
            basis: CMat::identity(dim, dim),
            reduced: s.clone(),
            domain_dim: dim,
            op: s,
        }),
        Some(span) => {
            for v in span {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                    });
                }
            }
            let basis = orthonormalize(span)?;
            let r = basis.ncols();
            let p = &basis * basis.adjoint();
            let projector = SymOp::new(p.clone())?;
            let t = &p * s.matrix() * &p;
            let op = SymOp::new(t)?;
            let reduced = SymOp::new(basis.adjoint() * s.matrix() * &basis)?;
            Ok(GenFrameOp {
                op,
                projector,
                basis,
                reduced,
                domain_dim: r,
            })
        }
    }
}

/// Modified Gram–Schmidt with re-orthogonalization; errors on a
/// (numerically) dependent input vector.
fn orthonormalize(span: &[CVec]) -> Result<CMat> {
    if span.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut basis: Vec<CVec> = Vec::with_capacity(span.len());
    for (index, v) in span.iter().enumerate() {
        let input_norm = v.norm();
        if input_norm == 0.0 {
            return Err(Error::DependentSpanningSet { index });
        }
        let mut u = v.clone();
        // Two MGS passes keep the basis orthonormal to machine precision.
        for _ in 0..2 {
            for b in &basis {
                let coeff = inner(&u, b);
                u -= b * coeff;
            }
        }
        let residual = u.norm();
        if residual <= tol::SPAN_DEPENDENCE * input_norm {
            return Err(Error::DependentSpanningSet { index });
        }
        basis.push(u / Complex64::new(residual, 0.0));
    }
    Ok(CMat::from_columns(&basis))
}

/// The quadrature quadratic form Ω(f, g) = Σ_i w_i ⟨f, φ_i⟩⟨φ_i, g⟩,
/// computed directly from the family (no operator assembly) — the
/// independent oracle for everything T claims to represent.
pub fn quadratic_form(family: &VectorFamily, f: &CVec, g: &CVec) -> Result<Complex64> {
    if f.len() != family.dim() || g.len() != family.dim() {
        return Err(Error::DimensionMismatch {
            expected: family.dim(),
            found: if f.len() != family.dim() {
                f.len()
            } else {
                g.len()
            },
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, phi) in family.vectors().iter().enumerate() {
        let w = family.grid().weights()[i];
        acc += Complex64::new(w, 0.0) * inner(f, phi) * inner(phi, g);
    }
    Ok(acc)
}

/// Report on the five equivalent characterizations of a lower bound m for
/// the family on H_φ:
///
/// 1. the lower frame bound on H_φ is ≥ m (spectral statement);
/// 2. Ω(f, f) ≥ m‖f‖² on probes in H_φ (form statement);
/// 3. ‖C f‖ ≥ √m ‖f‖ on probes in H_φ (coefficient statement);
/// 4. ‖T f‖ ≥ m ‖f‖ on probes in H_φ (image statement);
/// 5. T invertible on H_φ with ‖T^{-1}‖ ≤ 1/m (inverse statement).
///
/// The five must agree; `consistent` records whether they do.
#[derive(Clone, Debug)]
pub struct LowerBoundCertificate {
    /// (1) spectral lower bound ≥ m.
    pub spectral_bound: bool,
    /// (2) quadratic form dominated below by m on probes.
    pub form_bound: bool,
    /// (3) coefficient norm dominated below by √m on probes.
    pub coefficient_bound: bool,
    /// (4) image norm dominated below by m on probes.
    pub image_bound: bool,
    /// (5) inverse exists on H_φ with norm ≤ 1/m.
    pub inverse_bound: bool,
    /// All five statements agree.
    pub consistent: bool,
    /// Smallest eigenvalue of T on H_φ.
    pub lambda_min: f64,
    /// ‖T^{-1}‖ on H_φ when T is invertible there.
    pub inverse_norm: Option<f64>,
}

impl LowerBoundCertificate {
    /// The common verdict of the five statements (meaningful when
    /// `consistent`).
    pub fn holds(&self) -> bool {
        self.spectral_bound
    }
}

/// Evaluate the five lower-bound statements for the family at this
/// truncation. Probes are projected onto H_φ; the extremal eigenvector of
/// T on H_φ is appended so the probe minima attain the spectral bound.
pub fn lower_bound_certificate(
    family: &VectorFamily,
    m: f64,
    probes: &ProbeSet,
) -> Result<LowerBoundCertificate> {
    if m < 0.0 || !m.is_finite() {
        return Err(Error::HypothesisViolated {
            reason: format!("lower bound m = {m} must be a finite nonnegative real"),
        });
    }
    let gf = build_genframe(family, None)?;
    let lambda_min = gf.reduced().lambda_min().max(0.0);
    let slack = tol::CALCULUS * (1.0 + m);

    // Probes in H_φ: projected probe set plus the extremal eigenvector.
    let mut domain_probes: Vec<CVec> = Vec::new();
    for f in probes.vectors() {
        let pf = gf.project(f)?;
        if pf.norm() > 1e-8 {
            domain_probes.push(pf);
        }
    }
    let extremal: CVec = gf.basis() * gf.reduced().eigenvectors().column(0).into_owned();
    domain_probes.push(extremal);

    let analysis_op = crate::frames::analysis(family)?;
    let mut form_min = f64::INFINITY;
    let mut coeff_min_sq = f64::INFINITY;
    let mut image_min = f64::INFINITY;
    for f in &domain_probes {
        let nf2 = f.norm_squared();
        let form = quadratic_form(family, f, f)?.re;
        form_min = form_min.min(form / nf2);
        // ‖C f‖ ≥ √m ‖f‖ evaluated through the analysis matrix (an
        // independent path) and compared in the squared domain so all
        // statements share one slack scale.
        coeff_min_sq = coeff_min_sq.min(analysis_op.energy(f)? / nf2);
        let tf = gf.op().apply(f)?;
        image_min = image_min.min(tf.norm() / nf2.sqrt());
    }

    let spectral_bound = lambda_min >= m - slack;
    let form_bound = form_min >= m - slack;
    let coefficient_bound = coeff_min_sq >= m - slack;
    let image_bound = image_min >= m - slack;
    let (inverse_bound, inverse_norm) = if gf.invertible_on_domain() {
        let norm = 1.0 / gf.reduced().lambda_min();
        if m > 0.0 {
            (norm <= 1.0 / m + tol::CALCULUS * norm, Some(norm))
        } else {
            // m = 0: any bounded inverse satisfies ‖T^{-1}‖ ≤ ∞.
            (true, Some(norm))
        }
    } else {
        (m == 0.0, None)
    };

    let consistent = [form_bound, coefficient_bound, image_bound, inverse_bound]
        .iter()
        .all(|&b| b == spectral_bound);
    Ok(LowerBoundCertificate {
        spectral_bound,
        form_bound,
        coefficient_bound,
        image_bound,
        inverse_bound,
        consistent,
        lambda_min,
        inverse_norm,
    })
}

/// Canonical dual family ψ_i = T^{-1} P φ_i (Moore–Penrose on H_φ).
pub fn canonical_dual(gf: &GenFrameOp, family: &VectorFamily) -> Result<VectorFamily> {
    map_family(gf, family, -1.0)
}

/// Canonical tight family χ_i = T^{-1/2} P φ_i; Parseval on H_φ.
pub fn canonical_tight(gf: &GenFrameOp, family: &VectorFamily) -> Result<VectorFamily> {
    map_family(gf, family, -0.5)
}

fn map_family(gf: &GenFrameOp, family: &VectorFamily, power: f64) -> Result<VectorFamily> {
    if family.dim() != gf.dim() {
        return Err(Error::DimensionMismatch {
            expected: gf.dim(),
            found: family.dim(),
        });
    }
    gf.ensure_invertible()?;
    let t_pow = gf.support_pow(power)?;
    let vectors = family
        .vectors()
        .iter()
        .map(|phi| t_pow.apply(phi))
        .collect::<Result<Vec<_>>>()?;
    VectorFamily::new(family.grid().clone(), vectors)
}

/// The representer χ_x = T^{-1} φ_x of the point-evaluation functional
/// f ↦ ⟨f, φ_x⟩ against the T-weighted inner product:
/// ⟨f, φ_x⟩ = ⟨T^{1/2} f, T^{1/2} χ_x⟩.
pub fn riesz_representer(family: &VectorFamily, x_index: usize) -> Result<CVec> {
    if x_index >= family.len() {
        return Err(Error::IndexOutOfRange {
            index: x_index,
            len: family.len(),
        });
    }
    let gf = build_genframe(family, None)?;
    gf.ensure_invertible()?;
    let t_inv = gf.support_pow(-1.0)?;
    t_inv.apply(&family.vectors()[x_index])
}

/// Inverse direction: η_i = T χ_i, so that the representer of η recovers
/// χ. (The membership condition χ ∈ D(T) is automatic at a finite
/// truncation and recorded as such by the reporting layer.)
pub fn inverse_representer(chi: &VectorFamily, gf: &GenFrameOp) -> Result<VectorFamily> {
    if chi.dim() != gf.dim() {
        return Err(Error::DimensionMismatch {
            expected: gf.dim(),
            found: chi.dim(),
        });
    }
    let vectors = chi
        .vectors()
        .iter()
        .map(|v| gf.op().apply(v))
        .collect::<Result<Vec<_>>>()?;
    VectorFamily::new(chi.grid().clone(), vectors)
}

/// Frame bounds of a family measured on H_φ: extreme eigenvalues of the
/// frame operator compressed to the domain subspace.
pub fn bounds_on_domain(family: &VectorFamily, gf: &GenFrameOp) -> Result<FrameBounds> {
    if family.dim() != gf.dim() {
        return Err(Error::DimensionMismatch {
            expected: gf.dim(),
            found: family.dim(),
        });
    }
    let s = frame_operator(family)?;
    let reduced = SymOp::new(gf.basis().adjoint() * s.matrix() * gf.basis())?;
    let n = reduced.dim();
    Ok(FrameBounds {
        lower: reduced.lambda_min().max(0.0),
        upper: reduced.lambda_max(),
        attained_low: gf.basis() * reduced.eigenvectors().column(0).into_owned(),
        attained_high: gf.basis() * reduced.eigenvectors().column(n - 1).into_owned(),
        diverging: false,
    })
}

/// Weak-form reconstruction residual of a dual pair on the domain:
/// max over probes of |⟨P f, h⟩ − Σ_i w_i ⟨P f, φ_i⟩⟨ψ_i, h⟩| / (‖P f‖‖h‖).
pub fn dual_reconstruction_residual(
    phi: &VectorFamily,
    psi: &VectorFamily,
    gf: &GenFrameOp,
    probes: &ProbeSet,
) -> Result<f64> {
    let s_cross = crate::frames::cross_frame_operator(psi, phi)?;
    let mut worst: f64 = 0.0;
    for f in probes.vectors() {
        let pf = gf.project(f)?;
        let npf = pf.norm();
        if npf <= 1e-8 {
            continue;
        }
        let reconstructed = &s_cross * &pf;
        for h in probes.vectors() {
            let nh = h.norm();
            if nh == 0.0 {
                continue;
            }
            let defect = inner(&pf, h) - inner(&reconstructed, h);
            worst = worst.max(defect.norm() / (npf * nh));
        }
    }
    Ok(worst)
}
