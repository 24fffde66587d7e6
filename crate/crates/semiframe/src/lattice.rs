//! The lattice of Hilbert spaces generated by a metric operator.
//!
//! A metric operator is a strictly positive self-adjoint operator G. Its
//! powers and the powers of R_G = I + G generate a nine-node lattice of
//! Hilbert spaces, each carried here by a spectral weight W(λ) — the norm of
//! the node is ‖f‖² = ⟨W(G)f, f⟩:
//!
//! | node                       | weight W(λ)   | construction               |
//! |----------------------------|---------------|----------------------------|
//! | H(G) ∧ H(G⁻¹)              | λ + 1/λ       | meet (projective/graph sum)|
//! | H(R_G)                     | 1 + λ         | H ∧ H(G)                   |
//! | H(R_{G⁻¹})                 | 1 + 1/λ       | H ∧ H(G⁻¹)                 |
//! | H(G)                       | λ             | domain norm ‖G^{1/2}f‖     |
//! | H (ambient)                | 1             |                            |
//! | H(G⁻¹)                     | 1/λ           | domain norm ‖G^{-1/2}f‖    |
//! | H(R_G⁻¹)                   | 1/(1 + λ)     | H ∨ H(G⁻¹)                 |
//! | H(R_{G⁻¹}⁻¹)               | λ/(1 + λ)     | H ∨ H(G)                   |
//! | H(G) ∨ H(G⁻¹)              | 1/(λ + 1/λ)   | join (inductive norm)      |
//!
//! The twelve directed lattice edges are continuous embeddings; for each the
//! embedding constant sup √(W_target/W_source) over the spectrum is computed
//! and the inequality ‖f‖_target ≤ c·‖f‖_source verified on probes. Meet and
//! join norms are evaluated definitionally — the meet as the graph sum of the
//! two component norms, the join by solving the two-block least-squares
//! splitting f = f₁ + f₂ in closed form — and agree exactly with their
//! spectral weights because all weights commute.
//!
//! On top of the lattice sit the discrete and continuous Hilbert scales
//! ‖f‖_α = ‖G^{α/2}f‖ (graph variant ‖f‖² + ‖G^{α/2}f‖² when G ≱ 1), whose
//! defining unitarity G^{(α−β)/2}: H_α → H_β is checked to roundoff, the
//! metric pair G₁ = I + S*S, G₂ = G₁⁻¹ built from a closed operator, and
//! bounded-intertwining similarity checks with spectral cross-validation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{inner, CMat, CVec, SpectralFn, SymOp};
use crate::probe::ProbeSet;
use crate::tol;

/// A strictly positive self-adjoint operator, certified at construction:
/// λ_min must clear the numerical null threshold of the spectrum.
#[derive(Clone, Debug)]
pub struct MetricOp {
    op: SymOp,
}

impl MetricOp {
    /// Certify strict positivity of a self-adjoint operator.
    pub fn new(op: SymOp) -> Result<Self> {
        if op.lambda_min() <= op.null_threshold() {
            return Err(Error::NotPositiveDefinite {
                lambda_min: op.lambda_min(),
            });
        }
        Ok(Self { op })
    }

    /// Build from a raw matrix (must be Hermitian and strictly positive).
    pub fn from_matrix(matrix: CMat) -> Result<Self> {
        Self::new(SymOp::new(matrix)?)
    }

    /// Build from a diagonal (all entries must be strictly positive).
    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(SymOp::from_diagonal(diag))
    }

    /// The underlying operator.
    pub fn op(&self) -> &SymOp {
        &self.op
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    /// The inverse metric operator G⁻¹ (always exists: G is strictly
    /// positive).
    pub fn inverse(&self) -> Result<MetricOp> {
        MetricOp::new(self.op.pow(-1.0)?)
    }

    /// Condition number λ_max/λ_min.
    pub fn condition_number(&self) -> f64 {
        self.op.lambda_max() / self.op.lambda_min()
    }
}

/// The nine nodes of the lattice, in embedding order from smallest space
/// (strongest norm) to largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeNode {
    /// H(G) ∧ H(G⁻¹), the meet, with the projective (graph-sum) norm.
    Meet,
    /// H(R_G) = H ∧ H(G), norm ‖(I+G)^{1/2}f‖.
    GraphG,
    /// H(R_{G⁻¹}) = H ∧ H(G⁻¹), norm ‖(I+G⁻¹)^{1/2}f‖.
    GraphGInv,
    /// H(G), norm ‖G^{1/2}f‖.
    DomainG,
    /// The ambient space H.
    Ambient,
    /// H(G⁻¹), norm ‖G^{-1/2}f‖.
    DomainGInv,
    /// H(R_{G⁻¹}⁻¹) = H ∨ H(G), norm weight λ/(1+λ).
    CoGraphGInv,
    /// H(R_G⁻¹) = H ∨ H(G⁻¹), norm weight 1/(1+λ).
    CoGraphG,
    /// H(G) ∨ H(G⁻¹), the join, with the inductive norm.
    Join,
}

/// All nine nodes in a fixed deterministic order.
pub const NODES: [LatticeNode; 9] = [
    LatticeNode::Meet,
    LatticeNode::GraphG,
    LatticeNode::GraphGInv,
    LatticeNode::DomainG,
    LatticeNode::Ambient,
    LatticeNode::DomainGInv,
    LatticeNode::CoGraphGInv,
    LatticeNode::CoGraphG,
    LatticeNode::Join,
];

/// The twelve directed embeddings of the lattice diagram.
pub const EDGES: [(LatticeNode, LatticeNode); 12] = [
    (LatticeNode::Meet, LatticeNode::GraphG),
    (LatticeNode::Meet, LatticeNode::GraphGInv),
    (LatticeNode::GraphG, LatticeNode::DomainG),
    (LatticeNode::GraphG, LatticeNode::Ambient),
    (LatticeNode::GraphGInv, LatticeNode::Ambient),
    (LatticeNode::GraphGInv, LatticeNode::DomainGInv),
    (LatticeNode::DomainG, LatticeNode::CoGraphGInv),
    (LatticeNode::Ambient, LatticeNode::CoGraphGInv),
    (LatticeNode::Ambient, LatticeNode::CoGraphG),
    (LatticeNode::DomainGInv, LatticeNode::CoGraphG),
    (LatticeNode::CoGraphGInv, LatticeNode::Join),
    (LatticeNode::CoGraphG, LatticeNode::Join),
];

impl LatticeNode {
    /// Stable label for reports.
    pub fn label(self) -> &'static str {
        match self {
            LatticeNode::Meet => "meet",
            LatticeNode::GraphG => "graph_g",
            LatticeNode::GraphGInv => "graph_g_inv",
            LatticeNode::DomainG => "domain_g",
            LatticeNode::Ambient => "ambient",
            LatticeNode::DomainGInv => "domain_g_inv",
            LatticeNode::CoGraphGInv => "cograph_g_inv",
            LatticeNode::CoGraphG => "cograph_g",
            LatticeNode::Join => "join",
        }
    }

    /// The spectral weight W(λ) whose quadratic form ⟨W(G)f, f⟩ is the
    /// squared node norm.
    pub fn weight(self, lambda: f64) -> f64 {
        match self {
            LatticeNode::Meet => lambda + 1.0 / lambda,
            LatticeNode::GraphG => 1.0 + lambda,
            LatticeNode::GraphGInv => 1.0 + 1.0 / lambda,
            LatticeNode::DomainG => lambda,
            LatticeNode::Ambient => 1.0,
            LatticeNode::DomainGInv => 1.0 / lambda,
            LatticeNode::CoGraphGInv => lambda / (1.0 + lambda),
            LatticeNode::CoGraphG => 1.0 / (1.0 + lambda),
            LatticeNode::Join => 1.0 / (lambda + 1.0 / lambda),
        }
    }

    fn weight_symbol(self) -> SpectralFn {
        SpectralFn::new(format!("W_{}", self.label()), move |t| self.weight(t))
    }
}

fn quadratic_norm(g: &MetricOp, symbol: &SpectralFn, f: &CVec) -> Result<f64> {
    let root = SpectralFn::new(
        format!("sqrt({})", symbol.label()),
        {
            let symbol = symbol.clone();
            move |t| symbol.eval(t).sqrt()
        },
    );
    Ok(g.op().fn_calculus(&root)?.apply(f)?.norm())
}

/// The norm of `f` in one lattice node. Meet and join are evaluated
/// definitionally (graph sum and least-squares splitting); the other seven
/// via their spectral weights.
pub fn node_norm(g: &MetricOp, node: LatticeNode, f: &CVec) -> Result<f64> {
    match node {
        LatticeNode::Meet => {
            let a = quadratic_norm(g, &LatticeNode::DomainG.weight_symbol(), f)?;
            let b = quadratic_norm(g, &LatticeNode::DomainGInv.weight_symbol(), f)?;
            Ok((a * a + b * b).sqrt())
        }
        LatticeNode::Join => inductive_norm(
            g,
            &LatticeNode::DomainG.weight_symbol(),
            &LatticeNode::DomainGInv.weight_symbol(),
            f,
        ),
        other => quadratic_norm(g, &other.weight_symbol(), f),
    }
}

/// The inductive norm of the sum of two weighted spaces: the minimum of
/// ⟨A f₁, f₁⟩ + ⟨B f₂, f₂⟩ over all splittings f = f₁ + f₂, with A = wa(G)
/// and B = wb(G). The minimizer solves the normal equations
/// (A + B) f₁ = B f, giving a closed-form evaluation.
pub fn inductive_norm(
    g: &MetricOp,
    wa: &SpectralFn,
    wb: &SpectralFn,
    f: &CVec,
) -> Result<f64> {
    let a = g.op().fn_calculus(wa)?;
    let b = g.op().fn_calculus(wb)?;
    let sum = SymOp::new(a.matrix() + b.matrix())?;
    let f1 = sum.pow(-1.0)?.apply(&b.apply(f)?)?;
    let f2 = f - &f1;
    let qa = inner(&a.apply(&f1)?, &f1).re;
    let qb = inner(&b.apply(&f2)?, &f2).re;
    Ok((qa + qb).max(0.0).sqrt())
}

/// All nine node norms of `f`, in `NODES` order.
pub fn lattice_norms(g: &MetricOp, f: &CVec) -> Result<Vec<(LatticeNode, f64)>> {
    NODES
        .iter()
        .map(|&node| Ok((node, node_norm(g, node, f)?)))
        .collect()
}

/// The R_G norm ‖(I+G)^{1/2}f‖ — the canonical norm of H(R_G), equal (not
/// just equivalent) to the graph norm of G^{1/2}:
/// rg_norm(f)² = ‖f‖² + ‖G^{1/2}f‖².
pub fn rg_norm(g: &MetricOp, f: &CVec) -> Result<f64> {
    quadratic_norm(g, &LatticeNode::GraphG.weight_symbol(), f)
}

/// The dual norm of H(R_G): ‖(I+G)^{-1/2}f‖, the canonical norm of
/// H(R_G⁻¹) = H ∨ H(G⁻¹). The coincidence of this operator norm with the
/// inductive norm of the sum is the conjugate-duality statement of the
/// lattice.
pub fn rg_dual_norm(g: &MetricOp, f: &CVec) -> Result<f64> {
    quadratic_norm(g, &LatticeNode::CoGraphG.weight_symbol(), f)
}

/// One verified lattice embedding.
#[derive(Clone, Copy, Debug)]
pub struct EdgeCheck {
    /// Source node (smaller space, stronger norm).
    pub from: LatticeNode,
    /// Target node.
    pub to: LatticeNode,
    /// Embedding constant sup over the spectrum of √(W_to/W_from).
    pub constant: f64,
    /// Largest observed ‖f‖_to / ‖f‖_from over the probes.
    pub max_probe_ratio: f64,
    /// Whether every probe satisfied the inequality within roundoff slack.
    pub holds: bool,
}

/// Verify all twelve lattice embeddings on the given probes.
pub fn lattice_edges(g: &MetricOp, probes: &[CVec]) -> Result<Vec<EdgeCheck>> {
    let mut checks = Vec::with_capacity(EDGES.len());
    for &(from, to) in &EDGES {
        let constant = g
            .op()
            .eigenvalues()
            .iter()
            .map(|&l| (to.weight(l) / from.weight(l)).sqrt())
            .fold(0.0f64, f64::max);
        let mut max_probe_ratio = 0.0f64;
        for f in probes {
            let source = node_norm(g, from, f)?;
            if source == 0.0 {
                continue;
            }
            let target = node_norm(g, to, f)?;
            max_probe_ratio = max_probe_ratio.max(target / source);
        }
        let holds = max_probe_ratio <= constant * (1.0 + 1e-9) + 1e-12;
        checks.push(EdgeCheck {
            from,
            to,
            constant,
            max_probe_ratio,
            holds,
        });
    }
    Ok(checks)
}

/// Which evaluator a scale space uses for its norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScaleNormVariant {
    /// ‖f‖_α = ‖G^{α/2}f‖ — canonical when G ≥ 1.
    Power,
    /// ‖f‖_α² = ‖f‖² + ‖G^{α/2}f‖² — the graph variant, used when G ≱ 1.
    Graph,
}

/// One space H_α of the Hilbert scale of a metric operator, with its norm
/// evaluator fixed at construction (and recorded, for deterministic
/// reports): the power norm when G ≥ 1, the graph variant otherwise.
#[derive(Clone, Debug)]
pub struct ScaleSpace {
    base: MetricOp,
    alpha: f64,
    variant: ScaleNormVariant,
}

impl ScaleSpace {
    /// Build H_α over the metric operator `base`.
    pub fn new(base: MetricOp, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::HypothesisViolated {
                reason: format!("scale exponent alpha = {alpha} must be finite"),
            });
        }
        let variant = if base.op().lambda_min() >= 1.0 - 1e-12 {
            ScaleNormVariant::Power
        } else {
            ScaleNormVariant::Graph
        };
        Ok(Self {
            base,
            alpha,
            variant,
        })
    }

    /// The scale exponent.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Which evaluator this space uses.
    pub fn variant(&self) -> ScaleNormVariant {
        self.variant
    }

    /// The underlying metric operator.
    pub fn base(&self) -> &MetricOp {
        &self.base
    }

    /// The canonical norm of this space.
    pub fn norm(&self, f: &CVec) -> Result<f64> {
        let powered = self.power_norm(f)?;
        match self.variant {
            ScaleNormVariant::Power => Ok(powered),
            ScaleNormVariant::Graph => Ok((f.norm_squared() + powered * powered).sqrt()),
        }
    }

    /// The power-convention norm ‖G^{α/2}f‖ regardless of variant; the
    /// scale unitarity statements are exact in this convention.
    pub fn power_norm(&self, f: &CVec) -> Result<f64> {
        Ok(self.base.op().pow(self.alpha / 2.0)?.apply(f)?.norm())
    }
}

/// Verify that G^{(n_from − n_to)/2} maps H_{n_from} isometrically onto
/// H_{n_to} in the power-norm convention (‖f‖_n = ‖G^{n/2}f‖): returns the
/// max relative residual |‖G^{(nf−nt)/2}f‖_{nt} − ‖f‖_{nf}| / ‖f‖_{nf} over
/// a standard probe set. With n_to = n_from − 1 this is the unitarity of
/// G^{1/2} one rung down the scale; with n_to = n_from − 2, that of G.
pub fn scale_unitarity(g: &MetricOp, n_from: i32, n_to: i32) -> Result<f64> {
    let shift = g.op().pow(f64::from(n_from - n_to) / 2.0)?;
    let from_norm = g.op().pow(f64::from(n_from) / 2.0)?;
    let to_norm = g.op().pow(f64::from(n_to) / 2.0)?;
    let probes = ProbeSet::standard(g.dim(), tol::DEFAULT_SEED);
    let mut residual = 0.0f64;
    for f in probes.vectors() {
        let reference = from_norm.apply(f)?.norm();
        if reference == 0.0 {
            continue;
        }
        let mapped = to_norm.apply(&shift.apply(f)?)?.norm();
        residual = residual.max((mapped - reference).abs() / reference);
    }
    Ok(residual)
}

/// Build the canonical metric pair of a closed operator S:
/// G₁ = I + S*S (unbounded side: spectrum ≥ 1, certified) and
/// G₂ = G₁⁻¹ (bounded side: spectral norm ≤ 1, certified).
pub fn build_metric_from_closed(s: &CMat) -> Result<(MetricOp, MetricOp)> {
    if s.nrows() != s.ncols() {
        return Err(Error::NotSquare {
            rows: s.nrows(),
            cols: s.ncols(),
        });
    }
    let n = s.nrows();
    let product = s.adjoint() * s;
    let raw = CMat::identity(n, n) + &product;
    let sym = (&raw + raw.adjoint()) * Complex64::new(0.5, 0.0);
    let g1 = MetricOp::from_matrix(sym)?;
    if g1.op().lambda_min() < 1.0 - 1e-12 {
        return Err(Error::BackendInvariant {
            what: "I + S*S must have spectrum bounded below by 1",
            residual: 1.0 - g1.op().lambda_min(),
        });
    }
    let g2 = g1.inverse()?;
    if g2.op().lambda_max() > 1.0 + 1e-12 {
        return Err(Error::BackendInvariant {
            what: "(I + S*S)^{-1} must be a norm-contraction",
            residual: g2.op().lambda_max() - 1.0,
        });
    }
    Ok((g1, g2))
}

/// Outcome of a bounded-intertwining similarity check.
#[derive(Clone, Debug)]
pub struct SimilarityReport {
    /// ‖BT − TA‖_F normalized by ‖A‖_F·‖T‖.
    pub residual: f64,
    /// Whether the intertwining residual is below tolerance.
    pub similar: bool,
    /// When similar: max distance of sorted spectra of A and B.
    pub spectrum_deviation: Option<f64>,
    /// When similar: whether the spectra agree as multisets within
    /// tolerance.
    pub spectra_match: Option<bool>,
}

/// Check whether the metric operator T intertwines A and B (BT = TA). Since
/// T is strictly positive — bounded with bounded inverse at finite
/// dimension — a passing check certifies similarity, and the spectra of A
/// and B are then compared as multisets (sorted by real part, then
/// imaginary part).
pub fn similarity_check(a: &CMat, b: &CMat, t: &MetricOp) -> Result<SimilarityReport> {
    for m in [a, b] {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() != t.dim() {
            return Err(Error::DimensionMismatch {
                expected: t.dim(),
                found: m.nrows(),
            });
        }
    }
    let bt = b * t.op().matrix();
    let ta = t.op().matrix() * a;
    let scale = a.norm().max(f64::MIN_POSITIVE) * t.op().lambda_max();
    let residual = (bt - ta).norm() / scale;
    let similar = residual <= tol::SIMILARITY;
    if !similar {
        return Ok(SimilarityReport {
            residual,
            similar,
            spectrum_deviation: None,
            spectra_match: None,
        });
    }
    let spec_a = sorted_spectrum(a)?;
    let spec_b = sorted_spectrum(b)?;
    let mut deviation = 0.0f64;
    let mut magnitude = 1.0f64;
    for (la, lb) in spec_a.iter().zip(&spec_b) {
        deviation = deviation.max((la - lb).norm());
        magnitude = magnitude.max(la.norm());
    }
    Ok(SimilarityReport {
        residual,
        similar,
        spectrum_deviation: Some(deviation),
        spectra_match: Some(deviation <= tol::SPECTRUM_MATCH * magnitude),
    })
}

fn sorted_spectrum(m: &CMat) -> Result<Vec<Complex64>> {
    let schur = m.clone().try_schur(1e-12, 100_000).ok_or(Error::BackendInvariant {
        what: "Schur iteration failed to converge for a spectrum comparison",
        residual: f64::NAN,
    })?;
    let (_, triangular) = schur.unpack();
    let mut values: Vec<Complex64> = triangular.diagonal().iter().copied().collect();
    values.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(values)
}

/// Bounded-with-bounded-inverse collapse: all nine node norms are pairwise
/// equivalent, with every ratio bounded by (1 + κ)² where κ bounds both
/// ‖G‖ and ‖G⁻¹‖.
#[derive(Clone, Copy, Debug)]
pub struct CollapseCheck {
    /// max(‖G‖, ‖G⁻¹‖).
    pub kappa: f64,
    /// The claimed uniform bound (1 + κ)².
    pub bound: f64,
    /// Largest pairwise node-norm ratio observed on the probes.
    pub max_ratio: f64,
    /// Whether the bound held for every ordered pair on every probe.
    pub holds: bool,
}

/// Check the nine-norm collapse for a bounded metric operator with bounded
/// inverse on the given probes (all 72 ordered node pairs).
pub fn collapse_check(g: &MetricOp, probes: &[CVec]) -> Result<CollapseCheck> {
    let kappa = g.op().lambda_max().max(1.0 / g.op().lambda_min());
    let bound = (1.0 + kappa).powi(2);
    let mut max_ratio = 0.0f64;
    for f in probes {
        let norms = lattice_norms(g, f)?;
        for (_, na) in &norms {
            for (_, nb) in &norms {
                if *na > 0.0 {
                    max_ratio = max_ratio.max(nb / na);
                }
            }
        }
    }
    Ok(CollapseCheck {
        kappa,
        bound,
        max_ratio,
        holds: max_ratio <= bound * (1.0 + 1e-9),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe;
    use nalgebra::DVector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(dim: usize, i: usize) -> CVec {
        let mut v = CVec::zeros(dim);
        v[i] = Complex64::new(1.0, 0.0);
        v
    }

    fn random_metric(dim: usize, lo: f64, hi: f64, rng: &mut ChaCha8Rng) -> MetricOp {
        MetricOp::from_matrix(probe::random_positive_definite(dim, lo, hi, rng))
            .expect("random positive definite matrix is a metric operator")
    }

    #[test]
    fn metric_requires_strict_positivity() {
        assert!(matches!(
            MetricOp::from_diagonal(&[1.0, 0.0]),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(MetricOp::from_diagonal(&[2.0, 0.5]).is_ok());
    }

    #[test]
    fn metric_quadratic_form_is_strictly_positive_on_probes() {
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED);
        let g = random_metric(5, 1e-3, 1e3, &mut rng);
        for f in ProbeSet::standard(5, tol::DEFAULT_SEED).vectors() {
            if f.norm() == 0.0 {
                continue;
            }
            let form = inner(&g.op().apply(f).unwrap(), f).re;
            assert!(form > 0.0, "quadratic form must be strictly positive");
        }
    }

    #[test]
    fn rg_norm_identity_and_diagonal_cases() {
        let g = MetricOp::from_diagonal(&[1.0, 1.0]).unwrap();
        let f = DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)]);
        let rg = rg_norm(&g, &f).unwrap();
        assert!((rg * rg - 2.0 * f.norm_squared()).abs() <= 1e-12);

        let g = MetricOp::from_diagonal(&[3.0, 8.0]).unwrap();
        let rg = rg_norm(&g, &e(2, 0)).unwrap();
        assert!((rg * rg - 4.0).abs() <= 1e-12);
    }

    #[test]
    fn rg_norm_equals_graph_norm_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED ^ 10);
        let g = random_metric(6, 1e-2, 1e2, &mut rng);
        let half = g.op().pow(0.5).unwrap();
        for f in ProbeSet::standard(6, tol::DEFAULT_SEED).vectors() {
            let rg = rg_norm(&g, f).unwrap();
            let graph = f.norm_squared() + half.apply(f).unwrap().norm_squared();
            assert!(
                (rg * rg - graph).abs() <= tol::LATTICE_EXACT * graph.max(1.0),
                "rg² = {} vs graph = {graph}",
                rg * rg
            );
        }
    }

    #[test]
    fn identity_metric_collapses_to_fixed_constants() {
        let g = MetricOp::from_diagonal(&[1.0; 3]).unwrap();
        let f = probe::random_unit(3, &mut ChaCha8Rng::seed_from_u64(7));
        let norms = lattice_norms(&g, &f).unwrap();
        let expected = |node: LatticeNode| match node {
            LatticeNode::Meet | LatticeNode::GraphG | LatticeNode::GraphGInv => 2f64.sqrt(),
            LatticeNode::DomainG | LatticeNode::Ambient | LatticeNode::DomainGInv => 1.0,
            _ => 0.5f64.sqrt(),
        };
        for (node, value) in norms {
            let want = expected(node) * f.norm();
            assert!(
                (value - want).abs() <= 1e-12,
                "{}: {value} vs {want}",
                node.label()
            );
        }
    }

    #[test]
    fn diagonal_lattice_norms_match_hand_values() {
        let g = MetricOp::from_diagonal(&[4.0, 0.25]).unwrap();
        let f = e(2, 0);
        assert!((node_norm(&g, LatticeNode::DomainG, &f).unwrap() - 2.0).abs() <= 1e-12);
        assert!((node_norm(&g, LatticeNode::DomainGInv, &f).unwrap() - 0.5).abs() <= 1e-12);
        let meet = node_norm(&g, LatticeNode::Meet, &f).unwrap();
        assert!((meet * meet - 4.25).abs() <= 1e-12);
        let join = node_norm(&g, LatticeNode::Join, &f).unwrap();
        assert!((join * join - 1.0 / 4.25).abs() <= 1e-12);
    }

    #[test]
    fn join_splitting_matches_spectral_weight() {
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED ^ 11);
        let g = random_metric(5, 1e-2, 1e2, &mut rng);
        let weight_root = g
            .op()
            .fn_calculus(&SpectralFn::new("join weight root", |t| {
                (1.0 / (t + 1.0 / t)).sqrt()
            }))
            .unwrap();
        for f in ProbeSet::standard(5, tol::DEFAULT_SEED).vectors() {
            let solved = node_norm(&g, LatticeNode::Join, f).unwrap();
            let spectral = weight_root.apply(f).unwrap().norm();
            assert!(
                (solved - spectral).abs() <= tol::LATTICE_EXACT * spectral.max(1.0),
                "solver {solved} vs spectral {spectral}"
            );
        }
    }

    #[test]
    fn conjugate_duality_of_rg_spaces() {
        // The inductive norm of H + H(G⁻¹) equals the operator norm
        // ‖(I+G)^{-1/2}f‖ — the duality of H(R_G) and H(R_G⁻¹).
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED ^ 12);
        let g = random_metric(6, 1e-2, 1e2, &mut rng);
        let one = SpectralFn::constant(1.0);
        let inv = SpectralFn::new("1/t", |t| 1.0 / t);
        for f in ProbeSet::standard(6, tol::DEFAULT_SEED).vectors() {
            let inductive = inductive_norm(&g, &one, &inv, f).unwrap();
            let dual = rg_dual_norm(&g, f).unwrap();
            assert!(
                (inductive - dual).abs() <= tol::LATTICE_EXACT * dual.max(1.0),
                "inductive {inductive} vs dual {dual}"
            );
        }
    }

    #[test]
    fn all_twelve_edges_hold_on_probes() {
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED ^ 13);
        let g = random_metric(6, 1e-3, 1e3, &mut rng);
        let probes = ProbeSet::standard(6, tol::DEFAULT_SEED);
        let checks = lattice_edges(&g, probes.vectors()).unwrap();
        assert_eq!(checks.len(), 12);
        for check in checks {
            assert!(check.constant.is_finite());
            assert!(
                check.holds,
                "edge {} -> {}: ratio {} vs constant {}",
                check.from.label(),
                check.to.label(),
                check.max_probe_ratio,
                check.constant
            );
        }
    }

    #[test]
    fn scale_unitarity_is_exact_in_power_convention() {
        let g = MetricOp::from_diagonal(&[2.0, 5.0]).unwrap();
        assert!(scale_unitarity(&g, 1, 0).unwrap() <= 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED ^ 14);
        let g = random_metric(5, 1.0, 50.0, &mut rng);
        for n_from in -2..=2 {
            for n_to in -2..=2 {
                assert!(
                    scale_unitarity(&g, n_from, n_to).unwrap() <= 1e-10,
                    "scale map {n_from} -> {n_to}"
                );
            }
        }
    }

    #[test]
    fn scale_nesting_for_operator_above_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED ^ 15);
        let g = random_metric(5, 1.0, 30.0, &mut rng);
        let alphas = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0];
        let spaces: Vec<ScaleSpace> = alphas
            .iter()
            .map(|&a| ScaleSpace::new(g.clone(), a).unwrap())
            .collect();
        for space in &spaces {
            assert_eq!(space.variant(), ScaleNormVariant::Power);
        }
        for f in ProbeSet::standard(5, tol::DEFAULT_SEED).vectors() {
            let norms: Vec<f64> = spaces.iter().map(|s| s.norm(f).unwrap()).collect();
            for w in norms.windows(2) {
                assert!(w[0] <= w[1] * (1.0 + 1e-12), "scale nesting violated");
            }
        }
    }

    #[test]
    fn scale_variant_records_regime() {
        let above = MetricOp::from_diagonal(&[1.0, 4.0]).unwrap();
        assert_eq!(
            ScaleSpace::new(above, 1.0).unwrap().variant(),
            ScaleNormVariant::Power
        );
        let below = MetricOp::from_diagonal(&[0.5, 4.0]).unwrap();
        let space = ScaleSpace::new(below, 1.0).unwrap();
        assert_eq!(space.variant(), ScaleNormVariant::Graph);
        let f = e(2, 0);
        let norm = space.norm(&f).unwrap();
        assert!((norm * norm - 1.5).abs() <= 1e-12);
    }

    #[test]
    fn metric_pair_from_closed_operator() {
        let zero = CMat::zeros(3, 3);
        let (g1, g2) = build_metric_from_closed(&zero).unwrap();
        let identity = SymOp::identity(3);
        assert!(crate::hilbert::rel_frobenius_distance(g1.op().matrix(), identity.matrix()) <= 1e-14);
        assert!(crate::hilbert::rel_frobenius_distance(g2.op().matrix(), identity.matrix()) <= 1e-14);

        let s = CMat::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
        ]));
        let (g1, g2) = build_metric_from_closed(&s).unwrap();
        assert!((g1.op().eigenvalues()[0] - 2.0).abs() <= 1e-12);
        assert!((g1.op().eigenvalues()[1] - 5.0).abs() <= 1e-12);
        assert!((g2.op().eigenvalues()[0] - 0.2).abs() <= 1e-12);
        assert!((g2.op().eigenvalues()[1] - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn metric_pair_random_certificates_and_triplet() {
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED ^ 16);
        let s = probe::random_matrix(5, &mut rng);
        let (g1, g2) = build_metric_from_closed(&s).unwrap();
        assert!(g1.op().lambda_min() >= 1.0 - 1e-12);
        assert!(g2.op().lambda_max() <= 1.0 + 1e-12);
        for f in ProbeSet::standard(5, tol::DEFAULT_SEED).vectors() {
            // Inverse-pair residual.
            let g1f = g1.op().apply(f).unwrap();
            let back = g2.op().apply(&g1f).unwrap();
            assert!((back - f).norm() <= 1e-10 * (1.0 + g1f.norm()));
            // Triplet H(G₁) ⊂ H ⊂ H(G₁⁻¹): norms decrease left to right.
            let upper = node_norm(&g1, LatticeNode::DomainG, f).unwrap();
            let mid = f.norm();
            let lower = node_norm(&g1, LatticeNode::DomainGInv, f).unwrap();
            assert!(mid <= upper * (1.0 + 1e-12));
            assert!(lower <= mid * (1.0 + 1e-12));
        }
    }

    #[test]
    fn similarity_trivial_and_diagonal_cases() {
        let a = CMat::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
        ]));
        let t = MetricOp::from_diagonal(&[1.0, 1.0]).unwrap();
        let report = similarity_check(&a, &a, &t).unwrap();
        assert!(report.similar);
        assert!(report.residual <= 1e-15);
        assert_eq!(report.spectra_match, Some(true));

        // Commuting diagonal conjugation leaves A unchanged.
        let t = MetricOp::from_diagonal(&[1.0, 3.0]).unwrap();
        let report = similarity_check(&a, &a, &t).unwrap();
        assert!(report.similar);
        assert_eq!(report.spectra_match, Some(true));
    }

    #[test]
    fn similarity_detects_constructed_conjugation_and_rejects_mismatch() {
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED ^ 17);
        let a = probe::random_matrix(5, &mut rng);
        let t = random_metric(5, 0.5, 2.0, &mut rng);
        let t_inv = t.op().pow(-1.0).unwrap();
        let b = t.op().matrix() * &a * t_inv.matrix();
        let report = similarity_check(&a, &b, &t).unwrap();
        assert!(report.similar, "residual = {}", report.residual);
        assert_eq!(report.spectra_match, Some(true));
        assert!(report.spectrum_deviation.unwrap() <= tol::SPECTRUM_MATCH);

        let mut skew = b.clone();
        skew[(0, 0)] += Complex64::new(0.5, 0.0);
        let report = similarity_check(&a, &skew, &t).unwrap();
        assert!(!report.similar);
        assert_eq!(report.spectra_match, None);
    }

    #[test]
    fn bounded_collapse_respects_kappa_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(tol::DEFAULT_SEED ^ 18);
        let s = probe::random_matrix(4, &mut rng);
        let (g1, _) = build_metric_from_closed(&s).unwrap();
        let probes = ProbeSet::standard(4, tol::DEFAULT_SEED);
        let check = collapse_check(&g1, probes.vectors()).unwrap();
        assert!(check.holds, "ratio {} vs bound {}", check.max_ratio, check.bound);
        assert!(check.max_ratio.is_finite());
    }
}
