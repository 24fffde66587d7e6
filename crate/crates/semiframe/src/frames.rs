//! Discretized weakly measurable vector families and their frame theory.
//!
//! A family is a finite list of vectors `φ_i ∈ C^d` attached to a measure
//! grid with positive quadrature weights `w_i`, standing in for a
//! weakly measurable map `x ↦ φ_x` over `(X, μ)`. The quadrature form
//! `Σ_i w_i |⟨f, φ_i⟩|²` replaces the integral `∫_X |⟨f, φ_x⟩|² dμ`.
//!
//! Frame bounds at a fixed truncation are the extreme eigenvalues of the
//! frame operator; the semi-frame verdicts — which are statements about
//! limits, not about any single truncation — come from bound trajectories
//! across a refinement scan, using the documented divergence/decay gates
//! in [`crate::tol`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{inner, CMat, CVec, SymOp};
use crate::probe::ProbeSet;
use crate::tol;

/// Discretized measure space: opaque point labels plus positive
/// quadrature weights.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureGrid {
    points: Vec<String>,
    weights: Vec<f64>,
}

impl MeasureGrid {
    /// Build from labels and weights of equal length; weights must be
    /// strictly positive.
    pub fn new(points: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                found: weights.len(),
            });
        }
        for (index, &weight) in weights.iter().enumerate() {
            if !weight.is_finite() || weight <= 0.0 {
                return Err(Error::NonpositiveWeight { index, weight });
            }
        }
        Ok(Self { points, weights })
    }

    /// Grid of `count` points labeled by index, all with the same weight.
    pub fn uniform(count: usize, weight: f64) -> Result<Self> {
        Self::new(
            (0..count).map(|i| i.to_string()).collect(),
            vec![weight; count],
        )
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Whether the grid has no points.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Point labels.
    pub fn points(&self) -> &[String] {
        &self.points
    }

    /// Quadrature weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn same_as(&self, other: &MeasureGrid) -> bool {
        self.weights == other.weights
    }
}

/// A discretized vector family: one ambient vector per grid point, plus an
/// optional declared domain (a spanning set emulating a non-dense domain
/// of the analysis map at this truncation).
#[derive(Clone, Debug)]
pub struct VectorFamily {
    grid: MeasureGrid,
    vectors: Vec<CVec>,
    dim: usize,
    domain: Option<Vec<CVec>>,
}

impl VectorFamily {
    /// Build from a grid and matching vectors (all of one dimension ≥ 1).
    pub fn new(grid: MeasureGrid, vectors: Vec<CVec>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if vectors.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: vectors.len(),
            });
        }
        let dim = vectors[0].len();
        if dim == 0 {
            return Err(Error::EmptyFamily);
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
        }
        Ok(Self {
            grid,
            vectors,
            dim,
            domain: None,
        })
    }

    /// Attach a declared domain spanning set (vectors in the same ambient
    /// space).
    pub fn with_domain(mut self, domain: Vec<CVec>) -> Result<Self> {
        for v in &domain {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        self.domain = Some(domain);
        Ok(self)
    }

    /// The measure grid.
    pub fn grid(&self) -> &MeasureGrid {
        &self.grid
    }

    /// The family vectors.
    pub fn vectors(&self) -> &[CVec] {
        &self.vectors
    }

    /// Number of family members.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    /// Whether the family is empty (never true for a constructed value).
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Declared domain spanning set, if any.
    pub fn domain(&self) -> Option<&[CVec]> {
        self.domain.as_deref()
    }

    /// The same family with every vector multiplied by a positive scalar.
    pub fn scaled(&self, c: f64) -> VectorFamily {
        let factor = Complex64::new(c, 0.0);
        VectorFamily {
            grid: self.grid.clone(),
            vectors: self.vectors.iter().map(|v| v * factor).collect(),
            dim: self.dim,
            domain: self.domain.clone(),
        }
    }
}

/// The analysis operator as a (grid size) × dim matrix whose row i is
/// √w_i · conj(φ_i), so that `(matrix · f)_i = √w_i ⟨f, φ_i⟩` and
/// ‖matrix·f‖² = Σ_i w_i |⟨f, φ_i⟩|².
#[derive(Clone, Debug)]
pub struct AnalysisOp {
    matrix: CMat,
    sqrt_weights: Vec<f64>,
    dim: usize,
}

impl AnalysisOp {
    /// The underlying matrix.
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// Ambient dimension (number of columns).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of grid points (number of rows).
    pub fn grid_len(&self) -> usize {
        self.matrix.nrows()
    }

    /// Weighted coefficient vector (√w_i ⟨f, φ_i⟩)_i.
    pub fn apply(&self, f: &CVec) -> Result<CVec> {
        if f.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: f.len(),
            });
        }
        Ok(&self.matrix * f)
    }

    /// Coefficient energy Σ_i w_i |⟨f, φ_i⟩|² = ‖C f‖².
    pub fn energy(&self, f: &CVec) -> Result<f64> {
        Ok(self.apply(f)?.norm_squared())
    }
}

/// Build the analysis operator of a family.
pub fn analysis(family: &VectorFamily) -> Result<AnalysisOp> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = family.len();
    let d = family.dim();
    let sqrt_weights: Vec<f64> = family.grid().weights().iter().map(|w| w.sqrt()).collect();
    let mut matrix = CMat::zeros(n, d);
    for (i, phi) in family.vectors().iter().enumerate() {
        let s = Complex64::new(sqrt_weights[i], 0.0);
        for j in 0..d {
            matrix[(i, j)] = s * phi[j].conj();
        }
    }
    Ok(AnalysisOp {
        matrix,
        sqrt_weights,
        dim: d,
    })
}

/// Synthesis (weak-sense reconstruction): Σ_i w_i · coeff_i · φ_i, i.e.
/// the adjoint of analysis applied to the √w-scaled coefficients.
pub fn synthesis(analysis: &AnalysisOp, coeff: &CVec) -> Result<CVec> {
    if coeff.len() != analysis.grid_len() {
        return Err(Error::DimensionMismatch {
            expected: analysis.grid_len(),
            found: coeff.len(),
        });
    }
    let scaled = CVec::from_fn(coeff.len(), |i, _| {
        coeff[i] * Complex64::new(analysis.sqrt_weights[i], 0.0)
    });
    Ok(analysis.matrix.adjoint() * scaled)
}

/// Frame operator S_φ = C*C = Σ_i w_i φ_i φ_i* (rank-one sum form).
pub fn frame_operator(family: &VectorFamily) -> Result<SymOp> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let d = family.dim();
    let mut s = CMat::zeros(d, d);
    for (i, phi) in family.vectors().iter().enumerate() {
        let w = Complex64::new(family.grid().weights()[i], 0.0);
        s += phi * phi.adjoint() * w;
    }
    SymOp::new(s)
}

/// Cross frame operator S_{ψ,φ} = Σ_i w_i ψ_i φ_i* (so that
/// S_{ψ,φ} f = Σ_i w_i ⟨f, φ_i⟩ ψ_i).
pub fn cross_frame_operator(psi: &VectorFamily, phi: &VectorFamily) -> Result<CMat> {
    if !psi.grid().same_as(phi.grid()) {
        return Err(Error::GridMismatch);
    }
    if psi.dim() != phi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found: psi.dim(),
        });
    }
    let d = phi.dim();
    let mut s = CMat::zeros(d, d);
    for i in 0..phi.len() {
        let w = Complex64::new(phi.grid().weights()[i], 0.0);
        s += &psi.vectors()[i] * phi.vectors()[i].adjoint() * w;
    }
    Ok(s)
}

/// Optimal frame bounds at one truncation: the extreme eigenvalues of the
/// frame operator, with the eigenvectors that attain them.
#[derive(Clone, Debug)]
pub struct FrameBounds {
    /// Best lower bound m = λ_min(S_φ), clamped at 0.
    pub lower: f64,
    /// Best upper bound M = λ_max(S_φ).
    pub upper: f64,
    /// Unit vector attaining the lower Rayleigh extreme.
    pub attained_low: CVec,
    /// Unit vector attaining the upper Rayleigh extreme.
    pub attained_high: CVec,
    /// Set by truncation scans when the upper trajectory diverges; always
    /// false for a single-level computation.
    pub diverging: bool,
}

/// Compute optimal frame bounds of a family at this truncation.
pub fn frame_bounds(family: &VectorFamily) -> Result<FrameBounds> {
    let s = frame_operator(family)?;
    Ok(bounds_from_operator(&s))
}

pub(crate) fn bounds_from_operator(s: &SymOp) -> FrameBounds {
    let n = s.dim();
    FrameBounds {
        lower: s.lambda_min().max(0.0),
        upper: s.lambda_max(),
        attained_low: s.eigenvectors().column(0).into_owned(),
        attained_high: s.eigenvectors().column(n - 1).into_owned(),
        diverging: false,
    }
}

/// One refinement level of a truncation scan: the refinement parameter
/// (grid size, truncation dimension, maximal degree, …) and the family
/// built at that level.
#[derive(Clone, Debug)]
pub struct ScanLevel {
    /// Refinement parameter; must be positive and strictly increasing
    /// across the scan.
    pub param: f64,
    /// The family at this truncation.
    pub family: VectorFamily,
}

/// A validated sequence of refinement levels.
#[derive(Clone, Debug)]
pub struct TruncationScan {
    levels: Vec<ScanLevel>,
}

impl TruncationScan {
    /// Validate strictly increasing positive refinement parameters.
    pub fn new(levels: Vec<ScanLevel>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InconsistentScan {
                reason: "scan has no levels".into(),
            });
        }
        for level in &levels {
            if !level.param.is_finite() || level.param <= 0.0 {
                return Err(Error::InconsistentScan {
                    reason: format!("refinement parameter {} is not positive", level.param),
                });
            }
        }
        for pair in levels.windows(2) {
            if pair[1].param <= pair[0].param {
                return Err(Error::InconsistentScan {
                    reason: format!(
                        "refinement parameters not strictly increasing: {} then {}",
                        pair[0].param, pair[1].param
                    ),
                });
            }
        }
        Ok(Self { levels })
    }

    /// The levels, coarse to fine.
    pub fn levels(&self) -> &[ScanLevel] {
        &self.levels
    }

    /// The finest level.
    pub fn finest(&self) -> &ScanLevel {
        self.levels.last().expect("scan is never empty")
    }
}

/// Classification verdicts for a family, possibly informed by a scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Positive lower and finite upper bound, stable across the scan.
    Frame,
    /// Frame with both bounds equal to 1.
    ParsevalFrame,
    /// Bounded above but not total: a Bessel family that spans a proper
    /// subspace.
    BesselOnly,
    /// Total with bounded upper bounds but lower bounds decaying to zero.
    UpperSemiFrame,
    /// Positive, stable lower bounds with diverging upper bounds.
    ProperLowerSemiFrame,
    /// Not total (numerically nontrivial null space), and not Bessel
    /// either when a scan shows the upper bound diverging.
    NotTotal,
    /// Diverging above and decaying below: none of the regimes.
    None,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Verdict::Frame => "Frame",
            Verdict::ParsevalFrame => "ParsevalFrame",
            Verdict::BesselOnly => "BesselOnly",
            Verdict::UpperSemiFrame => "UpperSemiFrame",
            Verdict::ProperLowerSemiFrame => "ProperLowerSemiFrame",
            Verdict::NotTotal => "NotTotal",
            Verdict::None => "None",
        };
        write!(f, "{name}")
    }
}

/// Frame bounds of one scan level, for evidence trails.
#[derive(Clone, Debug)]
pub struct LevelBounds {
    /// Refinement parameter of the level.
    pub param: f64,
    /// λ_min of the level's frame operator (clamped at 0).
    pub lower: f64,
    /// λ_max of the level's frame operator.
    pub upper: f64,
}

/// Structured evidence backing a classification verdict.
#[derive(Clone, Debug)]
pub struct Evidence {
    /// Bounds at every level examined (single entry without a scan).
    pub levels: Vec<LevelBounds>,
    /// Totality at the finest truncation (λ_min above the null threshold).
    pub total: bool,
    /// Null-space witness when not total.
    pub null_witness: Option<CVec>,
    /// Log–log regression slope of λ_max against the refinement parameter.
    pub upper_slope: Option<f64>,
    /// Log–log regression slope of λ_min against the refinement parameter.
    pub lower_slope: Option<f64>,
    /// Whether the divergence gate fired for the upper bounds.
    pub upper_diverging: bool,
    /// Whether the decay gate fired for the lower bounds.
    pub lower_decaying: bool,
    /// Human-readable notes on which gates were evaluated and why.
    pub notes: Vec<String>,
}

/// A verdict plus the evidence that produced it.
#[derive(Clone, Debug)]
pub struct Classification {
    /// The verdict.
    pub verdict: Verdict,
    /// Evidence trail.
    pub evidence: Evidence,
}

/// Classify a family, optionally across a truncation scan.
///
/// Without a scan only the verdicts decidable at one truncation are
/// available: `NotTotal`, `ParsevalFrame`, or `Frame`. With a scan, the
/// finest level must agree with `family` in dimension and size; totality
/// is judged at the finest level and the semi-frame verdicts come from
/// the bound trajectories.
pub fn classify(family: &VectorFamily, scan: Option<&TruncationScan>) -> Result<Classification> {
    match scan {
        None => classify_single(family),
        Some(scan) => {
            let finest = scan.finest();
            if finest.family.dim() != family.dim() || finest.family.len() != family.len() {
                return Err(Error::InconsistentScan {
                    reason: format!(
                        "finest scan level ({} vectors in dim {}) does not match the family \
                         ({} vectors in dim {})",
                        finest.family.len(),
                        finest.family.dim(),
                        family.len(),
                        family.dim()
                    ),
                });
            }
            classify_scan(scan)
        }
    }
}

fn classify_single(family: &VectorFamily) -> Result<Classification> {
    let s = frame_operator(family)?;
    let bounds = bounds_from_operator(&s);
    let total = s.lambda_min() > s.null_threshold();
    let level = LevelBounds {
        param: family.dim() as f64,
        lower: bounds.lower,
        upper: bounds.upper,
    };
    let mut evidence = Evidence {
        levels: vec![level],
        total,
        null_witness: None,
        upper_slope: None,
        lower_slope: None,
        upper_diverging: false,
        lower_decaying: false,
        notes: vec!["single truncation: trend verdicts unavailable".into()],
    };
    let verdict = if !total {
        evidence.null_witness = Some(bounds.attained_low.clone());
        Verdict::NotTotal
    } else if (bounds.lower - 1.0).abs() <= tol::PARSEVAL && (bounds.upper - 1.0).abs() <= tol::PARSEVAL
    {
        Verdict::ParsevalFrame
    } else {
        Verdict::Frame
    };
    Ok(Classification { verdict, evidence })
}

fn classify_scan(scan: &TruncationScan) -> Result<Classification> {
    let mut levels = Vec::with_capacity(scan.levels().len());
    let mut finest_bounds = None;
    let mut finest_total = false;
    let mut finest_witness = None;
    for level in scan.levels() {
        let s = frame_operator(&level.family)?;
        let bounds = bounds_from_operator(&s);
        if std::ptr::eq(level, scan.finest()) {
            finest_total = s.lambda_min() > s.null_threshold();
            finest_witness = Some(bounds.attained_low.clone());
        }
        levels.push(LevelBounds {
            param: level.param,
            lower: bounds.lower,
            upper: bounds.upper,
        });
        finest_bounds = Some(bounds);
    }
    let finest_bounds = finest_bounds.expect("scan is never empty");

    let params: Vec<f64> = levels.iter().map(|l| l.param).collect();
    let uppers: Vec<f64> = levels.iter().map(|l| l.upper).collect();
    let lowers: Vec<f64> = levels.iter().map(|l| l.lower).collect();

    let mut notes = Vec::new();
    let up = trend(&params, &uppers);
    let low = trend(&params, &lowers);
    if !up.enough_levels {
        notes.push(format!(
            "only {} levels (< {}): trend gates disabled",
            levels.len(),
            tol::TREND_MIN_LEVELS
        ));
    }

    let upper_slope = up.slope;
    let lower_slope = low.slope;
    let upper_diverging = up.diverging;
    let lower_decaying = low.decaying;
    if let Some(s) = upper_slope {
        notes.push(format!(
            "upper gate: slope {s:.3} (>= {} required), last/first ratio {:.3e} \
             (>= {} required) -> diverging = {upper_diverging}",
            tol::DIVERGENCE_SLOPE,
            up.growth,
            tol::DIVERGENCE_RATIO
        ));
    }
    if let Some(s) = lower_slope {
        notes.push(format!(
            "lower gate: slope {s:.3} (<= {} required), first/last ratio {:.3e} \
             (>= {} required) -> decaying = {lower_decaying}",
            tol::DECAY_SLOPE,
            low.shrink,
            tol::DECAY_RATIO
        ));
    }

    let parseval_everywhere = levels
        .iter()
        .all(|l| (l.lower - 1.0).abs() <= tol::PARSEVAL && (l.upper - 1.0).abs() <= tol::PARSEVAL);

    let mut evidence = Evidence {
        levels,
        total: finest_total,
        null_witness: None,
        upper_slope,
        lower_slope,
        upper_diverging,
        lower_decaying,
        notes,
    };

    let verdict = if !finest_total {
        evidence.null_witness = finest_witness;
        if upper_diverging {
            Verdict::NotTotal
        } else {
            evidence
                .notes
                .push("not total with bounded upper trajectory: Bessel only".into());
            Verdict::BesselOnly
        }
    } else if parseval_everywhere {
        Verdict::ParsevalFrame
    } else if upper_diverging && !lower_decaying {
        Verdict::ProperLowerSemiFrame
    } else if !upper_diverging && lower_decaying {
        Verdict::UpperSemiFrame
    } else if upper_diverging && lower_decaying {
        Verdict::None
    } else {
        let _ = &finest_bounds;
        Verdict::Frame
    };
    Ok(Classification { verdict, evidence })
}

/// Trend analysis of one positive trajectory across refinement levels,
/// shared by every trajectory judgment in the crate (frame bounds,
/// weighted transform bounds, dominance constants, range witnesses).
///
/// `diverging` and `decaying` apply the gates documented in [`tol`]:
/// both need at least [`tol::TREND_MIN_LEVELS`] levels, a log–log slope
/// beyond the slope threshold, and a total change beyond the ratio
/// threshold, so noise on a flat trajectory never fires them.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Trend {
    /// Log–log regression slope; None when degenerate.
    pub slope: Option<f64>,
    /// last/first value ratio (∞ when the first value is 0).
    pub growth: f64,
    /// first/last value ratio (∞ when the last value is 0).
    pub shrink: f64,
    /// Divergence gate: slope ≥ DIVERGENCE_SLOPE and growth ≥ DIVERGENCE_RATIO.
    pub diverging: bool,
    /// Decay gate: slope ≤ DECAY_SLOPE and shrink ≥ DECAY_RATIO.
    pub decaying: bool,
    /// Whether enough levels were available for the gates at all.
    pub enough_levels: bool,
}

pub(crate) fn trend(params: &[f64], values: &[f64]) -> Trend {
    let enough_levels = values.len() >= tol::TREND_MIN_LEVELS;
    let slope = loglog_slope(params, values);
    let growth = if values[0] > 0.0 {
        values[values.len() - 1] / values[0]
    } else {
        f64::INFINITY
    };
    let shrink = if values[values.len() - 1] > 0.0 {
        values[0] / values[values.len() - 1]
    } else {
        f64::INFINITY
    };
    let diverging = enough_levels
        && slope.is_some_and(|s| s >= tol::DIVERGENCE_SLOPE)
        && growth >= tol::DIVERGENCE_RATIO;
    let decaying = enough_levels
        && slope.is_some_and(|s| s <= tol::DECAY_SLOPE)
        && shrink >= tol::DECAY_RATIO;
    Trend {
        slope,
        growth,
        shrink,
        diverging,
        decaying,
        enough_levels,
    }
}

/// Least-squares slope of ln(y) against ln(x); None when degenerate.
fn loglog_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    // Clamp to a tiny floor so numerically zero bounds stay finite in logs.
    let lx: Vec<f64> = xs.iter().map(|&x| x.max(1e-300).ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|&y| y.max(1e-300).ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

/// Duality residual: max over probe pairs (f, g) of
/// |⟨f,g⟩ − Σ_i w_i ⟨f,φ_i⟩⟨ψ_i,g⟩| / (‖f‖‖g‖).
pub fn check_duality(phi: &VectorFamily, psi: &VectorFamily, probes: &ProbeSet) -> Result<f64> {
    let s_cross = cross_frame_operator(psi, phi)?;
    if probes.dim() != phi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found: probes.dim(),
        });
    }
    // ⟨f,g⟩ − Σ_i w_i⟨f,φ_i⟩⟨ψ_i,g⟩ = ⟨(I − S_{ψ,φ})f, g⟩.
    let d = phi.dim();
    let residual_op = CMat::identity(d, d) - s_cross;
    let mut worst: f64 = 0.0;
    let residual_images: Vec<CVec> = probes
        .vectors()
        .iter()
        .map(|f| &residual_op * f)
        .collect();
    for (f, rf) in probes.vectors().iter().zip(&residual_images) {
        let nf = f.norm();
        if nf == 0.0 {
            continue;
        }
        for g in probes.vectors() {
            let ng = g.norm();
            if ng == 0.0 {
                continue;
            }
            worst = worst.max(inner(rf, g).norm() / (nf * ng));
        }
    }
    Ok(worst)
}

/// Quadrature bound Σ_i w_i ‖φ_i‖‖ψ_i‖ dominating the operator norm of
/// the cross frame operator S_{ψ,φ}.
pub fn omega_bound(phi: &VectorFamily, psi: &VectorFamily) -> Result<f64> {
    if !phi.grid().same_as(psi.grid()) {
        return Err(Error::GridMismatch);
    }
    if phi.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found: psi.dim(),
        });
    }
    Ok(phi
        .grid()
        .weights()
        .iter()
        .zip(phi.vectors().iter().zip(psi.vectors()))
        .map(|(w, (p, q))| w * p.norm() * q.norm())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn basis(dim: usize) -> Vec<CVec> {
        (0..dim)
            .map(|i| {
                let mut e = CVec::zeros(dim);
                e[i] = Complex64::new(1.0, 0.0);
                e
            })
            .collect()
    }

    fn onb_family(dim: usize) -> VectorFamily {
        VectorFamily::new(MeasureGrid::uniform(dim, 1.0).unwrap(), basis(dim)).unwrap()
    }

    fn family_from(vectors: Vec<CVec>, weights: Vec<f64>) -> VectorFamily {
        let labels = (0..vectors.len()).map(|i| i.to_string()).collect();
        VectorFamily::new(MeasureGrid::new(labels, weights).unwrap(), vectors).unwrap()
    }

    #[test]
    fn grid_rejects_nonpositive_weights() {
        assert!(matches!(
            MeasureGrid::new(vec!["a".into()], vec![0.0]),
            Err(Error::NonpositiveWeight { index: 0, .. })
        ));
        assert!(matches!(
            MeasureGrid::new(vec!["a".into()], vec![-1.0]),
            Err(Error::NonpositiveWeight { index: 0, .. })
        ));
    }

    #[test]
    fn analysis_of_onb_is_identity() {
        let op = analysis(&onb_family(2)).unwrap();
        assert!((op.matrix() - CMat::identity(2, 2)).norm() <= 1e-15);
    }

    #[test]
    fn analysis_weight_scaling_cancels() {
        // φ = {2 e_1} with w = 1/4: row = √(1/4) · conj(2 e_1) = (1, 0).
        let mut v = CVec::zeros(2);
        v[0] = Complex64::new(2.0, 0.0);
        let fam = family_from(vec![v], vec![0.25]);
        let op = analysis(&fam).unwrap();
        assert!((op.matrix().row(0)[(0, 0)] - Complex64::new(1.0, 0.0)).norm() <= 1e-15);
        assert!(op.matrix().row(0)[(0, 1)].norm() <= 1e-15);
    }

    #[test]
    fn analysis_rows_match_inner_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let vectors = probe::random_family(3, 5, &mut rng);
        let weights: Vec<f64> = (0..5).map(|i| 0.3 + 0.1 * i as f64).collect();
        let fam = family_from(vectors.clone(), weights.clone());
        let op = analysis(&fam).unwrap();
        // (C e_k)_i = √w_i ⟨e_k, φ_i⟩, checked entrywise against `inner`.
        for (k, e) in basis(3).iter().enumerate() {
            let coeff = op.apply(e).unwrap();
            for i in 0..5 {
                let expected = Complex64::new(weights[i].sqrt(), 0.0) * inner(e, &vectors[i]);
                assert!(
                    (coeff[i] - expected).norm() <= 1e-12,
                    "row {i}, basis {k}"
                );
            }
        }
    }

    #[test]
    fn synthesis_trivial_cases() {
        let fam = onb_family(3);
        let op = analysis(&fam).unwrap();
        let mut coeff = CVec::zeros(3);
        coeff[0] = Complex64::new(1.0, 0.0);
        let out = synthesis(&op, &coeff).unwrap();
        assert!((out - fam.vectors()[0].clone()).norm() <= 1e-15);

        let zero = synthesis(&op, &CVec::zeros(3)).unwrap();
        assert!(zero.norm() <= 1e-15);
    }

    #[test]
    fn synthesis_weak_form_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let vectors = probe::random_family(4, 6, &mut rng);
        let weights: Vec<f64> = (0..6).map(|i| 0.2 + 0.15 * i as f64).collect();
        let fam = family_from(vectors.clone(), weights.clone());
        let op = analysis(&fam).unwrap();
        let xi = probe::random_vector(6, &mut rng);
        let f = probe::random_vector(4, &mut rng);

        let lhs = inner(&synthesis(&op, &xi).unwrap(), &f);
        let rhs: Complex64 = (0..6)
            .map(|i| Complex64::new(weights[i], 0.0) * xi[i] * inner(&vectors[i], &f))
            .sum();
        assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn frame_operator_trivial_cases() {
        let s = frame_operator(&onb_family(3)).unwrap();
        assert!((s.matrix() - CMat::identity(3, 3)).norm() <= 1e-15);

        let e1 = basis(3)[0].clone();
        let fam = family_from(vec![e1.clone(), e1], vec![1.0, 1.0]);
        let s = frame_operator(&fam).unwrap();
        let expected = SymOp::from_diagonal(&[2.0, 0.0, 0.0]);
        assert!((s.matrix() - expected.matrix()).norm() <= 1e-15);
    }

    #[test]
    fn frame_operator_weak_form_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let vectors = probe::random_family(4, 7, &mut rng);
        let weights: Vec<f64> = (0..7).map(|i| 0.4 + 0.05 * i as f64).collect();
        let fam = family_from(vectors.clone(), weights.clone());
        let s = frame_operator(&fam).unwrap();
        let f = probe::random_vector(4, &mut rng);
        let g = probe::random_vector(4, &mut rng);

        let lhs = inner(&s.apply(&f).unwrap(), &g);
        let rhs: Complex64 = (0..7)
            .map(|i| Complex64::new(weights[i], 0.0) * inner(&f, &vectors[i]) * inner(&vectors[i], &g))
            .sum();
        assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn frame_bounds_trivial_and_brute_force() {
        let b = frame_bounds(&onb_family(4)).unwrap();
        assert!((b.lower - 1.0).abs() <= 1e-12 && (b.upper - 1.0).abs() <= 1e-12);

        // {e_1+e_2, e_1−e_2}: S = 2I exactly, bounds (2, 2).
        let e = basis(2);
        let plus = &e[0] + &e[1];
        let minus = &e[0] - &e[1];
        let fam = family_from(vec![plus, minus], vec![1.0, 1.0]);
        let b = frame_bounds(&fam).unwrap();
        assert!((b.lower - 2.0).abs() <= 1e-12 && (b.upper - 2.0).abs() <= 1e-12);
        assert!(!b.diverging);
    }

    #[test]
    fn frame_bounds_dominate_rayleigh_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let vectors = probe::random_family(5, 9, &mut rng);
        let weights = vec![0.7; 9];
        let fam = family_from(vectors, weights);
        let s = frame_operator(&fam).unwrap();
        let b = frame_bounds(&fam).unwrap();
        for _ in 0..50 {
            let f = probe::random_unit(5, &mut rng);
            let rayleigh = inner(&s.apply(&f).unwrap(), &f).re;
            assert!(rayleigh >= b.lower - 1e-10);
            assert!(rayleigh <= b.upper + 1e-10);
        }
        // Extremal eigenvectors attain the bounds.
        let low = inner(&s.apply(&b.attained_low).unwrap(), &b.attained_low).re;
        let high = inner(&s.apply(&b.attained_high).unwrap(), &b.attained_high).re;
        assert!((low - b.lower).abs() <= tol::CALCULUS * (1.0 + b.lower));
        assert!((high - b.upper).abs() <= tol::CALCULUS * (1.0 + b.upper));
    }

    #[test]
    fn classify_onb_scan_is_parseval() {
        let levels: Vec<ScanLevel> = [4usize, 8, 16, 32, 64]
            .iter()
            .map(|&n| ScanLevel {
                param: n as f64,
                family: onb_family(n),
            })
            .collect();
        let scan = TruncationScan::new(levels).unwrap();
        let c = classify(&onb_family(64), Some(&scan)).unwrap();
        assert_eq!(c.verdict, Verdict::ParsevalFrame);
        assert!(c.evidence.total);
    }

    #[test]
    fn classify_en_over_n_scan_is_upper_semi_frame() {
        // φ_n = e_n / n: S = diag(1/n²), upper = 1 stable, lower = 1/N² ↓ 0.
        let make = |n: usize| {
            let vectors: Vec<CVec> = basis(n)
                .into_iter()
                .enumerate()
                .map(|(i, e)| e / Complex64::new((i + 1) as f64, 0.0))
                .collect();
            family_from(vectors, vec![1.0; n])
        };
        let levels: Vec<ScanLevel> = [8usize, 16, 32, 64, 128]
            .iter()
            .map(|&n| ScanLevel {
                param: n as f64,
                family: make(n),
            })
            .collect();
        let scan = TruncationScan::new(levels).unwrap();
        let c = classify(&make(128), Some(&scan)).unwrap();
        assert_eq!(c.verdict, Verdict::UpperSemiFrame);
        assert!(c.evidence.lower_decaying);
        assert!(!c.evidence.upper_diverging);
        assert!(c.evidence.lower_slope.unwrap() <= -1.9);
    }

    #[test]
    fn classify_single_level_verdicts() {
        // Full-rank random family: Frame (not Parseval).
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let fam = family_from(probe::random_family(4, 8, &mut rng), vec![0.5; 8]);
        let c = classify(&fam, None).unwrap();
        assert_eq!(c.verdict, Verdict::Frame);

        // Rank-deficient family: NotTotal with a null witness.
        let e = basis(3);
        let deficient = family_from(vec![e[0].clone(), e[1].clone()], vec![1.0, 1.0]);
        let c = classify(&deficient, None).unwrap();
        assert_eq!(c.verdict, Verdict::NotTotal);
        let witness = c.evidence.null_witness.unwrap();
        let s = frame_operator(&deficient).unwrap();
        assert!(s.apply(&witness).unwrap().norm() <= 1e-10);
    }

    #[test]
    fn scan_validation_rejects_bad_parameters() {
        let fam = onb_family(2);
        let mk = |p: f64| ScanLevel {
            param: p,
            family: fam.clone(),
        };
        assert!(matches!(
            TruncationScan::new(vec![]),
            Err(Error::InconsistentScan { .. })
        ));
        assert!(matches!(
            TruncationScan::new(vec![mk(2.0), mk(2.0)]),
            Err(Error::InconsistentScan { .. })
        ));
        assert!(matches!(
            TruncationScan::new(vec![mk(-1.0), mk(2.0)]),
            Err(Error::InconsistentScan { .. })
        ));
    }

    #[test]
    fn duality_trivial_cases() {
        let probes = ProbeSet::standard(2, 7);
        let fam = onb_family(2);
        assert!(check_duality(&fam, &fam, &probes).unwrap() <= 1e-12);

        // Biorthogonal pair {2e_1, e_2} and {e_1/2, e_2}.
        let e = basis(2);
        let phi = family_from(
            vec![&e[0] * Complex64::new(2.0, 0.0), e[1].clone()],
            vec![1.0, 1.0],
        );
        let psi = family_from(
            vec![&e[0] * Complex64::new(0.5, 0.0), e[1].clone()],
            vec![1.0, 1.0],
        );
        assert!(check_duality(&phi, &psi, &probes).unwrap() <= 1e-12);
    }

    #[test]
    fn canonical_dual_passes_duality_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        let vectors = probe::random_family(4, 9, &mut rng);
        let fam = family_from(vectors.clone(), vec![0.8; 9]);
        let s = frame_operator(&fam).unwrap();
        let s_inv = s.pow(-1.0).unwrap();
        let dual_vectors: Vec<CVec> = vectors.iter().map(|v| s_inv.apply(v).unwrap()).collect();
        let dual = family_from(dual_vectors, vec![0.8; 9]);
        let probes = ProbeSet::standard(4, 8);
        assert!(check_duality(&fam, &dual, &probes).unwrap() <= tol::DUALITY);
    }

    #[test]
    fn omega_bound_trivial_and_rank_one() {
        let fam = onb_family(4);
        let bound = omega_bound(&fam, &fam).unwrap();
        assert!((bound - 4.0).abs() <= 1e-12);
        let s = cross_frame_operator(&fam, &fam).unwrap();
        let norm = s.svd(false, false).singular_values[0];
        assert!(norm <= bound + tol::CALCULUS);

        // Rank-one family φ_i = a_i h: the bound is attained exactly.
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        let h = probe::random_unit(3, &mut rng);
        let amps = [1.5, -0.5, 2.0, 0.25];
        let vectors: Vec<CVec> = amps
            .iter()
            .map(|&a| &h * Complex64::new(a, 0.0))
            .collect();
        let weights = vec![0.5, 1.0, 0.25, 2.0];
        let fam = family_from(vectors, weights.clone());
        let bound = omega_bound(&fam, &fam).unwrap();
        let expected: f64 = weights
            .iter()
            .zip(&amps)
            .map(|(w, a)| w * a * a * h.norm_squared())
            .sum();
        assert!((bound - expected).abs() <= 1e-12);
        let s = cross_frame_operator(&fam, &fam).unwrap();
        let norm = s.svd(false, false).singular_values[0];
        assert!((norm - bound).abs() <= tol::CALCULUS * bound);
    }

    #[test]
    fn omega_bound_dominates_random_cross_operator() {
        let mut rng = ChaCha8Rng::seed_from_u64(28);
        let phi = family_from(probe::random_family(4, 6, &mut rng), vec![0.6; 6]);
        let psi = family_from(probe::random_family(4, 6, &mut rng), vec![0.6; 6]);
        let bound = omega_bound(&phi, &psi).unwrap();
        let s = cross_frame_operator(&psi, &phi).unwrap();
        let norm = s.svd(false, false).singular_values[0];
        assert!(norm <= bound + tol::CALCULUS);
    }

    #[test]
    fn grid_mismatch_detected() {
        let fam_a = onb_family(2);
        let fam_b = family_from(basis(2), vec![0.5, 0.5]);
        assert_eq!(omega_bound(&fam_a, &fam_b), Err(Error::GridMismatch));
    }
}
