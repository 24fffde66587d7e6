//! Runnable invariant suite: every module's load-bearing identities as
//! named, seeded, tolerance-pinned checks.
//!
//! The suite exists so that a deployment can re-verify the numerical core on
//! its own hardware from the command line.  Each check computes a residual
//! that a true identity keeps at rounding level, compares it against the
//! module's documented tolerance, and reports a [`CheckResult`].  Checks are
//! deterministic: all randomness flows through a counter-based generator
//! seeded from [`CheckConfig::seed`], with a fixed per-check offset so that
//! filtering by module never changes what another module's checks compute.
//!
//! # Fault injection
//!
//! `CheckConfig::perturbation` exercises the failure path: when nonzero, the
//! *first* check of each module adds the given value to one matrix entry of
//! an intermediate it validates, which drives that check's residual above
//! tolerance.  This proves the suite can fail and names the invariant that
//! catches the fault; it is a test mode, not a measurement mode.
//!
//! # Dimensions
//!
//! `CheckConfig::dim` sets the ambient dimension of the randomized algebra
//! checks.  Gallery checks ignore it: they run on their canonical refinement
//! levels, because their predictions are tied to those constructions.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frames::{
    classify, frame_bounds, frame_operator, MeasureGrid, VectorFamily, Verdict,
};
use crate::gallery::{self, ExpWeight, PathologicalKind, RkhsWeight, SphericalSymbol};
use crate::genframe::{
    build_genframe, bounds_on_domain, canonical_dual, canonical_tight,
    dual_reconstruction_residual, lower_bound_certificate,
};
use crate::hilbert::{
    inner, inner_weighted, rel_frobenius_distance, CVec, SpectralFn, SymOp, WeightSpec,
};
use crate::lattice::{
    lattice_edges, node_norm, rg_norm, scale_unitarity, LatticeNode, MetricOp,
};
use crate::probe::{self, ProbeSet};
use crate::tol;
use crate::transforms::{
    classify_fn_transform, classify_transform, power_transform, weighted_energy,
};

/// Module names accepted by [`run_suite`], in execution order.
pub const MODULES: [&str; 6] = [
    "hilbert",
    "frames",
    "genframe",
    "transforms",
    "lattice",
    "gallery",
];

/// Configuration of one suite run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckConfig {
    /// Ambient dimension of the randomized algebra checks.
    pub dim: usize,
    /// Seed for every pseudo-random draw in the suite.
    pub seed: u64,
    /// Fault-injection magnitude; `0.0` disables injection.
    pub perturbation: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            dim: 6,
            seed: tol::DEFAULT_SEED,
            perturbation: 0.0,
        }
    }
}

/// Outcome of one named invariant check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    /// Module the invariant belongs to.
    pub module: &'static str,
    /// Invariant name, stable across releases.
    pub name: &'static str,
    /// Largest residual observed.
    pub residual: f64,
    /// Tolerance the residual must not exceed.
    pub tolerance: f64,
    /// Whether the check passed.
    pub passed: bool,
    /// Deterministic human-readable context.
    pub detail: String,
}

impl CheckResult {
    fn new(
        module: &'static str,
        name: &'static str,
        residual: f64,
        tolerance: f64,
        detail: String,
    ) -> Self {
        CheckResult {
            module,
            name,
            residual,
            tolerance,
            passed: residual.is_finite() && residual <= tolerance,
            detail,
        }
    }
}

/// Whether every result in a slice passed.
pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

/// Run one module's checks.
pub fn run_module(module: &str, cfg: &CheckConfig) -> Result<Vec<CheckResult>> {
    if cfg.dim < 2 {
        return Err(Error::HypothesisViolated {
            reason: format!("check dimension {} must be at least 2", cfg.dim),
        });
    }
    match module {
        "hilbert" => hilbert_checks(cfg),
        "frames" => frames_checks(cfg),
        "genframe" => genframe_checks(cfg),
        "transforms" => transforms_checks(cfg),
        "lattice" => lattice_checks(cfg),
        "gallery" => gallery_checks(cfg),
        other => Err(Error::HypothesisViolated {
            reason: format!("unknown check module '{other}': expected one of {MODULES:?}"),
        }),
    }
}

/// Run the whole suite, or a single module when `module` is given.
pub fn run_suite(module: Option<&str>, cfg: &CheckConfig) -> Result<Vec<CheckResult>> {
    match module {
        Some(name) => run_module(name, cfg),
        None => {
            let mut results = Vec::new();
            for name in MODULES {
                results.extend(run_module(name, cfg)?);
            }
            Ok(results)
        }
    }
}

fn rng_for(cfg: &CheckConfig, offset: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(offset))
}

fn injection_note(cfg: &CheckConfig) -> String {
    if cfg.perturbation != 0.0 {
        format!(
            "; perturbation {:+.1e} injected into one matrix entry",
            cfg.perturbation
        )
    } else {
        String::new()
    }
}

fn random_family(dim: usize, count: usize, rng: &mut ChaCha8Rng) -> Result<VectorFamily> {
    let grid = MeasureGrid::uniform(count, 1.0)?;
    VectorFamily::new(grid, probe::random_family(dim, count, rng))
}

// ---------------------------------------------------------------------------
// hilbert
// ---------------------------------------------------------------------------

fn hilbert_checks(cfg: &CheckConfig) -> Result<Vec<CheckResult>> {
    let mut results = Vec::new();
    let dim = cfg.dim;

    // 1 (injectable). ⟨Af, g⟩ = ⟨f, A*g⟩ for the matrix adjoint.
    {
        let mut rng = rng_for(cfg, 0x11);
        let a = probe::random_matrix(dim, &mut rng);
        let mut adjoint = a.adjoint();
        adjoint[(0, 0)] += Complex64::new(cfg.perturbation, 0.0);
        let scale = a.norm();
        let mut residual = 0.0f64;
        for _ in 0..4 {
            let f = probe::random_unit(dim, &mut rng);
            let g = probe::random_unit(dim, &mut rng);
            let lhs = inner(&(&a * &f), &g);
            let rhs = inner(&f, &(&adjoint * &g));
            residual = residual.max((lhs - rhs).norm() / scale);
        }
        results.push(CheckResult::new(
            "hilbert",
            "adjoint_moves_across_the_inner_product",
            residual,
            tol::ADJOINT,
            format!("4 probe pairs in dimension {dim}{}", injection_note(cfg)),
        ));
    }

    // 2. Functional calculus is a homomorphism: (f·g)(T) = f(T)·g(T).
    {
        let mut rng = rng_for(cfg, 0x12);
        let t = SymOp::new(probe::random_positive_definite(dim, 0.5, 4.0, &mut rng))?;
        let f = SpectralFn::new("sqrt", f64::sqrt);
        let g = SpectralFn::new("t^2", |x| x * x);
        let product = f.mul(&g);
        let lhs = t.fn_calculus(&product)?;
        let rhs = t.fn_calculus(&f)?.matrix() * t.fn_calculus(&g)?.matrix();
        let residual = rel_frobenius_distance(lhs.matrix(), &rhs);
        results.push(CheckResult::new(
            "hilbert",
            "functional_calculus_is_a_homomorphism",
            residual,
            tol::CALCULUS,
            format!("(sqrt·t^2)(T) vs sqrt(T)·T^2 in dimension {dim}"),
        ));
    }

    // 3. Powers compose: T^{1/2}·T^{1/2} = T and T^{-1}·T = I.
    {
        let mut rng = rng_for(cfg, 0x13);
        let t = SymOp::new(probe::random_positive_definite(dim, 0.25, 8.0, &mut rng))?;
        let half = t.pow(0.5)?;
        let r1 = rel_frobenius_distance(&(half.matrix() * half.matrix()), t.matrix());
        let inv = t.pow(-1.0)?;
        let r2 = rel_frobenius_distance(
            &(inv.matrix() * t.matrix()),
            &crate::hilbert::CMat::identity(dim, dim),
        );
        results.push(CheckResult::new(
            "hilbert",
            "operator_powers_compose",
            r1.max(r2),
            tol::CALCULUS,
            format!("T^(1/2)^2 = T and T^(-1)·T = I in dimension {dim}"),
        ));
    }

    // 4. Weighted inner products are positive definite on nonzero vectors.
    {
        let mut rng = rng_for(cfg, 0x14);
        let base = SymOp::new(probe::random_positive_definite(dim, 0.5, 4.0, &mut rng))?;
        let weight = WeightSpec::Power(0.5);
        let mut residual = 0.0f64;
        let mut min_re = f64::INFINITY;
        for _ in 0..4 {
            let f = probe::random_unit(dim, &mut rng);
            let q = inner_weighted(&base, &weight, &f, &f)?;
            min_re = min_re.min(q.re);
            residual = residual.max(q.im.abs() / q.re.max(f64::MIN_POSITIVE));
            if q.re <= 0.0 {
                residual = f64::INFINITY;
            }
        }
        results.push(CheckResult::new(
            "hilbert",
            "weighted_inner_product_is_positive",
            residual,
            tol::CALCULUS,
            format!("4 unit probes, weight T^(1/2); min Re = {min_re:.6}"),
        ));
    }

    Ok(results)
}

// ---------------------------------------------------------------------------
// frames
// ---------------------------------------------------------------------------

fn frames_checks(cfg: &CheckConfig) -> Result<Vec<CheckResult>> {
    let mut results = Vec::new();
    let dim = cfg.dim;

    // 1 (injectable). S f = Σ_i w_i ⟨f, φ_i⟩ φ_i — matrix path vs sum path.
    {
        let mut rng = rng_for(cfg, 0x21);
        let family = random_family(dim, 2 * dim, &mut rng)?;
        let s = frame_operator(&family)?;
        let mut matrix = s.matrix().clone();
        matrix[(0, 0)] += Complex64::new(cfg.perturbation, 0.0);
        let scale = s.lambda_max().max(1.0);
        let mut residual = 0.0f64;
        for _ in 0..4 {
            let f = probe::random_unit(dim, &mut rng);
            let via_matrix = &matrix * &f;
            let mut via_sum = CVec::zeros(dim);
            for (v, &w) in family.vectors().iter().zip(family.grid().weights()) {
                via_sum += v * (inner(&f, v) * w);
            }
            residual = residual.max((via_matrix - via_sum).norm() / scale);
        }
        results.push(CheckResult::new(
            "frames",
            "frame_operator_matches_the_coefficient_sum",
            residual,
            tol::RECONSTRUCTION,
            format!(
                "{} vectors in dimension {dim}, 4 probes{}",
                2 * dim,
                injection_note(cfg)
            ),
        ));
    }

    // 2. The extremal vectors attain the frame bounds as Rayleigh quotients.
    {
        let mut rng = rng_for(cfg, 0x22);
        let family = random_family(dim, 2 * dim, &mut rng)?;
        let s = frame_operator(&family)?;
        let bounds = frame_bounds(&family)?;
        let scale = bounds.upper.max(1.0);
        let q_low = inner(&s.apply(&bounds.attained_low)?, &bounds.attained_low).re;
        let q_high = inner(&s.apply(&bounds.attained_high)?, &bounds.attained_high).re;
        let residual =
            ((q_low - bounds.lower).abs().max((q_high - bounds.upper).abs())) / scale;
        results.push(CheckResult::new(
            "frames",
            "rayleigh_extremes_attain_the_bounds",
            residual,
            tol::ORTHONORMALITY,
            format!("bounds ({:.6}, {:.6})", bounds.lower, bounds.upper),
        ));
    }

    // 3. Scaling covariance: c·φ multiplies both bounds by c².
    {
        let mut rng = rng_for(cfg, 0x23);
        let family = random_family(dim, 2 * dim, &mut rng)?;
        let c = 1.7;
        let bounds = frame_bounds(&family)?;
        let scaled = frame_bounds(&family.scaled(c))?;
        let scale = (c * c * bounds.upper).max(1.0);
        let residual = ((scaled.lower - c * c * bounds.lower).abs())
            .max((scaled.upper - c * c * bounds.upper).abs())
            / scale;
        let verdict_stable =
            classify(&family, None)?.verdict == classify(&family.scaled(c), None)?.verdict;
        let residual = if verdict_stable { residual } else { f64::INFINITY };
        results.push(CheckResult::new(
            "frames",
            "bounds_scale_with_the_square_of_the_family",
            residual,
            tol::ORTHONORMALITY,
            format!("c = {c}; verdict stable = {verdict_stable}"),
        ));
    }

    // 4. An orthonormal basis is a Parseval frame.
    {
        let onb: Vec<CVec> = (0..dim)
            .map(|i| {
                CVec::from_fn(dim, |r, _| {
                    if r == i {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            })
            .collect();
        let family = VectorFamily::new(MeasureGrid::uniform(dim, 1.0)?, onb)?;
        let bounds = frame_bounds(&family)?;
        let residual = (bounds.lower - 1.0).abs().max((bounds.upper - 1.0).abs());
        let verdict = classify(&family, None)?.verdict;
        let residual = if verdict == Verdict::ParsevalFrame {
            residual
        } else {
            f64::INFINITY
        };
        results.push(CheckResult::new(
            "frames",
            "an_orthonormal_basis_is_parseval",
            residual,
            tol::PARSEVAL,
            format!("verdict {verdict:?} in dimension {dim}"),
        ));
    }

    Ok(results)
}

// ---------------------------------------------------------------------------
// genframe
// ---------------------------------------------------------------------------

fn genframe_checks(cfg: &CheckConfig) -> Result<Vec<CheckResult>> {
    let mut results = Vec::new();
    let dim = cfg.dim;

    // 1 (injectable). The domain projector is idempotent.
    {
        let mut rng = rng_for(cfg, 0x31);
        let family = random_family(dim, dim, &mut rng)?;
        let span: Vec<CVec> = (0..dim / 2)
            .map(|_| probe::random_unit(dim, &mut rng))
            .collect();
        let gf = build_genframe(&family, Some(&span))?;
        let mut p = gf.projector().matrix().clone();
        p[(0, 0)] += Complex64::new(cfg.perturbation, 0.0);
        let residual = rel_frobenius_distance(&(&p * &p), gf.projector().matrix());
        results.push(CheckResult::new(
            "genframe",
            "domain_projector_is_idempotent",
            residual,
            tol::ORTHONORMALITY,
            format!(
                "random {}-dimensional domain in dimension {dim}{}",
                dim / 2,
                injection_note(cfg)
            ),
        ));
    }

    // 2. The canonical dual reconstructs every projected probe weakly.
    {
        let mut rng = rng_for(cfg, 0x32);
        let family = random_family(dim, 2 * dim, &mut rng)?;
        let gf = build_genframe(&family, None)?;
        let dual = canonical_dual(&gf, &family)?;
        let probes = ProbeSet::standard(dim, cfg.seed ^ 0x32);
        let residual = dual_reconstruction_residual(&family, &dual, &gf, &probes)?;
        results.push(CheckResult::new(
            "genframe",
            "canonical_dual_reconstructs_weakly",
            residual,
            tol::DUALITY,
            format!("{} probes in dimension {dim}", probes.vectors().len()),
        ));
    }

    // 3. The canonical tight family is Parseval on the domain.
    {
        let mut rng = rng_for(cfg, 0x33);
        let family = random_family(dim, 2 * dim, &mut rng)?;
        let gf = build_genframe(&family, None)?;
        let tight = canonical_tight(&gf, &family)?;
        let bounds = bounds_on_domain(&tight, &gf)?;
        let residual = (bounds.lower - 1.0).abs().max((bounds.upper - 1.0).abs());
        results.push(CheckResult::new(
            "genframe",
            "canonical_tight_family_is_parseval",
            residual,
            tol::PARSEVAL,
            format!("bounds ({:.9}, {:.9})", bounds.lower, bounds.upper),
        ));
    }

    // 4. The five lower-bound statements agree, for a bound that holds and
    //    a bound that fails.
    {
        let mut rng = rng_for(cfg, 0x34);
        let family = random_family(dim, 2 * dim, &mut rng)?;
        let s = frame_operator(&family)?;
        let probes = ProbeSet::standard(dim, cfg.seed ^ 0x34);
        let held = lower_bound_certificate(&family, 0.5 * s.lambda_min(), &probes)?;
        let failed = lower_bound_certificate(&family, 2.0 * s.lambda_max(), &probes)?;
        let mut defects = 0u32;
        if !held.consistent || !held.holds() {
            defects += 1;
        }
        if !failed.consistent || failed.holds() {
            defects += 1;
        }
        results.push(CheckResult::new(
            "genframe",
            "lower_bound_statements_agree",
            f64::from(defects),
            0.5,
            format!(
                "m = λ_min/2 holds = {}, m = 2λ_max holds = {}",
                held.holds(),
                failed.holds()
            ),
        ));
    }

    Ok(results)
}

// ---------------------------------------------------------------------------
// transforms
// ---------------------------------------------------------------------------

fn transforms_checks(cfg: &CheckConfig) -> Result<Vec<CheckResult>> {
    let mut results = Vec::new();
    let dim = cfg.dim;

    // 1 (injectable). Power-transform energy identity:
    //    Σ_i w_i |⟨f, T^{-k}φ_i⟩_m|² = ‖T^{(2m−k)+1/2} f‖².
    {
        let mut rng = rng_for(cfg, 0x41);
        let family = random_family(dim, 2 * dim, &mut rng)?;
        let gf = build_genframe(&family, None)?;
        let mut residual = 0.0f64;
        for &(k, m) in &[(0.5, 0.0), (1.0, 0.5), (2.0, 1.5)] {
            let transformed = power_transform(&family, &gf, k)?;
            let reference = gf.support_pow(2.0 * m - k + 0.5)?;
            let mut matrix = reference.matrix().clone();
            matrix[(0, 0)] += Complex64::new(cfg.perturbation, 0.0);
            for _ in 0..3 {
                let f = probe::random_unit(dim, &mut rng);
                let lhs = weighted_energy(&transformed, &gf, &WeightSpec::Power(m), &f)?;
                let rhs = (&matrix * &f).norm_squared();
                residual = residual.max((lhs - rhs).abs() / rhs.max(1.0));
            }
        }
        results.push(CheckResult::new(
            "transforms",
            "power_transform_energy_identity",
            residual,
            tol::IDENTITY,
            format!(
                "(k, m) in {{(1/2, 0), (1, 1/2), (2, 3/2)}}, 3 probes each{}",
                injection_note(cfg)
            ),
        ));
    }

    // 2. The half-power transform is the canonical tight family.
    {
        let mut rng = rng_for(cfg, 0x42);
        let family = random_family(dim, 2 * dim, &mut rng)?;
        let gf = build_genframe(&family, None)?;
        let half = power_transform(&family, &gf, 0.5)?;
        let tight = canonical_tight(&gf, &family)?;
        let mut residual = 0.0f64;
        for (a, b) in half.vectors().iter().zip(tight.vectors()) {
            residual = residual.max((a - b).norm() / b.norm().max(1.0));
        }
        results.push(CheckResult::new(
            "transforms",
            "half_power_equals_the_canonical_tight_family",
            residual,
            tol::ORTHONORMALITY,
            format!("{} vectors compared entrywise", family.len()),
        ));
    }

    // 3. Exponent sweeps and symbol sweeps agree on the same surrogate.
    // Five levels: the conservative divergence gate needs two decades of
    // growth, which the squared dominance constants reach at level five.
    {
        let scan = gallery::diagonal_surrogate_scan(5)?;
        let family = scan.finest().family.clone();
        let gf = build_genframe(&family, None)?;
        let (k, m) = (1.0, 0.25);
        let by_exponent = classify_transform(&family, &gf, k, m, Some(&scan))?;
        let g = SpectralFn::new("t", |t| t);
        let h = SpectralFn::new("t^0.25", |t| t.powf(0.25));
        let by_symbol = classify_fn_transform(&family, &gf, &g, &h, Some(&scan))?;
        let mut defects = 0u32;
        if by_exponent.predicted != by_symbol.predicted {
            defects += 1;
        }
        if by_exponent.measured != by_symbol.measured {
            defects += 1;
        }
        results.push(CheckResult::new(
            "transforms",
            "exponent_and_symbol_sweeps_agree",
            f64::from(defects),
            0.5,
            format!(
                "k = {k}, m = {m} on a 4-level diagonal surrogate: exponent verdict \
                 {:?}/{:?}, symbol verdict {:?}/{:?}",
                by_exponent.predicted, by_exponent.measured, by_symbol.predicted,
                by_symbol.measured
            ),
        ));
    }

    Ok(results)
}

// ---------------------------------------------------------------------------
// lattice
// ---------------------------------------------------------------------------

fn lattice_checks(cfg: &CheckConfig) -> Result<Vec<CheckResult>> {
    let mut results = Vec::new();
    let dim = cfg.dim;

    // 1 (injectable). Graph-norm identity: ‖f‖_{R_G}² = ‖f‖² + ‖G^{1/2}f‖².
    {
        let mut rng = rng_for(cfg, 0x51);
        let mut matrix = probe::random_positive_definite(dim, 0.25, 4.0, &mut rng);
        let reference = MetricOp::from_matrix(matrix.clone())?;
        matrix[(0, 0)] += Complex64::new(cfg.perturbation, 0.0);
        let perturbed = MetricOp::from_matrix(matrix)?;
        let root = reference.op().pow(0.5)?;
        let mut residual = 0.0f64;
        for _ in 0..4 {
            let f = probe::random_unit(dim, &mut rng);
            let lhs = rg_norm(&perturbed, &f)?.powi(2);
            let rhs = f.norm_squared() + root.apply(&f)?.norm_squared();
            residual = residual.max((lhs - rhs).abs() / rhs);
        }
        results.push(CheckResult::new(
            "lattice",
            "graph_norm_identity",
            residual,
            tol::LATTICE_EXACT,
            format!("4 unit probes in dimension {dim}{}", injection_note(cfg)),
        ));
    }

    // 2. The join's inductive norm equals its spectral weight 1/(λ + 1/λ).
    {
        let mut rng = rng_for(cfg, 0x52);
        let g = MetricOp::from_matrix(probe::random_positive_definite(
            dim, 0.2, 5.0, &mut rng,
        ))?;
        let root = g.op().fn_calculus(&SpectralFn::new("sqrt of join weight", |t| {
            (1.0 / (t + 1.0 / t)).sqrt()
        }))?;
        let mut residual = 0.0f64;
        for _ in 0..4 {
            let f = probe::random_unit(dim, &mut rng);
            let lhs = node_norm(&g, LatticeNode::Join, &f)?;
            let rhs = root.apply(&f)?.norm();
            residual = residual.max((lhs - rhs).abs() / rhs.max(f64::MIN_POSITIVE));
        }
        results.push(CheckResult::new(
            "lattice",
            "join_norm_matches_its_spectral_weight",
            residual,
            tol::LATTICE_EXACT,
            format!("4 unit probes in dimension {dim}"),
        ));
    }

    // 3. All twelve lattice inclusions hold with their spectral constants.
    {
        let mut rng = rng_for(cfg, 0x53);
        let g = MetricOp::from_matrix(probe::random_positive_definite(
            dim, 0.1, 10.0, &mut rng,
        ))?;
        let probes = ProbeSet::standard(dim, cfg.seed ^ 0x53);
        let edges = lattice_edges(&g, probes.vectors())?;
        let mut residual = 0.0f64;
        let mut holding = 0usize;
        for edge in &edges {
            if edge.holds {
                holding += 1;
            }
            residual = residual
                .max(((edge.max_probe_ratio - edge.constant) / edge.constant).max(0.0));
        }
        let residual = if holding == edges.len() {
            residual
        } else {
            f64::INFINITY
        };
        results.push(CheckResult::new(
            "lattice",
            "all_twelve_inclusions_hold",
            residual,
            tol::SIMILARITY,
            format!("{holding}/{} directed inclusions hold", edges.len()),
        ));
    }

    // 4. Half-power scale spaces are unitarily related by G^{(n−r)/2}.
    {
        let mut rng = rng_for(cfg, 0x54);
        let g = MetricOp::from_matrix(probe::random_positive_definite(
            dim, 0.3, 3.0, &mut rng,
        ))?;
        let mut residual = 0.0f64;
        for &(from, to) in &[(2, 0), (1, -1), (-2, 2), (0, 1)] {
            residual = residual.max(scale_unitarity(&g, from, to)?);
        }
        results.push(CheckResult::new(
            "lattice",
            "scale_spaces_are_unitarily_related",
            residual,
            tol::ORTHONORMALITY,
            "exponent pairs (2,0), (1,-1), (-2,2), (0,1)".to_string(),
        ));
    }

    Ok(results)
}

// ---------------------------------------------------------------------------
// gallery
// ---------------------------------------------------------------------------

fn gallery_checks(cfg: &CheckConfig) -> Result<Vec<CheckResult>> {
    let mut results = Vec::new();

    // 1 (injectable). The flat exponential family has the identity operator.
    {
        let case = gallery::weighted_exponentials(ExpWeight::One, 1.0, &[8, 16, 32])?;
        let s = frame_operator(&case.family)?;
        let dim = case.family.dim();
        let mut identity = crate::hilbert::CMat::identity(dim, dim);
        identity[(0, 0)] += Complex64::new(cfg.perturbation, 0.0);
        let residual = rel_frobenius_distance(s.matrix(), &identity);
        results.push(CheckResult::new(
            "gallery",
            "flat_exponentials_have_the_identity_operator",
            residual,
            tol::ORTHONORMALITY,
            format!("finest grid size {dim}{}", injection_note(cfg)),
        ));
    }

    // 2. Every shipped construction measures as predicted.
    {
        let cases = vec![
            gallery::weighted_exponentials(ExpWeight::One, 1.0, &[8, 16, 32, 64])?,
            gallery::weighted_exponentials(ExpWeight::InvX, 1.0, &[16, 32, 64, 128, 256])?,
            gallery::weighted_exponentials(ExpWeight::X, 1.0, &[16, 32, 64, 128, 256])?,
            gallery::rkhs_scale(RkhsWeight::ConstTwo, 1, &[8, 16, 32])?,
            gallery::rkhs_scale(RkhsWeight::OnePlusX, 0, &[8, 16, 32])?,
            gallery::spherical_symbol(SphericalSymbol::One, &gallery::SPHERICAL_LEVELS)?,
            gallery::spherical_symbol(
                SphericalSymbol::OnePlusLSquared,
                &gallery::SPHERICAL_LEVELS,
            )?,
            gallery::spherical_symbol(
                SphericalSymbol::InvOnePlusL,
                &gallery::SPHERICAL_LEVELS,
            )?,
            gallery::pathological_sequences(PathologicalKind::E1PlusEn, 64)?,
            gallery::pathological_sequences(PathologicalKind::EnFrom2, 64)?,
            gallery::pathological_sequences(PathologicalKind::RankOneBessel, 64)?,
        ];
        let mut mismatches: Vec<String> = Vec::new();
        for case in &cases {
            let measured = case.measured()?.verdict;
            if measured != case.predicted {
                mismatches.push(format!(
                    "{}: predicted {:?}, measured {measured:?}",
                    case.name, case.predicted
                ));
            }
        }
        let detail = if mismatches.is_empty() {
            format!("{} constructions agree", cases.len())
        } else {
            mismatches.join("; ")
        };
        results.push(CheckResult::new(
            "gallery",
            "closed_form_predictions_match_measurements",
            mismatches.len() as f64,
            0.5,
            detail,
        ));
    }

    // 3. The weak-form quadrature error shrinks monotonically to ≤ 1e-3.
    {
        let report =
            gallery::exp_symbol_quadrature(ExpWeight::One, 1.0, &[64, 128, 256, 512])?;
        let residual = if report.monotone {
            report.final_error
        } else {
            f64::INFINITY
        };
        results.push(CheckResult::new(
            "gallery",
            "quadrature_error_shrinks_monotonically",
            residual,
            1e-3,
            format!(
                "errors {:?}",
                report
                    .levels
                    .iter()
                    .map(|l| format!("{:.3e}", l.relative_error))
                    .collect::<Vec<_>>()
            ),
        ));
    }

    Ok(results)
}
