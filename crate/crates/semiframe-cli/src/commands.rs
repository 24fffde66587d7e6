//! Command implementations: `analyze`, `transform`, `verify`, `gallery`.
//!
//! Each command consumes the merged [`RunConfig`], produces a [`Report`],
//! and leaves the exit-code decision to `main`: `report.passed == false`
//! maps to exit code 1, and any [`CliError`] maps to exit code 2.
//!
//! Gallery selection is table-driven: the same variant tables answer
//! `gallery list` and parse `--gallery`/`--g` flags, so the listing can
//! never drift from what the parser accepts.

use std::path::Path;

use semiframe::checks::{self, CheckConfig};
use semiframe::frames::{self, ScanLevel, TruncationScan, VectorFamily};
use semiframe::gallery::{
    self, ExpWeight, GalleryCase, PathologicalKind, RkhsWeight, SphericalSymbol,
    SPHERICAL_LEVELS,
};
use semiframe::genframe::{build_genframe, lower_bound_certificate};
use semiframe::probe::ProbeSet;
use semiframe::transforms::{classify_transform, metric_transformability};

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::family::FamilyFile;
use crate::report::{
    self, CaseSection, CertificateSection, CheckRow, ClassificationSection, MetricSection,
    Report, SweepRow,
};

/// Perturbation added by `verify --inject`: far above every tolerance, far
/// below anything that would change which eigenvalue branch is followed.
pub const INJECTION: f64 = 1e-3;

// ---------------------------------------------------------------------------
// Gallery selection tables
// ---------------------------------------------------------------------------

struct GalleryEntry {
    name: &'static str,
    variants: &'static [&'static str],
    flags: &'static str,
}

const GALLERY_TABLE: [GalleryEntry; 4] = [
    GalleryEntry {
        name: "exp",
        variants: &["one", "inv_x", "x"],
        flags: "--b <1/L> (default 1), --base-size (default 16), --levels (default 4)",
    },
    GalleryEntry {
        name: "rkhs",
        variants: &["const_one", "const_two", "one_plus_x"],
        flags: "--n <exponent> (default 1), --base-size (default 8), --levels (default 4)",
    },
    GalleryEntry {
        name: "spherical",
        variants: &["one", "one_plus_l_squared", "inv_one_plus_l"],
        flags: "--levels <1..=5> (default 5; built-in degree ladder 1, 2, 5, 10, 20)",
    },
    GalleryEntry {
        name: "pathological",
        variants: &["e1_plus_en", "en_from_2", "rank_one_bessel"],
        flags: "--size <multiple of 8, >= 32> (default 64; scanned by halving)",
    },
];

fn unknown(family: &str, variant: &str) -> CliError {
    CliError::UnknownGalleryCase(format!("{family}:{variant}"))
}

fn parse_exp_weight(g: &str) -> Result<ExpWeight> {
    match g {
        "one" => Ok(ExpWeight::One),
        "inv_x" => Ok(ExpWeight::InvX),
        "x" => Ok(ExpWeight::X),
        other => Err(unknown("exp", other)),
    }
}

fn parse_rkhs_weight(g: &str) -> Result<RkhsWeight> {
    match g {
        "const_one" => Ok(RkhsWeight::ConstOne),
        "const_two" => Ok(RkhsWeight::ConstTwo),
        "one_plus_x" => Ok(RkhsWeight::OnePlusX),
        other => Err(unknown("rkhs", other)),
    }
}

fn parse_spherical_symbol(g: &str) -> Result<SphericalSymbol> {
    match g {
        "one" => Ok(SphericalSymbol::One),
        "one_plus_l_squared" => Ok(SphericalSymbol::OnePlusLSquared),
        "inv_one_plus_l" => Ok(SphericalSymbol::InvOnePlusL),
        other => Err(unknown("spherical", other)),
    }
}

fn parse_pathological_kind(g: &str) -> Result<PathologicalKind> {
    match g {
        "e1_plus_en" => Ok(PathologicalKind::E1PlusEn),
        "en_from_2" => Ok(PathologicalKind::EnFrom2),
        "rank_one_bessel" => Ok(PathologicalKind::RankOneBessel),
        other => Err(unknown("pathological", other)),
    }
}

/// Grid-size ladder `base, 2·base, …` with `levels` entries.
fn doubling_ladder(base: usize, levels: usize) -> Result<Vec<usize>> {
    if levels == 0 || levels > 12 {
        return Err(CliError::ConfigParse(format!(
            "levels must be between 1 and 12, got {levels}"
        )));
    }
    if base == 0 || base > (1 << 16) {
        return Err(CliError::ConfigParse(format!(
            "base_size must be between 1 and 65536, got {base}"
        )));
    }
    Ok((0..levels).map(|i| base << i).collect())
}

fn build_gallery_case(cfg: &RunConfig, family: &str, g: Option<&str>) -> Result<GalleryCase> {
    match family {
        "exp" => {
            let weight = parse_exp_weight(g.unwrap_or("one"))?;
            let b = cfg.b.unwrap_or(1.0);
            let sizes =
                doubling_ladder(cfg.base_size.unwrap_or(16), cfg.levels.unwrap_or(4))?;
            Ok(gallery::weighted_exponentials(weight, b, &sizes)?)
        }
        "rkhs" => {
            let weight = parse_rkhs_weight(g.unwrap_or("const_two"))?;
            let n = cfg.n.unwrap_or(1);
            let sizes =
                doubling_ladder(cfg.base_size.unwrap_or(8), cfg.levels.unwrap_or(4))?;
            Ok(gallery::rkhs_scale(weight, n, &sizes)?)
        }
        "spherical" => {
            let symbol = parse_spherical_symbol(g.unwrap_or("one"))?;
            let levels = cfg.levels.unwrap_or(SPHERICAL_LEVELS.len());
            if levels == 0 || levels > SPHERICAL_LEVELS.len() {
                return Err(CliError::ConfigParse(format!(
                    "the spherical gallery has a built-in ladder of {} degree levels; \
                     levels must be between 1 and {}, got {levels}",
                    SPHERICAL_LEVELS.len(),
                    SPHERICAL_LEVELS.len()
                )));
            }
            Ok(gallery::spherical_symbol(symbol, &SPHERICAL_LEVELS[..levels])?)
        }
        "pathological" => {
            let kind = parse_pathological_kind(g.unwrap_or("e1_plus_en"))?;
            Ok(gallery::pathological_sequences(kind, cfg.size.unwrap_or(64))?)
        }
        other => Err(CliError::UnknownGalleryCase(other.to_string())),
    }
}

/// The case a command operates on: a gallery construction with its scan,
/// or an external family file (single truncation).
enum Case {
    Gallery(Box<GalleryCase>),
    External { name: String, family: VectorFamily },
}

fn resolve_case(cfg: &RunConfig) -> Result<Case> {
    match (&cfg.gallery, &cfg.family) {
        (Some(_), Some(_)) => Err(CliError::ConfigParse(
            "choose either a gallery case or a family file, not both".into(),
        )),
        (None, None) => Err(CliError::ConfigParse(
            "no case selected: set gallery = \"<name>\" or family = \"<path.json>\"".into(),
        )),
        (None, Some(path)) => {
            let family = FamilyFile::load(Path::new(path))?;
            Ok(Case::External {
                name: path.clone(),
                family,
            })
        }
        (Some(name), None) => {
            // Accept the `family:variant` shorthand the catalog and error
            // messages print; an explicit variant option still wins.
            let (family, inline) = match name.split_once(':') {
                Some((family, variant)) => (family, Some(variant)),
                None => (name.as_str(), None),
            };
            let g = cfg.g.as_deref().or(inline);
            Ok(Case::Gallery(Box::new(build_gallery_case(cfg, family, g)?)))
        }
    }
}

fn external_case_section(name: &str, family: &VectorFamily) -> CaseSection {
    CaseSection {
        name: name.to_string(),
        description: format!(
            "external family file: {} vectors in dimension {}",
            family.len(),
            family.dim()
        ),
        predicted_verdict: None,
        predicted_clause: None,
        notes: Vec::new(),
    }
}

fn gallery_case_section(case: &GalleryCase) -> CaseSection {
    CaseSection {
        name: case.name.clone(),
        description: case.description.clone(),
        predicted_verdict: Some(case.predicted.to_string()),
        predicted_clause: case.predicted_clause.map(|c| format!("{c:?}")),
        notes: case.notes.clone(),
    }
}

/// Evaluate the five-statement certificate just below the measured spectral
/// bound of the generalized frame operator, where all statements must hold
/// and agree.
fn certificate_section(family: &VectorFamily, seed: u64) -> Result<CertificateSection> {
    let gf = build_genframe(family, None)?;
    let tested = 0.999 * gf.reduced().lambda_min().max(0.0);
    let probes = ProbeSet::standard(family.dim(), seed);
    let cert = lower_bound_certificate(family, tested, &probes)?;
    Ok(CertificateSection::from_certificate(tested, &cert))
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// `analyze`: classify the case, report frame bounds per level, and evaluate
/// the lower-bound certificate at the measured spectral bound.
pub fn cmd_analyze(cfg: &RunConfig) -> Result<Report> {
    let mut report = Report::skeleton("analyze", cfg);
    match resolve_case(cfg)? {
        Case::Gallery(case) => {
            let classification = case.measured()?;
            let agree = classification.verdict == case.predicted;
            if !agree {
                report.notes.push(format!(
                    "measured verdict {} disagrees with the predicted {}",
                    classification.verdict, case.predicted
                ));
            }
            report.case = Some(gallery_case_section(&case));
            report.certificate = Some(certificate_section(&case.family, report.seed)?);
            report.classification =
                Some(ClassificationSection::from_classification(&classification));
            let consistent = report.certificate.as_ref().is_some_and(|c| c.consistent);
            report.passed = agree && consistent;
        }
        Case::External { name, family } => {
            let classification = frames::classify(&family, None)?;
            report.case = Some(external_case_section(&name, &family));
            report.certificate = Some(certificate_section(&family, report.seed)?);
            report.classification =
                Some(ClassificationSection::from_classification(&classification));
            report.passed = report.certificate.as_ref().is_some_and(|c| c.consistent);
        }
    }
    Ok(report)
}

/// Default exponent grids for the transform sweep.
const DEFAULT_K_GRID: [f64; 4] = [0.25, 0.5, 0.75, 1.0];
const DEFAULT_M_GRID: [f64; 2] = [0.0, 0.25];

/// `transform`: sweep the inverse-power transform over a (k, m) grid and/or
/// run the metric-transformability decision.  Without explicit grids and
/// without `--metric`, the default grid sweep runs.
pub fn cmd_transform(cfg: &RunConfig) -> Result<Report> {
    let mut report = Report::skeleton("transform", cfg);
    let (family, scan) = match resolve_case(cfg)? {
        Case::Gallery(case) => {
            report.case = Some(gallery_case_section(&case));
            (case.family, case.scan)
        }
        Case::External { name, family } => {
            report.case = Some(external_case_section(&name, &family));
            report.notes.push(
                "external family: a single refinement level, so divergence/decay gates \
                 cannot fire and measured flags reflect this truncation only"
                    .into(),
            );
            let scan = TruncationScan::new(vec![ScanLevel {
                param: family.len() as f64,
                family: family.clone(),
            }])?;
            (family, scan)
        }
    };

    let want_metric = cfg.metric.unwrap_or(false);
    let want_sweep = cfg.k_grid.is_some() || cfg.m_grid.is_some() || !want_metric;

    let mut all_agree = true;
    if want_sweep {
        let gf = build_genframe(&family, None)?;
        let k_grid = cfg.k_grid.clone().unwrap_or_else(|| DEFAULT_K_GRID.to_vec());
        let m_grid = cfg.m_grid.clone().unwrap_or_else(|| DEFAULT_M_GRID.to_vec());
        let mut skipped = Vec::new();
        for &k in &k_grid {
            for &m in &m_grid {
                if k < m - semiframe::tol::K_SNAP {
                    skipped.push(format!("(k = {k}, m = {m})"));
                    continue;
                }
                let verdict = classify_transform(&family, &gf, k, m, Some(&scan))?;
                all_agree &= verdict.agree();
                report.transform_sweep.push(SweepRow::from_verdict(k, m, &verdict));
            }
        }
        if report.transform_sweep.is_empty() {
            return Err(CliError::ConfigParse(
                "the (k, m) grid is empty after removing pairs with k < m".into(),
            ));
        }
        if !skipped.is_empty() {
            report.notes.push(format!(
                "skipped pairs with k < m, where the inverse-power classification is \
                 undefined: {}",
                skipped.join(", ")
            ));
        }
        if !all_agree {
            report.notes.push(
                "at least one grid cell disagrees between exponent prediction and scan \
                 measurement"
                    .into(),
            );
        }
    }

    if want_metric {
        let decision = metric_transformability(&family, &scan)?;
        report.metric = Some(MetricSection::from_report(&decision));
    }

    report.passed = all_agree;
    Ok(report)
}

/// `verify`: run the library's invariant suite and report one row per check.
pub fn cmd_verify(cfg: &RunConfig) -> Result<Report> {
    let mut report = Report::skeleton("verify", cfg);
    let inject = cfg.inject.unwrap_or(false);
    let check_cfg = CheckConfig {
        dim: cfg.dim.unwrap_or_else(|| CheckConfig::default().dim),
        seed: report.seed,
        perturbation: if inject { INJECTION } else { 0.0 },
    };
    if inject {
        report.notes.push(format!(
            "fault injection active: {INJECTION:e} added to one matrix entry of the first \
             check of each module"
        ));
    }
    let results = checks::run_suite(cfg.module.as_deref(), &check_cfg)?;
    report.passed = checks::all_passed(&results);
    if !report.passed {
        let failing: Vec<String> = results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| format!("{}:{}", r.module, r.name))
            .collect();
        report.notes.push(format!("failing invariants: {}", failing.join(", ")));
    }
    report.checks = results.iter().map(CheckRow::from_result).collect();
    Ok(report)
}

/// Text listing for `gallery list`.
pub fn gallery_listing() -> String {
    let catalog = gallery::catalog();
    let mut out = String::new();
    for entry in &GALLERY_TABLE {
        let summary = catalog
            .iter()
            .find(|(name, _)| *name == entry.name)
            .map(|(_, s)| *s)
            .unwrap_or("");
        out.push_str(&format!("{}\n", entry.name));
        out.push_str(&format!("    {summary}\n"));
        out.push_str(&format!("    variants (--g): {}\n", entry.variants.join(", ")));
        out.push_str(&format!("    flags: {}\n", entry.flags));
    }
    out
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Emit the JSON report (file or stdout) and any CSV sidecars.
pub fn emit_outputs(report: &Report, cfg: &RunConfig) -> Result<()> {
    let json = report.to_json();
    match &cfg.out {
        Some(path) => {
            write_file(Path::new(path), &json)?;
            println!(
                "{} report written to {path} (passed = {})",
                report.command, report.passed
            );
        }
        None => print!("{json}"),
    }

    if let Some(dir) = &cfg.csv_dir {
        let dir = Path::new(dir);
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        // The effective config rides along, so the sidecar directory is
        // self-contained: `--config <command>_config.toml` reproduces the run.
        write_file(
            &dir.join(format!("{}_config.toml", report.command)),
            &cfg.emit(),
        )?;
        if let Some(classification) = &report.classification {
            write_file(
                &dir.join(format!("{}_bounds.csv", report.command)),
                &report::bounds_csv(&classification.levels),
            )?;
        }
        if !report.transform_sweep.is_empty() {
            write_file(
                &dir.join(format!("{}_sweep.csv", report.command)),
                &report::sweep_csv(&report.transform_sweep),
            )?;
        }
        if !report.checks.is_empty() {
            write_file(
                &dir.join(format!("{}_checks.csv", report.command)),
                &report::checks_csv(&report.checks),
            )?;
        }
    }
    Ok(())
}
