//! Structured reports: one JSON document per command, plus CSV sidecars.
//!
//! Reports are plain serde structs with fixed field order and `Vec`-only
//! collections, so serialization is deterministic: for a fixed effective
//! config (and therefore a fixed seed) two runs of the same command produce
//! byte-identical JSON except for the `timestamp_unix_secs` field, which is
//! the only value taken from the environment rather than the computation.
//!
//! Numeric residuals that can be non-finite (a failed check reports `inf`)
//! are serialized as formatted strings; everything guaranteed finite stays
//! a JSON number.

use serde::Serialize;

use semiframe::checks::CheckResult;
use semiframe::frames::{Classification, LevelBounds};
use semiframe::genframe::LowerBoundCertificate;
use semiframe::transforms::{
    TransformFlags, TransformVerdict, TransformabilityClause, TransformabilityReport,
};

use crate::config::RunConfig;

/// Name/version stamp of the producing tool.
#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

impl Tool {
    pub fn current() -> Self {
        Tool {
            name: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

/// Top-level report shared by `analyze`, `transform`, and `verify`;
/// sections that do not apply to a command are omitted.
#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: Tool,
    pub command: &'static str,
    /// Wall-clock seconds since the Unix epoch; the only field exempt from
    /// the determinism guarantee.
    pub timestamp_unix_secs: u64,
    /// Seed actually used for every random probe in this run.
    pub seed: u64,
    /// Echo of the effective (merged) configuration.
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<CaseSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSection>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub transform_sweep: Vec<SweepRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricSection>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Overall outcome; `false` means the process exits with code 1.
    pub passed: bool,
}

impl Report {
    /// Fresh skeleton for a command; sections start empty.
    pub fn skeleton(command: &'static str, config: &RunConfig) -> Self {
        let timestamp_unix_secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Report {
            tool: Tool::current(),
            command,
            timestamp_unix_secs,
            seed: config.resolved_seed(),
            config: config.clone(),
            case: None,
            classification: None,
            certificate: None,
            transform_sweep: Vec::new(),
            metric: None,
            checks: Vec::new(),
            notes: Vec::new(),
            passed: true,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("report serializes to JSON");
        text.push('\n');
        text
    }
}

/// Identity of the case under study.
#[derive(Debug, Serialize)]
pub struct CaseSection {
    pub name: String,
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_clause: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Measured classification with its full evidence trail.
#[derive(Debug, Serialize)]
pub struct ClassificationSection {
    pub verdict: String,
    pub total: bool,
    pub upper_diverging: bool,
    pub lower_decaying: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_slope: Option<f64>,
    /// Bounds at the finest truncation.
    pub lower: f64,
    pub upper: f64,
    /// Bound trajectory, one row per refinement level.
    pub levels: Vec<LevelRow>,
    pub notes: Vec<String>,
}

impl ClassificationSection {
    pub fn from_classification(c: &Classification) -> Self {
        let finest = c
            .evidence
            .levels
            .last()
            .expect("classification evidence has at least one level");
        ClassificationSection {
            verdict: c.verdict.to_string(),
            total: c.evidence.total,
            upper_diverging: c.evidence.upper_diverging,
            lower_decaying: c.evidence.lower_decaying,
            upper_slope: c.evidence.upper_slope,
            lower_slope: c.evidence.lower_slope,
            lower: finest.lower,
            upper: finest.upper,
            levels: c.evidence.levels.iter().map(LevelRow::from_bounds).collect(),
            notes: c.evidence.notes.clone(),
        }
    }
}

/// One refinement level of a bound trajectory.
#[derive(Debug, Serialize)]
pub struct LevelRow {
    pub param: f64,
    pub lower: f64,
    pub upper: f64,
}

impl LevelRow {
    pub fn from_bounds(b: &LevelBounds) -> Self {
        LevelRow {
            param: b.param,
            lower: b.lower,
            upper: b.upper,
        }
    }
}

/// The five-statement lower-bound certificate at a tested constant.
#[derive(Debug, Serialize)]
pub struct CertificateSection {
    /// Constant m whose lower-bound statements were evaluated.
    pub tested_bound: f64,
    pub spectral_bound: bool,
    pub form_bound: bool,
    pub coefficient_bound: bool,
    pub image_bound: bool,
    pub inverse_bound: bool,
    /// Whether all five statements returned the same verdict.
    pub consistent: bool,
    /// The common verdict (meaningful when consistent).
    pub holds: bool,
    /// Spectral bound of the generalized frame operator on its domain.
    pub lambda_min: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse_norm: Option<f64>,
}

impl CertificateSection {
    pub fn from_certificate(tested_bound: f64, c: &LowerBoundCertificate) -> Self {
        CertificateSection {
            tested_bound,
            spectral_bound: c.spectral_bound,
            form_bound: c.form_bound,
            coefficient_bound: c.coefficient_bound,
            image_bound: c.image_bound,
            inverse_bound: c.inverse_bound,
            consistent: c.consistent,
            holds: c.holds(),
            lambda_min: c.lambda_min,
            inverse_norm: c.inverse_norm,
        }
    }
}

/// Prediction/measurement flag set of an inverse-power transform.
#[derive(Debug, Serialize)]
pub struct FlagsSection {
    pub bessel: bool,
    pub lower_semiframe: bool,
    pub frame: bool,
    pub parseval: bool,
}

impl FlagsSection {
    fn from_flags(f: &TransformFlags) -> Self {
        FlagsSection {
            bessel: f.is_bessel,
            lower_semiframe: f.is_lower_semiframe,
            frame: f.is_frame,
            parseval: f.is_parseval,
        }
    }
}

/// One cell of the (k, m) agreement matrix.
#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub k: f64,
    pub m: f64,
    pub predicted: FlagsSection,
    pub measured: FlagsSection,
    pub agree: bool,
    /// Weighted bounds at the finest truncation.
    pub lower: f64,
    pub upper: f64,
    pub upper_diverging: bool,
}

impl SweepRow {
    pub fn from_verdict(k: f64, m: f64, v: &TransformVerdict) -> Self {
        SweepRow {
            k,
            m,
            predicted: FlagsSection::from_flags(&v.predicted),
            measured: FlagsSection::from_flags(&v.measured),
            agree: v.agree(),
            lower: v.bounds.lower,
            upper: v.bounds.upper,
            upper_diverging: v.bounds.diverging,
        }
    }
}

/// Documented statement of each metric-transformability clause, echoed into
/// reports so a reader need not look the clause up.
pub fn clause_statement(clause: TransformabilityClause) -> &'static str {
    match clause {
        TransformabilityClause::NotTotalUnboundedOnly => {
            "not total: no metric operator with a bounded inverse can transform the family \
             into a frame; metrics with unbounded inverse are not ruled out"
        }
        TransformabilityClause::BesselNotTotal => {
            "Bessel and not total: no metric operator at all can transform the family into \
             a frame"
        }
        TransformabilityClause::DomainNotDense => {
            "the declared analysis domain spans a proper subspace: no metric operator can \
             transform the family into a frame"
        }
        TransformabilityClause::LowerSemiFrameConstruction => {
            "lower semi-frame with dense analysis domain: the inverse square root of the \
             generalized frame operator transforms the family into a Parseval frame \
             (verified on the output)"
        }
        TransformabilityClause::RangeConstruction => {
            "total, dense analysis domain, and every family vector certified in the range \
             of the generalized frame operator: the inverse square root transforms the \
             family into a Parseval frame (verified on the output)"
        }
        TransformabilityClause::Unresolved => {
            "no impossibility clause applies and no construction could be verified; whether \
             totality plus a dense analysis domain always suffices is an open question and \
             this tool does not claim a resolution"
        }
    }
}

/// Outcome of the metric-transformability decision procedure.
#[derive(Debug, Serialize)]
pub struct MetricSection {
    pub clause: String,
    pub clause_statement: &'static str,
    /// `true`: verified construction; `false`: impossible; absent: undecided.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub possible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parseval_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range_residual: Option<f64>,
    pub notes: Vec<String>,
}

impl MetricSection {
    pub fn from_report(r: &TransformabilityReport) -> Self {
        MetricSection {
            clause: format!("{:?}", r.clause),
            clause_statement: clause_statement(r.clause),
            possible: r.possible,
            parseval_residual: r.parseval_residual,
            range_residual: r.range_residual,
            notes: r.notes.clone(),
        }
    }
}

/// One invariant check of the `verify` suite.
#[derive(Debug, Serialize)]
pub struct CheckRow {
    pub module: &'static str,
    pub name: &'static str,
    /// Max residual over the check's probes, formatted; `inf` marks a
    /// structural failure.
    pub residual: String,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckRow {
    pub fn from_result(r: &CheckResult) -> Self {
        CheckRow {
            module: r.module,
            name: r.name,
            residual: format_residual(r.residual),
            tolerance: r.tolerance,
            passed: r.passed,
            detail: r.detail.clone(),
        }
    }
}

fn format_residual(r: f64) -> String {
    if r.is_finite() {
        format!("{r:.6e}")
    } else {
        r.to_string()
    }
}

/// CSV of a bound trajectory (`analyze` sidecar).
pub fn bounds_csv(levels: &[LevelRow]) -> String {
    let mut out = String::from("param,lower,upper\n");
    for row in levels {
        out.push_str(&format!("{},{},{}\n", row.param, row.lower, row.upper));
    }
    out
}

/// CSV of the (k, m) agreement matrix (`transform` sidecar).
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "k,m,predicted_bessel,predicted_lower,predicted_frame,predicted_parseval,\
         measured_bessel,measured_lower,measured_frame,measured_parseval,agree,\
         lower,upper,upper_diverging\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.k,
            r.m,
            r.predicted.bessel,
            r.predicted.lower_semiframe,
            r.predicted.frame,
            r.predicted.parseval,
            r.measured.bessel,
            r.measured.lower_semiframe,
            r.measured.frame,
            r.measured.parseval,
            r.agree,
            r.lower,
            r.upper,
            r.upper_diverging,
        ));
    }
    out
}

/// CSV of the invariant suite (`verify` sidecar).
pub fn checks_csv(rows: &[CheckRow]) -> String {
    let mut out = String::from("module,name,residual,tolerance,passed\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.module, r.name, r.residual, r.tolerance, r.passed
        ));
    }
    out
}
