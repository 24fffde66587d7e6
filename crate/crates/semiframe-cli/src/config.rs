//! Run configuration: TOML files, flag overrides, and the seed chain.
//!
//! A command's inputs can come from three layers, in increasing precedence:
//!
//! 1. a TOML config file passed with `--config`,
//! 2. the `SEMIFRAME_SEED` environment variable (seed only),
//! 3. command-line flags.
//!
//! The layers are merged field by field — a later layer wins wherever it
//! sets a field — and the merged [`RunConfig`] is echoed verbatim into every
//! report, so a report always records the exact inputs (including the
//! resolved seed) that produced it.
//!
//! The struct is deliberately flat and fully optional: a config file may set
//! any subset of fields, and [`RunConfig::emit`] followed by
//! [`RunConfig::parse`] reproduces the value exactly.

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Serializable bag of command inputs.  Fields that do not apply to a given
/// command are simply ignored by it; `deny_unknown_fields` still rejects
/// misspelled keys at parse time.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Gallery family name (`exp`, `rkhs`, `spherical`, `pathological`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gallery: Option<String>,
    /// Variant selector within the gallery family: a weight (`one`,
    /// `inv_x`, `x`), an RKHS weight (`const_two`, `one_plus_x`), a
    /// spherical symbol (`one`, `one_plus_l_squared`, `inv_one_plus_l`),
    /// or a counterexample (`e1_plus_en`, `en_from_2`, `rank_one_bessel`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    /// Modulation step for the exponential family; must be a reciprocal
    /// integer in `(0, 1]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    /// Weight exponent for the RKHS scale family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i32>,
    /// Base size of a counterexample family (halved repeatedly to form its
    /// truncation scan), or the finest grid when `levels` is absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    /// Number of refinement levels in the truncation scan.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    /// Coarsest grid size of the refinement ladder (doubled per level).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_size: Option<usize>,
    /// Path to an external family file (JSON); mutually exclusive with
    /// `gallery`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    /// Transform exponents `k` to sweep.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_grid: Option<Vec<f64>>,
    /// Weight exponents `m` to sweep.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_grid: Option<Vec<f64>>,
    /// Also run the metric-transformability decision procedure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<bool>,
    /// Restrict `verify` to a single module.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    /// Ambient dimension for the `verify` invariant suite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Inject a small perturbation into one intermediate per module so that
    /// `verify` demonstrably fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inject: Option<bool>,
    /// Seed for every random probe drawn by the command.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Where to write the JSON report (stdout when absent).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    /// Directory for CSV sidecar tables (none written when absent).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv_dir: Option<String>,
}

impl RunConfig {
    /// Parse a TOML config document.  Syntax and unknown-field errors keep
    /// the parser's line/column context.
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::ConfigParse(e.to_string()))
    }

    /// Serialize back to TOML.  `parse(emit(c)) == c` for every config.
    pub fn emit(&self) -> String {
        toml::to_string(self).expect("RunConfig serializes to TOML")
    }

    /// Overlay `upper` on `self`: every field set in `upper` wins.
    pub fn merge_from(&mut self, upper: RunConfig) {
        macro_rules! take {
            ($field:ident) => {
                if upper.$field.is_some() {
                    self.$field = upper.$field;
                }
            };
        }
        take!(gallery);
        take!(g);
        take!(b);
        take!(n);
        take!(size);
        take!(levels);
        take!(base_size);
        take!(family);
        take!(k_grid);
        take!(m_grid);
        take!(metric);
        take!(module);
        take!(dim);
        take!(inject);
        take!(seed);
        take!(out);
        take!(csv_dir);
    }

    /// Build the effective config from the three layers.  `env_seed` is the
    /// raw value of `SEMIFRAME_SEED` if present.
    pub fn layered(
        file: Option<RunConfig>,
        env_seed: Option<&str>,
        flags: RunConfig,
    ) -> Result<Self> {
        let mut cfg = file.unwrap_or_default();
        if let Some(raw) = env_seed {
            let seed: u64 = raw.trim().parse().map_err(|_| {
                CliError::ConfigParse(format!(
                    "SEMIFRAME_SEED must be an unsigned integer, got '{raw}'"
                ))
            })?;
            cfg.seed = Some(seed);
        }
        cfg.merge_from(flags);
        Ok(cfg)
    }

    /// Seed actually used by the command (and recorded in the report).
    pub fn resolved_seed(&self) -> u64 {
        self.seed.unwrap_or(semiframe::tol::DEFAULT_SEED)
    }
}
