//! External family files: a small JSON schema for vector families.
//!
//! The schema mirrors [`semiframe::frames::VectorFamily`] directly:
//!
//! ```json
//! {
//!   "dim": 2,
//!   "points": ["0", "1"],
//!   "weights": [1.0, 1.0],
//!   "vectors": [
//!     [[1.0, 0.0], [1.0, 0.0]],
//!     [[1.0, 0.0], [-1.0, 0.0]]
//!   ],
//!   "domain": [[[1.0, 0.0], [0.0, 0.0]]]
//! }
//! ```
//!
//! `vectors[i]` lists the `dim` coordinates of the `i`-th family member as
//! `[re, im]` pairs; `points`, `weights`, and `vectors` must have equal
//! lengths.  The optional `domain` is a spanning set (same coordinate
//! encoding) for the subspace on which the family is declared, used by the
//! generalized operators and by the metric-transformability decision.
//!
//! Structural problems (length mismatches, non-finite entries, nonpositive
//! weights) are reported with the offending index so a hand-written file can
//! be fixed without guesswork.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use semiframe::frames::{MeasureGrid, VectorFamily};
use semiframe::hilbert::CVec;

use crate::error::{CliError, Result};

/// Serde image of a family file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    /// Ambient dimension of every vector.
    pub dim: usize,
    /// Grid-point labels, one per family member.
    pub points: Vec<String>,
    /// Strictly positive quadrature weights, one per family member.
    pub weights: Vec<f64>,
    /// Family members: `dim` coordinates each, encoded as `[re, im]`.
    pub vectors: Vec<Vec<[f64; 2]>>,
    /// Optional spanning set of the declared domain, same encoding.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<Vec<[f64; 2]>>>,
}

fn decode_vector(dim: usize, what: &str, index: usize, coords: &[[f64; 2]]) -> Result<CVec> {
    if coords.len() != dim {
        return Err(CliError::FamilyFile(format!(
            "{what} {index} has {} coordinates, expected dim = {dim}",
            coords.len()
        )));
    }
    for (c, pair) in coords.iter().enumerate() {
        if !pair[0].is_finite() || !pair[1].is_finite() {
            return Err(CliError::FamilyFile(format!(
                "{what} {index}, coordinate {c}: entries must be finite, got [{}, {}]",
                pair[0], pair[1]
            )));
        }
    }
    Ok(CVec::from_iterator(
        dim,
        coords.iter().map(|p| Complex64::new(p[0], p[1])),
    ))
}

impl FamilyFile {
    /// Parse a JSON document.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::FamilyFile(e.to_string()))
    }

    /// Read and validate a family file from disk.
    pub fn load(path: &Path) -> Result<VectorFamily> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)?.into_family()
    }

    /// Validate the structure and build the in-memory family.
    pub fn into_family(self) -> Result<VectorFamily> {
        if self.dim == 0 {
            return Err(CliError::FamilyFile("dim must be at least 1".into()));
        }
        if self.points.len() != self.weights.len() || self.points.len() != self.vectors.len() {
            return Err(CliError::FamilyFile(format!(
                "points ({}), weights ({}) and vectors ({}) must have equal lengths",
                self.points.len(),
                self.weights.len(),
                self.vectors.len()
            )));
        }
        if self.vectors.is_empty() {
            return Err(CliError::FamilyFile("the family has no vectors".into()));
        }
        for (i, &w) in self.weights.iter().enumerate() {
            if !w.is_finite() || w <= 0.0 {
                return Err(CliError::FamilyFile(format!(
                    "weight {i} must be finite and positive, got {w}"
                )));
            }
        }
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, coords)| decode_vector(self.dim, "vector", i, coords))
            .collect::<Result<Vec<_>>>()?;
        let grid = MeasureGrid::new(self.points, self.weights)?;
        let family = VectorFamily::new(grid, vectors)?;
        match self.domain {
            None => Ok(family),
            Some(spanning) => {
                let span = spanning
                    .iter()
                    .enumerate()
                    .map(|(i, coords)| decode_vector(self.dim, "domain vector", i, coords))
                    .collect::<Result<Vec<_>>>()?;
                Ok(family.with_domain(span)?)
            }
        }
    }
}
