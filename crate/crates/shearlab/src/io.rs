//! JSON interchange documents for series and harmonic maps, plus the
//! report envelope and fixed-significant-digit formatting used by the CLI.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ComplexRat, ExactSeries};
use crate::harmonic::HarmonicMap;
use crate::series::PowerSeries;

/// Version stamped on every emitted report.
pub const SCHEMA_VERSION: u32 = 1;

/// `{"order": N, "coeffs": [[re, im], ...]}`, with the exact-rational
/// variant carrying `"coeffs_exact": [["p/q", "r/s"], ...]` instead (or in
/// addition).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeffs_exact: Option<Vec<[String; 2]>>,
}

impl SeriesDoc {
    pub fn from_series(f: &PowerSeries) -> Self {
        Self {
            order: f.order(),
            coeffs: Some(f.coeffs().iter().map(|c| [c.re, c.im]).collect()),
            coeffs_exact: None,
        }
    }

    pub fn from_exact(f: &ExactSeries) -> Self {
        Self {
            order: f.order(),
            coeffs: None,
            coeffs_exact: Some(
                f.coeffs()
                    .iter()
                    .map(|c| [ComplexRat::fmt_part(&c.re), ComplexRat::fmt_part(&c.im)])
                    .collect(),
            ),
        }
    }

    pub fn to_series(&self) -> Result<PowerSeries> {
        if let Some(coeffs) = &self.coeffs {
            if coeffs.len() != self.order + 1 {
                return Err(Error::Document(format!(
                    "order {} does not match {} coefficients",
                    self.order,
                    coeffs.len()
                )));
            }
            return PowerSeries::new(
                coeffs.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
            );
        }
        self.to_exact()?.to_float()
    }

    pub fn to_exact(&self) -> Result<ExactSeries> {
        let Some(exact) = &self.coeffs_exact else {
            return Err(Error::Document("document has no coeffs_exact".into()));
        };
        if exact.len() != self.order + 1 {
            return Err(Error::Document(format!(
                "order {} does not match {} exact coefficients",
                self.order,
                exact.len()
            )));
        }
        ExactSeries::new(
            exact
                .iter()
                .map(|[re, im]| {
                    Ok(ComplexRat {
                        re: ComplexRat::parse_part(re)?,
                        im: ComplexRat::parse_part(im)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

/// `{"h": <series doc>, "g": <series doc>}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HarmonicDoc {
    pub h: SeriesDoc,
    pub g: SeriesDoc,
}

impl HarmonicDoc {
    pub fn from_map(f: &HarmonicMap) -> Self {
        Self { h: SeriesDoc::from_series(f.h()), g: SeriesDoc::from_series(f.g()) }
    }

    pub fn to_map(&self) -> Result<HarmonicMap> {
        HarmonicMap::new(self.h.to_series()?, self.g.to_series()?)
    }
}

/// Wraps a report body in the versioned envelope.
pub fn envelope(kind: &str, data: serde_json::Value) -> serde_json::Value {
    serde_json::json!({ "schema": SCHEMA_VERSION, "kind": kind, "data": data })
}

/// Fixed (non-scientific) notation with `sig` significant digits.
pub fn fmt_sig(value: f64, sig: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{:.*}", sig.saturating_sub(1), 0.0);
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - magnitude).clamp(0, 17) as usize;
    format!("{value:.decimals$}")
}
