//! Truncated power-series algebra and planar harmonic mappings on the unit
//! disk: Hadamard convolutions, the coefficient-weighting operator `D^n`,
//! shear constructions, coefficient certificates for starlikeness and
//! directional convexity, grid probes for the analytic hypotheses, and a
//! registry of runnable scenarios packaging the supported statements.

pub mod atlas;
pub mod certificates;
pub mod error;
pub mod exact;
pub mod harmonic;
pub mod io;
pub mod numeric;
pub mod series;
pub mod theorems;

pub use error::{Error, Result};
pub use harmonic::HarmonicMap;
pub use series::PowerSeries;
