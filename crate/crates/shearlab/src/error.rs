//! Error type shared by every module of the crate.

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("series needs at least one coefficient")]
    EmptySeries,

    #[error("coefficient at index {index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("series is not normalized (requires c_0 = 0 and c_1 = 1)")]
    NotNormalized,

    #[error("negative operator power requires a zero constant term")]
    NegativePowerOfConstant,

    #[error("coefficient at index {index} is below the zero floor; not invertible")]
    ZeroCoefficient { index: usize },

    #[error("cannot differentiate a constant series")]
    DerivativeOfConstant,

    #[error("partial sum index {p} out of range 1..={order}")]
    PartialSumRange { p: usize, order: usize },

    #[error("evaluation point {z} lies outside the open unit disk")]
    OutsideDisk { z: Complex64 },

    #[error("constant term must vanish for division by z")]
    ConstantTermNotZero,

    #[error("operands have different truncation orders ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dilatation degenerate at {z}: |h'| below floor")]
    DegenerateDilatation { z: Complex64 },

    #[error("probe invalidated: denominator below floor at {} grid point(s), first at {first}", count)]
    ProbeDegenerate { count: usize, first: Complex64 },

    #[error("unknown scenario id `{0}`")]
    UnknownScenario(String),

    #[error("unknown weight preset `{0}`")]
    UnknownWeights(String),

    #[error("unknown map name `{0}`")]
    UnknownName(String),

    #[error("malformed document: {0}")]
    Document(String),
}
