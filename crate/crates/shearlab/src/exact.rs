//! Exact-rational twin of the float series: the same truncated-series
//! algebra over complex numbers with `BigRational` parts.
//!
//! Used for coefficient regression where the expected values are exact
//! fractions. Only the operations needed for that purpose are provided;
//! evaluation and the disk probes stay in the float layer.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::PowerSeries;

/// A complex number with exact rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRat {
    pub fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self { re: BigRational::one(), im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    /// `p/q` as a real rational.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Formats one rational part as `p/q` (or plain `p` when integral).
    pub fn fmt_part(part: &BigRational) -> String {
        if part.denom().is_one() {
            part.numer().to_string()
        } else {
            format!("{}/{}", part.numer(), part.denom())
        }
    }

    /// Parses `p/q` or a bare integer.
    pub fn parse_part(text: &str) -> Result<BigRational> {
        let make = |s: &str| -> Option<BigInt> { s.trim().parse().ok() };
        match text.split_once('/') {
            Some((p, q)) => {
                let (p, q) = (make(p), make(q));
                match (p, q) {
                    (Some(p), Some(q)) if !q.is_zero() => Ok(BigRational::new(p, q)),
                    _ => Err(Error::Document(format!("bad rational `{text}`"))),
                }
            }
            None => make(text)
                .map(BigRational::from_integer)
                .ok_or_else(|| Error::Document(format!("bad rational `{text}`"))),
        }
    }
}

/// Truncated power series with exact rational complex coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSeries {
    coeffs: Vec<ComplexRat>,
}

impl ExactSeries {
    pub fn new(coeffs: Vec<ComplexRat>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![ComplexRat::zero(); order + 1] }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize) -> ComplexRat) -> Self {
        Self { coeffs: (0..=order).map(|k| f(k)).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> ComplexRat {
        self.coeffs.get(k).cloned().unwrap_or_else(ComplexRat::zero)
    }

    pub fn coeffs(&self) -> &[ComplexRat] {
        &self.coeffs
    }

    pub fn hadamard(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|k| self.coeffs[k].mul(&other.coeffs[k])).collect(),
        }
    }

    pub fn cauchy_product(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![ComplexRat::zero(); n];
        for (j, fj) in self.coeffs.iter().enumerate().take(n) {
            if fj.is_zero() {
                continue;
            }
            for (k, slot) in coeffs.iter_mut().enumerate().skip(j) {
                *slot = slot.add(&fj.mul(&other.coeffs[k - j]));
            }
        }
        Self { coeffs }
    }

    pub fn partial_sum(&self, p: usize) -> Result<Self> {
        if p < 1 || p > self.order() {
            return Err(Error::PartialSumRange { p, order: self.order() });
        }
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut().skip(p + 1) {
            *c = ComplexRat::zero();
        }
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|k| self.coeffs[k].sub(&other.coeffs[k])).collect(),
        }
    }

    pub fn to_float(&self) -> Result<PowerSeries> {
        PowerSeries::new(self.coeffs.iter().map(|c| c.to_complex64()).collect())
    }
}

/// Geometric series `z + ... + z^N` with exact coefficients.
pub fn geometric_exact(order: usize) -> ExactSeries {
    ExactSeries::from_fn(order, |k| {
        if k == 0 { ComplexRat::zero() } else { ComplexRat::one() }
    })
}

/// Exact polylogarithm-type kernel: coefficient `1/k^m` at `z^k`.
pub fn polylog_exact(m: u32, order: usize) -> ExactSeries {
    ExactSeries::from_fn(order, |k| {
        if k == 0 {
            ComplexRat::zero()
        } else {
            let kk = BigInt::from(k).pow(m);
            ComplexRat { re: BigRational::new(BigInt::one(), kk), im: BigRational::zero() }
        }
    })
}

/// Exact expansion of `1/(1-z)^m`: coefficient `C(k+m-1, m-1)`.
pub fn reciprocal_power_exact(m: u32, order: usize) -> ExactSeries {
    ExactSeries::from_fn(order, |k| {
        let mut acc = BigRational::one();
        for j in 1..m {
            acc *= BigRational::new(BigInt::from(k as u64 + j as u64), BigInt::from(j));
        }
        ComplexRat { re: acc, im: BigRational::zero() }
    })
}

/// Builds a series from low-degree rational numerator coefficients over
/// `(1-z)^m`.
pub fn rational_over_unit_pole(numerator: &[ComplexRat], m: u32, order: usize) -> ExactSeries {
    let mut num = vec![ComplexRat::zero(); order + 1];
    for (k, c) in numerator.iter().enumerate().take(order + 1) {
        num[k] = c.clone();
    }
    ExactSeries { coeffs: num }.cauchy_product(&reciprocal_power_exact(m, order))
}
