//! Truncated power-series arithmetic over complex coefficients.
//!
//! A [`PowerSeries`] holds the coefficients `c_0 .. c_N` of a Taylor
//! expansion about the origin, with `c_k` at index `k`. All binary
//! operations truncate to the shorter operand; nothing is ever silently
//! zero-extended. Values are immutable after construction and every
//! operation is a pure function.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for the `c_0 = 0, c_1 = 1` normalization check.
pub const NORMALIZED_TOL: f64 = 1e-12;

/// A power series truncated at a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Builds a series from raw coefficients, `c_k` at index `k`.
    /// Rejects empty input and non-finite entries.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        for (index, c) in coeffs.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { index });
            }
        }
        Ok(Self { coeffs })
    }

    /// Builds a series from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The zero series of the given truncation order.
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Complex64::ZERO; order + 1] }
    }

    /// A single term `c z^k`, truncated at `order` (requires `k <= order`).
    pub fn monomial(order: usize, k: usize, c: Complex64) -> Result<Self> {
        if k > order {
            return Err(Error::InvalidParameter(format!(
                "monomial degree {k} exceeds order {order}"
            )));
        }
        let mut coeffs = vec![Complex64::ZERO; order + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Builds coefficients by evaluating `f(k)` for `k = 0..=order`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize) -> Complex64) -> Self {
        Self { coeffs: (0..=order).map(|k| f(k)).collect() }
    }

    /// Truncation order `N` (the degree of the last stored coefficient).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Whether `c_0 = 0` and `c_1 = 1` within [`NORMALIZED_TOL`].
    pub fn is_normalized(&self) -> bool {
        self.coeffs.len() >= 2
            && self.coeffs[0].norm() <= NORMALIZED_TOL
            && (self.coeffs[1] - Complex64::ONE).norm() <= NORMALIZED_TOL
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized)
        }
    }

    /// Largest coefficient modulus.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Copy truncated to `order` (which must not exceed the current order).
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order >= self.coeffs.len() {
            return Err(Error::InvalidParameter(format!(
                "cannot extend order {} to {order}",
                self.order()
            )));
        }
        Ok(Self { coeffs: self.coeffs[..=order].to_vec() })
    }

    /// Coefficient-wise operator `c_k -> k^n c_k` for `k >= 1`.
    ///
    /// For `n >= 0` the constant term is preserved; for `n < 0` it must
    /// already vanish (the inverse of a constant term is undefined) and is
    /// forced to zero in the output.
    pub fn salagean(&self, n: i32) -> Result<Self> {
        if n < 0 && self.coeffs[0].norm() != 0.0 {
            return Err(Error::NegativePowerOfConstant);
        }
        let mut coeffs = self.coeffs.clone();
        if n < 0 {
            coeffs[0] = Complex64::ZERO;
        }
        for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
            *c *= (k as f64).powi(n);
        }
        Self::new(coeffs)
    }

    /// Coefficient-wise product, truncated to the shorter operand.
    pub fn hadamard(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|k| self.coeffs[k] * other.coeffs[k]).collect(),
        }
    }

    /// Coefficient-wise inverse on indices `1..=N`; the constant term of the
    /// result is zero, so `f.hadamard(&f.hadamard_inverse()?)` is the
    /// truncated geometric series.
    ///
    /// A coefficient counts as a structural zero when its modulus falls below
    /// `1e-300` scaled by the largest coefficient modulus.
    pub fn hadamard_inverse(&self) -> Result<Self> {
        let floor = 1e-300 * self.max_abs_coeff();
        let mut coeffs = vec![Complex64::ZERO; self.coeffs.len()];
        for k in 1..self.coeffs.len() {
            if self.coeffs[k].norm() <= floor {
                return Err(Error::ZeroCoefficient { index: k });
            }
            coeffs[k] = self.coeffs[k].finv();
        }
        Self::new(coeffs)
    }

    /// Full product `c_k = sum_j f_j g_{k-j}`, truncated to the shorter
    /// operand. Zero terms of the sparser operand are skipped, so expanding a
    /// rational map (short numerator times a long reciprocal-power series)
    /// costs `O(nnz * N)`.
    pub fn cauchy_product(&self, other: &Self) -> Self {
        let (sparse, dense) = if self.nonzero_count() <= other.nonzero_count() {
            (self, other)
        } else {
            (other, self)
        };
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![Complex64::ZERO; n];
        for (j, &fj) in sparse.coeffs.iter().enumerate().take(n) {
            if fj == Complex64::ZERO {
                continue;
            }
            for k in j..n {
                coeffs[k] += fj * dense.coeffs[k - j];
            }
        }
        Self { coeffs }
    }

    fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| **c != Complex64::ZERO).count()
    }

    /// Termwise derivative; the order drops by one.
    pub fn derivative(&self) -> Result<Self> {
        if self.coeffs.len() < 2 {
            return Err(Error::DerivativeOfConstant);
        }
        Ok(Self {
            coeffs: (1..self.coeffs.len())
                .map(|k| self.coeffs[k] * k as f64)
                .collect(),
        })
    }

    /// Horner evaluation of the truncated polynomial; only points of the
    /// open unit disk are accepted.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() >= 1.0 {
            return Err(Error::OutsideDisk { z });
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Zeroes every coefficient above index `p`; the truncation order is
    /// unchanged. Requires `1 <= p <= N`.
    pub fn partial_sum(&self, p: usize) -> Result<Self> {
        if p < 1 || p > self.order() {
            return Err(Error::PartialSumRange { p, order: self.order() });
        }
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut().skip(p + 1) {
            *c = Complex64::ZERO;
        }
        Ok(Self { coeffs })
    }

    /// Coefficient-wise sum, truncated to the shorter operand.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|k| self.coeffs[k] + other.coeffs[k]).collect(),
        }
    }

    /// Coefficient-wise difference, truncated to the shorter operand.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        Self {
            coeffs: (0..n).map(|k| self.coeffs[k] - other.coeffs[k]).collect(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: Complex64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&x| x * c).collect() }
    }

    /// Conjugates every coefficient.
    pub fn conj_coeffs(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x.conj()).collect() }
    }

    /// Largest modulus of a coefficient difference against `other`
    /// (compared up to the shorter order, with the longer tail counted).
    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    /// Like [`max_coeff_distance`](Self::max_coeff_distance) but with each
    /// difference scaled by `max(1, |reference coefficient|)`, so growing
    /// coefficients are compared at their own magnitude.
    pub fn max_relative_distance(&self, reference: &Self) -> f64 {
        let n = self.coeffs.len().max(reference.coeffs.len());
        (0..n)
            .map(|k| {
                (self.coeff(k) - reference.coeff(k)).norm() / reference.coeff(k).norm().max(1.0)
            })
            .fold(0.0, f64::max)
    }
}

/// The truncated geometric series `z + z^2 + ... + z^N` (no constant term);
/// identity of the coefficient-wise product.
pub fn geometric(order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |k| {
        if k == 0 { Complex64::ZERO } else { Complex64::ONE }
    })
}

/// `l_p` truncated at `order`: ones at indices `1..=p`, zeros above.
pub fn geometric_partial(order: usize, p: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |k| {
        if (1..=p).contains(&k) { Complex64::ONE } else { Complex64::ZERO }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn series(v: &[f64]) -> PowerSeries {
        PowerSeries::from_real(v).unwrap()
    }

    /// Long-division oracle: expands `num / den` as a power series by
    /// recursive division, independently of `cauchy_product`.
    fn long_division(num: &[f64], den: &[f64], order: usize) -> PowerSeries {
        assert!(den[0] != 0.0);
        let mut q = vec![0.0; order + 1];
        for k in 0..=order {
            let mut acc = if k < num.len() { num[k] } else { 0.0 };
            for j in 1..=k.min(den.len() - 1) {
                acc -= den[j] * q[k - j];
            }
            q[k] = acc / den[0];
        }
        PowerSeries::from_real(&q).unwrap()
    }

    #[test]
    fn salagean_first_power() {
        let f = series(&[0.0, 1.0, 1.0]);
        let d = f.salagean(1).unwrap();
        assert_eq!(d.coeffs(), series(&[0.0, 1.0, 2.0]).coeffs());
    }

    #[test]
    fn salagean_second_power() {
        let f = series(&[0.0, 1.0, 0.25, 1.0 / 9.0]);
        let d = f.salagean(2).unwrap();
        assert!(d.max_coeff_distance(&series(&[0.0, 1.0, 1.0, 1.0])) < 1e-15);
    }

    #[test]
    fn salagean_negative_inverts_koebe_kernel() {
        let n = 12;
        let f = PowerSeries::from_fn(n, |k| c(k as f64, 0.0));
        let inv = f.salagean(-1).unwrap();
        assert!(inv.max_coeff_distance(&geometric(n)) < 1e-15);
    }

    #[test]
    fn salagean_negative_rejects_constant_term() {
        let f = series(&[1.0, 1.0]);
        assert!(matches!(f.salagean(-1), Err(Error::NegativePowerOfConstant)));
    }

    #[test]
    fn hadamard_geometric_is_identity() {
        let f = PowerSeries::new((0..=9).map(|k| c(k as f64, 0.3 * k as f64)).collect()).unwrap();
        let conv = f.hadamard(&geometric(9));
        // constant term of the identity is zero
        let mut expect = f.clone();
        expect = PowerSeries::new(
            expect
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, &v)| if k == 0 { Complex64::ZERO } else { v })
                .collect(),
        )
        .unwrap();
        assert!(conv.max_coeff_distance(&expect) < 1e-15);
    }

    #[test]
    fn hadamard_kernel_pair_gives_geometric() {
        // coefficient k a^(k-1) against 1/(k a^(k-1)), |a| = 1
        let a = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let n = 24;
        let star = PowerSeries::from_fn(n, |k| {
            if k == 0 { Complex64::ZERO } else { a.powu(k as u32 - 1) * k as f64 }
        });
        let log = PowerSeries::from_fn(n, |k| {
            if k == 0 { Complex64::ZERO } else { (a.powu(k as u32 - 1) * k as f64).finv() }
        });
        assert!(star.hadamard(&log).max_coeff_distance(&geometric(n)) < 1e-14);
    }

    #[test]
    fn hadamard_integer_kernels() {
        let n = 16;
        let koebe = PowerSeries::from_fn(n, |k| c(k as f64, 0.0));
        let log = PowerSeries::from_fn(n, |k| {
            if k == 0 { Complex64::ZERO } else { c(1.0 / k as f64, 0.0) }
        });
        assert!(koebe.hadamard(&log).max_coeff_distance(&geometric(n)) < 1e-15);
    }

    #[test]
    fn hadamard_inverse_of_koebe_kernel() {
        let n = 10;
        let f = PowerSeries::from_fn(n, |k| c(k as f64, 0.0));
        let inv = f.hadamard_inverse().unwrap();
        let expect = PowerSeries::from_fn(n, |k| {
            if k == 0 { Complex64::ZERO } else { c(1.0 / k as f64, 0.0) }
        });
        assert!(inv.max_coeff_distance(&expect) < 1e-15);
    }

    #[test]
    fn hadamard_inverse_identity_self_inverse() {
        let g = geometric(8);
        assert!(g.hadamard_inverse().unwrap().max_coeff_distance(&g) < 1e-15);
    }

    #[test]
    fn hadamard_inverse_roundtrip_squares() {
        let n = 14;
        let f = PowerSeries::from_fn(n, |k| c((k * k) as f64, 0.0));
        let inv = f.hadamard_inverse().unwrap();
        assert!(f.hadamard(&inv).max_coeff_distance(&geometric(n)) < 1e-15);
    }

    #[test]
    fn hadamard_inverse_rejects_structural_zero() {
        let f = series(&[0.0, 1.0, 0.0, 3.0]);
        assert!(matches!(f.hadamard_inverse(), Err(Error::ZeroCoefficient { index: 2 })));
    }

    #[test]
    fn cauchy_product_difference_of_squares() {
        let f = series(&[1.0, 1.0, 0.0]);
        let g = series(&[1.0, -1.0, 0.0]);
        assert!(f.cauchy_product(&g).max_coeff_distance(&series(&[1.0, 0.0, -1.0])) < 1e-15);
    }

    #[test]
    fn cauchy_product_shift_of_reciprocal_square() {
        let n = 12;
        let z = PowerSeries::monomial(n, 1, Complex64::ONE).unwrap();
        let rec2 = PowerSeries::from_fn(n, |k| c((k + 1) as f64, 0.0));
        let expect = PowerSeries::from_fn(n, |k| c(k as f64, 0.0));
        assert!(z.cauchy_product(&rec2).max_coeff_distance(&expect) < 1e-15);
    }

    #[test]
    fn cauchy_product_matches_long_division_oracle() {
        // (z - z^2/2) / (1 - z)^2 -> coefficients (k+1)/2
        let n = 20;
        let oracle = long_division(&[0.0, 1.0, -0.5], &[1.0, -2.0, 1.0], n);
        let mut padded = vec![0.0; n + 1];
        padded[..3].copy_from_slice(&[0.0, 1.0, -0.5]);
        let num = series(&padded);
        let rec2 = PowerSeries::from_fn(n, |k| c((k + 1) as f64, 0.0));
        let product = num.cauchy_product(&rec2);
        assert!(product.max_coeff_distance(&oracle) < 1e-12);
        let closed = PowerSeries::from_fn(n, |k| {
            if k == 0 { Complex64::ZERO } else { c((k as f64 + 1.0) / 2.0, 0.0) }
        });
        assert!(product.max_coeff_distance(&closed) < 1e-12);
    }

    #[test]
    fn derivative_drops_order() {
        let f = series(&[0.0, 1.0, 0.5]);
        let d = f.derivative().unwrap();
        assert_eq!(d.order(), 1);
        assert!(d.max_coeff_distance(&series(&[1.0, 1.0])) < 1e-15);
    }

    #[test]
    fn derivative_of_log_kernel() {
        let n = 10;
        let f = PowerSeries::from_fn(n, |k| {
            if k == 0 { Complex64::ZERO } else { c(1.0 / k as f64, 0.0) }
        });
        let d = f.derivative().unwrap();
        let ones = PowerSeries::from_fn(n - 1, |_| Complex64::ONE);
        assert!(d.max_coeff_distance(&ones) < 1e-15);
    }

    #[test]
    fn derivative_rejects_constant() {
        let f = series(&[3.0]);
        assert!(matches!(f.derivative(), Err(Error::DerivativeOfConstant)));
    }

    #[test]
    fn evaluate_at_origin_and_geometric_sum() {
        let f = series(&[0.0, 1.0, 0.5]);
        assert_eq!(f.evaluate(Complex64::ZERO).unwrap(), Complex64::ZERO);
        let n = 30;
        let g = geometric(n);
        let v = g.evaluate(c(0.5, 0.0)).unwrap();
        assert!((v.re - (1.0 - 0.5f64.powi(n as i32))).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn evaluate_log_kernel_matches_ln2() {
        let n = 40;
        let f = PowerSeries::from_fn(n, |k| {
            if k == 0 { Complex64::ZERO } else { c(1.0 / k as f64, 0.0) }
        });
        let v = f.evaluate(c(0.5, 0.0)).unwrap();
        let tail = 0.5f64.powi(n as i32) / n as f64;
        assert!((v.re - 2.0f64.ln()).abs() <= tail);
    }

    #[test]
    fn evaluate_rejects_boundary() {
        let f = series(&[0.0, 1.0]);
        assert!(matches!(f.evaluate(Complex64::ONE), Err(Error::OutsideDisk { .. })));
    }

    #[test]
    fn partial_sum_zeroes_tail() {
        let n = 6;
        let f = PowerSeries::from_fn(n, |k| {
            if k == 0 { Complex64::ZERO } else { c(1.0 / (k * k * k) as f64, 0.0) }
        });
        let p = f.partial_sum(2).unwrap();
        assert_eq!(p.order(), n);
        assert!((p.coeff(2).re - 0.125).abs() < 1e-15);
        assert_eq!(p.coeff(3), Complex64::ZERO);
        // full-length partial sum is the identity operation
        assert_eq!(f.partial_sum(n).unwrap(), f);
    }

    #[test]
    fn partial_sum_inverse_squares() {
        let f = PowerSeries::from_fn(8, |k| {
            if k == 0 { Complex64::ZERO } else { c(1.0 / (k * k) as f64, 0.0) }
        });
        let p = f.partial_sum(3).unwrap();
        let expect = series(&[0.0, 1.0, 0.25, 1.0 / 9.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(p.max_coeff_distance(&expect) < 1e-15);
    }

    #[test]
    fn partial_sum_rejects_out_of_range() {
        let f = series(&[0.0, 1.0, 1.0]);
        assert!(f.partial_sum(0).is_err());
        assert!(f.partial_sum(3).is_err());
    }

    #[test]
    fn binary_ops_truncate_to_shorter() {
        let f = series(&[0.0, 1.0, 2.0, 3.0]);
        let g = series(&[0.0, 1.0]);
        assert_eq!(f.hadamard(&g).order(), 1);
        assert_eq!(f.add(&g).order(), 1);
        assert_eq!(f.cauchy_product(&g).order(), 1);
    }

    #[test]
    fn rejects_non_finite() {
        let res = PowerSeries::new(vec![Complex64::ZERO, c(f64::NAN, 0.0)]);
        assert!(matches!(res, Err(Error::NonFiniteCoefficient { index: 1 })));
    }
}
