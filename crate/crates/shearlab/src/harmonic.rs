//! Planar harmonic mappings `f = h + conj(g)` built from two truncated
//! series, with the convolution, partial-sum, Jacobian and shear-slice
//! operations on them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{PowerSeries, NORMALIZED_TOL};

/// Floor below which `|h'(z)|` makes the dilatation degenerate.
const DILATATION_FLOOR: f64 = 1e-300;

/// A harmonic mapping of the unit disk, represented by the analytic part
/// `h` and the co-analytic part `g` at a shared truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMap {
    h: PowerSeries,
    g: PowerSeries,
}

impl HarmonicMap {
    /// Pairs the two parts; they must share a truncation order.
    pub fn new(h: PowerSeries, g: PowerSeries) -> Result<Self> {
        if h.order() != g.order() {
            return Err(Error::OrderMismatch { left: h.order(), right: g.order() });
        }
        Ok(Self { h, g })
    }

    /// An analytic map viewed as harmonic (`g = 0`).
    pub fn analytic(h: PowerSeries) -> Self {
        let g = PowerSeries::zero(h.order());
        Self { h, g }
    }

    pub fn h(&self) -> &PowerSeries {
        &self.h
    }

    pub fn g(&self) -> &PowerSeries {
        &self.g
    }

    pub fn order(&self) -> usize {
        self.h.order()
    }

    /// Normalization of the class: `h(0) = 0`, `h'(0) = 1`, `g(0) = g'(0) = 0`.
    pub fn is_normalized(&self) -> bool {
        self.h.is_normalized()
            && self.g.coeff(0).norm() <= NORMALIZED_TOL
            && self.g.coeff(1).norm() <= NORMALIZED_TOL
    }

    /// Convolution with an analytic series: both parts are convolved
    /// coefficient-wise with `phi`.
    pub fn tilde_convolve(&self, phi: &PowerSeries) -> Self {
        Self { h: self.h.hadamard(phi), g: self.g.hadamard(phi) }
    }

    /// Convolution with another harmonic map: analytic parts together,
    /// co-analytic parts together.
    pub fn convolve(&self, other: &Self) -> Self {
        Self { h: self.h.hadamard(&other.h), g: self.g.hadamard(&other.g) }
    }

    /// Truncates both parts at degree `p`; equals `tilde_convolve` with the
    /// length-`p` geometric partial sum.
    pub fn partial_sum(&self, p: usize) -> Result<Self> {
        Ok(Self { h: self.h.partial_sum(p)?, g: self.g.partial_sum(p)? })
    }

    /// Value of the mapping at a point of the open disk.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() >= 1.0 {
            return Err(Error::OutsideDisk { z });
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        self.h.eval_unchecked(z) + self.g.eval_unchecked(z).conj()
    }

    /// Jacobian `|h'(z)|^2 - |g'(z)|^2` from the truncated derivatives.
    pub fn jacobian(&self, z: Complex64) -> Result<f64> {
        if z.norm() >= 1.0 {
            return Err(Error::OutsideDisk { z });
        }
        let hp = self.h.derivative()?.eval_unchecked(z);
        let gp = self.g.derivative()?.eval_unchecked(z);
        Ok(hp.norm_sqr() - gp.norm_sqr())
    }

    /// Dilatation `g'(z)/h'(z)`; degenerate where `|h'|` underflows.
    pub fn dilatation(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() >= 1.0 {
            return Err(Error::OutsideDisk { z });
        }
        let hp = self.h.derivative()?.eval_unchecked(z);
        if hp.norm() < DILATATION_FLOOR {
            return Err(Error::DegenerateDilatation { z });
        }
        Ok(self.g.derivative()?.eval_unchecked(z) / hp)
    }

    /// Analytic slice `h - e^{2 i theta} g`. Directional-convexity
    /// hypotheses stated with the conjugate twist `e^{-2 i beta}` are
    /// obtained by passing `theta = -beta`.
    pub fn shear_slice(&self, theta: f64) -> PowerSeries {
        let twist = Complex64::from_polar(1.0, 2.0 * theta);
        self.h.sub(&self.g.scale(twist))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::geometric;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn series(v: &[f64]) -> PowerSeries {
        PowerSeries::from_real(v).unwrap()
    }

    /// `f_a` of the folding family: `h = (1 + z/a) z/(1-z)`, `g = z^2/(a(1-z))`.
    fn family_f_a(a: f64, order: usize) -> HarmonicMap {
        let h = PowerSeries::from_fn(order, |k| match k {
            0 => Complex64::ZERO,
            1 => Complex64::ONE,
            _ => c(1.0 + 1.0 / a, 0.0),
        });
        let g = PowerSeries::from_fn(order, |k| {
            if k >= 2 { c(1.0 / a, 0.0) } else { Complex64::ZERO }
        });
        HarmonicMap::new(h, g).unwrap()
    }

    #[test]
    fn tilde_convolve_matches_closed_form_for_f_1() {
        // with phi = z + z^2/2 and a = 1: z + z^2 + conj(z^2)/2
        let f = family_f_a(1.0, 8);
        let phi = series(&[0.0, 1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let conv = f.tilde_convolve(&phi);
        assert!((conv.h().coeff(2) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((conv.g().coeff(2) - c(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(conv.h().coeff(3), Complex64::ZERO);
    }

    #[test]
    fn tilde_convolve_with_geometric_is_identity() {
        let f = family_f_a(3.0, 8);
        let conv = f.tilde_convolve(&geometric(8));
        assert!(conv.h().max_coeff_distance(f.h()) < 1e-15);
        assert!(conv.g().max_coeff_distance(f.g()) < 1e-15);
    }

    #[test]
    fn convolve_pairs_parts() {
        let f = family_f_a(2.0, 6);
        let degenerate = HarmonicMap::new(geometric(6), PowerSeries::zero(6)).unwrap();
        let conv = f.convolve(&degenerate);
        // constant term of the geometric identity is zero, so h survives
        assert!(conv.h().max_coeff_distance(f.h()) < 1e-15);
        assert_eq!(conv.g().max_abs_coeff(), 0.0);
    }

    #[test]
    fn partial_sum_equals_convolution_with_partial_geometric() {
        let f = family_f_a(4.0, 10);
        let p = f.partial_sum(3).unwrap();
        let via_conv = f.tilde_convolve(&crate::series::geometric_partial(10, 3));
        assert!(p.h().max_coeff_distance(via_conv.h()) < 1e-15);
        assert!(p.g().max_coeff_distance(via_conv.g()) < 1e-15);
        assert_eq!(f.partial_sum(10).unwrap(), f);
    }

    #[test]
    fn jacobian_of_normalized_map_at_origin_is_one() {
        let f = family_f_a(6.0, 8);
        assert!((f.jacobian(Complex64::ZERO).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn jacobian_vanishes_at_fold_point() {
        // a = 6 with phi = z + z^2/2: zero of the Jacobian at -a/(a+2) = -0.75
        let a = 6.0;
        let f = family_f_a(a, 8);
        let phi = PowerSeries::from_fn(8, |k| match k {
            1 => Complex64::ONE,
            2 => c(0.5, 0.0),
            _ => Complex64::ZERO,
        });
        let conv = f.tilde_convolve(&phi);
        let j = conv.jacobian(c(-a / (a + 2.0), 0.0)).unwrap();
        assert!(j.abs() < 1e-9, "J = {j}");
    }

    #[test]
    fn jacobian_dilatation_relation() {
        let f = family_f_a(6.0, 8);
        let z = c(0.3, -0.4);
        let j = f.jacobian(z).unwrap();
        let w = f.dilatation(z).unwrap();
        let hp = f.h().derivative().unwrap().evaluate(z).unwrap();
        let alt = hp.norm_sqr() * (1.0 - w.norm_sqr());
        assert!((j - alt).abs() <= 1e-10 * j.abs().max(1.0));
    }

    #[test]
    fn dilatation_at_origin_is_zero() {
        let f = family_f_a(2.0, 8);
        assert_eq!(f.dilatation(Complex64::ZERO).unwrap(), Complex64::ZERO);
    }

    #[test]
    fn shear_slice_conventions() {
        let f = family_f_a(5.0, 8);
        // theta = 0 recovers h - g = z/(1-z)
        let slice = f.shear_slice(0.0);
        assert!(slice.max_coeff_distance(&geometric(8)) < 1e-14);
        // analytic maps are fixed by any slice
        let only_h = HarmonicMap::analytic(series(&[0.0, 1.0, 0.25]));
        let s = only_h.shear_slice(1.1);
        assert!(s.max_coeff_distance(only_h.h()) < 1e-15);
    }

    #[test]
    fn new_rejects_mismatched_orders() {
        let h = series(&[0.0, 1.0, 0.0]);
        let g = series(&[0.0, 0.0]);
        assert!(matches!(HarmonicMap::new(h, g), Err(Error::OrderMismatch { .. })));
    }
}
