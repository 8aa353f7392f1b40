//! Constructors for the named analytic kernels and harmonic mappings used
//! throughout the crate, plus the shear construction and the textual map
//! names accepted by the CLI.
//!
//! Harmonic maps are expanded from their defining rational expressions via
//! Cauchy products; the kernels use closed-form coefficients. Tests check
//! the two routes against each other.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{rational_over_unit_pole, ComplexRat, ExactSeries};
use crate::harmonic::HarmonicMap;
use crate::series::PowerSeries;

/// Analytic kernel families with closed-form coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelKind {
    /// `z/(1 - alpha z)`: coefficient `alpha^(k-1)`.
    HalfPlane { alpha: Complex64 },
    /// `z/(1 - alpha z)^2`: coefficient `k alpha^(k-1)`.
    Starlike { alpha: Complex64 },
    /// `conj-twisted logarithm `alpha log(1/(1 - z/alpha))`: coefficient
    /// `1/(k alpha^(k-1))`; the coefficient-wise inverse of the starlike
    /// kernel.
    Log { alpha: Complex64 },
    /// Geometric partial sum `l_n`: ones at `1..=n`.
    GeometricPartial { n: usize },
    /// Coefficient `1/k^m`.
    Polylog { m: u32 },
}

/// Named harmonic mappings.
#[derive(Debug, Clone, PartialEq)]
pub enum HarmonicFamily {
    /// `K`: analytic part `(z - z^2/2 + z^3/6)/(1-z)^3`,
    /// co-analytic part `(z^2/2 + z^3/6)/(1-z)^3`.
    KoebeK,
    /// `L`: `(z - z^2/2)/(1-z)^2` and `-(z^2/2)/(1-z)^2`.
    HalfPlaneL,
    /// Rotated half-plane variant of `L` with twist angle `alpha`.
    Slanted { alpha: f64 },
    /// `f_a`: `h = (1 + z/a) z/(1-z)`, `g = z^2/(a (1-z))`, `a >= -1`, `a != 0`.
    FamilyA { a: f64 },
    /// `F_b`: `h = (z + (1+2b) z^2)/(1-z)^3`, `g = 2b z^2/(1-z)^3`, `|b| <= 1/2`.
    FamilyB { b: f64 },
}

fn check_unimodular(alpha: Complex64) -> Result<()> {
    if (alpha.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "twist must be unimodular, |alpha| = {}",
            alpha.norm()
        )));
    }
    Ok(())
}

/// Expands a named kernel to truncation order `order` (at least 2).
pub fn kernel(kind: &KernelKind, order: usize) -> Result<PowerSeries> {
    if order < 2 {
        return Err(Error::InvalidParameter(format!("kernel order {order} < 2")));
    }
    match kind {
        KernelKind::HalfPlane { alpha } => {
            check_unimodular(*alpha)?;
            Ok(unit_coeff_series(order, |k| alpha.powu(k as u32 - 1)))
        }
        KernelKind::Starlike { alpha } => {
            check_unimodular(*alpha)?;
            Ok(unit_coeff_series(order, |k| alpha.powu(k as u32 - 1) * k as f64))
        }
        KernelKind::Log { alpha } => {
            check_unimodular(*alpha)?;
            Ok(unit_coeff_series(order, |k| {
                (alpha.powu(k as u32 - 1) * k as f64).finv()
            }))
        }
        KernelKind::GeometricPartial { n } => {
            if *n < 1 {
                return Err(Error::InvalidParameter("partial length must be >= 1".into()));
            }
            Ok(crate::series::geometric_partial(order, *n))
        }
        KernelKind::Polylog { m } => Ok(unit_coeff_series(order, |k| {
            Complex64::new(1.0 / (k as f64).powi(*m as i32), 0.0)
        })),
    }
}

fn unit_coeff_series(order: usize, mut f: impl FnMut(usize) -> Complex64) -> PowerSeries {
    PowerSeries::from_fn(order, |k| if k == 0 { Complex64::ZERO } else { f(k) })
}

/// Integer Hadamard power of the log kernel with twist `gamma`:
/// coefficient `k^(-m) gamma^(-m (k-1))`. Negative `m` gives powers of the
/// starlike kernel instead.
pub fn log_kernel_power(gamma: Complex64, m: i32, order: usize) -> Result<PowerSeries> {
    check_unimodular(gamma)?;
    let theta = gamma.arg();
    Ok(unit_coeff_series(order, |k| {
        let magnitude = (k as f64).powi(-m);
        let phase = -(m as f64) * (k as f64 - 1.0) * theta;
        Complex64::from_polar(magnitude, phase)
    }))
}

/// `1/(1 - alpha z)^m` expanded to `order`: coefficient `C(k+m-1, m-1) alpha^k`.
pub fn reciprocal_power(alpha: Complex64, m: u32, order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |k| {
        let mut binom = 1.0;
        for j in 1..m as usize {
            binom *= (k + j) as f64 / j as f64;
        }
        alpha.powu(k as u32) * binom
    })
}

fn poly(order: usize, coeffs: &[Complex64]) -> PowerSeries {
    PowerSeries::from_fn(order, |k| coeffs.get(k).copied().unwrap_or(Complex64::ZERO))
}

/// Expands a named harmonic mapping to order `order` (at least 4) via the
/// Cauchy product of its defining rational expressions.
pub fn named_harmonic(family: &HarmonicFamily, order: usize) -> Result<HarmonicMap> {
    if order < 4 {
        return Err(Error::InvalidParameter(format!("harmonic order {order} < 4")));
    }
    let one = Complex64::ONE;
    match family {
        HarmonicFamily::KoebeK => {
            let pole3 = reciprocal_power(one, 3, order);
            let h = poly(order, &[0.0.into(), one, (-0.5).into(), (1.0 / 6.0).into()])
                .cauchy_product(&pole3);
            let g = poly(order, &[0.0.into(), 0.0.into(), 0.5.into(), (1.0 / 6.0).into()])
                .cauchy_product(&pole3);
            HarmonicMap::new(h, g)
        }
        HarmonicFamily::HalfPlaneL => {
            let pole2 = reciprocal_power(one, 2, order);
            let h = poly(order, &[0.0.into(), one, (-0.5).into()]).cauchy_product(&pole2);
            let g = poly(order, &[0.0.into(), 0.0.into(), (-0.5).into()]).cauchy_product(&pole2);
            HarmonicMap::new(h, g)
        }
        HarmonicFamily::Slanted { alpha } => {
            let w = Complex64::from_polar(1.0, *alpha);
            let pole2 = reciprocal_power(w, 2, order);
            let h = poly(order, &[Complex64::ZERO, one, -w * 0.5]).cauchy_product(&pole2);
            let g = poly(order, &[Complex64::ZERO, Complex64::ZERO, -w.powu(3) * 0.5])
                .cauchy_product(&pole2);
            HarmonicMap::new(h, g)
        }
        HarmonicFamily::FamilyA { a } => {
            if *a < -1.0 || *a == 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "family parameter a = {a} outside a >= -1, a != 0"
                )));
            }
            let l = kernel(&KernelKind::HalfPlane { alpha: one }, order)?;
            let h = poly(order, &[one, (1.0 / a).into()]).cauchy_product(&l);
            let g = poly(order, &[Complex64::ZERO, (1.0 / a).into()]).cauchy_product(&l);
            HarmonicMap::new(h, g)
        }
        HarmonicFamily::FamilyB { b } => {
            if b.abs() > 0.5 {
                return Err(Error::InvalidParameter(format!(
                    "family parameter b = {b} outside |b| <= 1/2"
                )));
            }
            let pole3 = reciprocal_power(one, 3, order);
            let h = poly(order, &[Complex64::ZERO, one, (1.0 + 2.0 * b).into()])
                .cauchy_product(&pole3);
            let g = poly(order, &[Complex64::ZERO, Complex64::ZERO, (2.0 * b).into()])
                .cauchy_product(&pole3);
            HarmonicMap::new(h, g)
        }
    }
}

/// Whether `b` lies in the narrower range `0 < b < 1/2` (the folding
/// counterexample needs it; the partial-sum statements allow `|b| <= 1/2`).
pub fn family_b_narrow_range(b: f64) -> bool {
    b > 0.0 && b < 0.5
}

/// Shear construction: given the analytic part `h` and the prescribed
/// difference `rhs`, builds `g = e^{2 i gamma} (h - rhs)` so that
/// `h - e^{-2 i gamma} g = rhs` holds coefficient-wise.
pub fn shear_built(rhs: &PowerSeries, gamma: f64, h: &PowerSeries) -> Result<HarmonicMap> {
    if rhs.order() != h.order() {
        return Err(Error::OrderMismatch { left: h.order(), right: rhs.order() });
    }
    if rhs.coeff(0).norm() > 1e-12 || h.coeff(0).norm() > 1e-12 {
        return Err(Error::ConstantTermNotZero);
    }
    let twist = Complex64::from_polar(1.0, 2.0 * gamma);
    let g = h.sub(rhs).scale(twist);
    HarmonicMap::new(h.clone(), g)
}

/// Exact-rational expansion of the harmonic Koebe map `K`.
pub fn koebe_exact(order: usize) -> (ExactSeries, ExactSeries) {
    let h = rational_over_unit_pole(
        &[
            ComplexRat::zero(),
            ComplexRat::one(),
            ComplexRat::ratio(-1, 2),
            ComplexRat::ratio(1, 6),
        ],
        3,
        order,
    );
    let g = rational_over_unit_pole(
        &[
            ComplexRat::zero(),
            ComplexRat::zero(),
            ComplexRat::ratio(1, 2),
            ComplexRat::ratio(1, 6),
        ],
        3,
        order,
    );
    (h, g)
}

/// A map name as accepted on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum AtlasName {
    Harmonic(HarmonicFamily),
    Series(KernelKind),
}

impl AtlasName {
    /// Parses the names `K`, `L`, `f_alpha:<angle>`, `f_a:<a>`, `F_b:<b>`,
    /// `polylog:<m>`, `lpartial:<n>`, `kernel:<half|star|log>:<angle>`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::UnknownName(text.to_string());
        let mut parts = text.split(':');
        let head = parts.next().ok_or_else(bad)?;
        let rest: Vec<&str> = parts.collect();
        let want = |n: usize| -> Result<()> {
            if rest.len() == n { Ok(()) } else { Err(bad()) }
        };
        let num = |s: &str| -> Result<f64> { s.parse().map_err(|_| bad()) };
        match head {
            "K" => {
                want(0)?;
                Ok(Self::Harmonic(HarmonicFamily::KoebeK))
            }
            "L" => {
                want(0)?;
                Ok(Self::Harmonic(HarmonicFamily::HalfPlaneL))
            }
            "f_alpha" => {
                want(1)?;
                Ok(Self::Harmonic(HarmonicFamily::Slanted { alpha: num(rest[0])? }))
            }
            "f_a" => {
                want(1)?;
                Ok(Self::Harmonic(HarmonicFamily::FamilyA { a: num(rest[0])? }))
            }
            "F_b" => {
                want(1)?;
                Ok(Self::Harmonic(HarmonicFamily::FamilyB { b: num(rest[0])? }))
            }
            "polylog" => {
                want(1)?;
                let m: u32 = rest[0].parse().map_err(|_| bad())?;
                Ok(Self::Series(KernelKind::Polylog { m }))
            }
            "lpartial" => {
                want(1)?;
                let n: usize = rest[0].parse().map_err(|_| bad())?;
                Ok(Self::Series(KernelKind::GeometricPartial { n }))
            }
            "kernel" => {
                want(2)?;
                let alpha = Complex64::from_polar(1.0, num(rest[1])?);
                let kind = match rest[0] {
                    "half" => KernelKind::HalfPlane { alpha },
                    "star" => KernelKind::Starlike { alpha },
                    "log" => KernelKind::Log { alpha },
                    _ => return Err(bad()),
                };
                Ok(Self::Series(kind))
            }
            _ => Err(bad()),
        }
    }

    /// Builds the named object at the requested order, returning analytic
    /// series as harmonic maps with `g = 0`.
    pub fn build(&self, order: usize) -> Result<HarmonicMap> {
        match self {
            Self::Harmonic(family) => named_harmonic(family, order),
            Self::Series(kind) => Ok(HarmonicMap::analytic(kernel(kind, order)?)),
        }
    }

    pub fn is_harmonic(&self) -> bool {
        matches!(self, Self::Harmonic(_))
    }
}

/// The names listed by `atlas list`.
pub fn atlas_names() -> Vec<&'static str> {
    vec![
        "K",
        "L",
        "f_alpha:<angle>",
        "f_a:<a>",
        "F_b:<b>",
        "polylog:<m>",
        "lpartial:<n>",
        "kernel:<half|star|log>:<angle>",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::geometric;

    const PI: f64 = std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn starlike_kernel_at_one_is_koebe_kernel() {
        let k = kernel(&KernelKind::Starlike { alpha: Complex64::ONE }, 12).unwrap();
        let expect = PowerSeries::from_fn(12, |j| c(j as f64, 0.0));
        assert!(k.max_coeff_distance(&expect) < 1e-14);
    }

    #[test]
    fn starlike_and_log_kernels_convolve_to_identity() {
        let alpha = Complex64::from_polar(1.0, 0.7);
        let star = kernel(&KernelKind::Starlike { alpha }, 32).unwrap();
        let log = kernel(&KernelKind::Log { alpha }, 32).unwrap();
        assert!(star.hadamard(&log).max_coeff_distance(&geometric(32)) < 1e-13);
    }

    #[test]
    fn polylog_partial_two_is_convex_prototype() {
        let f = kernel(&KernelKind::Polylog { m: 1 }, 8).unwrap();
        let p = f.partial_sum(2).unwrap();
        assert!((p.coeff(1) - Complex64::ONE).norm() < 1e-15);
        assert!((p.coeff(2) - c(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(p.coeff(3), Complex64::ZERO);
    }

    #[test]
    fn kernels_match_cauchy_expansions() {
        // closed-form coefficients against the rational expansion route
        let alpha = Complex64::from_polar(1.0, -1.2);
        let order = 64;
        let star = kernel(&KernelKind::Starlike { alpha }, order).unwrap();
        let via_cauchy = PowerSeries::monomial(order, 1, Complex64::ONE)
            .unwrap()
            .cauchy_product(&reciprocal_power(alpha, 2, order));
        assert!(star.max_coeff_distance(&via_cauchy) < 1e-12);

        let half = kernel(&KernelKind::HalfPlane { alpha }, order).unwrap();
        let via_cauchy = PowerSeries::monomial(order, 1, Complex64::ONE)
            .unwrap()
            .cauchy_product(&reciprocal_power(alpha, 1, order));
        assert!(half.max_coeff_distance(&via_cauchy) < 1e-12);
    }

    #[test]
    fn log_kernel_power_generalizes_operator() {
        // power -1 of the log kernel is the starlike kernel
        let gamma = Complex64::from_polar(1.0, 0.4);
        let inv = log_kernel_power(gamma, -1, 16).unwrap();
        let star = kernel(&KernelKind::Starlike { alpha: gamma }, 16).unwrap();
        assert!(inv.max_coeff_distance(&star) < 1e-13);
        // power 0 is the geometric identity
        let id = log_kernel_power(gamma, 0, 16).unwrap();
        assert!(id.max_coeff_distance(&geometric(16)) < 1e-15);
    }

    #[test]
    fn koebe_low_coefficients() {
        let k = named_harmonic(&HarmonicFamily::KoebeK, 8).unwrap();
        assert!((k.h().coeff(2) - c(2.5, 0.0)).norm() < 1e-13);
        assert!((k.h().coeff(3) - c(14.0 / 3.0, 0.0)).norm() < 1e-13);
        assert!((k.g().coeff(2) - c(0.5, 0.0)).norm() < 1e-13);
        assert!((k.g().coeff(3) - c(5.0 / 3.0, 0.0)).norm() < 1e-13);
        assert!(k.is_normalized());
    }

    #[test]
    fn koebe_exact_matches_float() {
        let (h, g) = koebe_exact(8);
        assert_eq!(h.coeff(2), ComplexRat::ratio(5, 2));
        assert_eq!(h.coeff(3), ComplexRat::ratio(14, 3));
        assert_eq!(g.coeff(3), ComplexRat::ratio(5, 3));
        let k = named_harmonic(&HarmonicFamily::KoebeK, 8).unwrap();
        assert!(h.to_float().unwrap().max_coeff_distance(k.h()) < 1e-12);
    }

    #[test]
    fn half_plane_l_closed_form_coefficients() {
        let l = named_harmonic(&HarmonicFamily::HalfPlaneL, 24).unwrap();
        for k in 1..=24usize {
            let m = (k as f64 + 1.0) / 2.0;
            let n = -(k as f64 - 1.0) / 2.0;
            assert!((l.h().coeff(k) - c(m, 0.0)).norm() < 1e-12);
            assert!((l.g().coeff(k) - c(n, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn slanted_at_zero_equals_half_plane() {
        let s = named_harmonic(&HarmonicFamily::Slanted { alpha: 0.0 }, 16).unwrap();
        let l = named_harmonic(&HarmonicFamily::HalfPlaneL, 16).unwrap();
        assert!(s.h().max_coeff_distance(l.h()) < 1e-12);
        assert!(s.g().max_coeff_distance(l.g()) < 1e-12);
    }

    #[test]
    fn structural_identities() {
        let order = 48;
        let koebe_kernel = PowerSeries::from_fn(order, |k| c(k as f64, 0.0));

        let k = named_harmonic(&HarmonicFamily::KoebeK, order).unwrap();
        assert!(k.h().sub(k.g()).max_coeff_distance(&koebe_kernel) < 1e-12);

        let l = named_harmonic(&HarmonicFamily::HalfPlaneL, order).unwrap();
        assert!(l.h().sub(l.g()).max_coeff_distance(&koebe_kernel) < 1e-12);

        let fa = named_harmonic(&HarmonicFamily::FamilyA { a: 6.0 }, order).unwrap();
        assert!(fa.h().sub(fa.g()).max_coeff_distance(&geometric(order)) < 1e-12);

        let fb = named_harmonic(&HarmonicFamily::FamilyB { b: 0.25 }, order).unwrap();
        let squares = PowerSeries::from_fn(order, |k| c((k * k) as f64, 0.0));
        assert!(fb.h().sub(fb.g()).max_coeff_distance(&squares) < 1e-12);

        for alpha in [0.0, PI / 4.0, PI / 2.0] {
            let w = Complex64::from_polar(1.0, alpha);
            let s = named_harmonic(&HarmonicFamily::Slanted { alpha }, order).unwrap();
            let lhs = s.h().add(&s.g().scale(Complex64::from_polar(1.0, -2.0 * alpha)));
            let rhs = kernel(&KernelKind::HalfPlane { alpha: w }, order).unwrap();
            assert!(lhs.max_coeff_distance(&rhs) < 1e-12, "alpha = {alpha}");
        }
    }

    #[test]
    fn slanted_rotation_identity() {
        // e^{i alpha} f_alpha(z) has the coefficients of L at w = e^{i alpha} z
        let alpha = 1.1;
        let order = 20;
        let s = named_harmonic(&HarmonicFamily::Slanted { alpha }, order).unwrap();
        let l = named_harmonic(&HarmonicFamily::HalfPlaneL, order).unwrap();
        for k in 1..=order {
            // h_alpha(z) = e^{-i alpha} M(e^{i alpha} z): coefficient M_k e^{i (k-1) alpha}
            let expect_h = l.h().coeff(k) * Complex64::from_polar(1.0, (k as f64 - 1.0) * alpha);
            assert!((s.h().coeff(k) - expect_h).norm() < 1e-12);
            // g_alpha(z) = e^{i alpha} N(e^{i alpha} z): coefficient N_k e^{i (k+1) alpha}
            let expect_g = l.g().coeff(k) * Complex64::from_polar(1.0, (k as f64 + 1.0) * alpha);
            assert!((s.g().coeff(k) - expect_g).norm() < 1e-12);
        }
    }

    #[test]
    fn shear_built_examples() {
        let order = 16;
        let l = kernel(&KernelKind::HalfPlane { alpha: Complex64::ONE }, order).unwrap();
        let z = PowerSeries::monomial(order, 1, Complex64::ONE).unwrap();

        // rhs = z, gamma = 0: g = z/(1-z) - z
        let f = shear_built(&z, 0.0, &l).unwrap();
        assert!(f.g().max_coeff_distance(&l.sub(&z)) < 1e-14);

        // rhs = h gives g = 0
        let f = shear_built(&l, 0.9, &l).unwrap();
        assert_eq!(f.g().max_abs_coeff(), 0.0);

        // h = z/(1-z)^2, rhs = h * log kernel = z/(1-z)
        let star = kernel(&KernelKind::Starlike { alpha: Complex64::ONE }, order).unwrap();
        let rhs = star.hadamard(&kernel(&KernelKind::Log { alpha: Complex64::ONE }, order).unwrap());
        assert!(rhs.max_coeff_distance(&l) < 1e-13);
        let f = shear_built(&rhs, 0.0, &star).unwrap();
        assert!(f.g().max_coeff_distance(&star.sub(&l)) < 1e-13);
    }

    #[test]
    fn parameter_validation() {
        assert!(named_harmonic(&HarmonicFamily::FamilyA { a: 0.0 }, 8).is_err());
        assert!(named_harmonic(&HarmonicFamily::FamilyA { a: -1.5 }, 8).is_err());
        assert!(named_harmonic(&HarmonicFamily::FamilyB { b: 0.6 }, 8).is_err());
        assert!(named_harmonic(&HarmonicFamily::KoebeK, 3).is_err());
        assert!(kernel(&KernelKind::Polylog { m: 2 }, 1).is_err());
        assert!(kernel(&KernelKind::Starlike { alpha: c(2.0, 0.0) }, 8).is_err());
        assert!(family_b_narrow_range(0.25));
        assert!(!family_b_narrow_range(-0.25));
    }

    #[test]
    fn name_parsing() {
        assert_eq!(
            AtlasName::parse("K").unwrap(),
            AtlasName::Harmonic(HarmonicFamily::KoebeK)
        );
        assert_eq!(
            AtlasName::parse("f_a:6").unwrap(),
            AtlasName::Harmonic(HarmonicFamily::FamilyA { a: 6.0 })
        );
        assert_eq!(
            AtlasName::parse("polylog:5").unwrap(),
            AtlasName::Series(KernelKind::Polylog { m: 5 })
        );
        assert!(matches!(
            AtlasName::parse("kernel:star:0").unwrap(),
            AtlasName::Series(KernelKind::Starlike { .. })
        ));
        assert!(AtlasName::parse("nope").is_err());
        assert!(AtlasName::parse("f_a").is_err());
        assert!(AtlasName::parse("kernel:bad:0").is_err());
    }
}
