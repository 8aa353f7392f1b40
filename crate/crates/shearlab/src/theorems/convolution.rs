//! Scenarios for the convolution statements: shear-built maps convolved
//! with low-order starlike polynomials, the slanted half-plane family, and
//! the three folding counterexamples.

use num_complex::Complex64;

use super::*;
use crate::atlas::{kernel, named_harmonic, shear_built, HarmonicFamily, KernelKind};
use crate::certificates::{salagean_certificate, weighted_certificate, WeightPreset};
use crate::numeric::{condition_series, re_min_on_grid, Prefactor};
use crate::series::{geometric, PowerSeries};

const POLY_ORDER: usize = 16;

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn unit(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// `z` as a series at the shared polynomial order.
fn monomial_z(order: usize) -> PowerSeries {
    PowerSeries::monomial(order, 1, Complex64::ONE).unwrap()
}

/// The sheared geometric map `h = z/(1-z)`, `g = e^{2i gamma}(z/(1-z) - z)`.
fn sheared_geometric(gamma: f64) -> Result<crate::harmonic::HarmonicMap> {
    let h = kernel(&KernelKind::HalfPlane { alpha: Complex64::ONE }, POLY_ORDER)?;
    shear_built(&monomial_z(POLY_ORDER), gamma, &h)
}

/// The log-kernel shear `g = h - h * log(1/(1-z))` used by the
/// direction-span statements.
fn log_sheared(h: &PowerSeries) -> Result<crate::harmonic::HarmonicMap> {
    let log = kernel(&KernelKind::Log { alpha: Complex64::ONE }, h.order())?;
    shear_built(&h.hadamard(&log), 0.0, h)
}

fn run_lem_2_1(p: &Params) -> Result<ScenarioBody> {
    let n = p.get_u32("n")?;
    let m = p.get_u32("m")?;
    if n + m < 1 {
        return Err(Error::InvalidParameter("need n + m >= 1".into()));
    }
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let f = polylog(n + 3);
    let g = polylog(m + 3);
    body.push(class_check(&format!("f at level {n}"), &f, n, &grid)?);
    body.push(class_check(&format!("g at level {m}"), &g, m, &grid)?);
    let conv = f.hadamard(&g);
    let rep = n_starlike_probe(&conv, (n + m) as i32 - 1, 0.0, &grid)?;
    body.push(probe_check(
        &format!("f*g at level {}", n + m - 1),
        CheckRole::Conclusion,
        &rep,
    ));
    Ok(body)
}

fn run_thm_2_5(p: &Params) -> Result<ScenarioBody> {
    let gamma = p.get("gamma");
    let beta = p.get("beta");
    let c2 = p.get("c2");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let f = sheared_geometric(gamma)?;
    let phi = quadratic_poly(real(c2));

    let twist = unit(-2.0 * gamma);
    let dist = f
        .h()
        .sub(&f.g().scale(twist))
        .max_relative_distance(&monomial_z(POLY_ORDER));
    body.push(structural_check("h - e^{-2i gamma} g = z", dist, POLY_ORDER));
    body.push(cert_check(
        "h*phi in S_2",
        CheckRole::Hypothesis,
        &salagean_certificate(&f.h().hadamard(&phi), 3, 0.0)?,
    ));
    let slice_conv = f.shear_slice(-beta).hadamard(&phi);
    body.push(cert_check(
        "(h - e^{-2i beta} g)*phi convex",
        CheckRole::Hypothesis,
        &salagean_certificate(&slice_conv, 2, 0.0)?,
    ));

    let conv = f.tilde_convolve(&phi);
    body.checks.extend(univalent_bundle("f*phi", &conv, &[-beta], &grid)?);
    Ok(body)
}

fn run_cor_2_6(p: &Params) -> Result<ScenarioBody> {
    let theta = p.get("theta");
    let gamma = p.get("gamma");
    let c2 = p.get("c2");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let phi = quadratic_poly(real(c2));
    body.push(cert_check(
        "phi in S_2",
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, 3, 0.0)?,
    ));
    body.push(cert_check(
        "n^2-weighted sum within direction bound",
        CheckRole::Hypothesis,
        &weighted_certificate(&phi, WeightPreset::NSquared, theta)?,
    ));
    let conv = sheared_geometric(gamma)?.tilde_convolve(&phi);
    let directions: Vec<f64> = sample_interval(-gamma, theta).iter().map(|b| -b).collect();
    body.checks.extend(univalent_bundle("phi + conj(e^{2i gamma}(phi - z))", &conv, &directions, &grid)?);
    Ok(body)
}

fn run_rem_2_1(p: &Params) -> Result<ScenarioBody> {
    let gamma = p.get("gamma");
    let c2 = p.get("c2");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let phi = quadratic_poly(real(c2));
    body.push(cert_check(
        "phi in S_2",
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, 3, 0.0)?,
    ));
    body.push(cert_check(
        "n^2-weighted sum <= 1/2",
        CheckRole::Hypothesis,
        &weighted_certificate(&phi, WeightPreset::NSquared, std::f64::consts::FRAC_PI_2)?,
    ));
    let conv = sheared_geometric(gamma)?.tilde_convolve(&phi);
    let directions = [0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2,
        3.0 * std::f64::consts::FRAC_PI_4];
    body.checks.extend(univalent_bundle("sheared map", &conv, &directions, &grid)?);
    Ok(body)
}

fn run_rem_2_2(p: &Params) -> Result<ScenarioBody> {
    let gamma = p.get("gamma");
    let c2 = p.get("c2");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let phi = quadratic_poly(real(c2));
    body.push(cert_check(
        "n^3-weighted sum <= 1",
        CheckRole::Hypothesis,
        &weighted_certificate(&phi, WeightPreset::NCubed, 0.0)?,
    ));
    let conv = sheared_geometric(gamma)?.tilde_convolve(&phi);
    let directions = [0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2,
        3.0 * std::f64::consts::FRAC_PI_4];
    body.checks.extend(univalent_bundle("sheared map", &conv, &directions, &grid)?);
    Ok(body)
}

fn run_thm_2_9(p: &Params) -> Result<ScenarioBody> {
    let gamma = p.get("gamma");
    let c2 = p.get("c2");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let h = kernel(&KernelKind::Starlike { alpha: Complex64::ONE }, PROBE_ORDER)?;
    let log = kernel(&KernelKind::Log { alpha: Complex64::ONE }, PROBE_ORDER)?;
    let rhs = h.hadamard(&log);
    let f = shear_built(&rhs, gamma, &h)?;

    body.push(probe_check(
        "h starlike",
        CheckRole::Hypothesis,
        &n_starlike_probe(&h, 0, 0.0, &grid)?,
    ));
    let twist = unit(-2.0 * gamma);
    let dist = f.h().sub(&f.g().scale(twist)).max_relative_distance(&rhs);
    body.push(structural_check("h - e^{-2i gamma} g = h*log(1/(1-z))", dist, PROBE_ORDER));
    let phi = quadratic_poly(real(c2));
    body.push(cert_check(
        "phi in S_2",
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, 3, 0.0)?,
    ));

    let conv = f.tilde_convolve(&phi);
    body.checks.extend(univalent_bundle("f*phi", &conv, &[-gamma], &grid)?);
    Ok(body)
}

fn run_cor_2_10_1(p: &Params) -> Result<ScenarioBody> {
    let c2 = p.get("c2");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let h = kernel(&KernelKind::Starlike { alpha: Complex64::ONE }, PROBE_ORDER)?;
    let f = log_sheared(&h)?;
    body.push(probe_check(
        "h starlike",
        CheckRole::Hypothesis,
        &n_starlike_probe(&h, 0, 0.0, &grid)?,
    ));
    let phi = quadratic_poly(real(c2));
    body.push(cert_check(
        "phi in S_2",
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, 3, 0.0)?,
    ));
    let conv = f.tilde_convolve(&phi);
    body.checks.extend(univalent_bundle("f*phi", &conv, &[0.0], &grid)?);
    Ok(body)
}

fn run_cor_2_10_2(p: &Params) -> Result<ScenarioBody> {
    let theta = p.get("theta");
    let c2h = p.get("c2_h");
    let c2 = p.get("c2_phi");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let h = quadratic_poly(real(c2h));
    body.push(cert_check(
        "h starlike",
        CheckRole::Hypothesis,
        &crate::certificates::starlike_certificate(&h, 0.0)?,
    ));
    body.push(cert_check(
        "span-weighted sum <= 1",
        CheckRole::Hypothesis,
        &weighted_certificate(&h, WeightPreset::DirectionSpan, theta)?,
    ));
    let phi = quadratic_poly(real(c2));
    body.push(cert_check(
        "phi in S_2",
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, 3, 0.0)?,
    ));
    let conv = log_sheared(&h)?.tilde_convolve(&phi);
    let directions: Vec<f64> = sample_interval(0.0, theta).iter().map(|b| -b).collect();
    body.checks.extend(univalent_bundle("f*phi", &conv, &directions, &grid)?);
    Ok(body)
}

fn run_cor_2_10_3(p: &Params) -> Result<ScenarioBody> {
    let theta = p.get("theta");
    let c2h = p.get("c2_h");
    let c2 = p.get("c2_phi");
    if (2.0 * theta).cos() > 0.25 {
        return Err(Error::InvalidParameter(format!(
            "cos(2 theta) = {} must be <= 1/4",
            (2.0 * theta).cos()
        )));
    }
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let h = quadratic_poly(real(c2h));
    let cert = weighted_certificate(&h, WeightPreset::DirectionSpan, theta)?;
    if let Some(implied) = &cert.implied {
        body.push(cert_check("implied: h starlike", CheckRole::Hypothesis, implied));
    }
    body.push(cert_check("span-weighted sum <= 1", CheckRole::Hypothesis, &cert));
    let phi = quadratic_poly(real(c2));
    body.push(cert_check(
        "phi in S_2",
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, 3, 0.0)?,
    ));
    let conv = log_sheared(&h)?.tilde_convolve(&phi);
    let directions: Vec<f64> = sample_interval(0.0, theta).iter().map(|b| -b).collect();
    body.checks.extend(univalent_bundle("f*phi", &conv, &directions, &grid)?);
    Ok(body)
}

fn run_rem_2_3(p: &Params) -> Result<ScenarioBody> {
    let c2h = p.get("c2_h");
    let c2 = p.get("c2_phi");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let h = quadratic_poly(real(c2h));
    body.push(cert_check(
        "(2n-1)-weighted sum <= 1",
        CheckRole::Hypothesis,
        &weighted_certificate(&h, WeightPreset::TwoNMinusOne, 0.0)?,
    ));
    let phi = quadratic_poly(real(c2));
    body.push(cert_check(
        "phi in S_2",
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, 3, 0.0)?,
    ));
    let conv = log_sheared(&h)?.tilde_convolve(&phi);
    let directions = [0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2,
        3.0 * std::f64::consts::FRAC_PI_4];
    body.checks.extend(univalent_bundle("f*phi", &conv, &directions, &grid)?);
    Ok(body)
}

fn run_ex_2_10_log(_p: &Params) -> Result<ScenarioBody> {
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let h = kernel(&KernelKind::Starlike { alpha: Complex64::ONE }, PROBE_ORDER)?;
    let f = log_sheared(&h)?;
    let phi = kernel(&KernelKind::Log { alpha: Complex64::ONE }, PROBE_ORDER)?;
    body.push(probe_check(
        "h starlike",
        CheckRole::Hypothesis,
        &n_starlike_probe(&h, 0, 0.0, &grid)?,
    ));
    body.push(class_check("log kernel at level 2", &phi, 2, &grid)?);

    let conv = f.tilde_convolve(&phi);
    // h-part collapses to z/(1-z), g-part to coefficients 1 - 1/k
    let expect_g = PowerSeries::from_fn(PROBE_ORDER, |k| {
        if k == 0 { Complex64::ZERO } else { real(1.0 - 1.0 / k as f64) }
    });
    body.push(regression_check(
        "h-part = z/(1-z)",
        conv.h().max_relative_distance(&geometric(PROBE_ORDER)),
        STRUCT_TOL,
    ));
    body.push(regression_check(
        "g-part = z/(1-z) - log(1/(1-z))",
        conv.g().max_relative_distance(&expect_g),
        STRUCT_TOL,
    ));
    body.checks.extend(univalent_bundle("f*log", &conv, &[0.0], &grid)?);
    Ok(body)
}

fn run_ex_2_10_poly(_p: &Params) -> Result<ScenarioBody> {
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let h = quadratic_poly(real(1.0 / 3.0));
    let g = PowerSeries::monomial(POLY_ORDER, 2, real(1.0 / 6.0))?;
    let f = crate::harmonic::HarmonicMap::new(h.clone(), g)?;
    let log16 = kernel(&KernelKind::Log { alpha: Complex64::ONE }, POLY_ORDER)?;
    let dist = f.g().max_relative_distance(&h.sub(&h.hadamard(&log16)));
    body.push(structural_check("g = h - h*log(1/(1-z))", dist, POLY_ORDER));
    body.push(cert_check(
        "(2n-1)-weighted sum <= 1",
        CheckRole::Hypothesis,
        &weighted_certificate(&h, WeightPreset::TwoNMinusOne, 0.0)?,
    ));
    body.push(class_check("log kernel at level 2", &polylog(1), 2, &grid)?);

    let conv = f.tilde_convolve(&log16);
    let mut expect_h = PowerSeries::zero(POLY_ORDER);
    expect_h = expect_h.add(&monomial_z(POLY_ORDER));
    expect_h = expect_h.add(&PowerSeries::monomial(POLY_ORDER, 2, real(1.0 / 6.0))?);
    let expect_g = PowerSeries::monomial(POLY_ORDER, 2, real(1.0 / 12.0))?;
    body.push(regression_check(
        "h-part = z + z^2/6",
        conv.h().max_relative_distance(&expect_h),
        STRUCT_TOL,
    ));
    body.push(regression_check(
        "g-part = z^2/12",
        conv.g().max_relative_distance(&expect_g),
        STRUCT_TOL,
    ));
    let directions = [0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2,
        3.0 * std::f64::consts::FRAC_PI_4];
    body.checks.extend(univalent_bundle("f*log", &conv, &directions, &grid)?);
    Ok(body)
}

fn run_thm_2_19(p: &Params) -> Result<ScenarioBody> {
    let n = p.get_u32("n")?;
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    // canonical instance per operator level: the sheared geometric family,
    // the slanted half-plane map, or the squared-kernel family
    let (f, phi, alpha_unit, delta, slice_expect): (_, _, _, f64, PowerSeries) = match n {
        1 => {
            let a = p.get("a");
            let f = named_harmonic(&HarmonicFamily::FamilyA { a }, PROBE_ORDER)?;
            let phi = quadratic_poly(real(0.25));
            (f, phi, Complex64::ONE, 0.0, geometric(PROBE_ORDER))
        }
        2 => {
            let alpha = p.get("alpha");
            let f = named_harmonic(&HarmonicFamily::Slanted { alpha }, PROBE_ORDER)?;
            let phi = quadratic_poly(real(0.125));
            let expect = kernel(&KernelKind::Starlike { alpha: unit(alpha) }, PROBE_ORDER)?;
            (f, phi, unit(alpha), alpha, expect)
        }
        3 => {
            let b = p.get("b");
            let f = named_harmonic(&HarmonicFamily::FamilyB { b }, PROBE_ORDER)?;
            let phi = quadratic_poly(real(1.0 / 16.0));
            let expect = PowerSeries::from_fn(PROBE_ORDER, |k| real((k * k) as f64));
            (f, phi, Complex64::ONE, 0.0, expect)
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "no canonical instance registered for level n = {other}"
            )))
        }
    };

    let dist = f.shear_slice(-delta).max_relative_distance(&slice_expect);
    body.push(structural_check("shear difference matches the kernel product", dist, PROBE_ORDER));

    let s = condition_series(f.h(), Complex64::ONE, n as i32)?;
    body.push(probe_check(
        "Re((1 - alpha z)^2 S(z) / z) > 1/2",
        CheckRole::Hypothesis,
        &re_min_on_grid(&s, Some(Prefactor::squared(alpha_unit)), &grid)?,
    ));
    body.push(cert_check(
        &format!("phi at level {n}"),
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, n + 1, 0.0)?,
    ));
    body.push(cert_check(
        "(h - e^{-2i delta} g)*phi convex",
        CheckRole::Hypothesis,
        &salagean_certificate(&f.shear_slice(-delta).hadamard(&phi), 2, 0.0)?,
    ));

    let conv = f.tilde_convolve(&phi);
    body.checks.extend(univalent_bundle("f*phi", &conv, &[-delta], &grid)?);
    Ok(body)
}

fn run_rem_3_8(p: &Params) -> Result<ScenarioBody> {
    let c2 = p.get("c2");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let k = named_harmonic(&HarmonicFamily::KoebeK, PROBE_ORDER)?;
    let koebe_kernel = kernel(&KernelKind::Starlike { alpha: Complex64::ONE }, PROBE_ORDER)?;
    body.push(structural_check(
        "H - G = z/(1-z)^2",
        k.shear_slice(0.0).max_relative_distance(&koebe_kernel),
        PROBE_ORDER,
    ));
    body.push(probe_check(
        "Re((1-z)^2 H(z)/z) > 1/2",
        CheckRole::Hypothesis,
        &re_min_on_grid(k.h(), Some(Prefactor::squared(Complex64::ONE)), &grid)?,
    ));
    body.push(probe_check(
        "shear slice starlike",
        CheckRole::Hypothesis,
        &n_starlike_probe(&k.shear_slice(0.0), 0, 0.0, &grid)?,
    ));
    let phi = quadratic_poly(real(c2));
    body.push(cert_check(
        "phi in S_2",
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, 3, 0.0)?,
    ));
    let conv = k.tilde_convolve(&phi);
    body.checks.extend(univalent_bundle("K*phi", &conv, &[0.0], &grid)?);
    Ok(body)
}

fn run_rem_3_9(p: &Params) -> Result<ScenarioBody> {
    let a = p.get("a");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let f = named_harmonic(&HarmonicFamily::FamilyA { a }, PROBE_ORDER)?;
    body.push(structural_check(
        "h - g = z/(1-z)",
        f.shear_slice(0.0).max_relative_distance(&geometric(PROBE_ORDER)),
        PROBE_ORDER,
    ));
    let s = condition_series(f.h(), Complex64::ONE, 1)?;
    body.push(probe_check(
        "Re((1-z)^2 Dh(z)/z) > 1/2",
        CheckRole::Hypothesis,
        &re_min_on_grid(&s, Some(Prefactor::squared(Complex64::ONE)), &grid)?,
    ));
    body.push(probe_check(
        "shear slice convex",
        CheckRole::Hypothesis,
        &n_starlike_probe(&f.shear_slice(0.0), 1, 0.0, &grid)?,
    ));
    let phi = quadratic_poly(real(0.25));
    body.push(cert_check(
        "phi convex",
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, 2, 0.0)?,
    ));
    let conv = f.tilde_convolve(&phi);
    body.checks.extend(univalent_bundle("f*phi", &conv, &[0.0], &grid)?);
    Ok(body)
}

fn run_rem_3_10(p: &Params) -> Result<ScenarioBody> {
    let b = p.get("b");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    body.note(
        "the hypothesis twist is implemented as e^{-2i beta}; the remark's \
         displayed e^{-i beta} is inconsistent with every parallel statement",
    );
    let f = named_harmonic(&HarmonicFamily::FamilyB { b }, PROBE_ORDER)?;
    let squares = PowerSeries::from_fn(PROBE_ORDER, |k| real((k * k) as f64));
    body.push(structural_check(
        "h - g = (z+z^2)/(1-z)^3",
        f.shear_slice(0.0).max_relative_distance(&squares),
        PROBE_ORDER,
    ));
    let s = condition_series(f.h(), Complex64::ONE, 3)?;
    body.push(probe_check(
        "Re((1-z)^2 (h*log)(z)/z) > 1/2",
        CheckRole::Hypothesis,
        &re_min_on_grid(&s, Some(Prefactor::squared(Complex64::ONE)), &grid)?,
    ));
    let phi = quadratic_poly(real(1.0 / 16.0));
    body.push(cert_check(
        "phi in S_3",
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, 4, 0.0)?,
    ));
    let conv = f.tilde_convolve(&phi);
    body.checks.extend(univalent_bundle("f*phi", &conv, &[0.0], &grid)?);
    Ok(body)
}

fn fold_scenario_common(
    body: &mut ScenarioBody,
    conv: &crate::harmonic::HarmonicMap,
    expect_h2: Complex64,
    expect_g2: Complex64,
    jacobian_formula: impl Fn(Complex64) -> f64,
    target: Complex64,
) -> Result<()> {
    let grid = default_grid();
    let mut expect_h = PowerSeries::zero(conv.order());
    expect_h = expect_h.add(&monomial_z(conv.order()));
    expect_h = expect_h.add(&PowerSeries::monomial(conv.order(), 2, expect_h2)?);
    let expect_g = PowerSeries::monomial(conv.order(), 2, expect_g2)?;
    body.push(regression_check(
        "convolution coefficients",
        conv.h()
            .max_relative_distance(&expect_h)
            .max(conv.g().max_relative_distance(&expect_g)),
        STRUCT_TOL,
    ));
    // closed-form Jacobian on a point sample
    let mut worst: f64 = 0.0;
    for &r in &[0.2, 0.5, 0.85] {
        for j in 0..16 {
            let z = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / 16.0);
            worst = worst.max((conv.jacobian(z)? - jacobian_formula(z)).abs());
        }
    }
    body.push(regression_check("jacobian closed form", worst, 1e-10));
    let scan = jacobian_scan(conv, &grid)?;
    body.checks.extend(fold_checks(&scan, target, 1e-6));
    Ok(())
}

fn run_ex_2_11(p: &Params) -> Result<ScenarioBody> {
    let a = p.get("a");
    let mut body = ScenarioBody::new();
    let f = named_harmonic(&HarmonicFamily::FamilyA { a }, POLY_ORDER)?;
    let phi = quadratic_poly(real(0.5));
    body.push(cert_check(
        "phi starlike",
        CheckRole::Hypothesis,
        &crate::certificates::starlike_certificate(&phi, 0.0)?,
    ));
    let conv = f.tilde_convolve(&phi);
    fold_scenario_common(
        &mut body,
        &conv,
        real((1.0 + a) / (2.0 * a)),
        real(1.0 / (2.0 * a)),
        |z| 1.0 + (2.0 + a) / a * z.norm_sqr() + 2.0 * (1.0 + a) / a * z.re,
        real(-a / (a + 2.0)),
    )?;
    Ok(body)
}

fn run_ex_2_12(p: &Params) -> Result<ScenarioBody> {
    let b = p.get("b");
    let mut body = ScenarioBody::new();
    let f = named_harmonic(&HarmonicFamily::FamilyB { b }, POLY_ORDER)?;
    let phi = quadratic_poly(real(0.125));
    body.push(cert_check(
        "phi in S_2",
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, 3, 0.0)?,
    ));
    let conv = f.tilde_convolve(&phi);
    fold_scenario_common(
        &mut body,
        &conv,
        real((4.0 + 2.0 * b) / 8.0),
        real(2.0 * b / 8.0),
        |z| 1.0 + (1.0 + b) * z.norm_sqr() + (2.0 + b) * z.re,
        real(-1.0 / (1.0 + b)),
    )?;
    Ok(body)
}

fn run_ex_2_18(p: &Params) -> Result<ScenarioBody> {
    let alpha = p.get("alpha");
    let mut body = ScenarioBody::new();
    body.note(
        "the co-analytic coefficient is -e^{3i alpha}/4, consistent with the \
         displayed Jacobian and its vanishing point",
    );
    let f = named_harmonic(&HarmonicFamily::Slanted { alpha }, POLY_ORDER)?;
    let phi = quadratic_poly(real(0.5));
    body.push(cert_check(
        "phi starlike",
        CheckRole::Hypothesis,
        &crate::certificates::starlike_certificate(&phi, 0.0)?,
    ));
    let conv = f.tilde_convolve(&phi);
    let w = unit(alpha);
    fold_scenario_common(
        &mut body,
        &conv,
        w * 0.75,
        -w.powu(3) * 0.25,
        |z| 1.0 + 2.0 * z.norm_sqr() + 3.0 * (w * z).re,
        -unit(-alpha) * 0.5,
    )?;
    Ok(body)
}

fn run_cor_2_13(p: &Params) -> Result<ScenarioBody> {
    let a = p.get("a");
    if a < 6.0 {
        return Err(Error::InvalidParameter(format!("requires a >= 6, got {a}")));
    }
    run_rem_3_9(p)
}

fn run_cor_2_14(p: &Params) -> Result<ScenarioBody> {
    let b = p.get("b");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let f = named_harmonic(&HarmonicFamily::FamilyB { b }, PROBE_ORDER)?;
    let squares = PowerSeries::from_fn(PROBE_ORDER, |k| real((k * k) as f64));
    body.push(structural_check(
        "h - g = (z+z^2)/(1-z)^3",
        f.shear_slice(0.0).max_relative_distance(&squares),
        PROBE_ORDER,
    ));
    let s = condition_series(f.h(), Complex64::ONE, 3)?;
    body.push(probe_check(
        "Re((1-z)^2 (h*log)(z)/z) > 1/2",
        CheckRole::Hypothesis,
        &re_min_on_grid(&s, Some(Prefactor::squared(Complex64::ONE)), &grid)?,
    ));
    let phi = polylog(6);
    body.push(class_check("phi at level 3", &phi, 3, &grid)?);
    let conv = f.tilde_convolve(&phi);
    body.checks.extend(univalent_bundle("F_b*phi", &conv, &[0.0], &grid)?);
    Ok(body)
}

fn run_thm_2_16(p: &Params) -> Result<ScenarioBody> {
    let alpha = p.get("alpha");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let f = named_harmonic(&HarmonicFamily::Slanted { alpha }, PROBE_ORDER)?;
    let half = kernel(&KernelKind::HalfPlane { alpha: unit(alpha) }, PROBE_ORDER)?;
    let dist = f
        .h()
        .add(&f.g().scale(unit(-2.0 * alpha)))
        .max_relative_distance(&half);
    body.push(structural_check("h + e^{-2i alpha} g = z/(1 - e^{i alpha} z)", dist, PROBE_ORDER));
    let scan = jacobian_scan(&f, &grid)?;
    body.push(CheckReport {
        name: "slanted map sense-preserving".into(),
        kind: CheckKind::Probe,
        role: CheckRole::Hypothesis,
        outcome: if scan.positive() { CheckOutcome::Pass } else { CheckOutcome::Fail },
        expect_pass: true,
        detail: format!("signed grid min {:.3e}", scan.min_j),
    });
    let phi = quadratic_poly(real(0.25));
    body.push(cert_check(
        "phi convex",
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, 2, 0.0)?,
    ));
    let conv = f.tilde_convolve(&phi);
    body.checks.extend(univalent_bundle(
        "f*phi",
        &conv,
        &[std::f64::consts::FRAC_PI_2 - alpha],
        &grid,
    )?);
    Ok(body)
}

fn run_thm_2_20(p: &Params) -> Result<ScenarioBody> {
    let alpha = p.get("alpha");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let f = named_harmonic(&HarmonicFamily::Slanted { alpha }, PROBE_ORDER)?;
    let star = kernel(&KernelKind::Starlike { alpha: unit(alpha) }, PROBE_ORDER)?;
    body.push(structural_check(
        "h - e^{-2i alpha} g = z/(1 - e^{i alpha} z)^2",
        f.shear_slice(-alpha).max_relative_distance(&star),
        PROBE_ORDER,
    ));
    body.push(probe_check(
        "Re((1 - e^{i alpha} z)^2 h(z)/z) > 1/2",
        CheckRole::Hypothesis,
        &re_min_on_grid(f.h(), Some(Prefactor::squared(unit(alpha))), &grid)?,
    ));
    let phi = quadratic_poly(real(0.125));
    body.push(cert_check(
        "phi in S_2",
        CheckRole::Hypothesis,
        &salagean_certificate(&phi, 3, 0.0)?,
    ));
    let conv = f.tilde_convolve(&phi);
    body.checks.extend(univalent_bundle(
        "f*phi",
        &conv,
        &[-alpha, std::f64::consts::FRAC_PI_2 - alpha],
        &grid,
    )?);
    Ok(body)
}

pub(super) fn scenarios() -> Vec<ScenarioDef> {
    const PI_4: f64 = std::f64::consts::FRAC_PI_4;
    const PI_2: f64 = std::f64::consts::FRAC_PI_2;
    const PI_6: f64 = std::f64::consts::PI / 6.0;
    const PI_3: f64 = std::f64::consts::PI / 3.0;
    vec![
        ScenarioDef {
            id: "lem-2.1",
            title: "coefficient-wise product of maps at levels n and m lands at level n+m-1",
            expected: Expected::Holds,
            params: &[
                ("n", 1.0, "level of the first factor"),
                ("m", 1.0, "level of the second factor"),
            ],
            run: run_lem_2_1,
        },
        ScenarioDef {
            id: "thm-2.5",
            title: "shear of z with h*phi 2-starlike is univalent and convex in direction -beta",
            expected: Expected::Holds,
            params: &[
                ("gamma", 0.4, "shear twist angle"),
                ("beta", 0.2, "direction parameter"),
                ("c2", 0.125, "second coefficient of phi"),
            ],
            run: run_thm_2_5,
        },
        ScenarioDef {
            id: "cor-2.6",
            title: "n^2-weighted bound gives convexity in all directions -beta, |beta+gamma| <= theta",
            expected: Expected::Holds,
            params: &[
                ("theta", PI_6, "direction half-width"),
                ("gamma", 0.3, "shear twist angle"),
                ("c2", 0.125, "second coefficient of phi"),
            ],
            run: run_cor_2_6,
        },
        ScenarioDef {
            id: "rem-2.1",
            title: "n^2-weighted sum <= 1/2 gives a fully convex sheared map",
            expected: Expected::Holds,
            params: &[
                ("gamma", 0.5, "shear twist angle"),
                ("c2", 0.125, "second coefficient of phi"),
            ],
            run: run_rem_2_1,
        },
        ScenarioDef {
            id: "rem-2.2",
            title: "n^3-weighted sum <= 1 gives a fully convex sheared map",
            expected: Expected::Holds,
            params: &[
                ("gamma", 0.7, "shear twist angle"),
                ("c2", 0.125, "second coefficient of phi"),
            ],
            run: run_rem_2_2,
        },
        ScenarioDef {
            id: "thm-2.9",
            title: "log-kernel shear of a starlike part convolved with a 2-starlike map",
            expected: Expected::Holds,
            params: &[
                ("gamma", 0.3, "shear twist angle"),
                ("c2", 0.125, "second coefficient of phi"),
            ],
            run: run_thm_2_9,
        },
        ScenarioDef {
            id: "cor-2.10-1",
            title: "log-kernel shear, starlike part: convex in the real-axis direction",
            expected: Expected::Holds,
            params: &[("c2", 0.125, "second coefficient of phi")],
            run: run_cor_2_10_1,
        },
        ScenarioDef {
            id: "cor-2.10-2",
            title: "span-weighted bound gives convexity in all directions -beta, |beta| <= theta",
            expected: Expected::Holds,
            params: &[
                ("theta", PI_4, "direction half-width"),
                ("c2_h", 0.4, "second coefficient of h"),
                ("c2_phi", 0.125, "second coefficient of phi"),
            ],
            run: run_cor_2_10_2,
        },
        ScenarioDef {
            id: "cor-2.10-3",
            title: "span-weighted bound with cos(2 theta) <= 1/4 implies the starlike hypothesis",
            expected: Expected::Holds,
            params: &[
                ("theta", PI_2, "direction half-width"),
                ("c2_h", 1.0 / 3.0, "second coefficient of h"),
                ("c2_phi", 0.125, "second coefficient of phi"),
            ],
            run: run_cor_2_10_3,
        },
        ScenarioDef {
            id: "rem-2.3",
            title: "(2n-1)-weighted sum <= 1 gives a fully convex convolution",
            expected: Expected::Holds,
            params: &[
                ("c2_h", 1.0 / 3.0, "second coefficient of h"),
                ("c2_phi", 0.125, "second coefficient of phi"),
            ],
            run: run_rem_2_3,
        },
        ScenarioDef {
            id: "ex-2.10a",
            title: "worked example: koebe-kernel shear convolved with the log kernel",
            expected: Expected::Holds,
            params: &[],
            run: run_ex_2_10_log,
        },
        ScenarioDef {
            id: "ex-2.10b",
            title: "worked example: z + z^2/6 + conj(z^2/12) is fully convex",
            expected: Expected::Holds,
            params: &[],
            run: run_ex_2_10_poly,
        },
        ScenarioDef {
            id: "thm-2.19",
            title: "kernel-power condition: convolution at level n is convex in direction -delta",
            expected: Expected::Holds,
            params: &[
                ("n", 2.0, "operator level (1, 2 or 3)"),
                ("a", 6.0, "level-1 family parameter"),
                ("alpha", PI_4, "level-2 slant angle"),
                ("b", 0.25, "level-3 family parameter"),
            ],
            run: run_thm_2_19,
        },
        ScenarioDef {
            id: "rem-3.8",
            title: "level-2 specialization on the harmonic Koebe map",
            expected: Expected::Holds,
            params: &[("c2", 0.125, "second coefficient of phi")],
            run: run_rem_3_8,
        },
        ScenarioDef {
            id: "rem-3.9",
            title: "level-1 specialization: derivative condition with a convex factor",
            expected: Expected::Holds,
            params: &[("a", 6.0, "family parameter")],
            run: run_rem_3_9,
        },
        ScenarioDef {
            id: "rem-3.10",
            title: "level-3 specialization: log-kernel condition with a 3-starlike factor",
            expected: Expected::Holds,
            params: &[("b", 0.25, "family parameter")],
            run: run_rem_3_10,
        },
        ScenarioDef {
            id: "ex-2.11",
            title: "folding family f_a: the starlike factor z + z^2/2 is not enough",
            expected: Expected::Counterexample,
            params: &[("a", 6.0, "family parameter (a >= -1, a != 0)")],
            run: run_ex_2_11,
        },
        ScenarioDef {
            id: "ex-2.12",
            title: "folding family F_b: the 2-starlike factor z + z^2/8 is not enough",
            expected: Expected::Counterexample,
            params: &[("b", 0.25, "family parameter (|b| <= 1/2)")],
            run: run_ex_2_12,
        },
        ScenarioDef {
            id: "ex-2.18",
            title: "slanted family: the starlike factor z + z^2/2 is not enough",
            expected: Expected::Counterexample,
            params: &[("alpha", PI_3, "slant angle")],
            run: run_ex_2_18,
        },
        ScenarioDef {
            id: "cor-2.13",
            title: "f_a with a >= 6 convolved with a convex map: convex in the real-axis direction",
            expected: Expected::Holds,
            params: &[("a", 6.0, "family parameter (>= 6)")],
            run: run_cor_2_13,
        },
        ScenarioDef {
            id: "cor-2.14",
            title: "F_b convolved with a 3-starlike map: convex in the real-axis direction",
            expected: Expected::Holds,
            params: &[("b", 0.25, "family parameter (|b| <= 1/2)")],
            run: run_cor_2_14,
        },
        ScenarioDef {
            id: "thm-2.16",
            title: "slanted half-plane image convolved with a convex map: convex in pi/2 - alpha",
            expected: Expected::Holds,
            params: &[("alpha", PI_4, "slant angle")],
            run: run_thm_2_16,
        },
        ScenarioDef {
            id: "thm-2.20",
            title: "slanted map convolved with a 2-starlike map: convex in -alpha and pi/2 - alpha",
            expected: Expected::Holds,
            params: &[("alpha", PI_4, "slant angle")],
            run: run_thm_2_20,
        },
    ]
}
