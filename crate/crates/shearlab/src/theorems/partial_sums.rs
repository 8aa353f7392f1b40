//! Scenarios for the partial-sum statements: starlikeness levels of the
//! truncated polylog kernels, and directional convexity of the partial
//! sums of convolutions with the named harmonic maps.

use num_complex::Complex64;

use super::*;
use crate::atlas::{named_harmonic, HarmonicFamily};
use crate::certificates::salagean_certificate;
use crate::numeric::{condition_series, re_min_on_grid, Prefactor};
use crate::series::geometric;

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Conclusion checks for the partial sums `(f*phi)_p`: the partial-sum /
/// convolution commutation, then the univalence-and-direction bundle.
fn partial_sum_conclusions(
    body: &mut ScenarioBody,
    f: &HarmonicMap,
    phi: &PowerSeries,
    ps: &[usize],
    directions: &[f64],
    grid: &DiskGrid,
) -> Result<()> {
    let conv = f.tilde_convolve(phi);
    for &p in ps {
        let map_p = conv.partial_sum(p)?;
        let alt = f.tilde_convolve(&phi.partial_sum(p)?);
        let dist = map_p
            .h()
            .max_relative_distance(alt.h())
            .max(map_p.g().max_relative_distance(alt.g()));
        body.push(structural_check(&format!("(f*phi)_{p} = f*(phi_{p})"), dist, map_p.order()));
        body.checks
            .extend(univalent_bundle(&format!("p={p}"), &map_p, directions, grid)?);
    }
    Ok(())
}

/// The `p` set granted by the level margin `m - n`: 2 alone, {2, 3}, or
/// everything up to `p_max`.
fn granted_p_set(margin: i64, p_max: usize) -> Result<Vec<usize>> {
    match margin {
        2 => Ok(vec![2]),
        3 => Ok(vec![2, 3]),
        m if m >= 4 => Ok((2..=p_max).collect()),
        m => Err(Error::InvalidParameter(format!(
            "level margin {m} grants no partial sums (needs >= 2)"
        ))),
    }
}

fn run_lem_3_1(p: &Params) -> Result<ScenarioBody> {
    let n_max = p.get_usize("n_max")?.max(4);
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    for (m, n, level) in [(1u32, 2usize, 0u32), (2, 3, 0)] {
        let f = polylog(m).partial_sum(n)?;
        body.push(cert_check(
            &format!("partial sum ({m}, {n}) starlike"),
            CheckRole::Hypothesis,
            &salagean_certificate(&f, level + 1, 0.0)?,
        ));
        body.push(probe_check(
            &format!("quotient probe ({m}, {n})"),
            CheckRole::Conclusion,
            &n_starlike_probe(&f, level as i32, 0.0, &grid)?,
        ));
    }
    // cubic decay: every truncation length is starlike
    let f3 = polylog(3);
    for n in [2usize, 8, n_max] {
        let f = f3.partial_sum(n)?;
        body.push(cert_check(
            &format!("partial sum (3, {n}) starlike"),
            CheckRole::Hypothesis,
            &salagean_certificate(&f, 1, 0.0)?,
        ));
    }
    body.push(probe_check(
        &format!("quotient probe (3, {n_max})"),
        CheckRole::Conclusion,
        &n_starlike_probe(&f3.partial_sum(n_max)?, 0, 0.0, &grid)?,
    ));
    Ok(body)
}

fn run_lem_3_2(p: &Params) -> Result<ScenarioBody> {
    let m = p.get_u32("m")?;
    let n_max = p.get_usize("n_max")?.max(4);
    if m < 3 {
        return Err(Error::InvalidParameter("needs m >= 3".into()));
    }
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let f = polylog(m);
    let cases = [(2usize, m - 1), (3, m - 2), (n_max, m - 3)];
    for (n, level) in cases {
        let fp = f.partial_sum(n)?;
        body.push(cert_check(
            &format!("partial sum ({m}, {n}) at level {level}"),
            CheckRole::Hypothesis,
            &salagean_certificate(&fp, level + 1, 0.0)?,
        ));
        body.push(probe_check(
            &format!("quotient probe ({m}, {n}) at level {level}"),
            CheckRole::Conclusion,
            &n_starlike_probe(&fp, level as i32, 0.0, &grid)?,
        ));
    }
    Ok(body)
}

fn run_lem_3_3(p: &Params) -> Result<ScenarioBody> {
    let m = p.get_u32("m")?;
    let p_max = p.get_usize("p_max")?.clamp(3, 16);
    if m < 4 {
        return Err(Error::InvalidParameter("needs m >= 4".into()));
    }
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let phi = polylog(m + 3);
    body.push(class_check(&format!("phi at level {m}"), &phi, m, &grid)?);
    for (pp, level) in [(2usize, m - 2), (3, m - 3)] {
        body.push(cert_check(
            &format!("phi_{pp} at level {level}"),
            CheckRole::Conclusion,
            &salagean_certificate(&phi.partial_sum(pp)?, level + 1, 0.0)?,
        ));
    }
    for pp in 2..=p_max {
        let fp = phi.partial_sum(pp)?;
        body.push(cert_check(
            &format!("phi_{pp} at level {}", m - 4),
            CheckRole::Conclusion,
            &salagean_certificate(&fp, m - 3, 0.0)?,
        ));
        body.push(probe_check(
            &format!("quotient probe phi_{pp} at level {}", m - 4),
            CheckRole::Conclusion,
            &n_starlike_probe(&fp, (m - 4) as i32, 0.0, &grid)?,
        ));
    }
    Ok(body)
}

/// Builds the level-`n` instance used by the partial-sum master statement.
fn master_instance(n: u32, p: &Params) -> Result<(HarmonicMap, PowerSeries)> {
    match n {
        1 => {
            let a = p.get("a");
            let f = named_harmonic(&HarmonicFamily::FamilyA { a }, PROBE_ORDER)?;
            Ok((f, geometric(PROBE_ORDER)))
        }
        2 => {
            let f = named_harmonic(&HarmonicFamily::KoebeK, PROBE_ORDER)?;
            let kernel = PowerSeries::from_fn(PROBE_ORDER, |k| real(k as f64));
            Ok((f, kernel))
        }
        3 => {
            let b = p.get("b");
            let f = named_harmonic(&HarmonicFamily::FamilyB { b }, PROBE_ORDER)?;
            let squares = PowerSeries::from_fn(PROBE_ORDER, |k| real((k * k) as f64));
            Ok((f, squares))
        }
        other => Err(Error::InvalidParameter(format!(
            "no canonical instance registered for level n = {other}"
        ))),
    }
}

fn run_thm_3_4(p: &Params) -> Result<ScenarioBody> {
    let n = p.get_u32("n")?;
    let m = p.get_u32("m")?;
    let p_max = p.get_usize("p_max")?.clamp(2, 12);
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let (f, slice_expect) = master_instance(n, p)?;
    body.push(structural_check(
        "h - g matches the kernel power",
        f.shear_slice(0.0).max_relative_distance(&slice_expect),
        PROBE_ORDER,
    ));
    let s = condition_series(f.h(), Complex64::ONE, n as i32)?;
    body.push(probe_check(
        "Re((1-z)^2 S(z)/z) > 1/2",
        CheckRole::Hypothesis,
        &re_min_on_grid(&s, Some(Prefactor::squared(Complex64::ONE)), &grid)?,
    ));
    let phi = polylog(m + 3);
    body.push(class_check(&format!("phi at level {m}"), &phi, m, &grid)?);
    let ps = granted_p_set(m as i64 - n as i64, p_max)?;
    partial_sum_conclusions(&mut body, &f, &phi, &ps, &[0.0], &grid)?;
    Ok(body)
}

/// Shared body of the itemized partial-sum corollaries: `item` picks the
/// hypothesis level `base + item - 1` and the granted `p` set; `phi_m = 0`
/// selects the canonical certified instance `polylog(level + 3)`.
fn itemized_partial_sums(
    body: &mut ScenarioBody,
    f: &HarmonicMap,
    base_level: u32,
    p: &Params,
    directions: &[f64],
) -> Result<()> {
    let item = p.get_usize("item")?;
    if !(1..=3).contains(&item) {
        return Err(Error::InvalidParameter(format!("item {item} outside 1..=3")));
    }
    let p_max = p.get_usize("p_max")?.clamp(2, 12);
    let level = base_level + item as u32 - 1;
    let phi_m = p.get_u32("phi_m")?;
    let phi_m = if phi_m == 0 { level + 3 } else { phi_m };
    let grid = default_grid();
    let phi = polylog(phi_m);
    body.push(class_check(&format!("phi at level {level}"), &phi, level, &grid)?);
    let ps = match (item, p.get_usize("p")?) {
        (_, pp) if pp >= 2 => vec![pp],
        (1, _) => vec![2],
        (2, _) => vec![2, 3],
        _ => (2..=p_max).collect(),
    };
    partial_sum_conclusions(body, f, &phi, &ps, directions, &grid)
}

const ITEM_PARAMS: &[(&str, f64, &str)] = &[
    ("item", 3.0, "statement item (1, 2 or 3)"),
    ("phi_m", 0.0, "polylog index of phi (0 = canonical certified instance)"),
    ("p", 0.0, "single partial-sum index to check (0 = item default set)"),
    ("p_max", 8.0, "largest partial sum for item 3"),
];

fn run_cor_3_5(p: &Params) -> Result<ScenarioBody> {
    let a = p.get("a");
    let mut body = ScenarioBody::new();
    let f = named_harmonic(&HarmonicFamily::FamilyA { a }, PROBE_ORDER)?;
    body.push(structural_check(
        "h - g = z/(1-z)",
        f.shear_slice(0.0).max_relative_distance(&geometric(PROBE_ORDER)),
        PROBE_ORDER,
    ));
    itemized_partial_sums(&mut body, &f, 3, p, &[0.0])?;
    Ok(body)
}

fn run_cor_3_9(family: HarmonicFamily, p: &Params) -> Result<ScenarioBody> {
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let f = named_harmonic(&family, PROBE_ORDER)?;
    let koebe_kernel = PowerSeries::from_fn(PROBE_ORDER, |k| real(k as f64));
    body.push(structural_check(
        "h - g = z/(1-z)^2",
        f.shear_slice(0.0).max_relative_distance(&koebe_kernel),
        PROBE_ORDER,
    ));
    body.push(probe_check(
        "Re((1-z)^2 h(z)/z) > 1/2",
        CheckRole::Hypothesis,
        &re_min_on_grid(f.h(), Some(Prefactor::squared(Complex64::ONE)), &grid)?,
    ));
    itemized_partial_sums(&mut body, &f, 4, p, &[0.0])?;
    Ok(body)
}

fn run_cor_3_9_k(p: &Params) -> Result<ScenarioBody> {
    run_cor_3_9(HarmonicFamily::KoebeK, p)
}

fn run_cor_3_9_l(p: &Params) -> Result<ScenarioBody> {
    run_cor_3_9(HarmonicFamily::HalfPlaneL, p)
}

fn run_ex_3_10(_p: &Params) -> Result<ScenarioBody> {
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let k = named_harmonic(&HarmonicFamily::KoebeK, PROBE_ORDER)?;
    let cases: [(u32, usize, &[(usize, f64)], &[(usize, f64)]); 3] = [
        (3, 2, &[(2, 5.0 / 16.0)], &[(2, 1.0 / 16.0)]),
        (
            4,
            3,
            &[(2, 5.0 / 32.0), (3, 14.0 / 243.0)],
            &[(2, 1.0 / 32.0), (3, 5.0 / 243.0)],
        ),
        (
            5,
            4,
            &[(2, 5.0 / 64.0), (3, 14.0 / 729.0), (4, 15.0 / 2048.0)],
            &[(2, 1.0 / 64.0), (3, 5.0 / 729.0), (4, 7.0 / 2048.0)],
        ),
    ];
    for (m, pp, h_coeffs, g_coeffs) in cases {
        let phi = polylog(m);
        body.push(class_check(&format!("polylog {m} at level {}", m + 1), &phi, m + 1, &grid)?);
        let map_p = k.tilde_convolve(&phi).partial_sum(pp)?;
        let mut worst: f64 = (map_p.h().coeff(1) - Complex64::ONE).norm();
        for &(idx, val) in h_coeffs {
            worst = worst.max((map_p.h().coeff(idx) - real(val)).norm());
        }
        for &(idx, val) in g_coeffs {
            worst = worst.max((map_p.g().coeff(idx) - real(val)).norm());
        }
        // everything above p must be exactly zero
        for idx in pp + 1..=map_p.order().min(pp + 4) {
            worst = worst.max(map_p.h().coeff(idx).norm());
            worst = worst.max(map_p.g().coeff(idx).norm());
        }
        body.push(regression_check(&format!("(K*f_{m})_{pp} coefficients"), worst, STRUCT_TOL));
        body.checks
            .extend(univalent_bundle(&format!("(K*f_{m})_{pp}"), &map_p, &[0.0], &grid)?);
    }
    Ok(body)
}

fn run_cor_3_11(p: &Params) -> Result<ScenarioBody> {
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
    itemized_partial_sums(&mut body, &f, 5, p, &[0.0])?;
    Ok(body)
}

fn run_thm_3_12(p: &Params) -> Result<ScenarioBody> {
    let alpha = p.get("alpha");
    let grid = default_grid();
    let mut body = ScenarioBody::new();
    let f = named_harmonic(&HarmonicFamily::Slanted { alpha }, PROBE_ORDER)?;
    let half = crate::atlas::kernel(
        &crate::atlas::KernelKind::HalfPlane { alpha: Complex64::from_polar(1.0, alpha) },
        PROBE_ORDER,
    )?;
    let dist = f
        .h()
        .add(&f.g().scale(Complex64::from_polar(1.0, -2.0 * alpha)))
        .max_relative_distance(&half);
    body.push(structural_check("h + e^{-2i alpha} g = z/(1 - e^{i alpha} z)", dist, PROBE_ORDER));
    let _ = grid;
    itemized_partial_sums(&mut body, &f, 3, p, &[std::f64::consts::FRAC_PI_2 - alpha])?;
    Ok(body)
}

fn run_thm_3_13(p: &Params) -> Result<ScenarioBody> {
    let alpha = p.get("alpha");
    let mut body = ScenarioBody::new();
    let f = named_harmonic(&HarmonicFamily::Slanted { alpha }, PROBE_ORDER)?;
    let star = crate::atlas::kernel(
        &crate::atlas::KernelKind::Starlike { alpha: Complex64::from_polar(1.0, alpha) },
        PROBE_ORDER,
    )?;
    body.push(structural_check(
        "h - e^{-2i alpha} g = z/(1 - e^{i alpha} z)^2",
        f.shear_slice(-alpha).max_relative_distance(&star),
        PROBE_ORDER,
    ));
    itemized_partial_sums(
        &mut body,
        &f,
        4,
        p,
        &[-alpha, std::f64::consts::FRAC_PI_2 - alpha],
    )?;
    Ok(body)
}

pub(super) fn scenarios() -> Vec<ScenarioDef> {
    const PI_4: f64 = std::f64::consts::FRAC_PI_4;
    vec![
        ScenarioDef {
            id: "lem-3.1",
            title: "truncated polylog kernels of decay 1, 2, 3 are starlike",
            expected: Expected::Holds,
            params: &[("n_max", 64.0, "largest truncation length for cubic decay")],
            run: run_lem_3_1,
        },
        ScenarioDef {
            id: "lem-3.2",
            title: "truncated polylog kernels keep levels m-1, m-2, m-3",
            expected: Expected::Holds,
            params: &[
                ("m", 5.0, "coefficient decay exponent (>= 3)"),
                ("n_max", 64.0, "largest truncation length for item 3"),
            ],
            run: run_lem_3_2,
        },
        ScenarioDef {
            id: "lem-3.3",
            title: "partial sums of a level-m map keep levels m-2, m-3, m-4",
            expected: Expected::Holds,
            params: &[
                ("m", 4.0, "hypothesis level (>= 4)"),
                ("p_max", 8.0, "largest partial sum for item 3"),
            ],
            run: run_lem_3_3,
        },
        ScenarioDef {
            id: "thm-3.4",
            title: "partial sums of the kernel-power convolution are convex in the real-axis direction",
            expected: Expected::Holds,
            params: &[
                ("n", 1.0, "kernel power level (1, 2 or 3)"),
                ("m", 5.0, "hypothesis level of phi"),
                ("p_max", 8.0, "largest partial sum when the margin allows all p"),
                ("a", 6.0, "level-1 family parameter"),
                ("b", 0.25, "level-3 family parameter"),
            ],
            run: run_thm_3_4,
        },
        ScenarioDef {
            id: "cor-3.5",
            title: "partial sums of f_a convolutions are convex in the real-axis direction",
            expected: Expected::Holds,
            params: &[
                ("a", 6.0, "family parameter (>= 6)"),
                ("item", 3.0, "statement item (1, 2 or 3)"),
                ("phi_m", 0.0, "polylog index of phi (0 = canonical certified instance)"),
                ("p", 0.0, "single partial-sum index to check (0 = item default set)"),
                ("p_max", 8.0, "largest partial sum for item 3"),
            ],
            run: run_cor_3_5,
        },
        ScenarioDef {
            id: "cor-3.9-K",
            title: "partial sums of harmonic-Koebe convolutions are convex in the real-axis direction",
            expected: Expected::Holds,
            params: ITEM_PARAMS,
            run: run_cor_3_9_k,
        },
        ScenarioDef {
            id: "cor-3.9-L",
            title: "partial sums of half-plane convolutions are convex in the real-axis direction",
            expected: Expected::Holds,
            params: ITEM_PARAMS,
            run: run_cor_3_9_l,
        },
        ScenarioDef {
            id: "ex-3.10",
            title: "explicit partial-sum coefficients of the harmonic-Koebe convolutions",
            expected: Expected::Holds,
            params: &[],
            run: run_ex_3_10,
        },
        ScenarioDef {
            id: "cor-3.11",
            title: "partial sums of F_b convolutions are convex in the real-axis direction",
            expected: Expected::Holds,
            params: &[
                ("b", 0.25, "family parameter (|b| <= 1/2)"),
                ("item", 3.0, "statement item (1, 2 or 3)"),
                ("phi_m", 0.0, "polylog index of phi (0 = canonical certified instance)"),
                ("p", 0.0, "single partial-sum index to check (0 = item default set)"),
                ("p_max", 8.0, "largest partial sum for item 3"),
            ],
            run: run_cor_3_11,
        },
        ScenarioDef {
            id: "thm-3.12",
            title: "partial sums of slanted-image convolutions are convex in pi/2 - alpha",
            expected: Expected::Holds,
            params: &[
                ("alpha", PI_4, "slant angle"),
                ("item", 3.0, "statement item (1, 2 or 3)"),
                ("phi_m", 0.0, "polylog index of phi (0 = canonical certified instance)"),
                ("p", 0.0, "single partial-sum index to check (0 = item default set)"),
                ("p_max", 8.0, "largest partial sum for item 3"),
            ],
            run: run_thm_3_12,
        },
        ScenarioDef {
            id: "thm-3.13",
            title: "partial sums of slanted-map convolutions are convex in -alpha and pi/2 - alpha",
            expected: Expected::Holds,
            params: &[
                ("alpha", PI_4, "slant angle"),
                ("item", 3.0, "statement item (1, 2 or 3)"),
                ("phi_m", 0.0, "polylog index of phi (0 = canonical certified instance)"),
                ("p", 0.0, "single partial-sum index to check (0 = item default set)"),
                ("p_max", 8.0, "largest partial sum for item 3"),
            ],
            run: run_thm_3_13,
        },
    ]
}
