//! Acceptance suite: one test per criterion, each printing a pass line
//! with its measured figures (visible with `--nocapture`).

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shearlab::atlas::{kernel, koebe_exact, named_harmonic, HarmonicFamily, KernelKind};
use shearlab::certificates::{salagean_certificate, starlike_certificate};
use shearlab::exact::{polylog_exact, ComplexRat};
use shearlab::harmonic::HarmonicMap;
use shearlab::numeric::{
    jacobian_scan, n_starlike_probe, re_condition_values, re_min_on_grid, DiskGrid, Prefactor,
    PROBE_ORDER,
};
use shearlab::series::{geometric, PowerSeries};
use shearlab::theorems;

const PI: f64 = std::f64::consts::PI;

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn quadratic(c2: f64, order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |k| match k {
        1 => Complex64::ONE,
        2 => real(c2),
        _ => Complex64::ZERO,
    })
}

#[test]
fn criterion_1_exact_coefficient_regression() {
    let start = Instant::now();

    // exact-rational mode: convolve the harmonic Koebe expansion with the
    // polylog kernels and truncate
    let order = 8;
    let (kh, kg) = koebe_exact(order);
    let cases: [(u32, usize, Vec<(usize, i64, i64)>, Vec<(usize, i64, i64)>); 3] = [
        (3, 2, vec![(2, 5, 16)], vec![(2, 1, 16)]),
        (
            4,
            3,
            vec![(2, 5, 32), (3, 14, 243)],
            vec![(2, 1, 32), (3, 5, 243)],
        ),
        (
            5,
            4,
            vec![(2, 5, 64), (3, 14, 729), (4, 15, 2048)],
            vec![(2, 1, 64), (3, 5, 729), (4, 7, 2048)],
        ),
    ];
    for (m, p, h_expect, g_expect) in &cases {
        let phi = polylog_exact(*m, order);
        let h = kh.hadamard(&phi).partial_sum(*p).unwrap();
        let g = kg.hadamard(&phi).partial_sum(*p).unwrap();
        assert_eq!(h.coeff(1), ComplexRat::one(), "m={m}");
        for &(idx, p_num, q_den) in h_expect {
            assert_eq!(h.coeff(idx), ComplexRat::ratio(p_num, q_den), "h m={m} idx={idx}");
        }
        for &(idx, p_num, q_den) in g_expect {
            assert_eq!(g.coeff(idx), ComplexRat::ratio(p_num, q_den), "g m={m} idx={idx}");
        }
        for idx in p + 1..=order {
            assert!(h.coeff(idx).is_zero() && g.coeff(idx).is_zero());
        }
    }

    // float mode to 1e-12 absolute
    let k = named_harmonic(&HarmonicFamily::KoebeK, order).unwrap();
    for (m, p, h_expect, g_expect) in &cases {
        let phi = kernel(&KernelKind::Polylog { m: *m }, order).unwrap();
        let conv = k.tilde_convolve(&phi).partial_sum(*p).unwrap();
        for &(idx, p_num, q_den) in h_expect {
            let expected = p_num as f64 / q_den as f64;
            assert!((conv.h().coeff(idx) - real(expected)).norm() <= 1e-12);
        }
        for &(idx, p_num, q_den) in g_expect {
            let expected = p_num as f64 / q_den as f64;
            assert!((conv.g().coeff(idx) - real(expected)).norm() <= 1e-12);
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("acceptance 1 (exact coefficient regression): PASS in {elapsed:?}");
}

#[test]
fn criterion_2_counterexample_zeros() {
    let start = Instant::now();
    let grid = DiskGrid::default_grid();
    let order = 16;

    let mut located = 0usize;
    let mut check = |map: HarmonicMap, target: Complex64| {
        let scan = jacobian_scan(&map, &grid).unwrap();
        let dist = scan.zero_distance_to(target);
        assert!(
            dist <= 1e-6,
            "zero at {target} missed by {dist:.3e}"
        );
        for z in &scan.refined_zeros {
            assert!(z.norm() < grid.r_max() + 1e-12);
            assert!(map.jacobian(*z).unwrap().abs() < 1e-9);
        }
        located += 1;
    };

    let phi_half = quadratic(0.5, order);
    for a in [1.0, 2.0, 6.0, 10.0] {
        let f = named_harmonic(&HarmonicFamily::FamilyA { a }, order).unwrap();
        check(f.tilde_convolve(&phi_half), real(-a / (a + 2.0)));
    }
    let phi_eighth = quadratic(0.125, order);
    for b in [0.1, 0.25, 0.5] {
        let f = named_harmonic(&HarmonicFamily::FamilyB { b }, order).unwrap();
        check(f.tilde_convolve(&phi_eighth), real(-1.0 / (1.0 + b)));
    }
    for alpha in [0.0, PI / 4.0, PI / 2.0] {
        let f = named_harmonic(&HarmonicFamily::Slanted { alpha }, order).unwrap();
        check(
            f.tilde_convolve(&phi_half),
            -Complex64::from_polar(0.5, -alpha),
        );
    }

    // the registered counterexample scenarios agree across the sweeps
    for (id, name, values) in [
        ("ex-2.11", "a", &[1.0, 2.0, 6.0, 10.0][..]),
        ("ex-2.12", "b", &[0.1, 0.25, 0.5][..]),
        ("ex-2.18", "alpha", &[0.0, PI / 4.0, PI / 2.0][..]),
    ] {
        for &value in values {
            let overrides = [(name.to_string(), value)].into_iter().collect();
            let report = theorems::run_scenario(id, &overrides).unwrap();
            assert!(report.consistent(), "{id} {name}={value}: {report:?}");
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("acceptance 2 (counterexample zeros, {located} maps): PASS in {elapsed:?}");
}

#[test]
fn criterion_3_re_condition_minima() {
    let grid = DiskGrid::default_grid();
    let prefactor = Some(Prefactor::squared(Complex64::ONE));

    let k = named_harmonic(&HarmonicFamily::KoebeK, PROBE_ORDER).unwrap();
    let rep_h = re_min_on_grid(k.h(), prefactor, &grid).unwrap();
    assert!(rep_h.min_value > 0.5, "K: min {}", rep_h.min_value);

    let l = named_harmonic(&HarmonicFamily::HalfPlaneL, PROBE_ORDER).unwrap();
    let rep_m = re_min_on_grid(l.h(), prefactor, &grid).unwrap();
    assert!(rep_m.min_value > 0.5, "L: min {}", rep_m.min_value);
    // the L condition is exactly Re(1 - z/2)
    assert!((rep_m.min_value - (1.0 - 0.995 / 2.0)).abs() < 1e-9);

    let mut worst: f64 = 0.0;
    for alpha in [0.0, PI / 4.0, PI / 2.0] {
        let unit = Complex64::from_polar(1.0, alpha);
        let f = named_harmonic(&HarmonicFamily::Slanted { alpha }, PROBE_ORDER).unwrap();
        let values =
            re_condition_values(f.h(), Some(Prefactor::squared(unit)), &grid).unwrap();
        for (i, row) in values.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let z = grid.point(i, j);
                worst = worst.max((v - (1.0 - 0.5 * (unit * z).re)).abs());
            }
        }
    }
    assert!(worst < 1e-9, "slanted pointwise deviation {worst:.3e}");
    println!(
        "acceptance 3 (re-condition minima): PASS — K {:.6}, L {:.6}, slanted dev {worst:.2e}",
        rep_h.min_value, rep_m.min_value
    );
}

#[test]
fn criterion_4_certificate_boundary_cases() {
    let f = PowerSeries::from_real(&[0.0, 1.0, 0.5]).unwrap();
    let cert = starlike_certificate(&f, 0.0).unwrap();
    assert!(cert.certified());
    assert_eq!(cert.weighted_sum, 1.0);

    let f = PowerSeries::from_real(&[0.0, 1.0, 0.125]).unwrap();
    let cert = salagean_certificate(&f, 3, 0.0).unwrap();
    assert!(cert.certified());
    assert_eq!(cert.weighted_sum, 1.0);

    let bound = PI * PI / 6.0 - 1.0;
    let big = kernel(&KernelKind::Polylog { m: 3 }, 10_000).unwrap();
    for n in 2..=10_000usize {
        let partial = big.partial_sum(n).unwrap();
        let cert = starlike_certificate(&partial, 0.0).unwrap();
        assert!(cert.certified(), "n = {n}");
        assert!(cert.weighted_sum < bound, "n = {n}: {}", cert.weighted_sum);
    }
    println!("acceptance 4 (certificate boundary cases): PASS — cubic partials to n = 10000");
}

#[test]
fn criterion_5_scenario_suite() {
    let start = Instant::now();
    let descriptors = theorems::list_scenarios();
    assert!(descriptors.len() >= 24, "registry size {}", descriptors.len());

    let reports = theorems::run_all().unwrap();
    assert_eq!(reports.len(), descriptors.len());
    for report in &reports {
        assert!(
            report.consistent(),
            "{}: {:?}\n{:#?}",
            report.id,
            report.overall,
            report.checks.iter().filter(|c| !c.matched()).collect::<Vec<_>>()
        );
    }

    // the two-direction statement really probes both directions
    let twodir = reports.iter().find(|r| r.id == "thm-2.20").unwrap();
    let dirs = twodir
        .checks
        .iter()
        .filter(|c| c.name.contains("convex in direction"))
        .count();
    assert!(dirs >= 2, "thm-2.20 probed {dirs} directions");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "acceptance 5 (scenario suite): PASS — {} scenarios consistent in {elapsed:?}",
        reports.len()
    );
}

/// Random normalized polynomial of degree `order` with coefficients scaled
/// to keep certificates plausible.
fn random_normalized(rng: &mut ChaCha8Rng, order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |k| match k {
        0 => Complex64::ZERO,
        1 => Complex64::ONE,
        _ => {
            let r: f64 = rng.random_range(0.0..1.0 / (k * k) as f64);
            let t: f64 = rng.random_range(0.0..2.0 * PI);
            Complex64::from_polar(r, t)
        }
    })
}

#[test]
fn criterion_6_operator_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EA51AB);
    let order = 16;
    let tol = 1e-12;
    for trial in 0..1000 {
        let f = random_normalized(&mut rng, order);
        let g = random_normalized(&mut rng, order);
        let n = rng.random_range(-2..=3);
        let m = rng.random_range(-2..=3);

        // composition
        let composed = f.salagean(n).unwrap().salagean(m).unwrap();
        let direct = f.salagean(n + m).unwrap();
        assert!(composed.max_relative_distance(&direct) <= tol, "trial {trial}");

        // distribution over the coefficient-wise product (non-negative powers)
        let (np, mp) = (n.abs(), m.abs());
        let lhs = f.hadamard(&g).salagean(np + mp).unwrap();
        let rhs = f.salagean(np).unwrap().hadamard(&g.salagean(mp).unwrap());
        assert!(lhs.max_relative_distance(&rhs) <= tol, "trial {trial}");

        // identity of the coefficient-wise product
        assert!(f.hadamard(&geometric(order)).max_coeff_distance(&f) <= tol);

        // partial sums commute with the convolution
        let gpart = PowerSeries::from_fn(order, |k| {
            if k < 2 { Complex64::ZERO } else { g.coeff(k) }
        });
        let map = HarmonicMap::new(f.clone(), gpart).unwrap();
        let phi = random_normalized(&mut rng, order);
        let p = rng.random_range(1..=order);
        let a = map.tilde_convolve(&phi).partial_sum(p).unwrap();
        let b = map.tilde_convolve(&phi.partial_sum(p).unwrap());
        assert!(a.h().max_coeff_distance(b.h()) <= tol, "trial {trial}");
        assert!(a.g().max_coeff_distance(b.g()) <= tol, "trial {trial}");
    }
    println!("acceptance 6 (operator identities): PASS — 1000 random polynomials at order 16");
}

#[test]
fn criterion_7_soundness_implication() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let grid = DiskGrid::default_grid();
    let order = 16;
    let mut violations = 0usize;
    for _ in 0..10_000 {
        let m: u32 = rng.random_range(1..=4);
        let alpha: f64 = rng.random_range(0.0..0.9);
        // draw a random direction and rescale onto the certificate region
        let raw = random_normalized(&mut rng, order);
        let weighted: f64 = (2..=order)
            .map(|k| (k as f64).powi(m as i32 - 1) * (k as f64 - alpha) * raw.coeff(k).norm())
            .sum();
        let target = rng.random_range(0.0..=1.0) * (1.0 - alpha);
        let scale = if weighted > 0.0 { target / weighted } else { 0.0 };
        let f = PowerSeries::from_fn(order, |k| match k {
            0 => Complex64::ZERO,
            1 => Complex64::ONE,
            _ => raw.coeff(k) * scale,
        });

        let cert = salagean_certificate(&f, m, alpha).unwrap();
        if !cert.certified() {
            continue;
        }
        let probe = n_starlike_probe(&f, m as i32 - 1, alpha - 1e-6, &grid).unwrap();
        if !probe.passed() {
            violations += 1;
        }
    }
    assert_eq!(violations, 0);
    println!(
        "acceptance 7 (soundness implication): PASS — 10000 trials, 0 violations in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_8_shear_identities() {
    let order = 64;
    for alpha in [0.0, PI / 4.0, PI / 2.0] {
        let unit = Complex64::from_polar(1.0, alpha);
        let f = named_harmonic(&HarmonicFamily::Slanted { alpha }, order).unwrap();
        let lhs = f.h().add(&f.g().scale(Complex64::from_polar(1.0, -2.0 * alpha)));
        let rhs = kernel(&KernelKind::HalfPlane { alpha: unit }, order).unwrap();
        let dist = lhs.max_coeff_distance(&rhs);
        assert!(dist <= 1e-12, "alpha = {alpha}: {dist:.3e}");
    }

    let f = named_harmonic(&HarmonicFamily::FamilyB { b: 0.25 }, order).unwrap();
    let squares = PowerSeries::from_fn(order, |k| real((k * k) as f64));
    let dist = f.h().sub(f.g()).max_coeff_distance(&squares);
    assert!(dist <= 1e-12, "F_b: {dist:.3e}");
    println!("acceptance 8 (shear identities): PASS");
}
