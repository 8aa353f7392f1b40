//! Grid-based numerical verification on the unit disk: real-part minimum
//! probes, starlikeness-quotient probes, Jacobian scans with zero
//! refinement, directional-convexity probes and boundary injectivity.
//!
//! Circle evaluations go through an FFT: the values of a truncated series
//! on `n` equally spaced points of the circle `|z| = r` are the inverse DFT
//! of the scaled coefficients `c_k r^k` folded modulo `n`. Single off-grid
//! points use Horner evaluation. Reports are deterministic: ties in a
//! minimum are broken by smallest angle, then smallest radius.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::atlas::log_kernel_power;
use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::series::PowerSeries;

/// Slack applied to every strict-threshold verdict.
pub const PROBE_TOL: f64 = 1e-9;

/// Grid values at or below this magnitude count as exact zeros of `J`.
const JACOBIAN_ZERO_TOL: f64 = 1e-12;

/// Refined zeros must reach this Jacobian magnitude.
const REFINED_ZERO_TOL: f64 = 1e-9;

/// Truncation order that keeps circle evaluations of the pole-at-one maps
/// accurate to ~1e-10 at the default outermost radius 0.995.
pub const PROBE_ORDER: usize = 8192;

/// Sampling specification for the disk probes: a sorted set of radii and a
/// common number of equally spaced angles per circle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiskGrid {
    radii: Vec<f64>,
    angular_samples: usize,
    r_max: f64,
}

impl DiskGrid {
    pub fn new(radii: Vec<f64>, angular_samples: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidParameter("grid needs at least one radius".into()));
        }
        if angular_samples < 64 {
            return Err(Error::InvalidParameter(format!(
                "angular samples {angular_samples} < 64"
            )));
        }
        let mut sorted = radii.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if sorted != radii {
            return Err(Error::InvalidParameter("radii must be sorted ascending".into()));
        }
        let r_max = *radii.last().unwrap();
        if !(radii[0] > 0.0 && r_max <= 0.999) {
            return Err(Error::InvalidParameter(format!(
                "radii must lie in (0, 0.999], got [{}, {r_max}]",
                radii[0]
            )));
        }
        Ok(Self { radii, angular_samples, r_max })
    }

    /// Radii `0.1, 0.3, 0.5, 0.7, 0.9, 0.97, 0.995` with 2048 angles.
    pub fn default_grid() -> Self {
        Self::new(vec![0.1, 0.3, 0.5, 0.7, 0.9, 0.97, 0.995], 2048).unwrap()
    }

    /// Parses `r1,r2,...:samples`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (radii_part, samples_part) = spec
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameter(format!("grid spec `{spec}` needs `:`")))?;
        let radii = radii_part
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidParameter(format!("bad radius `{s}`")))
            })
            .collect::<Result<Vec<f64>>>()?;
        let samples = samples_part
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidParameter(format!("bad sample count `{samples_part}`")))?;
        Self::new(radii, samples)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angular_samples(&self) -> usize {
        self.angular_samples
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn angle(&self, j: usize) -> f64 {
        2.0 * std::f64::consts::PI * j as f64 / self.angular_samples as f64
    }

    pub fn point(&self, radius_index: usize, angle_index: usize) -> Complex64 {
        Complex64::from_polar(self.radii[radius_index], self.angle(angle_index))
    }

    pub fn total_samples(&self) -> usize {
        self.radii.len() * self.angular_samples
    }
}

fn fft_for(n: usize) -> Arc<dyn Fft<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| FftPlanner::new().plan_fft_inverse(n))
        .clone()
}

/// Values of `f` at the `n` points `r e^{2 pi i j / n}`, `j = 0..n`.
pub fn circle_values(f: &PowerSeries, r: f64, n: usize) -> Vec<Complex64> {
    let mut bins = vec![Complex64::ZERO; n];
    let mut rk = 1.0;
    for (k, &c) in f.coeffs().iter().enumerate() {
        bins[k % n] += c * rk;
        rk *= r;
    }
    fft_for(n).process(&mut bins);
    bins
}

/// Values of a harmonic map on the same circle sampling.
pub fn circle_values_harmonic(f: &HarmonicMap, r: f64, n: usize) -> Vec<Complex64> {
    let hv = circle_values(f.h(), r, n);
    let gv = circle_values(f.g(), r, n);
    hv.into_iter().zip(gv).map(|(h, g)| h + g.conj()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeVerdict {
    Pass,
    Fail,
}

/// Minimum of a scalar field over the grid, with the strict-threshold
/// verdict `min > threshold - 1e-9`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub min_value: f64,
    pub argmin: Complex64,
    pub threshold: f64,
    pub verdict: ProbeVerdict,
    pub samples_evaluated: usize,
}

impl ProbeReport {
    fn conclude(min_value: f64, argmin: Complex64, threshold: f64, samples: usize) -> Self {
        let verdict = if min_value > threshold - PROBE_TOL {
            ProbeVerdict::Pass
        } else {
            ProbeVerdict::Fail
        };
        Self { min_value, argmin, threshold, verdict, samples_evaluated: samples }
    }

    pub fn passed(&self) -> bool {
        self.verdict == ProbeVerdict::Pass
    }
}

/// Tracks a grid minimum with the deterministic tie-breaking order.
struct MinTracker {
    value: f64,
    angle_index: usize,
    radius_index: usize,
    point: Complex64,
}

impl MinTracker {
    fn new() -> Self {
        Self {
            value: f64::INFINITY,
            angle_index: usize::MAX,
            radius_index: usize::MAX,
            point: Complex64::ZERO,
        }
    }

    fn offer(&mut self, value: f64, radius_index: usize, angle_index: usize, point: Complex64) {
        let better = value < self.value
            || (value == self.value
                && (angle_index < self.angle_index
                    || (angle_index == self.angle_index && radius_index < self.radius_index)));
        if better {
            self.value = value;
            self.angle_index = angle_index;
            self.radius_index = radius_index;
            self.point = point;
        }
    }
}

/// The multiplier `(1 - alpha z)^e / z` applied pointwise before taking the
/// real part; `e` is 2 unless `squared` is cleared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prefactor {
    pub alpha: Complex64,
    pub squared: bool,
}

impl Prefactor {
    pub fn squared(alpha: Complex64) -> Self {
        Self { alpha, squared: true }
    }

    fn apply(&self, z: Complex64, value: Complex64) -> Complex64 {
        let base = Complex64::ONE - self.alpha * z;
        let factor = if self.squared { base * base } else { base };
        factor * value / z
    }
}

/// Real part of `(1 - alpha z)^e q(z) / z` (or plain `Re q`) over the grid.
pub fn re_condition_values(
    q: &PowerSeries,
    prefactor: Option<Prefactor>,
    grid: &DiskGrid,
) -> Result<Vec<Vec<f64>>> {
    if prefactor.is_some() && q.coeff(0).norm() > 1e-12 {
        return Err(Error::ConstantTermNotZero);
    }
    let n = grid.angular_samples();
    let mut out = Vec::with_capacity(grid.radii().len());
    for &r in grid.radii() {
        let vals = circle_values(q, r, n);
        let mut row = Vec::with_capacity(n);
        for (j, &v) in vals.iter().enumerate() {
            let value = match &prefactor {
                Some(pf) => {
                    let z = Complex64::from_polar(r, grid.angle(j));
                    pf.apply(z, v).re
                }
                None => v.re,
            };
            row.push(value);
        }
        out.push(row);
    }
    Ok(out)
}

/// Grid minimum of the real-part condition; the threshold is 1/2.
pub fn re_min_on_grid(
    q: &PowerSeries,
    prefactor: Option<Prefactor>,
    grid: &DiskGrid,
) -> Result<ProbeReport> {
    let values = re_condition_values(q, prefactor, grid)?;
    let mut tracker = MinTracker::new();
    for (i, row) in values.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            tracker.offer(v, i, j, grid.point(i, j));
        }
    }
    Ok(ProbeReport::conclude(tracker.value, tracker.point, 0.5, grid.total_samples()))
}

/// The inner series of the real-part condition at operator level `n`:
/// the coefficient-wise product of `h` with the `(n-2)`-nd power of the
/// twisted log kernel, so that level 1 weights coefficients by `k`, level 2
/// returns `h` itself, and level 3 divides by `k`.
pub fn condition_series(h: &PowerSeries, gamma: Complex64, n: i32) -> Result<PowerSeries> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("operator level n = {n} < 1")));
    }
    h.require_normalized()?;
    Ok(h.hadamard(&log_kernel_power(gamma, n - 2, h.order())?))
}

/// Denominator floor for the starlikeness quotient.
const QUOTIENT_FLOOR: f64 = 1e-12;

/// Grid minimum of `Re(D^{n+1} f / D^n f)` against the threshold `alpha`.
pub fn n_starlike_probe(
    f: &PowerSeries,
    n: i32,
    alpha: f64,
    grid: &DiskGrid,
) -> Result<ProbeReport> {
    f.require_normalized()?;
    let den_series = f.salagean(n)?;
    let num_series = f.salagean(n + 1)?;
    let samples = grid.angular_samples();
    let mut tracker = MinTracker::new();
    let mut degenerate: Vec<Complex64> = Vec::new();
    for (i, &r) in grid.radii().iter().enumerate() {
        let num = circle_values(&num_series, r, samples);
        let den = circle_values(&den_series, r, samples);
        for j in 0..samples {
            if den[j].norm() < QUOTIENT_FLOOR {
                degenerate.push(grid.point(i, j));
                continue;
            }
            tracker.offer((num[j] / den[j]).re, i, j, grid.point(i, j));
        }
    }
    if let Some(&first) = degenerate.first() {
        return Err(Error::ProbeDegenerate { count: degenerate.len(), first });
    }
    Ok(ProbeReport::conclude(tracker.value, tracker.point, alpha, grid.total_samples()))
}

/// Outcome of a Jacobian sweep: grid minima, whether the sign changes, and
/// the refined zero locations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobianScanReport {
    pub min_abs_j: f64,
    pub location: Complex64,
    pub sign_changes: bool,
    pub refined_zeros: Vec<Complex64>,
    /// Signed grid minimum (positive everywhere means sense-preserving on
    /// the sampled set).
    pub min_j: f64,
}

impl JacobianScanReport {
    /// True when the sweep saw no vanishing or negative Jacobian.
    pub fn positive(&self) -> bool {
        !self.sign_changes && self.refined_zeros.is_empty() && self.min_j > 0.0
    }

    /// Smallest distance from a refined zero to `target`.
    pub fn zero_distance_to(&self, target: Complex64) -> f64 {
        self.refined_zeros
            .iter()
            .map(|z| (z - target).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

struct JacobianField {
    hp: PowerSeries,
    gp: PowerSeries,
}

impl JacobianField {
    fn new(f: &HarmonicMap) -> Result<Self> {
        Ok(Self { hp: f.h().derivative()?, gp: f.g().derivative()? })
    }

    fn at(&self, z: Complex64) -> f64 {
        self.hp.eval_unchecked(z).norm_sqr() - self.gp.eval_unchecked(z).norm_sqr()
    }

    fn circle(&self, r: f64, n: usize) -> Vec<f64> {
        let hv = circle_values(&self.hp, r, n);
        let gv = circle_values(&self.gp, r, n);
        (0..n).map(|j| hv[j].norm_sqr() - gv[j].norm_sqr()).collect()
    }
}

/// Bisection along the segment `z(s), s in [0, 1]` with `J` of opposite
/// strict signs at the endpoints.
fn bisect_zero(
    field: &JacobianField,
    z_of: impl Fn(f64) -> Complex64,
    mut lo: f64,
    mut hi: f64,
    mut j_lo: f64,
) -> Option<Complex64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let z = z_of(mid);
        let j = field.at(z);
        if j.abs() < REFINED_ZERO_TOL * 1e-3 || hi - lo < 1e-15 {
            return (field.at(z).abs() < REFINED_ZERO_TOL).then_some(z);
        }
        if (j > 0.0) == (j_lo > 0.0) {
            lo = mid;
            j_lo = j;
        } else {
            hi = mid;
        }
    }
    let z = z_of(0.5 * (lo + hi));
    (field.at(z).abs() < REFINED_ZERO_TOL).then_some(z)
}

/// Smallest zero of `J` along the ray at angle `t` inside `[r_lo, r_hi]`,
/// if the ray meets the zero set there.
fn smallest_radial_zero(
    field: &JacobianField,
    t: f64,
    r_lo: f64,
    r_hi: f64,
) -> Option<(f64, Complex64)> {
    const STEPS: usize = 48;
    let at_r = |r: f64| field.at(Complex64::from_polar(r, t));
    let mut prev_r = r_lo;
    let mut prev_j = at_r(prev_r);
    for i in 1..=STEPS {
        let r = r_lo + (r_hi - r_lo) * i as f64 / STEPS as f64;
        let j = at_r(r);
        if prev_j > 0.0 && j <= 0.0 {
            let z = bisect_zero(
                field,
                |s| Complex64::from_polar(prev_r + s * (r - prev_r), t),
                0.0,
                1.0,
                prev_j,
            )?;
            return Some((z.norm(), z));
        }
        prev_r = r;
        prev_j = j;
    }
    None
}

/// Scans `J` over the grid, refines every bracketed sign change by
/// bisection, and polishes each locally-minimal-radius zero towards the
/// nearest point of the zero set (the location where the vanishing circle
/// is tangent to a circle about the origin).
pub fn jacobian_scan(f: &HarmonicMap, grid: &DiskGrid) -> Result<JacobianScanReport> {
    let field = JacobianField::new(f)?;
    let n = grid.angular_samples();
    let radii = grid.radii();
    let values: Vec<Vec<f64>> = radii.iter().map(|&r| field.circle(r, n)).collect();

    let mut tracker = MinTracker::new();
    let mut min_j = f64::INFINITY;
    let mut zeros: Vec<Complex64> = Vec::new();
    let mut saw_positive = false;
    let mut saw_negative = false;

    for (i, row) in values.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            tracker.offer(v.abs(), i, j, grid.point(i, j));
            min_j = min_j.min(v);
            if v.abs() <= JACOBIAN_ZERO_TOL {
                zeros.push(grid.point(i, j));
            } else if v > 0.0 {
                saw_positive = true;
            } else {
                saw_negative = true;
            }
        }
    }

    let strict_sign = |v: f64| -> i8 {
        if v.abs() <= JACOBIAN_ZERO_TOL {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    };

    // radial brackets
    for j in 0..n {
        let t = grid.angle(j);
        for i in 0..radii.len() - 1 {
            let (a, b) = (values[i][j], values[i + 1][j]);
            if strict_sign(a) * strict_sign(b) == -1 {
                let (r0, r1) = (radii[i], radii[i + 1]);
                if let Some(z) = bisect_zero(
                    &field,
                    |s| Complex64::from_polar(r0 + s * (r1 - r0), t),
                    0.0,
                    1.0,
                    a,
                ) {
                    zeros.push(z);
                }
            }
        }
    }

    // angular brackets
    let two_pi = 2.0 * std::f64::consts::PI;
    for (i, &r) in radii.iter().enumerate() {
        for j in 0..n {
            let jn = (j + 1) % n;
            let (a, b) = (values[i][j], values[i][jn]);
            if strict_sign(a) * strict_sign(b) == -1 {
                let (t0, t1) = (grid.angle(j), grid.angle(j) + two_pi / n as f64);
                if let Some(z) = bisect_zero(
                    &field,
                    |s| Complex64::from_polar(r, t0 + s * (t1 - t0)),
                    0.0,
                    1.0,
                    a,
                ) {
                    zeros.push(z);
                }
            }
        }
    }

    // nearest-point polish: golden-section over the ray angle of the
    // smallest radial zero, one run per locally minimal zero column
    let mut column_min: Vec<Option<f64>> = vec![None; n];
    for z in &zeros {
        let t = z.arg().rem_euclid(two_pi);
        let j = (t / (two_pi / n as f64)).round() as usize % n;
        if (t - grid.angle(j)).abs() < 1e-9 {
            let entry = &mut column_min[j];
            *entry = Some(entry.map_or(z.norm(), |r: f64| r.min(z.norm())));
        }
    }
    let radial_pad = radii
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0f64, f64::max)
        .max(radii[0]);
    for j in 0..n {
        let Some(rho) = column_min[j] else { continue };
        let left = column_min[(j + n - 1) % n].unwrap_or(f64::INFINITY);
        let right = column_min[(j + 1) % n].unwrap_or(f64::INFINITY);
        if rho <= left && rho <= right {
            let window_lo = (rho - radial_pad).max(radii[0] * 0.25).max(1e-3);
            let window_hi = (rho + radial_pad).min(grid.r_max());
            let step = two_pi / n as f64;
            if let Some(z) = polish_nearest_zero(
                &field,
                grid.angle(j) - step,
                grid.angle(j) + step,
                window_lo,
                window_hi,
            ) {
                zeros.push(z);
            }
        }
    }

    // drop zeros outside the scanned annulus, dedupe deterministically
    zeros.retain(|z| z.norm() < grid.r_max() + 1e-12);
    zeros.sort_by(|a, b| {
        let ka = (a.arg().rem_euclid(two_pi), a.norm());
        let kb = (b.arg().rem_euclid(two_pi), b.norm());
        ka.partial_cmp(&kb).unwrap()
    });
    let mut deduped: Vec<Complex64> = Vec::new();
    for z in zeros {
        if deduped.iter().all(|w| (w - z).norm() > 1e-7) {
            deduped.push(z);
        }
    }

    let sign_changes = (saw_positive && saw_negative) || !deduped.is_empty();
    Ok(JacobianScanReport {
        min_abs_j: tracker.value,
        location: tracker.point,
        sign_changes,
        refined_zeros: deduped,
        min_j,
    })
}

/// Minimizes the radius of the zero set over ray angles in `[t_lo, t_hi]`
/// by golden-section, evaluating the radial zero by bisection.
fn polish_nearest_zero(
    field: &JacobianField,
    t_lo: f64,
    t_hi: f64,
    r_lo: f64,
    r_hi: f64,
) -> Option<Complex64> {
    let rho = |t: f64| smallest_radial_zero(field, t, r_lo, r_hi);
    let value = |t: f64| rho(t).map_or(f64::INFINITY, |(r, _)| r);
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (t_lo, t_hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (value(c), value(d));
    for _ in 0..80 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = value(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = value(d);
        }
        if b - a < 1e-10 {
            break;
        }
    }
    let t = 0.5 * (a + b);
    rho(t).map(|(_, z)| z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectionVerdict {
    Pass,
    Fail,
    Inconclusive,
}

/// Per-radius outcome of the monotone-projection test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusSegments {
    pub radius: f64,
    pub monotone_segments: usize,
    pub simple_curve: bool,
}

/// Outcome of the directional-convexity probe in direction `theta`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectionProbeReport {
    pub theta: f64,
    pub per_radius: Vec<RadiusSegments>,
    pub verdict: DirectionVerdict,
}

impl DirectionProbeReport {
    pub fn passed(&self) -> bool {
        self.verdict == DirectionVerdict::Pass
    }
}

/// A transition smeared across more than `samples / DEAD_RUN_DIVISOR`
/// in-band derivative samples makes the radius inconclusive (the extremum
/// is too flat to resolve at the chosen resolution). Half-plane-type
/// images legitimately flatten near their boundary corner, so the cap
/// scales with the sample count.
const DEAD_RUN_DIVISOR: usize = 64;

/// Tests convexity in direction `theta` by counting monotone runs of the
/// projection `Im(e^{-i theta} f(r e^{it}))` around each circle. A closed
/// curve bounding a region convex in the direction has exactly one rising
/// and one falling run (two sign changes of the discrete derivative).
/// Derivative samples within `tol` times the curve diameter form a dead
/// band: they never count as reversals, and a transition smeared across a
/// long dead run yields `Inconclusive`.
pub fn direction_convexity_probe(
    f: &HarmonicMap,
    theta: f64,
    radii: &[f64],
    samples: usize,
    tol: f64,
) -> Result<DirectionProbeReport> {
    if samples < 256 {
        return Err(Error::InvalidParameter(format!("samples {samples} < 256")));
    }
    if radii.is_empty() || radii.iter().any(|&r| !(0.0..1.0).contains(&r) || r > 0.999) {
        return Err(Error::InvalidParameter("radii must lie in (0, 0.999]".into()));
    }
    let rot = Complex64::from_polar(1.0, -theta);
    let mut per_radius = Vec::with_capacity(radii.len());
    let mut any_unclear = false;
    for &r in radii {
        let w = circle_values_harmonic(f, r, samples);
        let rotated: Vec<Complex64> = w.iter().map(|&v| v * rot).collect();
        let proj: Vec<f64> = rotated.iter().map(|v| v.im).collect();
        let (mut re_lo, mut re_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut im_lo, mut im_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in &rotated {
            re_lo = re_lo.min(v.re);
            re_hi = re_hi.max(v.re);
            im_lo = im_lo.min(v.im);
            im_hi = im_hi.max(v.im);
        }
        let diameter = (re_hi - re_lo).hypot(im_hi - im_lo);
        let band = tol * diameter;

        let (segments, clear) = count_monotone_segments(&proj, band);
        if !clear {
            any_unclear = true;
        }
        per_radius.push(RadiusSegments {
            radius: r,
            monotone_segments: segments,
            simple_curve: polyline_is_simple(&w),
        });
    }
    let any_clean_fail = per_radius.iter().any(|r| r.monotone_segments != 2);
    let verdict = if any_clean_fail && !any_unclear {
        DirectionVerdict::Fail
    } else if any_unclear {
        DirectionVerdict::Inconclusive
    } else {
        DirectionVerdict::Pass
    };
    Ok(DirectionProbeReport { theta, per_radius, verdict })
}

/// Counts sign alternations of the cyclic discrete derivative, ignoring
/// samples inside the dead band. Returns `(segments, clear)`; `clear` is
/// false when the projection is flat or a transition hides behind more
/// than [`DEAD_RUN_CAP`] dead samples.
fn count_monotone_segments(proj: &[f64], band: f64) -> (usize, bool) {
    let n = proj.len();
    let cap = (n / DEAD_RUN_DIVISOR).max(4);
    let mut marks: Vec<(usize, i8)> = Vec::new();
    for j in 0..n {
        let d = proj[(j + 1) % n] - proj[j];
        if d > band {
            marks.push((j, 1));
        } else if d < -band {
            marks.push((j, -1));
        }
    }
    if marks.is_empty() {
        return (0, false);
    }
    let mut transitions = 0usize;
    let mut clear = true;
    let m = marks.len();
    for i in 0..m {
        let (pos, sign) = marks[i];
        let (next_pos, next_sign) = marks[(i + 1) % m];
        if sign != next_sign {
            transitions += 1;
            let gap = (next_pos + n - pos - 1) % n;
            if gap > cap {
                clear = false;
            }
        }
    }
    (transitions, clear)
}

/// Self-intersection test of the closed polyline through `points`,
/// subsampled to at most 512 vertices.
fn polyline_is_simple(points: &[Complex64]) -> bool {
    let stride = points.len().div_ceil(512);
    let pts: Vec<Complex64> = points.iter().step_by(stride).copied().collect();
    let n = pts.len();
    if n < 4 {
        return true;
    }
    let seg = |i: usize| (pts[i], pts[(i + 1) % n]);
    for i in 0..n {
        let (a, b) = seg(i);
        for j in i + 2..n {
            // adjacent segments share an endpoint
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = seg(j);
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re)
}

fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    // bounding-box reject
    if a.re.max(b.re) < c.re.min(d.re)
        || c.re.max(d.re) < a.re.min(b.re)
        || a.im.max(b.im) < c.im.min(d.im)
        || c.im.max(d.im) < a.im.min(b.im)
    {
        return false;
    }
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0))
}

/// Maximum sample count for the quadratic-cost injectivity probe.
const INJECTIVITY_MAX_SAMPLES: usize = 8192;

/// Minimum distance between distinct boundary-circle images; passes when
/// it exceeds `min_gap`. For the identity map this minimum is the adjacent
/// chord `2 r sin(pi / samples)`. Cost is quadratic in `samples`.
pub fn boundary_injectivity_probe(
    f: &HarmonicMap,
    r: f64,
    samples: usize,
    min_gap: f64,
) -> Result<ProbeReport> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::OutsideDisk { z: Complex64::new(r, 0.0) });
    }
    if samples < 8 || samples > INJECTIVITY_MAX_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "samples {samples} outside 8..={INJECTIVITY_MAX_SAMPLES}"
        )));
    }
    let w = circle_values_harmonic(f, r, samples);
    let mut min_dist = f64::INFINITY;
    let mut arg_index = 0usize;
    let mut pairs = 0usize;
    for i in 0..samples {
        for j in i + 1..samples {
            let dist = (w[i] - w[j]).norm();
            pairs += 1;
            if dist < min_dist {
                min_dist = dist;
                arg_index = i;
            }
        }
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let argmin = Complex64::from_polar(r, two_pi * arg_index as f64 / samples as f64);
    Ok(ProbeReport::conclude(min_dist, argmin, min_gap, pairs))
}
