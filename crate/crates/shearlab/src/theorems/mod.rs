//! Scenario registry: each supported statement is packaged as a runnable
//! check — construct the named instances, verify the hypotheses by
//! coefficient certificate or numeric probe, then verify the conclusion by
//! the disk probes. Counterexample scenarios invert the conclusion: the
//! Jacobian scan must locate the predicted vanishing point.

mod convolution;
mod partial_sums;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::certificates::Certificate;
use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::numeric::{
    boundary_injectivity_probe, direction_convexity_probe, jacobian_scan, n_starlike_probe,
    DirectionProbeReport, DirectionVerdict, DiskGrid, JacobianScanReport, ProbeReport,
    PROBE_ORDER,
};
use crate::series::PowerSeries;

/// Default angular sample count for the directional probes.
const DIRECTION_SAMPLES: usize = 2048;

/// Dead-band factor for the directional probes.
const DIRECTION_TOL: f64 = 1e-7;

/// Circle and threshold for the boundary injectivity conclusion.
const INJECTIVITY_RADIUS: f64 = 0.9;
const INJECTIVITY_SAMPLES: usize = 1024;
const INJECTIVITY_MIN_GAP: f64 = 1e-6;

/// Coefficient tolerance for structural identity checks.
const STRUCT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Holds,
    Counterexample,
}

/// One registered parameter of a scenario.
#[derive(Debug, Clone, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: f64,
    pub description: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioDescriptor {
    pub id: &'static str,
    pub title: &'static str,
    pub params: Vec<ParamSpec>,
    pub expected: Expected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Certificate,
    Probe,
    Structural,
    Regression,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckRole {
    Hypothesis,
    Conclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub kind: CheckKind,
    pub role: CheckRole,
    pub outcome: CheckOutcome,
    /// Whether the scenario expects this check to pass.
    pub expect_pass: bool,
    pub detail: String,
}

impl CheckReport {
    pub fn matched(&self) -> bool {
        match self.outcome {
            CheckOutcome::Pass => self.expect_pass,
            CheckOutcome::Fail => !self.expect_pass,
            CheckOutcome::Inconclusive => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Overall {
    Consistent,
    Inconsistent,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub id: String,
    pub params: BTreeMap<String, f64>,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub overall: Overall,
}

impl ScenarioReport {
    fn conclude(id: &str, params: BTreeMap<String, f64>, body: ScenarioBody) -> Self {
        let any_inconclusive = body
            .checks
            .iter()
            .any(|c| c.outcome == CheckOutcome::Inconclusive);
        let all_matched = body.checks.iter().all(|c| c.matched());
        let overall = if any_inconclusive {
            Overall::Inconclusive
        } else if all_matched {
            Overall::Consistent
        } else {
            Overall::Inconsistent
        };
        Self { id: id.to_string(), params, checks: body.checks, notes: body.notes, overall }
    }

    pub fn consistent(&self) -> bool {
        self.overall == Overall::Consistent
    }
}

/// Typed access to resolved scenario parameters.
pub(crate) struct Params {
    values: BTreeMap<String, f64>,
}

impl Params {
    pub fn get(&self, name: &str) -> f64 {
        *self
            .values
            .get(name)
            .unwrap_or_else(|| panic!("scenario parameter `{name}` not declared"))
    }

    pub fn get_usize(&self, name: &str) -> Result<usize> {
        let v = self.get(name);
        if v < 0.0 || v.fract() != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "parameter `{name}` = {v} must be a non-negative integer"
            )));
        }
        Ok(v as usize)
    }

    pub fn get_u32(&self, name: &str) -> Result<u32> {
        Ok(self.get_usize(name)? as u32)
    }
}

/// Checks and free-form notes produced by one scenario run.
pub(crate) struct ScenarioBody {
    pub checks: Vec<CheckReport>,
    pub notes: Vec<String>,
}

impl ScenarioBody {
    pub fn new() -> Self {
        Self { checks: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, check: CheckReport) {
        self.checks.push(check);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

pub(crate) struct ScenarioDef {
    pub id: &'static str,
    pub title: &'static str,
    pub expected: Expected,
    /// (name, default, description)
    pub params: &'static [(&'static str, f64, &'static str)],
    pub run: fn(&Params) -> Result<ScenarioBody>,
}

impl ScenarioDef {
    fn descriptor(&self) -> ScenarioDescriptor {
        ScenarioDescriptor {
            id: self.id,
            title: self.title,
            params: self
                .params
                .iter()
                .map(|&(name, default, description)| ParamSpec { name, default, description })
                .collect(),
            expected: self.expected,
        }
    }
}

fn registry() -> Vec<ScenarioDef> {
    let mut defs = convolution::scenarios();
    defs.extend(partial_sums::scenarios());
    defs
}

/// Descriptors of every registered scenario, in registry order.
pub fn list_scenarios() -> Vec<ScenarioDescriptor> {
    registry().iter().map(ScenarioDef::descriptor).collect()
}

/// Runs one scenario with parameter overrides applied on top of the
/// declared defaults. Unknown parameter names are rejected.
pub fn run_scenario(id: &str, overrides: &BTreeMap<String, f64>) -> Result<ScenarioReport> {
    let defs = registry();
    let def = defs
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownScenario(id.to_string()))?;
    let mut values: BTreeMap<String, f64> = def
        .params
        .iter()
        .map(|&(name, default, _)| (name.to_string(), default))
        .collect();
    for (name, value) in overrides {
        if !values.contains_key(name) {
            return Err(Error::InvalidParameter(format!(
                "scenario `{id}` has no parameter `{name}`"
            )));
        }
        values.insert(name.clone(), *value);
    }
    let params = Params { values: values.clone() };
    let body = (def.run)(&params)?;
    Ok(ScenarioReport::conclude(def.id, values, body))
}

/// Runs the whole registry at default parameters.
pub fn run_all() -> Result<Vec<ScenarioReport>> {
    registry()
        .iter()
        .map(|def| run_scenario(def.id, &BTreeMap::new()))
        .collect()
}

// ---- shared check builders ----------------------------------------------

pub(crate) fn default_grid() -> DiskGrid {
    DiskGrid::default_grid()
}

pub(crate) fn cert_check(name: &str, role: CheckRole, cert: &Certificate) -> CheckReport {
    let outcome = if cert.certified() { CheckOutcome::Pass } else { CheckOutcome::Fail };
    CheckReport {
        name: name.to_string(),
        kind: CheckKind::Certificate,
        role,
        outcome,
        expect_pass: true,
        detail: format!(
            "weights `{}`: sum {:.6e} vs bound {}",
            cert.weights_id,
            cert.weighted_sum,
            cert.bound.map_or("unbounded".to_string(), |b| format!("{b:.6e}"))
        ),
    }
}

pub(crate) fn probe_check(name: &str, role: CheckRole, rep: &ProbeReport) -> CheckReport {
    let outcome = if rep.passed() { CheckOutcome::Pass } else { CheckOutcome::Fail };
    CheckReport {
        name: name.to_string(),
        kind: CheckKind::Probe,
        role,
        outcome,
        expect_pass: true,
        detail: format!(
            "min {:.6e} vs threshold {:.6e} at {:.4}+{:.4}i",
            rep.min_value, rep.threshold, rep.argmin.re, rep.argmin.im
        ),
    }
}

pub(crate) fn direction_check(name: &str, rep: &DirectionProbeReport) -> CheckReport {
    let outcome = match rep.verdict {
        DirectionVerdict::Pass => CheckOutcome::Pass,
        DirectionVerdict::Fail => CheckOutcome::Fail,
        DirectionVerdict::Inconclusive => CheckOutcome::Inconclusive,
    };
    let counts: Vec<usize> = rep.per_radius.iter().map(|r| r.monotone_segments).collect();
    CheckReport {
        name: name.to_string(),
        kind: CheckKind::Probe,
        role: CheckRole::Conclusion,
        outcome,
        expect_pass: true,
        detail: format!("theta {:.4}, monotone segments per radius {counts:?}", rep.theta),
    }
}

/// Structural identity check on a relative coefficient distance
/// (differences scaled by the reference coefficient magnitude, so the
/// growing tails of the pole-at-one maps are compared at their own scale).
/// The tolerance is 1e-12 at order 64 and grows linearly with the order,
/// matching the error growth of the cancellation identities it checks.
pub(crate) fn structural_check(name: &str, distance: f64, order: usize) -> CheckReport {
    let tol = STRUCT_TOL * (order as f64 / 64.0).max(1.0);
    let outcome = if distance <= tol { CheckOutcome::Pass } else { CheckOutcome::Fail };
    CheckReport {
        name: name.to_string(),
        kind: CheckKind::Structural,
        role: CheckRole::Hypothesis,
        outcome,
        expect_pass: true,
        detail: format!("max relative coefficient distance {distance:.3e} (tol {tol:.1e})"),
    }
}

pub(crate) fn regression_check(name: &str, distance: f64, tol: f64) -> CheckReport {
    let outcome = if distance <= tol { CheckOutcome::Pass } else { CheckOutcome::Fail };
    CheckReport {
        name: name.to_string(),
        kind: CheckKind::Regression,
        role: CheckRole::Conclusion,
        outcome,
        expect_pass: true,
        detail: format!("max deviation {distance:.3e} (tol {tol:.0e})"),
    }
}

/// Hypothesis check for membership at operator level `level`: tries the
/// coefficient certificate first and falls back to the quotient probe when
/// the certificate is structurally too weak for the instance.
pub(crate) fn class_check(
    name: &str,
    f: &PowerSeries,
    level: u32,
    grid: &DiskGrid,
) -> Result<CheckReport> {
    let cert = crate::certificates::salagean_certificate(f, level + 1, 0.0)?;
    if cert.certified() {
        return Ok(cert_check(name, CheckRole::Hypothesis, &cert));
    }
    let rep = n_starlike_probe(f, level as i32, 0.0, grid)?;
    let mut check = probe_check(name, CheckRole::Hypothesis, &rep);
    check.detail = format!(
        "coefficient sum {:.3e} exceeds bound; quotient probe: {}",
        cert.weighted_sum, check.detail
    );
    Ok(check)
}

/// Conclusion check for a located Jacobian zero (counterexamples): the
/// sense-preserving claim fails and a refined zero sits at `target`.
pub(crate) fn fold_checks(
    scan: &JacobianScanReport,
    target: Complex64,
    tol: f64,
) -> Vec<CheckReport> {
    let positive = CheckReport {
        name: "sense_preserving".into(),
        kind: CheckKind::Probe,
        role: CheckRole::Conclusion,
        outcome: if scan.positive() { CheckOutcome::Pass } else { CheckOutcome::Fail },
        expect_pass: false,
        detail: format!("signed grid min {:.3e}", scan.min_j),
    };
    let dist = scan.zero_distance_to(target);
    let located = CheckReport {
        name: "jacobian_zero_at_predicted_point".into(),
        kind: CheckKind::Probe,
        role: CheckRole::Conclusion,
        outcome: if dist <= tol { CheckOutcome::Pass } else { CheckOutcome::Fail },
        expect_pass: true,
        detail: format!(
            "nearest refined zero at distance {dist:.3e} from {:.6}+{:.6}i",
            target.re, target.im
        ),
    };
    vec![positive, located]
}

/// Standard conclusion bundle for a univalence-and-direction claim:
/// positive Jacobian on the grid, boundary injectivity, and one direction
/// probe per requested angle.
pub(crate) fn univalent_bundle(
    label: &str,
    map: &HarmonicMap,
    directions: &[f64],
    grid: &DiskGrid,
) -> Result<Vec<CheckReport>> {
    let mut checks = Vec::new();
    let scan = jacobian_scan(map, grid)?;
    checks.push(CheckReport {
        name: format!("{label}: jacobian positive"),
        kind: CheckKind::Probe,
        role: CheckRole::Conclusion,
        outcome: if scan.positive() { CheckOutcome::Pass } else { CheckOutcome::Fail },
        expect_pass: true,
        detail: format!("signed grid min {:.3e}", scan.min_j),
    });
    let inj = boundary_injectivity_probe(
        map,
        INJECTIVITY_RADIUS,
        INJECTIVITY_SAMPLES,
        INJECTIVITY_MIN_GAP,
    )?;
    let mut inj_check = probe_check(&format!("{label}: boundary injective"), CheckRole::Conclusion, &inj);
    inj_check.detail = format!("min image gap {:.3e} at r = {INJECTIVITY_RADIUS}", inj.min_value);
    checks.push(inj_check);
    for &theta in directions {
        let rep = direction_convexity_probe(
            map,
            theta,
            grid.radii(),
            DIRECTION_SAMPLES,
            DIRECTION_TOL,
        )?;
        checks.push(direction_check(
            &format!("{label}: convex in direction {theta:.4}"),
            &rep,
        ));
    }
    Ok(checks)
}

/// Five-point sample of the interval `[center - width, center + width]`.
pub(crate) fn sample_interval(center: f64, width: f64) -> Vec<f64> {
    vec![
        center - width,
        center - width / 2.0,
        center,
        center + width / 2.0,
        center + width,
    ]
}

/// The polynomial `z + c z^2` carried at order 16.
pub(crate) fn quadratic_poly(c2: Complex64) -> PowerSeries {
    PowerSeries::from_fn(16, |k| match k {
        1 => Complex64::ONE,
        2 => c2,
        _ => Complex64::ZERO,
    })
}

/// Polylog kernel at the probing order.
pub(crate) fn polylog(m: u32) -> PowerSeries {
    crate::atlas::kernel(&crate::atlas::KernelKind::Polylog { m }, PROBE_ORDER).unwrap()
}
