//! Coefficient certificates: sufficient conditions for class membership
//! computed from weighted coefficient sums.
//!
//! Every certificate records the inequality it evaluated (`weights_id`),
//! the weighted sum, the bound, and the verdict. Boundary equality counts
//! as certified: several canonical examples (`z + z^2/2`, `z + z^2/8`) sit
//! exactly on the bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::PowerSeries;

/// Absolute tolerance for the `sum <= bound` comparison.
pub const CERTIFICATE_TOL: f64 = 1e-12;

/// The class a certificate claims membership of.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ClassClaim {
    Starlike { alpha: f64 },
    Convex { alpha: f64 },
    NStarlike { n: u32, alpha: f64 },
    HarmonicConvex,
    /// Convex in every direction `-beta` with `|beta| <= half_width`
    /// (up to the caller's fixed rotation).
    DirectionConvex { half_width: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    NotCertified,
}

/// Result of one coefficient inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub class_claim: ClassClaim,
    pub weighted_sum: f64,
    /// `None` means the bound is unbounded (the inequality holds vacuously).
    pub bound: Option<f64>,
    pub verdict: Verdict,
    pub weights_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// A certificate that follows from this one (emitted by the
    /// direction-span preset when its weights dominate the starlike ones).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub implied: Option<Box<Certificate>>,
}

impl Certificate {
    fn conclude(
        class_claim: ClassClaim,
        weighted_sum: f64,
        bound: Option<f64>,
        weights_id: &str,
    ) -> Self {
        let verdict = match bound {
            Some(b) if weighted_sum <= b + CERTIFICATE_TOL => Verdict::Certified,
            None => Verdict::Certified,
            _ => Verdict::NotCertified,
        };
        Self {
            class_claim,
            weighted_sum,
            bound,
            verdict,
            weights_id: weights_id.to_string(),
            note: None,
            implied: None,
        }
    }

    pub fn certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "order parameter alpha = {alpha} outside [0, 1)"
        )));
    }
    Ok(())
}

fn weighted_sum(f: &PowerSeries, mut weight: impl FnMut(f64) -> f64) -> f64 {
    (2..=f.order())
        .map(|k| weight(k as f64) * f.coeff(k).norm())
        .sum()
}

/// `sum (n - alpha) |a_n| <= 1 - alpha` certifies starlikeness of order
/// `alpha` for a normalized series.
pub fn starlike_certificate(f: &PowerSeries, alpha: f64) -> Result<Certificate> {
    f.require_normalized()?;
    check_alpha(alpha)?;
    let sum = weighted_sum(f, |n| n - alpha);
    Ok(Certificate::conclude(
        ClassClaim::Starlike { alpha },
        sum,
        Some(1.0 - alpha),
        "starlike",
    ))
}

/// `sum n^(m-1) (n - alpha) |a_n| <= 1 - alpha` certifies that `f` is
/// `(m-1)`-starlike of order `alpha` (`m = 1` reduces to the starlike
/// inequality, `m = 2` to the convexity one).
pub fn salagean_certificate(f: &PowerSeries, m: u32, alpha: f64) -> Result<Certificate> {
    f.require_normalized()?;
    check_alpha(alpha)?;
    if m < 1 {
        return Err(Error::InvalidParameter("operator level m must be >= 1".into()));
    }
    let sum = weighted_sum(f, |n| n.powi(m as i32 - 1) * (n - alpha));
    let claim = match m {
        1 => ClassClaim::Starlike { alpha },
        2 => ClassClaim::Convex { alpha },
        _ => ClassClaim::NStarlike { n: m - 1, alpha },
    };
    Ok(Certificate::conclude(claim, sum, Some(1.0 - alpha), "salagean"))
}

/// The preset weighted inequalities for directional-convexity conclusions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightPreset {
    /// Weights `n^2`, bound `1/sqrt(2 (1 - cos 2 theta))`, `theta` in
    /// `[0, pi/2]`; the sheared map is convex in directions `-beta` with
    /// `|beta + gamma| <= theta`.
    NSquared,
    /// Weights `n^3`, bound 1; the sheared map is convex in every direction.
    NCubed,
    /// Weights `sqrt(2 n (n-1) (1 - cos 2 theta) + 1)`, bound 1, `theta` in
    /// `[0, pi)`; convex in every direction `-beta` with `|beta| <= theta`.
    DirectionSpan,
    /// Weights `2n - 1`, bound 1; the `theta = pi/2` instance of the span
    /// preset.
    TwoNMinusOne,
}

impl WeightPreset {
    pub fn id(&self) -> &'static str {
        match self {
            Self::NSquared => "n2",
            Self::NCubed => "n3",
            Self::DirectionSpan => "span",
            Self::TwoNMinusOne => "2n1",
        }
    }

    pub fn parse(id: &str) -> Result<Self> {
        match id {
            "n2" => Ok(Self::NSquared),
            "n3" => Ok(Self::NCubed),
            "span" => Ok(Self::DirectionSpan),
            "2n1" => Ok(Self::TwoNMinusOne),
            other => Err(Error::UnknownWeights(other.to_string())),
        }
    }
}

/// Evaluates one of the preset inequalities at angle `theta` (ignored by
/// the presets with fixed weights).
pub fn weighted_certificate(
    f: &PowerSeries,
    preset: WeightPreset,
    theta: f64,
) -> Result<Certificate> {
    f.require_normalized()?;
    match preset {
        WeightPreset::NSquared => {
            if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
                return Err(Error::InvalidParameter(format!(
                    "theta = {theta} outside [0, pi/2] for the n^2 preset"
                )));
            }
            let sum = weighted_sum(f, |n| n * n);
            let spread = 2.0 * (1.0 - (2.0 * theta).cos());
            let mut cert = if spread <= 0.0 {
                let mut c = Certificate::conclude(
                    ClassClaim::DirectionConvex { half_width: theta },
                    sum,
                    None,
                    preset.id(),
                );
                c.note = Some("bound diverges at theta = 0; certificate covers theta = 0 only".into());
                c
            } else {
                Certificate::conclude(
                    ClassClaim::DirectionConvex { half_width: theta },
                    sum,
                    Some(1.0 / spread.sqrt()),
                    preset.id(),
                )
            };
            cert.implied = None;
            Ok(cert)
        }
        WeightPreset::NCubed => {
            let sum = weighted_sum(f, |n| n * n * n);
            Ok(Certificate::conclude(ClassClaim::HarmonicConvex, sum, Some(1.0), preset.id()))
        }
        WeightPreset::DirectionSpan => {
            if !(0.0..std::f64::consts::PI).contains(&theta) {
                return Err(Error::InvalidParameter(format!(
                    "theta = {theta} outside [0, pi) for the span preset"
                )));
            }
            let spread = 1.0 - (2.0 * theta).cos();
            let sum = weighted_sum(f, |n| (2.0 * n * (n - 1.0) * spread + 1.0).sqrt());
            let mut cert = Certificate::conclude(
                ClassClaim::DirectionConvex { half_width: theta },
                sum,
                Some(1.0),
                preset.id(),
            );
            // for cos 2 theta <= 1/4 the span weights dominate n, so a
            // passing certificate also settles plain starlikeness
            if (2.0 * theta).cos() <= 0.25 && cert.certified() {
                cert.implied = Some(Box::new(starlike_certificate(f, 0.0)?));
            }
            Ok(cert)
        }
        WeightPreset::TwoNMinusOne => {
            let sum = weighted_sum(f, |n| 2.0 * n - 1.0);
            Ok(Certificate::conclude(ClassClaim::HarmonicConvex, sum, Some(1.0), preset.id()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const PI: f64 = std::f64::consts::PI;

    fn series(v: &[f64]) -> PowerSeries {
        PowerSeries::from_real(v).unwrap()
    }

    fn polylog_partial(m: i32, n: usize, order: usize) -> PowerSeries {
        PowerSeries::from_fn(order, |k| {
            if (1..=n).contains(&k) {
                Complex64::new(1.0 / (k as f64).powi(m), 0.0)
            } else {
                Complex64::ZERO
            }
        })
    }

    #[test]
    fn boundary_case_certifies() {
        let cert = starlike_certificate(&series(&[0.0, 1.0, 0.5]), 0.0).unwrap();
        assert!(cert.certified());
        assert_eq!(cert.weighted_sum, 1.0);
        assert_eq!(cert.bound, Some(1.0));
    }

    #[test]
    fn sum_two_fails() {
        let cert = starlike_certificate(&series(&[0.0, 1.0, 1.0]), 0.0).unwrap();
        assert!(!cert.certified());
        assert_eq!(cert.weighted_sum, 2.0);
    }

    #[test]
    fn cubic_decay_partials_certify_for_any_length() {
        for n in [2usize, 5, 32, 100] {
            let f = polylog_partial(3, n, 128);
            let cert = starlike_certificate(&f, 0.0).unwrap();
            assert!(cert.certified(), "n = {n}");
            assert!(cert.weighted_sum < PI * PI / 6.0 - 1.0);
        }
    }

    #[test]
    fn rejects_non_normalized_and_bad_alpha() {
        assert!(starlike_certificate(&series(&[0.0, 2.0]), 0.0).is_err());
        assert!(starlike_certificate(&series(&[0.0, 1.0, 0.1]), 1.0).is_err());
    }

    #[test]
    fn two_starlike_boundary_case() {
        let cert = salagean_certificate(&series(&[0.0, 1.0, 0.125]), 3, 0.0).unwrap();
        assert!(cert.certified());
        assert_eq!(cert.weighted_sum, 1.0);
        assert_eq!(cert.class_claim, ClassClaim::NStarlike { n: 2, alpha: 0.0 });
    }

    #[test]
    fn certified_class_for_shifted_polylog() {
        // coefficient decay 1/n^(m+3) certifies membership at level m
        for m in 1..=4u32 {
            let f = polylog_partial(m as i32 + 3, 64, 64);
            let cert = salagean_certificate(&f, m + 1, 0.0).unwrap();
            assert!(cert.certified(), "m = {m}, sum = {}", cert.weighted_sum);
        }
    }

    #[test]
    fn salagean_level_one_matches_starlike() {
        let f = series(&[0.0, 1.0, 0.3, 0.05]);
        for alpha in [0.0, 0.25, 0.9] {
            let a = salagean_certificate(&f, 1, alpha).unwrap();
            let b = starlike_certificate(&f, alpha).unwrap();
            assert_eq!(a.weighted_sum, b.weighted_sum);
            assert_eq!(a.verdict, b.verdict);
            assert_eq!(a.class_claim, b.class_claim);
        }
    }

    #[test]
    fn cubed_weights_boundary() {
        let cert =
            weighted_certificate(&series(&[0.0, 1.0, 0.125]), WeightPreset::NCubed, 0.0).unwrap();
        assert!(cert.certified());
        assert_eq!(cert.weighted_sum, 1.0);
    }

    #[test]
    fn two_n_minus_one_example() {
        let f = series(&[0.0, 1.0, 1.0 / 3.0]);
        let cert = weighted_certificate(&f, WeightPreset::TwoNMinusOne, 0.0).unwrap();
        assert!(cert.certified());
        assert!((cert.weighted_sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn n_squared_bound_depends_on_theta() {
        let f = series(&[0.0, 1.0, 0.25]);
        // theta = pi/2: bound 1/2, sum 1 -> fails
        let cert = weighted_certificate(&f, WeightPreset::NSquared, PI / 2.0).unwrap();
        assert!(!cert.certified());
        assert!((cert.bound.unwrap() - 0.5).abs() < 1e-15);
        // theta = pi/6: bound 1, sum 1 -> boundary pass
        let cert = weighted_certificate(&f, WeightPreset::NSquared, PI / 6.0).unwrap();
        assert!(cert.certified());
        assert!((cert.bound.unwrap() - 1.0).abs() < 1e-12);
        // theta = 0: unbounded, noted
        let cert = weighted_certificate(&f, WeightPreset::NSquared, 0.0).unwrap();
        assert!(cert.certified());
        assert!(cert.bound.is_none());
        assert!(cert.note.is_some());
    }

    #[test]
    fn span_preset_emits_implied_starlike() {
        let f = series(&[0.0, 1.0, 1.0 / 3.0]);
        let cert = weighted_certificate(&f, WeightPreset::DirectionSpan, PI / 2.0).unwrap();
        assert!(cert.certified());
        assert!((cert.weighted_sum - 1.0).abs() < 1e-12);
        let implied = cert.implied.as_deref().unwrap();
        assert!(implied.certified());
        // at theta = pi/2 the span weights reduce to 2n - 1
        let twon = weighted_certificate(&f, WeightPreset::TwoNMinusOne, 0.0).unwrap();
        assert!((cert.weighted_sum - twon.weighted_sum).abs() < 1e-12);
    }

    #[test]
    fn preset_ids_roundtrip() {
        for preset in [
            WeightPreset::NSquared,
            WeightPreset::NCubed,
            WeightPreset::DirectionSpan,
            WeightPreset::TwoNMinusOne,
        ] {
            assert_eq!(WeightPreset::parse(preset.id()).unwrap(), preset);
        }
        assert!(WeightPreset::parse("nope").is_err());
    }

    #[test]
    fn monotone_in_alpha() {
        // if the certificate passes at alpha2, it passes at any alpha1 <= alpha2
        let f = series(&[0.0, 1.0, 0.2, 0.04, 0.01]);
        let mut certified_at = Vec::new();
        for i in 0..20 {
            let alpha = i as f64 / 20.0;
            certified_at.push(starlike_certificate(&f, alpha).unwrap().certified());
        }
        let first_failure = certified_at.iter().position(|ok| !ok).unwrap_or(20);
        assert!(certified_at[..first_failure].iter().all(|&ok| ok));
        assert!(certified_at[first_failure..].iter().all(|&ok| !ok));
    }
}
