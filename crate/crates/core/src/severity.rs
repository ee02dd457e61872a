//! Post-data severity assessment for one-sample z-tests with known σ.
//!
//! After observing `x̄`, the severity of the directional claim μ > μ0 + γ is
//! the probability that the test would have produced a result *less*
//! accordant with the claim were the claim false, evaluated at the boundary
//! μ = μ0 + γ:
//!
//! ```text
//! SEV(μ > μ0 + γ) = Φ((x̄ − (μ0 + γ)) / (σ/√n))
//! SEV(μ < μ0 + γ) = Φ(((μ0 + γ) − x̄) / (σ/√n))
//! ```
//!
//! The "below" direction is typically examined after a non-significant
//! result, but no significance gating is enforced here: severity is a
//! function of the data and the claim alone, and what to do with it is an
//! interpretation-layer concern.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypothesis::ZSummary;
use crate::numeric::special::{normal_cdf, normal_quantile};

/// Direction of a severity claim about the discrepancy γ from μ0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Claim μ > μ0 + γ.
    Exceeds,
    /// Claim μ < μ0 + γ.
    Below,
}

/// A directional claim: "the discrepancy from μ0 exceeds (or is below) γ".
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeverityClaim {
    pub direction: Direction,
    /// Discrepancy from μ0, in the same units as x̄.
    pub gamma: f64,
}

/// Severity of one claim given one observed summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeverityResult {
    /// Probability in [0, 1].
    pub severity: f64,
    pub claim: SeverityClaim,
    pub summary: ZSummary,
}

/// Severity as a function of the claimed discrepancy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeverityCurve {
    pub direction: Direction,
    /// (γ, severity) pairs with strictly increasing γ.
    pub points: Vec<(f64, f64)>,
}

/// Severity of the claim μ > μ0 + γ given the observed summary.
pub fn severity_exceeds(summary: &ZSummary, gamma: f64) -> SeverityResult {
    let se = summary.standard_error();
    // associated as (x̄ − μ0) − γ so γ = x̄ − μ0 lands exactly on 0.5
    let severity = normal_cdf(((summary.x_bar - summary.mu0) - gamma) / se);
    SeverityResult {
        severity,
        claim: SeverityClaim {
            direction: Direction::Exceeds,
            gamma,
        },
        summary: *summary,
    }
}

/// Severity of the claim μ < μ0 + γ given the observed summary.
pub fn severity_below(summary: &ZSummary, gamma: f64) -> SeverityResult {
    let se = summary.standard_error();
    let severity = normal_cdf((gamma - (summary.x_bar - summary.mu0)) / se);
    SeverityResult {
        severity,
        claim: SeverityClaim {
            direction: Direction::Below,
            gamma,
        },
        summary: *summary,
    }
}

/// The observed mean whose one-sided (greater) p value equals α exactly:
/// x̄ = μ0 + z₁₋α·σ/√n. Useful for studying how severity varies with n when
/// the p value is held fixed.
pub fn just_significant_mean(mu0: f64, sigma: f64, n: u64, alpha: f64) -> Result<f64> {
    let summary = ZSummary::new(mu0, mu0, sigma, n)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(mu0 + normal_quantile(1.0 - alpha)? * summary.standard_error())
}

/// Severity evaluated pointwise over a strictly increasing γ grid.
pub fn severity_curve(
    summary: &ZSummary,
    direction: Direction,
    gamma_grid: &[f64],
) -> Result<SeverityCurve> {
    if gamma_grid.is_empty() {
        return Err(Error::Domain("gamma grid must be nonempty".into()));
    }
    if gamma_grid
        .windows(2)
        .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
    {
        return Err(Error::GridOrder);
    }
    let points = gamma_grid
        .iter()
        .map(|&g| {
            let sev = match direction {
                Direction::Exceeds => severity_exceeds(summary, g).severity,
                Direction::Below => severity_below(summary, g).severity,
            };
            (g, sev)
        })
        .collect();
    Ok(SeverityCurve { direction, points })
}

/// Default curve grid: 201 evenly spaced γ values such that μ0 + γ spans
/// x̄ ± 6 standard errors.
pub fn default_gamma_grid(summary: &ZSummary) -> Vec<f64> {
    let se = summary.standard_error();
    let center = summary.x_bar - summary.mu0;
    let lo = center - 6.0 * se;
    let hi = center + 6.0 * se;
    let count = 201usize;
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

/// Power of the one-sided (greater) level-α z-test when the true mean is
/// `mu1`: Φ((μ1 − μ0)/(σ/√n) − z₁₋α). β is its complement.
pub fn power_z(mu1: f64, mu0: f64, sigma: f64, n: u64, alpha: f64) -> Result<f64> {
    let summary = ZSummary::new(mu0, mu0, sigma, n)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    if !mu1.is_finite() {
        return Err(Error::Domain("mu1 must be finite".into()));
    }
    let se = summary.standard_error();
    Ok(normal_cdf((mu1 - mu0) / se - normal_quantile(1.0 - alpha)?))
}

/// The largest α at which the just-significant observation still carries
/// severity ≥ `target_severity` for the claim μ > μ0 + γ. Closed form:
/// α = 1 − Φ(Φ⁻¹(target) + γ√n/σ).
pub fn calibrate_alpha(
    mu0: f64,
    sigma: f64,
    n: u64,
    gamma: f64,
    target_severity: f64,
) -> Result<f64> {
    let summary = ZSummary::new(mu0, mu0, sigma, n)?;
    if !(target_severity > 0.0 && target_severity < 1.0) {
        return Err(Error::Domain(format!(
            "target severity must lie in (0, 1), got {target_severity}"
        )));
    }
    if !gamma.is_finite() {
        return Err(Error::Domain("gamma must be finite".into()));
    }
    let z_target = normal_quantile(target_severity)?;
    Ok(1.0 - normal_cdf(z_target + gamma / summary.standard_error()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn iq(x_bar: f64) -> ZSummary {
        ZSummary::new(x_bar, 100.0, 15.0, 100).unwrap()
    }

    #[test]
    fn worked_iq_examples_significant() {
        // x̄ = 103: claims μ > 101 and μ > 103
        assert_abs_diff_eq!(
            severity_exceeds(&iq(103.0), 1.0).severity,
            0.908_788_780_274_132_1,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            severity_exceeds(&iq(103.0), 3.0).severity,
            0.5,
            epsilon = 1e-12
        );
        // x̄ = 105 restores the severity of μ > 103
        assert_abs_diff_eq!(
            severity_exceeds(&iq(105.0), 3.0).severity,
            0.908_788_780_274_132_1,
            epsilon = 1e-9
        );
    }

    #[test]
    fn worked_iq_examples_nonsignificant() {
        // x̄ = 102: claims μ < 105 and μ < 103
        assert_abs_diff_eq!(
            severity_below(&iq(102.0), 5.0).severity,
            0.977_249_868_051_820_8,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            severity_below(&iq(102.0), 3.0).severity,
            0.747_507_462_453_077_1,
            epsilon = 1e-9
        );
        // claim boundary at the observed mean
        assert_abs_diff_eq!(
            severity_below(&iq(102.0), 2.0).severity,
            0.5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn complementary_claims_sum_to_one() {
        for &(x_bar, gamma) in &[(103.0, 1.0), (102.0, 4.2), (97.5, -1.3), (100.0, 0.0)] {
            let s = iq(x_bar);
            let total = severity_exceeds(&s, gamma).severity + severity_below(&s, gamma).severity;
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn just_significant_means() {
        assert_abs_diff_eq!(
            just_significant_mean(100.0, 15.0, 100, 0.025).unwrap(),
            102.939_945_976_810_08,
            epsilon = 1e-7
        );
        assert_abs_diff_eq!(
            just_significant_mean(100.0, 15.0, 500, 0.025).unwrap(),
            101.314_783_810_864_87,
            epsilon = 1e-7
        );
        assert_abs_diff_eq!(
            just_significant_mean(0.0, 1.0, 1, 0.5).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        assert!(just_significant_mean(0.0, 1.0, 10, 0.0).is_err());
        assert!(just_significant_mean(0.0, 1.0, 10, 1.0).is_err());
    }

    #[test]
    fn sample_size_erodes_just_significant_severity() {
        // Same barely-significant p value, different n: severity of μ > 101
        // falls from ≈0.90 (n = 100) to ≈0.68 (n = 500). Holding severity
        // high instead requires shrinking the claim to μ > 100.5 (≈0.89).
        let x100 = just_significant_mean(100.0, 15.0, 100, 0.025).unwrap();
        let x500 = just_significant_mean(100.0, 15.0, 500, 0.025).unwrap();
        let s100 = ZSummary::new(x100, 100.0, 15.0, 100).unwrap();
        let s500 = ZSummary::new(x500, 100.0, 15.0, 500).unwrap();
        assert_abs_diff_eq!(
            severity_exceeds(&s100, 1.0).severity,
            0.902_058,
            epsilon = 5e-5
        );
        assert_abs_diff_eq!(
            severity_exceeds(&s500, 1.0).severity,
            0.680_555_239_560_067_7,
            epsilon = 1e-7
        );
        assert_abs_diff_eq!(
            severity_exceeds(&s500, 0.5).severity,
            0.887_742_180_383_100_6,
            epsilon = 1e-7
        );
    }

    #[test]
    fn curve_is_monotone_and_validated() {
        let s = iq(103.0);
        let grid = default_gamma_grid(&s);
        assert_eq!(grid.len(), 201);
        let curve = severity_curve(&s, Direction::Exceeds, &grid).unwrap();
        assert!(
            curve.points.windows(2).all(|w| w[1].1 <= w[0].1),
            "exceeds curve must be nonincreasing"
        );
        let below = severity_curve(&s, Direction::Below, &grid).unwrap();
        assert!(
            below.points.windows(2).all(|w| w[1].1 >= w[0].1),
            "below curve must be nondecreasing"
        );

        assert!(matches!(
            severity_curve(&s, Direction::Exceeds, &[1.0, 1.0]),
            Err(Error::GridOrder)
        ));
        assert!(matches!(
            severity_curve(&s, Direction::Exceeds, &[2.0, 1.0]),
            Err(Error::GridOrder)
        ));
        assert!(severity_curve(&s, Direction::Exceeds, &[]).is_err());
    }

    #[test]
    fn power_reference_values() {
        // power at the null equals α
        assert_abs_diff_eq!(
            power_z(100.0, 100.0, 15.0, 100, 0.025).unwrap(),
            0.025,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            power_z(103.0, 100.0, 15.0, 100, 0.025).unwrap(),
            0.515_967_793_442_331_7,
            epsilon = 1e-9
        );
        // distant alternative saturates
        assert!(power_z(200.0, 100.0, 15.0, 100, 0.025).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn calibrate_alpha_closed_form_and_round_trip() {
        // Round trip with the worked example: the observation x̄ = 103 is
        // just significant at its own p value, and carries severity
        // Φ(4/3) for μ > 101; calibrating to that severity returns that p.
        let sev = severity_exceeds(&iq(103.0), 1.0).severity;
        let alpha = calibrate_alpha(100.0, 15.0, 100, 1.0, sev).unwrap();
        assert_abs_diff_eq!(alpha, 0.022_750_131_948_179_21, epsilon = 1e-9);
        let x = just_significant_mean(100.0, 15.0, 100, alpha).unwrap();
        assert_abs_diff_eq!(x, 103.0, epsilon = 1e-7);

        // n = 500 demands a far stricter α for the same claim and severity.
        let alpha500 = calibrate_alpha(100.0, 15.0, 500, 1.0, 0.9088).unwrap();
        assert_abs_diff_eq!(alpha500, 2.370_577_902_706_521e-3, epsilon = 1e-8);
        let x500 = just_significant_mean(100.0, 15.0, 500, alpha500).unwrap();
        let s500 = ZSummary::new(x500, 100.0, 15.0, 500).unwrap();
        assert_abs_diff_eq!(
            severity_exceeds(&s500, 1.0).severity,
            0.9088,
            epsilon = 1e-7
        );

        // boundary case: γ = 0 at target 0.5 gives α = 0.5
        assert_abs_diff_eq!(
            calibrate_alpha(100.0, 15.0, 50, 0.0, 0.5).unwrap(),
            0.5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn severity_duality_with_shifted_z_test() {
        // SEV(μ > μ0 + γ) = 1 − p of the z-test with null μ0 + γ, tail greater
        use crate::hypothesis::{z_test, Tail};
        for &(x_bar, gamma) in &[(103.0, 1.0), (104.2, -0.7), (99.0, 2.0)] {
            let s = iq(x_bar);
            let sev = severity_exceeds(&s, gamma).severity;
            let shifted = ZSummary::new(x_bar, 100.0 + gamma, 15.0, 100).unwrap();
            let p = z_test(&shifted, Tail::Greater).p;
            assert_abs_diff_eq!(sev, 1.0 - p, epsilon = 1e-12);
        }
    }
}
