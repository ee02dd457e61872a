//! Prior specifications for marginal-likelihood computation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::special::ln_beta;

/// A model of the parameter under a hypothesis: where the parameter mass
/// lies before seeing the data.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PriorSpec {
    /// All mass on a single value.
    Point { theta: f64 },
    /// Discrete support with normalized weights.
    Grid { thetas: Vec<f64>, weights: Vec<f64> },
    /// Beta(a, b) on [0, 1].
    Beta { a: f64, b: f64 },
    /// Normal(mean, sd) on the whole line.
    Normal { mean: f64, sd: f64 },
    /// Half-normal with scale `sd`, supported on [0, ∞).
    HalfNormal { sd: f64 },
    /// Uniform on [lo, hi].
    Uniform { lo: f64, hi: f64 },
    /// Cauchy(0, scale) on a standardized effect size, realized through the
    /// usual inverse-chi-squared mixture over the variance ratio g.
    Jzs { scale: f64 },
}

impl PriorSpec {
    /// Check the structural invariants of the spec.
    pub fn validate(&self) -> Result<()> {
        match self {
            PriorSpec::Point { theta } => {
                if !theta.is_finite() {
                    return Err(Error::Domain("point prior requires a finite value".into()));
                }
            }
            PriorSpec::Grid { thetas, weights } => {
                if thetas.is_empty() {
                    return Err(Error::Domain(
                        "grid prior requires at least one point".into(),
                    ));
                }
                if thetas.len() != weights.len() {
                    return Err(Error::Domain(format!(
                        "grid prior has {} points but {} weights",
                        thetas.len(),
                        weights.len()
                    )));
                }
                if thetas
                    .windows(2)
                    .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
                {
                    return Err(Error::GridOrder);
                }
                if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
                    return Err(Error::Domain("grid weights must be nonnegative".into()));
                }
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(Error::Domain(format!(
                        "grid weights must sum to 1 (got {total})"
                    )));
                }
            }
            PriorSpec::Beta { a, b } => {
                if !(*a > 0.0 && *b > 0.0) {
                    return Err(Error::Domain(format!(
                        "beta prior requires a > 0 and b > 0, got a = {a}, b = {b}"
                    )));
                }
            }
            PriorSpec::Normal { mean, sd } => {
                if !mean.is_finite() || !sd.is_finite() || *sd <= 0.0 {
                    return Err(Error::Domain(format!(
                        "normal prior requires finite mean and sd > 0, got mean = {mean}, sd = {sd}"
                    )));
                }
            }
            PriorSpec::HalfNormal { sd } => {
                if !sd.is_finite() || *sd <= 0.0 {
                    return Err(Error::Domain(format!(
                        "half-normal prior requires sd > 0, got {sd}"
                    )));
                }
            }
            PriorSpec::Uniform { lo, hi } => {
                if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                    return Err(Error::Domain(format!(
                        "uniform prior requires finite lo < hi, got [{lo}, {hi}]"
                    )));
                }
            }
            PriorSpec::Jzs { scale } => {
                if !scale.is_finite() || *scale <= 0.0 {
                    return Err(Error::Domain(format!(
                        "jzs prior requires scale > 0, got {scale}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Support of the prior as a closed (possibly infinite) interval.
    pub fn support(&self) -> (f64, f64) {
        match self {
            PriorSpec::Point { theta } => (*theta, *theta),
            PriorSpec::Grid { thetas, .. } => (
                *thetas.first().expect("validated nonempty"),
                *thetas.last().expect("validated nonempty"),
            ),
            PriorSpec::Beta { .. } => (0.0, 1.0),
            PriorSpec::Normal { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            PriorSpec::HalfNormal { .. } => (0.0, f64::INFINITY),
            PriorSpec::Uniform { lo, hi } => (*lo, *hi),
            PriorSpec::Jzs { .. } => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Log density at `x` for the continuous families.
    ///
    /// Points outside the support return −∞. Panics for `Point`, `Grid`, and
    /// `Jzs`, which are never integrated directly against a density.
    pub(crate) fn log_density(&self, x: f64) -> f64 {
        match self {
            PriorSpec::Beta { a, b } => {
                if !(0.0..=1.0).contains(&x) {
                    return f64::NEG_INFINITY;
                }
                let ln_b = ln_beta(*a, *b).expect("validated parameters");
                (a - 1.0) * x.ln() + (b - 1.0) * (1.0 - x).ln() - ln_b
            }
            PriorSpec::Normal { mean, sd } => {
                let z = (x - mean) / sd;
                -0.5 * z * z - sd.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln()
            }
            PriorSpec::HalfNormal { sd } => {
                if x < 0.0 {
                    return f64::NEG_INFINITY;
                }
                let z = x / sd;
                std::f64::consts::LN_2
                    - 0.5 * z * z
                    - sd.ln()
                    - 0.5 * (2.0 * std::f64::consts::PI).ln()
            }
            PriorSpec::Uniform { lo, hi } => {
                if x < *lo || x > *hi {
                    f64::NEG_INFINITY
                } else {
                    -(hi - lo).ln()
                }
            }
            PriorSpec::Point { .. } | PriorSpec::Grid { .. } | PriorSpec::Jzs { .. } => {
                unreachable!("no direct density for point/grid/jzs priors")
            }
        }
    }

    /// Human-readable model description for reports.
    pub fn describe(&self) -> String {
        match self {
            PriorSpec::Point { theta } => format!("point at {theta}"),
            PriorSpec::Grid { thetas, .. } => format!("{}-point weighted grid", thetas.len()),
            PriorSpec::Beta { a, b } => format!("Beta({a}, {b})"),
            PriorSpec::Normal { mean, sd } => format!("Normal({mean}, {sd})"),
            PriorSpec::HalfNormal { sd } => format!("HalfNormal({sd})"),
            PriorSpec::Uniform { lo, hi } => format!("Uniform({lo}, {hi})"),
            PriorSpec::Jzs { scale } => format!("JZS(scale = {scale})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        let ok = PriorSpec::Grid {
            thetas: vec![0.0, 0.5, 1.0],
            weights: vec![0.25, 0.5, 0.25],
        };
        assert!(ok.validate().is_ok());

        let bad_sum = PriorSpec::Grid {
            thetas: vec![0.0, 1.0],
            weights: vec![0.5, 0.6],
        };
        assert!(bad_sum.validate().is_err());

        let bad_order = PriorSpec::Grid {
            thetas: vec![0.5, 0.5],
            weights: vec![0.5, 0.5],
        };
        assert!(matches!(bad_order.validate(), Err(Error::GridOrder)));

        let len_mismatch = PriorSpec::Grid {
            thetas: vec![0.1, 0.9],
            weights: vec![1.0],
        };
        assert!(len_mismatch.validate().is_err());
    }

    #[test]
    fn scale_parameters_must_be_positive() {
        assert!(PriorSpec::Beta { a: 0.0, b: 1.0 }.validate().is_err());
        assert!(PriorSpec::Normal { mean: 0.0, sd: 0.0 }.validate().is_err());
        assert!(PriorSpec::HalfNormal { sd: -1.0 }.validate().is_err());
        assert!(PriorSpec::Uniform { lo: 1.0, hi: 1.0 }.validate().is_err());
        assert!(PriorSpec::Jzs { scale: 0.0 }.validate().is_err());
    }

    #[test]
    fn densities_integrate_to_one() {
        use crate::numeric::{integrate, Domain};
        let priors = [
            PriorSpec::Beta { a: 2.5, b: 4.0 },
            PriorSpec::Uniform { lo: -2.0, hi: 5.0 },
        ];
        for p in &priors {
            let (lo, hi) = p.support();
            let r = integrate(|x| p.log_density(x).exp(), Domain::finite(lo, hi), 1e-12).unwrap();
            assert!((r.value - 1.0).abs() < 1e-10, "{:?} mass {}", p, r.value);
        }
        // half-normal over its semi-infinite support
        let hn = PriorSpec::HalfNormal { sd: 3.7 };
        let r = integrate(
            |x| hn.log_density(x).exp(),
            Domain::from_point_up(0.0),
            1e-12,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }
}
