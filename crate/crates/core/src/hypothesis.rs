//! Frequentist tests on summary statistics: the one-sample z-test with known
//! population SD, t-tests from raw data or effect summaries, and the
//! two-one-sided-tests (TOST) equivalence procedure.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::special::{normal_cdf, student_t_cdf};

/// Which tail(s) of the sampling distribution count as extreme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    Greater,
    Less,
    TwoSided,
}

/// A one-sample z-test scenario: observed mean against a point null with
/// known population SD.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZSummary {
    /// Observed sample mean.
    pub x_bar: f64,
    /// Null value for the population mean.
    pub mu0: f64,
    /// Known population standard deviation (> 0).
    pub sigma: f64,
    /// Sample size (≥ 1).
    pub n: u64,
}

impl ZSummary {
    pub fn new(x_bar: f64, mu0: f64, sigma: f64, n: u64) -> Result<Self> {
        if !x_bar.is_finite() || !mu0.is_finite() {
            return Err(Error::Domain(
                "z summary requires finite x_bar and mu0".into(),
            ));
        }
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::Domain(format!(
                "z summary requires sigma > 0, got {sigma}"
            )));
        }
        if n == 0 {
            return Err(Error::Domain("z summary requires n >= 1".into()));
        }
        Ok(ZSummary {
            x_bar,
            mu0,
            sigma,
            n,
        })
    }

    /// σ/√n.
    pub fn standard_error(&self) -> f64 {
        self.sigma / (self.n as f64).sqrt()
    }
}

/// An effect estimate with its standard error and degrees of freedom; the
/// input to t-based tests and informed-prior Bayes factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectSummary {
    /// Estimated mean difference, in measurement units.
    pub effect: f64,
    /// Standard error of the effect (> 0).
    pub se: f64,
    /// Degrees of freedom (> 0).
    pub df: f64,
}

impl EffectSummary {
    pub fn new(effect: f64, se: f64, df: f64) -> Result<Self> {
        if !effect.is_finite() {
            return Err(Error::Domain(
                "effect summary requires a finite effect".into(),
            ));
        }
        if !se.is_finite() || se <= 0.0 {
            return Err(Error::Domain(format!(
                "effect summary requires se > 0, got {se}"
            )));
        }
        if !df.is_finite() || df <= 0.0 {
            return Err(Error::Domain(format!(
                "effect summary requires df > 0, got {df}"
            )));
        }
        Ok(EffectSummary { effect, se, df })
    }
}

/// Outcome of a single significance test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestResult {
    pub statistic: f64,
    /// Degrees of freedom; `None` for the known-σ z-test.
    pub df: Option<f64>,
    pub p: f64,
    pub tail: Tail,
}

impl TestResult {
    pub fn rejects_at(&self, alpha: f64) -> bool {
        self.p <= alpha
    }
}

/// Outcome of a TOST equivalence procedure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalenceResult {
    /// Test of H0: μ ≤ lower bound (tail = greater).
    pub lower_test: TestResult,
    /// Test of H0: μ ≥ upper bound (tail = less).
    pub upper_test: TestResult,
    /// max of the two one-sided p values; equivalence at level α iff ≤ α.
    pub overall_p: f64,
    pub bounds: (f64, f64),
}

/// p value for a statistic with a symmetric continuous null CDF.
fn p_from_cdf(cdf_value: f64, tail: Tail) -> f64 {
    match tail {
        Tail::Greater => 1.0 - cdf_value,
        Tail::Less => cdf_value,
        Tail::TwoSided => 2.0 * cdf_value.min(1.0 - cdf_value),
    }
}

/// One-sample z-test of H0: μ = μ0 with known σ.
pub fn z_test(summary: &ZSummary, tail: Tail) -> TestResult {
    let z = (summary.x_bar - summary.mu0) / summary.standard_error();
    TestResult {
        statistic: z,
        df: None,
        p: p_from_cdf(normal_cdf(z), tail),
        tail,
    }
}

/// One-sample t-test of H0: μ = μ0 from raw data.
pub fn t_test_one_sample(data: &[f64], mu0: f64, tail: Tail) -> Result<TestResult> {
    let n = data.len();
    if n < 2 {
        return Err(Error::Domain(format!(
            "one-sample t-test requires at least 2 observations, got {n}"
        )));
    }
    let nf = n as f64;
    let mean = data.iter().sum::<f64>() / nf;
    let ss: f64 = data.iter().map(|x| (x - mean) * (x - mean)).sum();
    if ss == 0.0 {
        return Err(Error::DegenerateSample(
            "all observations identical; sample SD is zero".into(),
        ));
    }
    let sd = (ss / (nf - 1.0)).sqrt();
    let df = nf - 1.0;
    let t = (mean - mu0) / (sd / nf.sqrt());
    Ok(TestResult {
        statistic: t,
        df: Some(df),
        p: p_from_cdf(student_t_cdf(t, df)?, tail),
        tail,
    })
}

/// t-test of H0: μ = `null_value` computed from an effect summary.
pub fn t_test_from_summary(summary: &EffectSummary, null_value: f64, tail: Tail) -> TestResult {
    let t = (summary.effect - null_value) / summary.se;
    let cdf = student_t_cdf(t, summary.df).expect("EffectSummary guarantees df > 0");
    TestResult {
        statistic: t,
        df: Some(summary.df),
        p: p_from_cdf(cdf, tail),
        tail,
    }
}

/// Two one-sided tests of the twin nulls H0: μ ≤ `lower` and H0: μ ≥ `upper`.
///
/// Rejecting both supports the claim that μ lies inside the bounds
/// (practical equivalence). The reported `overall_p` is the larger of the
/// two one-sided p values, so equivalence is concluded at level α exactly
/// when both component tests reject at α.
pub fn tost(summary: &EffectSummary, lower: f64, upper: f64) -> Result<EquivalenceResult> {
    if lower.is_nan() || upper.is_nan() || lower >= upper {
        return Err(Error::BoundOrder);
    }
    let lower_test = t_test_from_summary(summary, lower, Tail::Greater);
    let upper_test = t_test_from_summary(summary, upper, Tail::Less);
    Ok(EquivalenceResult {
        lower_test,
        upper_test,
        overall_p: lower_test.p.max(upper_test.p),
        bounds: (lower, upper),
    })
}
