//! Seeded Monte Carlo demonstrations of long-run p-value behavior:
//! p-value distributions across effect sizes, optional-stopping error
//! inflation, and familywise error rates for test families.
//!
//! Every report is a pure function of its configuration. Replication `i`
//! draws from `RngStream { seed, stream_id: i }`, replication results are
//! collected in index order, and aggregation is sequential, so reports are
//! bit-identical regardless of how many threads run the replications.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypothesis::{t_test_one_sample, Tail};
use crate::numeric::rng::RngStream;
use crate::numeric::special::student_t_cdf;

/// Shared simulation knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig {
    pub seed: u64,
    /// Number of replications (≥ 1).
    pub reps: u64,
    /// Significance threshold in (0, 1).
    pub alpha: f64,
}

impl SimConfig {
    pub fn new(seed: u64, reps: u64, alpha: f64) -> Result<Self> {
        if reps == 0 {
            return Err(Error::Domain("reps must be at least 1".into()));
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain(format!(
                "alpha must lie in (0, 1), got {alpha}"
            )));
        }
        Ok(SimConfig { seed, reps, alpha })
    }
}

/// Number of histogram bins for p-value distributions.
pub const P_HISTOGRAM_BINS: usize = 20;

/// Distribution of p values at one effect size and sample size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PCurveReport {
    /// Standardized effect size δ of the data-generating process.
    pub effect_size: f64,
    /// Per-replication sample size.
    pub n: u64,
    pub reps: u64,
    /// Counts over 20 equal-width bins on [0, 1]; sums to `reps`.
    pub histogram: Vec<u64>,
    /// Share of replications with p ≤ α.
    pub rejection_rate: f64,
}

/// Outcome of the optional-stopping procedure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StoppingReport {
    pub start_n: u64,
    pub step: u64,
    pub max_n: u64,
    pub reps: u64,
    /// Share of replications that ever reached p ≤ α.
    pub significant_rate: f64,
    /// Lower median of the stopping n among significant replications;
    /// `None` when no replication became significant.
    pub median_n_significant: Option<u64>,
    /// Final n (stopping n, or max_n when never significant) → count.
    pub n_histogram: BTreeMap<u64, u64>,
}

/// Familywise error: empirical beside analytic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyReport {
    pub k_tests: u64,
    pub reps: u64,
    /// Share of replications with at least one p ≤ α among k null tests.
    pub empirical_rate: f64,
    /// 1 − (1 − α)^k.
    pub analytic_rate: f64,
}

/// Per-replication p values for a two-sided one-sample t-test of μ = 0 on
/// `n` draws from Normal(δ, 1). Deterministic in `(config.seed, index)`.
pub fn pcurve_p_values(delta: f64, n: u64, config: &SimConfig) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "p-curve simulation requires n >= 2, got {n}"
        )));
    }
    if !delta.is_finite() {
        return Err(Error::Domain("delta must be finite".into()));
    }
    let seed = config.seed;
    Ok((0..config.reps)
        .into_par_iter()
        .map(|rep| {
            let mut sampler = RngStream::new(seed, rep).normal_sampler();
            let data: Vec<f64> = (0..n).map(|_| delta + sampler.draw()).collect();
            t_test_one_sample(&data, 0.0, Tail::TwoSided)
                .expect("continuous draws are almost surely non-degenerate")
                .p
        })
        .collect())
}

/// Simulate the sampling distribution of p under effect size δ.
pub fn simulate_pcurve(delta: f64, n: u64, config: &SimConfig) -> Result<PCurveReport> {
    let p_values = pcurve_p_values(delta, n, config)?;
    let mut histogram = vec![0u64; P_HISTOGRAM_BINS];
    let mut rejections = 0u64;
    for &p in &p_values {
        let bin = ((p * P_HISTOGRAM_BINS as f64) as usize).min(P_HISTOGRAM_BINS - 1);
        histogram[bin] += 1;
        if p <= config.alpha {
            rejections += 1;
        }
    }
    Ok(PCurveReport {
        effect_size: delta,
        n,
        reps: config.reps,
        histogram,
        rejection_rate: rejections as f64 / config.reps as f64,
    })
}

/// One-sample Kolmogorov–Smirnov test against Uniform(0, 1).
///
/// Returns (D, p) with the standard asymptotic tail probability.
pub fn ks_uniformity(p_values: &[f64]) -> Result<(f64, f64)> {
    if p_values.is_empty() {
        return Err(Error::Domain("KS test requires a nonempty sample".into()));
    }
    if p_values.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::Domain(
            "KS uniformity test requires values in [0, 1]".into(),
        ));
    }
    let mut sorted = p_values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let above = (i as f64 + 1.0) / n - x;
        let below = x - i as f64 / n;
        d = d.max(above).max(below);
    }
    let lambda = (n.sqrt() + 0.12 + 0.11 / n.sqrt()) * d;
    Ok((d, kolmogorov_tail(lambda)))
}

/// Asymptotic Kolmogorov tail probability Q(λ) = 2 Σ (−1)^{j−1} e^{−2j²λ²}.
fn kolmogorov_tail(lambda: f64) -> f64 {
    if lambda < 0.2 {
        // The alternating series converges too slowly here; the dual form
        // shows the CDF is ≈ 0, so the tail probability is 1.
        return 1.0;
    }
    let mut sum = 0.0f64;
    let mut sign = 1.0f64;
    for j in 1..=1000 {
        let term = (-2.0 * (j as f64) * (j as f64) * lambda * lambda).exp();
        sum += sign * term;
        sign = -sign;
        if term < 1e-14 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Per-replication outcome of the optional-stopping procedure.
struct StopOutcome {
    significant: bool,
    final_n: u64,
}

/// Optional stopping under the true null: test after `start_n` draws, then
/// after every `step` further draws, stopping the first time p ≤ α or when
/// `max_n` is exhausted.
///
/// The running mean and sum of squared deviations are maintained
/// incrementally (Welford), so each replication costs time linear in the
/// number of draws.
pub fn simulate_optional_stopping(
    start_n: u64,
    step: u64,
    max_n: u64,
    config: &SimConfig,
) -> Result<StoppingReport> {
    if start_n < 2 {
        return Err(Error::Domain(format!(
            "optional stopping requires start_n >= 2, got {start_n}"
        )));
    }
    if start_n > max_n {
        return Err(Error::Domain(format!(
            "start_n ({start_n}) must not exceed max_n ({max_n})"
        )));
    }
    if step == 0 {
        return Err(Error::Domain("step must be at least 1".into()));
    }
    let seed = config.seed;
    let alpha = config.alpha;
    let outcomes: Vec<StopOutcome> = (0..config.reps)
        .into_par_iter()
        .map(|rep| {
            let mut sampler = RngStream::new(seed, rep).normal_sampler();
            let mut count = 0u64;
            let mut mean = 0.0f64;
            let mut m2 = 0.0f64;
            let mut next_look = start_n;
            while count < max_n {
                let x = sampler.draw();
                count += 1;
                let delta = x - mean;
                mean += delta / count as f64;
                m2 += delta * (x - mean);
                if count == next_look {
                    next_look = count.saturating_add(step);
                    let nf = count as f64;
                    let sd = (m2 / (nf - 1.0)).sqrt();
                    if sd > 0.0 {
                        let t = mean / (sd / nf.sqrt());
                        let cdf =
                            student_t_cdf(t, nf - 1.0).expect("df >= 1 along every look sequence");
                        let p = 2.0 * cdf.min(1.0 - cdf);
                        if p <= alpha {
                            return StopOutcome {
                                significant: true,
                                final_n: count,
                            };
                        }
                    }
                }
            }
            StopOutcome {
                significant: false,
                final_n: max_n,
            }
        })
        .collect();

    let mut n_histogram = BTreeMap::new();
    let mut significant_ns: Vec<u64> = Vec::new();
    for o in &outcomes {
        *n_histogram.entry(o.final_n).or_insert(0u64) += 1;
        if o.significant {
            significant_ns.push(o.final_n);
        }
    }
    significant_ns.sort_unstable();
    let median_n_significant = if significant_ns.is_empty() {
        None
    } else {
        // lower median keeps the statistic integer-valued and deterministic
        Some(significant_ns[(significant_ns.len() - 1) / 2])
    };
    Ok(StoppingReport {
        start_n,
        step,
        max_n,
        reps: config.reps,
        significant_rate: significant_ns.len() as f64 / config.reps as f64,
        median_n_significant,
        n_histogram,
    })
}

/// Probability of at least one rejection among k independent level-α tests:
/// 1 − (1 − α)^k.
pub fn familywise_analytic(k: u64, alpha: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("family size k must be at least 1".into()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(1.0 - (1.0 - alpha).powi(k.min(i32::MAX as u64) as i32))
}

/// Sample size of each member test inside a simulated family.
const FAMILY_TEST_N: usize = 20;

/// Simulate a family of k independent null t-tests (n = 20 each) and record
/// how often at least one comes out significant.
pub fn simulate_family(k: u64, config: &SimConfig) -> Result<FamilyReport> {
    if k == 0 {
        return Err(Error::Domain("family size k must be at least 1".into()));
    }
    let analytic_rate = familywise_analytic(k, config.alpha)?;
    let seed = config.seed;
    let alpha = config.alpha;
    let hits: u64 = (0..config.reps)
        .into_par_iter()
        .map(|rep| {
            let mut sampler = RngStream::new(seed, rep).normal_sampler();
            let mut data = [0.0f64; FAMILY_TEST_N];
            for _ in 0..k {
                for slot in data.iter_mut() {
                    *slot = sampler.draw();
                }
                let p = t_test_one_sample(&data, 0.0, Tail::TwoSided)
                    .expect("continuous draws are almost surely non-degenerate")
                    .p;
                if p <= alpha {
                    return 1u64;
                }
            }
            0u64
        })
        .sum();
    Ok(FamilyReport {
        k_tests: k,
        reps: config.reps,
        empirical_rate: hits as f64 / config.reps as f64,
        analytic_rate,
    })
}

/// Number of F-tests a balanced factorial ANOVA produces.
///
/// With no filter: every main effect and interaction, 2^factors − 1. With
/// `involving = Some(i)` (1-based factor index): the main effect of factor i
/// plus every interaction containing it, 2^(factors − 1).
pub fn anova_effect_count(factors: u32, involving: Option<u32>) -> Result<u64> {
    if factors == 0 {
        return Err(Error::Domain("ANOVA requires at least one factor".into()));
    }
    if factors > 62 {
        return Err(Error::Domain(format!(
            "effect count overflows u64 for {factors} factors"
        )));
    }
    match involving {
        None => Ok((1u64 << factors) - 1),
        Some(i) => {
            if i == 0 || i > factors {
                return Err(Error::Domain(format!(
                    "factor index {i} out of range 1..={factors}"
                )));
            }
            Ok(1u64 << (factors - 1))
        }
    }
}
