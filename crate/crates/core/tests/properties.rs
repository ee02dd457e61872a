//! Property tests for the library-wide invariants: symmetries of the special
//! functions, complementarity and duality of severity, reciprocity and batch
//! multiplicativity of Bayes factors, and unit invariance of informed-prior
//! analyses.

use proptest::prelude::*;

use inferlab::bayes::{bf_binomial, bf_informed_effect, PriorSpec};
use inferlab::hypothesis::{t_test_from_summary, z_test, EffectSummary, Tail, ZSummary};
use inferlab::numeric::special::{
    log_binomial_pmf, normal_cdf, normal_quantile, regularized_incomplete_beta, student_t_cdf,
};
use inferlab::severity::{severity_below, severity_exceeds};

fn z_summary() -> impl Strategy<Value = ZSummary> {
    (50.0..150.0f64, 60.0..140.0f64, 0.5..50.0f64, 1u64..5_000).prop_map(
        |(x_bar, mu0, sigma, n)| ZSummary::new(x_bar, mu0, sigma, n).expect("valid by range"),
    )
}

proptest! {
    #[test]
    fn normal_cdf_is_symmetric(z in -8.0..8.0f64) {
        let total = normal_cdf(z) + normal_cdf(-z);
        prop_assert!((total - 1.0).abs() < 1e-12, "Φ(z)+Φ(−z) = {total}");
    }

    #[test]
    fn normal_quantile_inverts_cdf(z in -6.0..6.0f64) {
        let back = normal_quantile(normal_cdf(z)).unwrap();
        prop_assert!((back - z).abs() < 1e-7, "z = {z}, round trip {back}");
    }

    #[test]
    fn student_t_converges_to_normal(t in -4.0..4.0f64) {
        let tv = student_t_cdf(t, 1e6).unwrap();
        prop_assert!((tv - normal_cdf(t)).abs() < 1e-4);
    }

    #[test]
    fn incomplete_beta_symmetry(
        a in 0.1..50.0f64,
        b in 0.1..50.0f64,
        x in 0.0..1.0f64,
    ) {
        let total = regularized_incomplete_beta(a, b, x).unwrap()
            + regularized_incomplete_beta(b, a, 1.0 - x).unwrap();
        prop_assert!((total - 1.0).abs() < 1e-10, "I + I~ = {total}");
    }

    #[test]
    fn z_test_tails_complement(summary in z_summary()) {
        let g = z_test(&summary, Tail::Greater).p;
        let l = z_test(&summary, Tail::Less).p;
        prop_assert!((g + l - 1.0).abs() < 1e-12);
    }

    #[test]
    fn z_test_p_decreases_in_observed_mean(
        summary in z_summary(),
        bump in 0.001..30.0f64,
    ) {
        let larger = ZSummary::new(summary.x_bar + bump, summary.mu0, summary.sigma, summary.n)
            .unwrap();
        let p0 = z_test(&summary, Tail::Greater).p;
        let p1 = z_test(&larger, Tail::Greater).p;
        // strictly decreasing until the CDF saturates at f64 resolution
        let saturated = !(p0 > 1e-15 && p0 < 1.0 - 1e-15);
        prop_assert!(p1 < p0 || saturated, "p0 = {p0}, p1 = {p1}");
    }

    #[test]
    fn summary_t_with_huge_df_matches_z(
        effect in -5.0..5.0f64,
        se in 0.1..10.0f64,
    ) {
        let s = EffectSummary::new(effect, se, 1e6).unwrap();
        let t_p = t_test_from_summary(&s, 0.0, Tail::Greater).p;
        // z-test with x̄ = effect, μ0 = 0, σ/√n = se
        let z = ZSummary::new(effect, 0.0, se, 1).unwrap();
        let z_p = z_test(&z, Tail::Greater).p;
        prop_assert!((t_p - z_p).abs() < 1e-4);
    }

    #[test]
    fn severity_claims_are_complementary(
        summary in z_summary(),
        gamma in -20.0..20.0f64,
    ) {
        let total = severity_exceeds(&summary, gamma).severity
            + severity_below(&summary, gamma).severity;
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn severity_at_observed_boundary_is_half(summary in z_summary()) {
        let gamma = summary.x_bar - summary.mu0;
        let sev = severity_exceeds(&summary, gamma).severity;
        prop_assert_eq!(sev, 0.5);
    }

    #[test]
    fn severity_decreases_in_gamma(
        summary in z_summary(),
        gamma in -10.0..10.0f64,
        bump in 0.01..10.0f64,
    ) {
        let s0 = severity_exceeds(&summary, gamma).severity;
        let s1 = severity_exceeds(&summary, gamma + bump).severity;
        let saturated = !(1e-15..=1.0 - 1e-15).contains(&s0);
        prop_assert!(s1 < s0 || (s1 == s0 && saturated));
    }

    #[test]
    fn severity_increases_in_n_when_claim_holds(
        mu0 in 80.0..120.0f64,
        sigma in 1.0..30.0f64,
        gamma in 0.1..5.0f64,
        n in 2u64..500,
    ) {
        // fixed x̄ above the claimed boundary: more data, more severity
        let x_bar = mu0 + gamma + 1.0;
        let small = ZSummary::new(x_bar, mu0, sigma, n).unwrap();
        let large = ZSummary::new(x_bar, mu0, sigma, 4 * n).unwrap();
        let s_small = severity_exceeds(&small, gamma).severity;
        let s_large = severity_exceeds(&large, gamma).severity;
        prop_assert!(
            s_large > s_small || s_small > 1.0 - 1e-12,
            "n {n}: {s_small} vs {s_large}"
        );
    }

    #[test]
    fn severity_duality_with_shifted_test(
        summary in z_summary(),
        gamma in -20.0..20.0f64,
    ) {
        let sev = severity_exceeds(&summary, gamma).severity;
        let shifted = ZSummary::new(
            summary.x_bar,
            summary.mu0 + gamma,
            summary.sigma,
            summary.n,
        )
        .unwrap();
        let p = z_test(&shifted, Tail::Greater).p;
        prop_assert!((sev - (1.0 - p)).abs() < 1e-12);
    }

    #[test]
    fn point_bayes_factors_multiply_across_batches(
        k1 in 0u64..10,
        k2 in 0u64..15,
        theta0 in 0.05..0.95f64,
        theta1 in 0.05..0.95f64,
    ) {
        let (n1, n2) = (10u64, 15u64);
        let null = PriorSpec::Point { theta: theta0 };
        let alt = PriorSpec::Point { theta: theta1 };
        let joint = bf_binomial(k1 + k2, n1 + n2, &null, &alt).unwrap().bf10;
        let batch1 = bf_binomial(k1, n1, &null, &alt).unwrap().bf10;
        let batch2 = bf_binomial(k2, n2, &null, &alt).unwrap().bf10;
        // joint pmfs differ from the product of batch pmfs only by binomial
        // coefficients, which cancel between numerator and denominator
        prop_assert!(
            ((joint / (batch1 * batch2)) - 1.0).abs() < 1e-10,
            "joint {joint} vs product {}",
            batch1 * batch2
        );
    }

    #[test]
    fn point_bayes_factor_reciprocity(
        k in 0u64..=10,
        theta0 in 0.05..0.95f64,
        theta1 in 0.05..0.95f64,
    ) {
        let a = PriorSpec::Point { theta: theta0 };
        let b = PriorSpec::Point { theta: theta1 };
        let forward = bf_binomial(k, 10, &a, &b).unwrap().bf10;
        let backward = bf_binomial(k, 10, &b, &a).unwrap().bf10;
        prop_assert!((forward * backward - 1.0).abs() < 1e-10);
    }

    #[test]
    fn binomial_pmf_ratio_consistency(
        k in 0u64..=20,
        theta in 0.05..0.95f64,
    ) {
        // bf against the same model is exactly 1
        let p = PriorSpec::Point { theta };
        let r = bf_binomial(k, 20, &p, &p).unwrap();
        prop_assert!((r.bf10 - 1.0).abs() < 1e-12);
        // and the stored log marginals reproduce the pmf
        let lp = log_binomial_pmf(k, 20, theta).unwrap();
        prop_assert!((r.log_m0 - lp).abs() < 1e-12);
    }
}

proptest! {
    // Quadrature-backed properties are slower; keep the case count modest.
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn informed_effect_is_unit_invariant(
        effect in -20.0..20.0f64,
        se in 0.5..30.0f64,
        prior_sd in 0.5..30.0f64,
        scale_factor in 0.01..100.0f64,
    ) {
        let base = EffectSummary::new(effect, se, 104.0).unwrap();
        let scaled = EffectSummary::new(
            effect * scale_factor,
            se * scale_factor,
            104.0,
        )
        .unwrap();
        let bf_base = bf_informed_effect(&base, &PriorSpec::HalfNormal { sd: prior_sd })
            .unwrap()
            .bf10;
        let bf_scaled = bf_informed_effect(
            &scaled,
            &PriorSpec::HalfNormal { sd: prior_sd * scale_factor },
        )
        .unwrap()
        .bf10;
        prop_assert!(
            ((bf_base / bf_scaled) - 1.0).abs() < 1e-10,
            "base {bf_base}, scaled {bf_scaled}"
        );
    }

    #[test]
    fn beta_prior_bf_matches_closed_form(
        k in 0u64..=12,
        a in 0.05..8.0f64,
        b in 0.05..8.0f64,
    ) {
        use inferlab::bayes::log_marginal_binomial;
        use inferlab::numeric::special::ln_beta;
        let n = 12u64;
        let prior = PriorSpec::Beta { a, b };
        let got = log_marginal_binomial(k, n, &prior).unwrap();
        let ln_choose = inferlab::numeric::special::ln_gamma((n + 1) as f64).unwrap()
            - inferlab::numeric::special::ln_gamma((k + 1) as f64).unwrap()
            - inferlab::numeric::special::ln_gamma((n - k + 1) as f64).unwrap();
        let exact = ln_choose + ln_beta(k as f64 + a, (n - k) as f64 + b).unwrap()
            - ln_beta(a, b).unwrap();
        prop_assert!(
            (got - exact).abs() < 1e-9 * exact.abs().max(1.0),
            "got {got}, exact {exact}"
        );
    }
}

/// The just-significant severity for a fixed positive discrepancy shrinks as
/// the sample grows, checked on the grid used by the curve reproduction.
#[test]
fn just_significant_severity_decreases_with_n() {
    use inferlab::severity::just_significant_mean;
    let mut last = f64::INFINITY;
    for &n in &[100u64, 500, 1000] {
        let x = just_significant_mean(100.0, 15.0, n, 0.025).unwrap();
        let s = ZSummary::new(x, 100.0, 15.0, n).unwrap();
        let sev = severity_exceeds(&s, 1.0).severity;
        assert!(
            sev < last,
            "severity must fall as n grows: {sev} at n = {n}"
        );
        last = sev;
    }
}

/// Discrete equal-weight grids converge to the continuous uniform prior.
#[test]
fn grid_converges_to_uniform_beta() {
    let m = 2001usize;
    let thetas: Vec<f64> = (1..=m).map(|i| i as f64 / (m + 1) as f64).collect();
    let weights = vec![1.0 / m as f64; m];
    let grid = PriorSpec::Grid { thetas, weights };
    let null = PriorSpec::Point { theta: 0.5 };
    let bf_grid = bf_binomial(2, 10, &null, &grid).unwrap().bf10;
    let bf_beta = bf_binomial(2, 10, &null, &PriorSpec::Beta { a: 1.0, b: 1.0 })
        .unwrap()
        .bf10;
    assert!(
        (bf_grid - bf_beta).abs() < 0.01,
        "grid {bf_grid} vs continuous {bf_beta}"
    );
}
