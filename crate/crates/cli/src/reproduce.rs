//! Regenerate the figure and table datasets as CSV files plus a JSON
//! manifest describing each file, its generating parameters, and the seed.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use inferlab::bayes::{
    bf_binomial, bf_informed_effect, bf_jzs_t, bf_width_curve, PriorSpec, DEFAULT_JZS_SCALE,
};
use inferlab::hypothesis::{t_test_from_summary, tost, z_test, EffectSummary, Tail, ZSummary};
use inferlab::severity::{
    default_gamma_grid, just_significant_mean, severity_curve, severity_exceeds, Direction,
};
use inferlab::simulate::{
    familywise_analytic, ks_uniformity, pcurve_p_values, simulate_family,
    simulate_optional_stopping, simulate_pcurve, SimConfig,
};

use crate::envelope::sig10;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig1,
    Fig2a,
    Fig2b,
    Fig2c,
    Fig3,
    ExamplesTable,
}

impl Figure {
    fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2a => "fig2a",
            Figure::Fig2b => "fig2b",
            Figure::Fig2c => "fig2c",
            Figure::Fig3 => "fig3",
            Figure::ExamplesTable => "examples_table",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub figure: String,
    pub seed: u64,
    pub files: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifestEntry {
    pub file: String,
    pub description: String,
    pub parameters: Value,
}

pub struct ReproduceOutcome {
    pub manifest: Manifest,
    /// For the examples table: whether every row passed its tolerance.
    pub all_pass: Option<bool>,
}

/// How a recomputed value is compared with its expected anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// |computed − expected| ≤ tolerance
    Within,
    /// computed < expected (expected is an upper bound)
    Below,
    /// computed > expected (expected is a lower bound)
    Above,
}

/// One anchored value, recomputed.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub id: &'static str,
    pub description: &'static str,
    pub expected: f64,
    pub computed: f64,
    pub abs_diff: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

impl TableRow {
    fn within(
        id: &'static str,
        description: &'static str,
        expected: f64,
        computed: f64,
        tolerance: f64,
    ) -> Self {
        let abs_diff = (computed - expected).abs();
        TableRow {
            id,
            description,
            expected,
            computed,
            abs_diff,
            tolerance,
            comparison: Comparison::Within,
            pass: abs_diff <= tolerance,
        }
    }

    fn bound(
        id: &'static str,
        description: &'static str,
        bound: f64,
        computed: f64,
        comparison: Comparison,
    ) -> Self {
        let pass = match comparison {
            Comparison::Below => computed < bound,
            Comparison::Above => computed > bound,
            Comparison::Within => unreachable!("use TableRow::within"),
        };
        TableRow {
            id,
            description,
            expected: bound,
            computed,
            abs_diff: (computed - bound).abs(),
            tolerance: 0.0,
            comparison,
            pass,
        }
    }
}

pub fn reproduce(figure: Figure, out_dir: &Path, seed: u64) -> Result<ReproduceOutcome, CliError> {
    fs::create_dir_all(out_dir)?;
    let mut manifest = Manifest {
        figure: figure.name().to_string(),
        seed,
        files: Vec::new(),
    };
    let mut all_pass = None;

    match figure {
        Figure::Fig1 => fig1(out_dir, seed, &mut manifest)?,
        Figure::Fig2a => fig2a(out_dir, &mut manifest)?,
        Figure::Fig2b => fig2b(out_dir, &mut manifest)?,
        Figure::Fig2c => fig2c(out_dir, &mut manifest)?,
        Figure::Fig3 => fig3(out_dir, &mut manifest)?,
        Figure::ExamplesTable => {
            let rows = examples_table(seed)?;
            all_pass = Some(rows.iter().all(|r| r.pass));
            write_table(out_dir, &rows, &mut manifest)?;
        }
    }

    let manifest_path = out_dir.join(format!("{}_manifest.json", figure.name()));
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    fs::write(&manifest_path, text)?;
    Ok(ReproduceOutcome { manifest, all_pass })
}

fn write_file(
    out_dir: &Path,
    manifest: &mut Manifest,
    name: String,
    description: String,
    parameters: Value,
    contents: String,
) -> Result<(), CliError> {
    let path: PathBuf = out_dir.join(&name);
    fs::write(&path, contents)?;
    manifest.files.push(ManifestEntry {
        file: name,
        description,
        parameters,
    });
    Ok(())
}

fn fig1(out_dir: &Path, seed: u64, manifest: &mut Manifest) -> Result<(), CliError> {
    let config = SimConfig::new(seed, 10_000, 0.05)?;
    for &delta in &[0.0, 0.2, 0.5, 0.8] {
        let report = simulate_pcurve(delta, 50, &config)?;
        let mut csv = String::from("bin_lo,bin_hi,count\n");
        let bins = report.histogram.len();
        for (i, count) in report.histogram.iter().enumerate() {
            let lo = sig10(i as f64 / bins as f64);
            let hi = sig10((i + 1) as f64 / bins as f64);
            writeln!(csv, "{lo},{hi},{count}").expect("write to string");
        }
        write_file(
            out_dir,
            manifest,
            format!("fig1_delta_{delta:.1}.csv"),
            format!("p-value histogram at effect size {delta:.1} (n = 50 per test)"),
            json!({
                "delta": delta,
                "n": 50,
                "reps": 10_000,
                "alpha": 0.05,
                "rejection_rate": report.rejection_rate,
            }),
            csv,
        )?;
    }
    Ok(())
}

fn severity_curve_csv(summary: &ZSummary, direction: Direction) -> Result<String, CliError> {
    let grid = default_gamma_grid(summary);
    let curve = severity_curve(summary, direction, &grid)?;
    let mut csv = String::from("gamma,mu,severity\n");
    for (gamma, sev) in &curve.points {
        writeln!(
            csv,
            "{},{},{}",
            sig10(*gamma),
            sig10(summary.mu0 + gamma),
            sig10(*sev)
        )
        .expect("write to string");
    }
    Ok(csv)
}

fn fig2a(out_dir: &Path, manifest: &mut Manifest) -> Result<(), CliError> {
    for &xbar in &[103.0, 105.0] {
        let summary = ZSummary::new(xbar, 100.0, 15.0, 100)?;
        let csv = severity_curve_csv(&summary, Direction::Exceeds)?;
        write_file(
            out_dir,
            manifest,
            format!("fig2a_xbar_{xbar:.0}.csv"),
            format!("severity of claims μ > μ0 + γ after observing x̄ = {xbar:.0}"),
            json!({ "xbar": xbar, "mu0": 100.0, "sigma": 15.0, "n": 100,
                    "direction": "exceeds" }),
            csv,
        )?;
    }
    Ok(())
}

fn fig2b(out_dir: &Path, manifest: &mut Manifest) -> Result<(), CliError> {
    for &n in &[100u64, 500, 1000] {
        let xbar = just_significant_mean(100.0, 15.0, n, 0.025)?;
        let summary = ZSummary::new(xbar, 100.0, 15.0, n)?;
        let csv = severity_curve_csv(&summary, Direction::Exceeds)?;
        let note = if n == 1000 {
            "extends the sample-size sweep beyond the two worked cases"
        } else {
            "worked sample size"
        };
        write_file(
            out_dir,
            manifest,
            format!("fig2b_n_{n}.csv"),
            format!("severity curve at the just-significant mean (α = 0.025) for n = {n}"),
            json!({ "n": n, "mu0": 100.0, "sigma": 15.0, "alpha": 0.025,
                    "xbar_just_significant": xbar, "note": note }),
            csv,
        )?;
    }
    Ok(())
}

fn fig2c(out_dir: &Path, manifest: &mut Manifest) -> Result<(), CliError> {
    for &xbar in &[101.0, 102.0] {
        let summary = ZSummary::new(xbar, 100.0, 15.0, 100)?;
        let csv = severity_curve_csv(&summary, Direction::Below)?;
        write_file(
            out_dir,
            manifest,
            format!("fig2c_xbar_{xbar:.0}.csv"),
            format!("severity of claims μ < μ0 + γ after the non-significant x̄ = {xbar:.0}"),
            json!({ "xbar": xbar, "mu0": 100.0, "sigma": 15.0, "n": 100,
                    "direction": "below" }),
            csv,
        )?;
    }
    Ok(())
}

fn fig3(out_dir: &Path, manifest: &mut Manifest) -> Result<(), CliError> {
    // Replication-summary default t-test swept over prior widths,
    // geometrically spaced from 0.1 to 10.
    let points = 100usize;
    let (lo, hi) = (0.1f64, 10.0f64);
    let ratio = (hi / lo).powf(1.0 / (points - 1) as f64);
    let scales: Vec<f64> = (0..points).map(|i| lo * ratio.powi(i as i32)).collect();
    let curve = bf_width_curve(0.162, 53, Some(53), &scales)?;
    let mut csv = String::from("scale,bf10,bf01\n");
    for (scale, bf10) in &curve {
        writeln!(
            csv,
            "{},{},{}",
            sig10(*scale),
            sig10(*bf10),
            sig10(1.0 / bf10)
        )
        .expect("write to string");
    }
    write_file(
        out_dir,
        manifest,
        "fig3_width_curve.csv".to_string(),
        "default-t-test Bayes factor as a function of Cauchy prior width".to_string(),
        json!({ "t": 0.162, "n1": 53, "n2": 53, "scale_min": lo, "scale_max": hi,
                "points": points, "spacing": "geometric" }),
        csv,
    )?;
    Ok(())
}

fn write_table(out_dir: &Path, rows: &[TableRow], manifest: &mut Manifest) -> Result<(), CliError> {
    let mut csv =
        String::from("id,description,expected,computed,abs_diff,tolerance,comparison,pass\n");
    for r in rows {
        let cmp = match r.comparison {
            Comparison::Within => "within",
            Comparison::Below => "below",
            Comparison::Above => "above",
        };
        writeln!(
            csv,
            "{},\"{}\",{},{},{},{},{},{}",
            r.id,
            r.description,
            sig10(r.expected),
            sig10(r.computed),
            sig10(r.abs_diff),
            r.tolerance,
            cmp,
            r.pass
        )
        .expect("write to string");
    }
    let pass_count = rows.iter().filter(|r| r.pass).count();
    write_file(
        out_dir,
        manifest,
        "examples_table.csv".to_string(),
        "every anchored value recomputed beside its expected value".to_string(),
        json!({ "rows": rows.len(), "passed": pass_count }),
        csv,
    )?;
    Ok(())
}

/// Recompute every anchored value. Expected values are the published
/// two-or-more-decimal figures; tolerances match the acceptance criteria.
pub fn examples_table(seed: u64) -> Result<Vec<TableRow>, CliError> {
    let mut rows = Vec::new();

    // severity worked examples (known-σ IQ test scenario)
    let iq = |x: f64| ZSummary::new(x, 100.0, 15.0, 100).expect("valid summary");
    rows.push(TableRow::within(
        "sev_x103_g1",
        "severity of μ > 101 after x̄ = 103 (σ = 15, n = 100)",
        0.91,
        severity_exceeds(&iq(103.0), 1.0).severity,
        0.005,
    ));
    rows.push(TableRow::within(
        "sev_x103_g3",
        "severity of μ > 103 after x̄ = 103",
        0.5,
        severity_exceeds(&iq(103.0), 3.0).severity,
        0.005,
    ));
    rows.push(TableRow::within(
        "sev_x105_g3",
        "severity of μ > 103 after x̄ = 105",
        0.91,
        severity_exceeds(&iq(105.0), 3.0).severity,
        0.005,
    ));
    rows.push(TableRow::within(
        "sev_below_x102_g5",
        "severity of μ < 105 after the non-significant x̄ = 102",
        0.98,
        inferlab::severity::severity_below(&iq(102.0), 5.0).severity,
        0.005,
    ));
    rows.push(TableRow::within(
        "sev_below_x102_g3",
        "severity of μ < 103 after the non-significant x̄ = 102",
        0.75,
        inferlab::severity::severity_below(&iq(102.0), 3.0).severity,
        0.005,
    ));
    let x500 = just_significant_mean(100.0, 15.0, 500, 0.025)?;
    let s500 = ZSummary::new(x500, 100.0, 15.0, 500)?;
    rows.push(TableRow::within(
        "sev_n500_g1",
        "severity of μ > 101 at the just-significant mean, n = 500",
        0.68,
        severity_exceeds(&s500, 1.0).severity,
        0.005,
    ));
    rows.push(TableRow::within(
        "sev_n500_g05",
        "severity of μ > 100.5 at the just-significant mean, n = 500",
        0.89,
        severity_exceeds(&s500, 0.5).severity,
        0.005,
    ));

    // z-test anchors
    let z103 = z_test(&iq(103.0), Tail::Greater);
    rows.push(TableRow::within(
        "z_x103_stat",
        "z statistic for x̄ = 103",
        2.0,
        z103.statistic,
        1e-9,
    ));
    rows.push(TableRow::within(
        "z_x103_p",
        "one-sided p for x̄ = 103",
        0.023,
        z103.p,
        0.0005,
    ));
    rows.push(TableRow::bound(
        "z_x105_p",
        "one-sided p for x̄ = 105 stays under 0.001",
        0.001,
        z_test(&iq(105.0), Tail::Greater).p,
        Comparison::Below,
    ));

    // t-test and TOST anchors from the replication summaries
    let replication = EffectSummary::new(5.47, 33.77, 104.0).expect("valid summary");
    let t_rep = t_test_from_summary(&replication, 0.0, Tail::TwoSided);
    rows.push(TableRow::within(
        "t_rep_stat",
        "replication t statistic (effect 5.47, se 33.77)",
        0.162,
        t_rep.statistic,
        0.0005,
    ));
    rows.push(TableRow::within(
        "t_rep_p",
        "replication two-sided p",
        0.872,
        t_rep.p,
        0.005,
    ));
    let original = EffectSummary::new(13.3, 13.3 / 2.7, 72.0).expect("valid summary");
    rows.push(TableRow::within(
        "t_orig_p",
        "original-study two-sided p (t = 2.7, df = 72)",
        0.009,
        t_test_from_summary(&original, 0.0, Tail::TwoSided).p,
        0.0005,
    ));
    let equivalence = tost(&replication, -10.0, 10.0)?;
    rows.push(TableRow::within(
        "tost_upper_t",
        "TOST upper-bound t statistic (bounds ±10)",
        -0.13,
        equivalence.upper_test.statistic,
        0.01,
    ));
    rows.push(TableRow::within(
        "tost_overall_p",
        "TOST overall p",
        0.45,
        equivalence.overall_p,
        0.01,
    ));

    // coin-flip Bayes factors: 2 heads in 10 flips
    let null = PriorSpec::Point { theta: 0.5 };
    let pp = bf_binomial(2, 10, &null, &PriorSpec::Point { theta: 0.7 })?;
    rows.push(TableRow::within(
        "bf_point_ratio",
        "2/10 heads: evidence for θ = 0.5 over θ = 0.7",
        30.38,
        pp.bf01(),
        0.01,
    ));
    let beta11 = bf_binomial(2, 10, &null, &PriorSpec::Beta { a: 1.0, b: 1.0 })?;
    rows.push(TableRow::within(
        "bf_beta11",
        "2/10 heads: uniform alternative, bf10",
        2.07,
        beta11.bf10,
        0.01,
    ));
    let beta0909 = bf_binomial(2, 10, &null, &PriorSpec::Beta { a: 0.9, b: 0.9 })?;
    rows.push(TableRow::within(
        "bf_beta0909_h0",
        "2/10 heads: Beta(0.9, 0.9) alternative, bf01",
        0.5,
        beta0909.bf01(),
        0.05,
    ));
    let beta51 = bf_binomial(2, 10, &null, &PriorSpec::Beta { a: 5.0, b: 1.0 })?;
    rows.push(TableRow::within(
        "bf_beta51_h0",
        "2/10 heads: Beta(5, 1) alternative, bf01",
        8.78,
        beta51.bf01(),
        0.05,
    ));
    let beta1010 = bf_binomial(2, 10, &null, &PriorSpec::Beta { a: 10.0, b: 10.0 })?;
    rows.push(TableRow::within(
        "bf_beta1010_h0",
        "2/10 heads: Beta(10, 10) alternative, bf01",
        0.66,
        beta1010.bf01(),
        0.05,
    ));

    // default and informed t-test Bayes factors
    let jzs = bf_jzs_t(0.162, 53, Some(53), DEFAULT_JZS_SCALE)?;
    rows.push(TableRow::within(
        "bf_jzs_default",
        "default t-test bf10 for the replication (t = 0.162, 53/53)",
        0.21,
        jzs.bf10,
        0.02,
    ));
    let informed = bf_informed_effect(&replication, &PriorSpec::HalfNormal { sd: 13.3 })?;
    rows.push(TableRow::within(
        "bf_informed",
        "informed half-normal(13.3) bf10 for the replication",
        0.97,
        informed.bf10,
        0.05,
    ));

    // familywise error rates
    rows.push(TableRow::within(
        "fwe_analytic_10",
        "chance of ≥1 significant among 10 independent tests",
        0.4013,
        familywise_analytic(10, 0.05)?,
        5e-5,
    ));
    rows.push(TableRow::within(
        "fwe_analytic_3",
        "chance of ≥1 significant among the 3 tests of a 2-factor ANOVA",
        0.1426,
        familywise_analytic(3, 0.05)?,
        5e-5,
    ));
    rows.push(TableRow::within(
        "anova_effects_2",
        "effects tested by a two-factor ANOVA",
        3.0,
        inferlab::simulate::anova_effect_count(2, None)? as f64,
        0.0,
    ));

    // seeded simulations
    let config = SimConfig::new(seed, 10_000, 0.05)?;
    let stopping = simulate_optional_stopping(10, 1, 1000, &config)?;
    rows.push(TableRow::within(
        "stopping_rate",
        "optional stopping (10→1000, α = .05): significance rate",
        0.46,
        stopping.significant_rate,
        0.02,
    ));
    rows.push(TableRow::within(
        "stopping_median_n",
        "optional stopping: median n among significant runs",
        56.0,
        stopping
            .median_n_significant
            .map(|m| m as f64)
            .unwrap_or(f64::NAN),
        10.0,
    ));
    let fam10 = simulate_family(10, &config)?;
    rows.push(TableRow::within(
        "fwe_empirical_10",
        "empirical familywise rate, k = 10",
        fam10.analytic_rate,
        fam10.empirical_rate,
        3.0 * (fam10.analytic_rate * (1.0 - fam10.analytic_rate) / 10_000.0).sqrt(),
    ));
    let fam15 = simulate_family(15, &config)?;
    rows.push(TableRow::within(
        "fwe_empirical_15",
        "empirical familywise rate for the 15 effects of a 4-factor ANOVA",
        0.537,
        fam15.empirical_rate,
        0.015,
    ));
    let pcurve = simulate_pcurve(0.0, 50, &config)?;
    rows.push(TableRow::within(
        "pcurve_null_rate",
        "null rejection rate at α = .05",
        0.05,
        pcurve.rejection_rate,
        0.0065,
    ));
    let (_, ks_p) = ks_uniformity(&pcurve_p_values(0.0, 50, &config)?)?;
    rows.push(TableRow::bound(
        "pcurve_null_ks",
        "null p values pass KS uniformity at the 0.01 level",
        0.01,
        ks_p,
        Comparison::Above,
    ));

    Ok(rows)
}
