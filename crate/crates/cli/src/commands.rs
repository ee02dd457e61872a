//! Translate parsed arguments into library calls and result envelopes.

use serde_json::{json, Value};

use inferlab::bayes::{
    bf_binomial, bf_informed_effect, bf_jzs_t, bf_width_curve, BayesFactorResult, PriorSpec,
    DEFAULT_JZS_SCALE,
};
use inferlab::hypothesis::{t_test_from_summary, tost, z_test, EffectSummary, Tail, ZSummary};
use inferlab::severity::{
    calibrate_alpha, default_gamma_grid, just_significant_mean, power_z, severity_below,
    severity_curve, severity_exceeds, Direction,
};
use inferlab::simulate::{
    anova_effect_count, simulate_family, simulate_optional_stopping, simulate_pcurve, SimConfig,
};

use crate::envelope::{object, to_rounded_value, OutputEnvelope};
use crate::reproduce::{self, Figure};
use crate::{
    BfSub, Cli, CliError, Command, DirectionArg, FigureArg, PowerSub, ReportArg, SeveritySub,
    SimSub, TailArg, TestSub,
};

/// An envelope plus the exit code the process should end with.
pub struct CommandOutcome {
    pub envelope: OutputEnvelope,
    pub exit_code: i32,
}

impl CommandOutcome {
    fn ok(envelope: OutputEnvelope) -> Self {
        CommandOutcome {
            envelope,
            exit_code: 0,
        }
    }
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Exceeds => Direction::Exceeds,
            DirectionArg::Below => Direction::Below,
        }
    }
}

impl From<TailArg> for Tail {
    fn from(t: TailArg) -> Self {
        match t {
            TailArg::Greater => Tail::Greater,
            TailArg::Less => Tail::Less,
            TailArg::TwoSided => Tail::TwoSided,
        }
    }
}

fn direction_name(d: DirectionArg) -> &'static str {
    match d {
        DirectionArg::Exceeds => "exceeds",
        DirectionArg::Below => "below",
    }
}

fn tail_name(t: TailArg) -> &'static str {
    match t {
        TailArg::Greater => "greater",
        TailArg::Less => "less",
        TailArg::TwoSided => "two_sided",
    }
}

pub fn dispatch(cli: Cli) -> Result<CommandOutcome, CliError> {
    match cli.command {
        Command::Severity(args) => severity_cmd(args),
        Command::Power(args) => match args.sub {
            PowerSub::Z(z) => {
                let power = power_z(z.mu1, z.mu0, z.sigma, z.n, z.alpha)?;
                let inputs = object(vec![
                    ("mu1", json!(z.mu1)),
                    ("mu0", json!(z.mu0)),
                    ("sigma", json!(z.sigma)),
                    ("n", json!(z.n)),
                    ("alpha", json!(z.alpha)),
                ]);
                let results = json!({ "power": power, "beta": 1.0 - power });
                Ok(CommandOutcome::ok(OutputEnvelope::new(
                    "power z", inputs, results, None,
                )))
            }
        },
        Command::Test(args) => test_cmd(args.sub),
        Command::Bf(args) => bf_cmd(args.sub),
        Command::Sim(args) => sim_cmd(args.sub),
        Command::Reproduce(args) => {
            let seed = crate::resolve_seed(args.seed)?;
            let out_dir = cli
                .out
                .clone()
                .unwrap_or_else(|| std::path::PathBuf::from("out"));
            let figure = match args.figure {
                FigureArg::Fig1 => Figure::Fig1,
                FigureArg::Fig2a => Figure::Fig2a,
                FigureArg::Fig2b => Figure::Fig2b,
                FigureArg::Fig2c => Figure::Fig2c,
                FigureArg::Fig3 => Figure::Fig3,
                FigureArg::ExamplesTable => Figure::ExamplesTable,
            };
            let outcome = reproduce::reproduce(figure, &out_dir, seed)?;
            let inputs = object(vec![
                ("figure", json!(outcome.manifest.figure)),
                ("out_dir", json!(out_dir.display().to_string())),
            ]);
            let all_pass = outcome.all_pass;
            let results = to_rounded_value(&outcome.manifest);
            let exit_code = match all_pass {
                Some(false) => 1,
                _ => 0,
            };
            Ok(CommandOutcome {
                envelope: OutputEnvelope::new("reproduce", inputs, results, Some(seed)),
                exit_code,
            })
        }
    }
}

fn severity_cmd(args: crate::SeverityArgs) -> Result<CommandOutcome, CliError> {
    if let Some(sub) = args.sub {
        return match sub {
            SeveritySub::Curve(c) => {
                let summary = ZSummary::new(c.xbar, c.mu0, c.sigma, c.n)?;
                let grid = match (c.gamma_min, c.gamma_max) {
                    (Some(lo), Some(hi)) => {
                        if c.points < 2 {
                            return Err(CliError::Usage("curve requires at least 2 points".into()));
                        }
                        if lo.is_nan() || hi.is_nan() || lo >= hi {
                            return Err(CliError::Usage(
                                "gamma-min must be below gamma-max".into(),
                            ));
                        }
                        (0..c.points)
                            .map(|i| lo + (hi - lo) * i as f64 / (c.points - 1) as f64)
                            .collect()
                    }
                    (None, None) => default_gamma_grid(&summary),
                    _ => {
                        return Err(CliError::Usage(
                            "provide both --gamma-min and --gamma-max, or neither".into(),
                        ))
                    }
                };
                let curve = severity_curve(&summary, c.direction.into(), &grid)?;
                let inputs = object(vec![
                    ("xbar", json!(c.xbar)),
                    ("mu0", json!(c.mu0)),
                    ("sigma", json!(c.sigma)),
                    ("n", json!(c.n)),
                    ("direction", json!(direction_name(c.direction))),
                    ("points", json!(grid.len())),
                ]);
                Ok(CommandOutcome::ok(OutputEnvelope::new(
                    "severity curve",
                    inputs,
                    to_rounded_value(&curve),
                    None,
                )))
            }
            SeveritySub::Calibrate(c) => {
                let alpha = calibrate_alpha(c.mu0, c.sigma, c.n, c.gamma, c.target)?;
                let just_significant = just_significant_mean(c.mu0, c.sigma, c.n, alpha)?;
                let inputs = object(vec![
                    ("mu0", json!(c.mu0)),
                    ("sigma", json!(c.sigma)),
                    ("n", json!(c.n)),
                    ("gamma", json!(c.gamma)),
                    ("target", json!(c.target)),
                ]);
                let results = json!({
                    "alpha": alpha,
                    "just_significant_mean": just_significant,
                });
                Ok(CommandOutcome::ok(OutputEnvelope::new(
                    "severity calibrate",
                    inputs,
                    results,
                    None,
                )))
            }
        };
    }

    // base command: single severity assessment (flags guaranteed by clap)
    let (xbar, mu0, sigma, n, gamma) = (
        args.xbar.expect("required"),
        args.mu0.expect("required"),
        args.sigma.expect("required"),
        args.n.expect("required"),
        args.gamma.expect("required"),
    );
    let summary = ZSummary::new(xbar, mu0, sigma, n)?;
    let result = match args.direction {
        DirectionArg::Exceeds => severity_exceeds(&summary, gamma),
        DirectionArg::Below => severity_below(&summary, gamma),
    };
    let inputs = object(vec![
        ("xbar", json!(xbar)),
        ("mu0", json!(mu0)),
        ("sigma", json!(sigma)),
        ("n", json!(n)),
        ("gamma", json!(gamma)),
        ("direction", json!(direction_name(args.direction))),
    ]);
    Ok(CommandOutcome::ok(OutputEnvelope::new(
        "severity",
        inputs,
        to_rounded_value(&result),
        None,
    )))
}

fn test_cmd(sub: TestSub) -> Result<CommandOutcome, CliError> {
    match sub {
        TestSub::Z(a) => {
            let summary = ZSummary::new(a.xbar, a.mu0, a.sigma, a.n)?;
            let r = z_test(&summary, a.tail.into());
            let inputs = object(vec![
                ("xbar", json!(a.xbar)),
                ("mu0", json!(a.mu0)),
                ("sigma", json!(a.sigma)),
                ("n", json!(a.n)),
                ("tail", json!(tail_name(a.tail))),
            ]);
            Ok(CommandOutcome::ok(OutputEnvelope::new(
                "test z",
                inputs,
                to_rounded_value(&r),
                None,
            )))
        }
        TestSub::T(a) => {
            let summary = EffectSummary::new(a.effect, a.se, a.df)?;
            let r = t_test_from_summary(&summary, a.null, a.tail.into());
            let inputs = object(vec![
                ("effect", json!(a.effect)),
                ("se", json!(a.se)),
                ("df", json!(a.df)),
                ("null", json!(a.null)),
                ("tail", json!(tail_name(a.tail))),
            ]);
            Ok(CommandOutcome::ok(OutputEnvelope::new(
                "test t",
                inputs,
                to_rounded_value(&r),
                None,
            )))
        }
        TestSub::Tost(a) => {
            let summary = EffectSummary::new(a.effect, a.se, a.df)?;
            let r = tost(&summary, a.lower, a.upper)?;
            let inputs = object(vec![
                ("effect", json!(a.effect)),
                ("se", json!(a.se)),
                ("df", json!(a.df)),
                ("lower", json!(a.lower)),
                ("upper", json!(a.upper)),
            ]);
            Ok(CommandOutcome::ok(OutputEnvelope::new(
                "test tost",
                inputs,
                to_rounded_value(&r),
                None,
            )))
        }
    }
}

/// Parse `family:params` prior syntax for binomial alternatives.
pub fn parse_binomial_prior(spec: &str) -> Result<PriorSpec, CliError> {
    let (family, rest) = match spec.split_once(':') {
        Some((f, r)) => (f, Some(r)),
        None => (spec, None),
    };
    let prior = match (family, rest) {
        ("point", Some(v)) => PriorSpec::Point {
            theta: parse_f64(v, "point value")?,
        },
        ("beta", Some(ab)) => {
            let (a, b) = parse_pair(ab, "beta parameters")?;
            PriorSpec::Beta { a, b }
        }
        ("uniform", None) => PriorSpec::Uniform { lo: 0.0, hi: 1.0 },
        ("grid", Some(path)) => read_grid_file(path)?,
        _ => {
            return Err(CliError::Usage(format!(
                "unknown alternative {spec:?}; expected point:θ | grid:FILE | beta:a,b | uniform"
            )))
        }
    };
    prior.validate()?;
    Ok(prior)
}

/// Parse `family:params` prior syntax for effect-scale alternatives.
pub fn parse_effect_prior(spec: &str) -> Result<PriorSpec, CliError> {
    let (family, rest) = match spec.split_once(':') {
        Some((f, r)) => (f, Some(r)),
        None => (spec, None),
    };
    let prior = match (family, rest) {
        ("halfnormal", Some(s)) => PriorSpec::HalfNormal {
            sd: parse_f64(s, "half-normal scale")?,
        },
        ("normal", Some(ms)) => {
            let (mean, sd) = parse_pair(ms, "normal parameters")?;
            PriorSpec::Normal { mean, sd }
        }
        ("uniform", Some(bounds)) => {
            let (lo, hi) = parse_pair(bounds, "uniform bounds")?;
            PriorSpec::Uniform { lo, hi }
        }
        _ => {
            return Err(CliError::Usage(format!(
                "unknown alternative {spec:?}; expected halfnormal:s | normal:m,s | uniform:lo,hi"
            )))
        }
    };
    prior.validate()?;
    Ok(prior)
}

fn parse_f64(raw: &str, what: &str) -> Result<f64, CliError> {
    raw.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("could not parse {what} from {raw:?}")))
}

fn parse_pair(raw: &str, what: &str) -> Result<(f64, f64), CliError> {
    let (a, b) = raw
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("{what} must be two comma-separated numbers")))?;
    Ok((parse_f64(a, what)?, parse_f64(b, what)?))
}

/// Grid file: CSV rows `theta,weight`. Lines starting with `#` and a leading
/// `theta,weight` header are skipped; weights are normalized to sum to 1.
fn read_grid_file(path: &str) -> Result<PriorSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read grid file {path:?}: {e}")))?;
    let mut thetas = Vec::new();
    let mut weights = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if lineno == 0 && line.eq_ignore_ascii_case("theta,weight") {
            continue;
        }
        let (t, w) = line.split_once(',').ok_or_else(|| {
            CliError::Usage(format!(
                "grid file line {} is not `theta,weight`",
                lineno + 1
            ))
        })?;
        thetas.push(parse_f64(t, "grid theta")?);
        weights.push(parse_f64(w, "grid weight")?);
    }
    let total: f64 = weights.iter().sum();
    if !total.is_finite() || total <= 0.0 {
        return Err(CliError::Usage(
            "grid weights must be nonnegative with a positive sum".into(),
        ));
    }
    for w in &mut weights {
        *w /= total;
    }
    Ok(PriorSpec::Grid { thetas, weights })
}

/// Results payload for a Bayes factor, honoring the report direction.
fn bf_results(r: &BayesFactorResult, report: ReportArg) -> Value {
    let (label, reported) = match report {
        ReportArg::H1 => ("h1", r.bf10),
        ReportArg::H0 => ("h0", r.bf01()),
    };
    json!({
        "bf": reported,
        "report": label,
        "bf10": r.bf10,
        "bf01": r.bf01(),
        "log_bf10": r.log_m1 - r.log_m0,
        "log_m1": r.log_m1,
        "log_m0": r.log_m0,
        "model0": r.model0,
        "model1": r.model1,
    })
}

fn bf_cmd(sub: BfSub) -> Result<CommandOutcome, CliError> {
    match sub {
        BfSub::Binomial(a) => {
            let null = PriorSpec::Point { theta: a.null };
            let alt = parse_binomial_prior(&a.alt)?;
            let r = bf_binomial(a.heads, a.flips, &null, &alt)?;
            let inputs = object(vec![
                ("heads", json!(a.heads)),
                ("flips", json!(a.flips)),
                ("null", json!(a.null)),
                ("alt", json!(a.alt)),
            ]);
            Ok(CommandOutcome::ok(OutputEnvelope::new(
                "bf binomial",
                inputs,
                bf_results(&r, a.report),
                None,
            )))
        }
        BfSub::Jzs(a) => {
            let scale = a.scale.unwrap_or(DEFAULT_JZS_SCALE);
            let r = bf_jzs_t(a.t, a.n1, a.n2, scale)?;
            let inputs = object(vec![
                ("t", json!(a.t)),
                ("n1", json!(a.n1)),
                ("n2", json!(a.n2)),
                ("scale", json!(scale)),
            ]);
            Ok(CommandOutcome::ok(OutputEnvelope::new(
                "bf jzs",
                inputs,
                bf_results(&r, a.report),
                None,
            )))
        }
        BfSub::Informed(a) => {
            // df is irrelevant under the normal approximation; any valid
            // value works for the summary container.
            let summary = EffectSummary::new(a.effect, a.se, 1.0)?;
            let alt = parse_effect_prior(&a.alt)?;
            let r = bf_informed_effect(&summary, &alt)?;
            let inputs = object(vec![
                ("effect", json!(a.effect)),
                ("se", json!(a.se)),
                ("alt", json!(a.alt)),
            ]);
            Ok(CommandOutcome::ok(OutputEnvelope::new(
                "bf informed",
                inputs,
                bf_results(&r, a.report),
                None,
            )))
        }
        BfSub::WidthCurve(a) => {
            if a.points < 2 {
                return Err(CliError::Usage(
                    "width curve needs at least 2 points".into(),
                ));
            }
            if a.scale_min.is_nan()
                || a.scale_max.is_nan()
                || a.scale_min <= 0.0
                || a.scale_min >= a.scale_max
            {
                return Err(CliError::Usage("require 0 < scale-min < scale-max".into()));
            }
            // geometric spacing: prior widths live on a ratio scale
            let ratio = (a.scale_max / a.scale_min).powf(1.0 / (a.points - 1) as f64);
            let scales: Vec<f64> = (0..a.points)
                .map(|i| a.scale_min * ratio.powi(i as i32))
                .collect();
            let curve = bf_width_curve(a.t, a.n1, a.n2, &scales)?;
            let inputs = object(vec![
                ("t", json!(a.t)),
                ("n1", json!(a.n1)),
                ("n2", json!(a.n2)),
                ("scale_min", json!(a.scale_min)),
                ("scale_max", json!(a.scale_max)),
                ("points", json!(a.points)),
            ]);
            let results = json!({
                "points": curve
                    .iter()
                    .map(|(s, bf)| json!({ "scale": s, "bf10": bf }))
                    .collect::<Vec<_>>(),
            });
            Ok(CommandOutcome::ok(OutputEnvelope::new(
                "bf width-curve",
                inputs,
                results,
                None,
            )))
        }
    }
}

fn sim_cmd(sub: SimSub) -> Result<CommandOutcome, CliError> {
    match sub {
        SimSub::Pcurve(a) => {
            let seed = crate::resolve_seed(a.seed)?;
            let config = SimConfig::new(seed, a.reps, a.alpha)?;
            let report = simulate_pcurve(a.delta, a.n, &config)?;
            let inputs = object(vec![
                ("delta", json!(a.delta)),
                ("n", json!(a.n)),
                ("reps", json!(a.reps)),
                ("alpha", json!(a.alpha)),
            ]);
            Ok(CommandOutcome::ok(OutputEnvelope::new(
                "sim pcurve",
                inputs,
                to_rounded_value(&report),
                Some(seed),
            )))
        }
        SimSub::Stopping(a) => {
            let seed = crate::resolve_seed(a.seed)?;
            let config = SimConfig::new(seed, a.reps, a.alpha)?;
            let report = simulate_optional_stopping(a.start, a.step, a.max, &config)?;
            let inputs = object(vec![
                ("start", json!(a.start)),
                ("step", json!(a.step)),
                ("max", json!(a.max)),
                ("reps", json!(a.reps)),
                ("alpha", json!(a.alpha)),
            ]);
            Ok(CommandOutcome::ok(OutputEnvelope::new(
                "sim stopping",
                inputs,
                to_rounded_value(&report),
                Some(seed),
            )))
        }
        SimSub::Family(a) => {
            let seed = crate::resolve_seed(a.seed)?;
            let config = SimConfig::new(seed, a.reps, a.alpha)?;
            let k = match (a.k, a.factors) {
                (Some(k), None) => k,
                (None, Some(f)) => anova_effect_count(f, a.involving)?,
                _ => unreachable!("clap group enforces exactly one"),
            };
            let report = simulate_family(k, &config)?;
            let inputs = object(vec![
                ("k", json!(a.k)),
                ("factors", json!(a.factors)),
                ("involving", json!(a.involving)),
                ("k_effective", json!(k)),
                ("reps", json!(a.reps)),
                ("alpha", json!(a.alpha)),
            ]);
            Ok(CommandOutcome::ok(OutputEnvelope::new(
                "sim family",
                inputs,
                to_rounded_value(&report),
                Some(seed),
            )))
        }
    }
}
