//! Adaptive Gauss–Kronrod quadrature.
//!
//! A 15-point Kronrod rule (7-point embedded Gauss rule) is applied to the
//! worst panel first, bisecting until the summed error estimate drops below
//! the requested tolerance. Semi-infinite domains [a, ∞) are mapped onto
//! (0, 1) with x = a + u/(1−u), picking up the Jacobian 1/(1−u)².

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Default absolute tolerance for callers that have no stronger opinion.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Subdivision budget before reporting non-convergence.
const MAX_PANELS: usize = 20_000;

/// Integration domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// Closed finite interval [lower, upper].
    Finite { lower: f64, upper: f64 },
    /// Half line [start, ∞).
    SemiInfinite { start: f64 },
}

impl Domain {
    pub fn finite(lower: f64, upper: f64) -> Self {
        Domain::Finite { lower, upper }
    }

    pub fn from_point_up(start: f64) -> Self {
        Domain::SemiInfinite { start }
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Conservative estimate of the absolute error in `value`; always ≥ 0.
    pub abs_error_estimate: f64,
    /// Number of integrand evaluations performed; always ≥ 1.
    pub evaluations: usize,
}

// 15-point Kronrod nodes on [-1, 1] (positive half) with the embedded
// 7-point Gauss weights. Standard QUADPACK values.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_33,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

/// QUADPACK error rescaling: sharpen the raw |K15 − G7| difference into a
/// conservative estimate of the error in the Kronrod value.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

/// One 15-point Kronrod panel over [a, b]. Returns (value, error estimate).
fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];
    let mut res_gauss = 0.0;
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.abs();

    // Odd Kronrod indices carry the embedded Gauss nodes.
    for (j, wg) in WG.iter().enumerate().take(3) {
        let idx = 2 * j + 1;
        let dx = half * XGK[idx];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[idx] = f1;
        fv2[idx] = f2;
        res_gauss += wg * (f1 + f2);
        res_kronrod += WGK[idx] * (f1 + f2);
        res_abs += WGK[idx] * (f1.abs() + f2.abs());
    }
    res_gauss += WG[3] * f_center;

    // Even indices 0, 2, 4, 6 are Kronrod-only nodes.
    for j in 0..4 {
        let idx = 2 * j;
        let dx = half * XGK[idx];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[idx] = f1;
        fv2[idx] = f2;
        res_kronrod += WGK[idx] * (f1 + f2);
        res_abs += WGK[idx] * (f1.abs() + f2.abs());
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (res_kronrod - res_gauss) * half;
    let value = res_kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    (value, rescale_error(err, res_abs, res_asc))
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.lo == other.lo
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap on error; tie-break on position for determinism
        self.error
            .total_cmp(&other.error)
            .then(other.lo.total_cmp(&self.lo))
    }
}

/// Integrate `f` over `domain` to absolute tolerance `tol`.
///
/// The integrand must be finite everywhere it is evaluated (interior nodes
/// only; interval endpoints are never sampled). Fails with
/// [`Error::QuadratureNonConvergence`] when the subdivision budget is spent
/// and with [`Error::NonFiniteIntegrand`] when `f` returns NaN or ±∞.
pub fn integrate<F: Fn(f64) -> f64>(f: F, domain: Domain, tol: f64) -> Result<QuadratureResult> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Domain(format!(
            "quadrature tolerance must be positive and finite, got {tol}"
        )));
    }
    let evals = Cell::new(0usize);
    let bad_point = Cell::new(None::<f64>);

    let run = |g: &dyn Fn(f64) -> f64, lo: f64, hi: f64| -> Result<QuadratureResult> {
        adaptive(g, lo, hi, tol, &evals, &bad_point)
    };

    match domain {
        Domain::Finite { lower, upper } => {
            if !lower.is_finite() || !upper.is_finite() {
                return Err(Error::Domain(format!(
                    "finite domain requires finite endpoints, got [{lower}, {upper}]"
                )));
            }
            if lower > upper {
                return Err(Error::Domain(format!(
                    "domain endpoints out of order: [{lower}, {upper}]"
                )));
            }
            let g = |x: f64| {
                evals.set(evals.get() + 1);
                let y = f(x);
                if !y.is_finite() && bad_point.get().is_none() {
                    bad_point.set(Some(x));
                }
                y
            };
            run(&g, lower, upper)
        }
        Domain::SemiInfinite { start } => {
            if !start.is_finite() {
                return Err(Error::Domain(format!(
                    "semi-infinite domain requires a finite start, got {start}"
                )));
            }
            // x = start + u/(1−u), dx = du/(1−u)²
            let g = |u: f64| {
                let one_minus = 1.0 - u;
                let x = start + u / one_minus;
                evals.set(evals.get() + 1);
                // The Jacobian blows up toward u = 1, so the transformed
                // value is what must stay finite: a divergent tail shows up
                // here as overflow and is reported rather than summed.
                let y = (f(x) / one_minus) / one_minus;
                if !y.is_finite() && bad_point.get().is_none() {
                    bad_point.set(Some(x));
                }
                y
            };
            run(&g, 0.0, 1.0)
        }
    }
}

fn adaptive(
    g: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
    evals: &Cell<usize>,
    bad_point: &Cell<Option<f64>>,
) -> Result<QuadratureResult> {
    let check_bad = |bad: &Cell<Option<f64>>| -> Result<()> {
        if let Some(at) = bad.get() {
            return Err(Error::NonFiniteIntegrand { at });
        }
        Ok(())
    };

    let (value, error) = kronrod15(&g, lo, hi);
    check_bad(bad_point)?;

    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        lo,
        hi,
        value,
        error,
    });
    let mut total_error = error;

    // NaN-proof negation: a poisoned error estimate must keep splitting
    // until the budget (or a bad-point report) ends the run.
    while !(total_error <= tol) {
        if heap.len() >= MAX_PANELS {
            return Err(Error::QuadratureNonConvergence {
                estimate: total_error,
                tol,
                panels: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty here");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Interval no longer splittable at f64 resolution.
            heap.push(worst);
            return Err(Error::QuadratureNonConvergence {
                estimate: total_error,
                tol,
                panels: heap.len(),
            });
        }
        let (v1, e1) = kronrod15(&g, worst.lo, mid);
        let (v2, e2) = kronrod15(&g, mid, worst.hi);
        check_bad(bad_point)?;
        total_error += e1 + e2 - worst.error;
        heap.push(Panel {
            lo: worst.lo,
            hi: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            lo: mid,
            hi: worst.hi,
            value: v2,
            error: e2,
        });
    }

    // Re-sum in positional order: avoids drift from the incremental updates.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let abs_error_estimate: f64 = panels.iter().map(|p| p.error).sum();
    if !value.is_finite() || !abs_error_estimate.is_finite() {
        return Err(Error::QuadratureNonConvergence {
            estimate: abs_error_estimate,
            tol,
            panels: panels.len(),
        });
    }
    Ok(QuadratureResult {
        value,
        abs_error_estimate,
        evaluations: evals.get().max(1),
    })
}
