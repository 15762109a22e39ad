//! Adaptive Gauss–Kronrod integration on semi-infinite ranges with
//! exponentially decaying integrands, and certified summation of series.
//!
//! Both kernels are deterministic: panels are refined in a fixed order and
//! all reductions run in ascending position, so identical inputs produce
//! bit-identical outputs.

use crate::error::{CasimirError, Result};
use crate::settings::NumericSettings;

/// Outcome of an integration (or a summation, when it comes from
/// [`sum_series`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadResult {
    /// An exactly known value.
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            abs_error: 0.0,
            evaluations: 0,
            converged: true,
        }
    }
}

/// Outcome of [`sum_series`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    /// Sum of the per-term errors plus the certified tail bound.
    pub abs_error: f64,
    pub tail_bound: f64,
    /// Index of the last term added.
    pub terms: u64,
    pub evaluations: usize,
    /// False if any term reported non-convergence.
    pub converged: bool,
}

// 15-point Kronrod abscissae on [-1, 1] (non-negative half, descending) and
// weights; the 7-point Gauss rule uses the odd-indexed nodes and the centre.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Levels of geometric grading toward a singular endpoint.
pub const GRADED_LEVELS: u32 = 40;

/// Hard cap on the number of live panels in one integration.
const MAX_PANELS: usize = 8_000;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

/// One G7–K15 panel: (Kronrod value, error estimate).
///
/// The error is the raw |K15 − G7| difference, floored at a round-off level
/// of 50ε times the integral of |f|.
fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.abs() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let diff = ((kronrod - gauss) * half).abs();
    let roundoff = 50.0 * f64::EPSILON * abs_sum * half.abs();
    (value, diff.max(roundoff))
}

/// Neumaier-compensated sum, in iteration order.
pub(crate) fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Globally adaptive integration over the union of `seeds` (adjacent,
/// non-overlapping intervals). `extra_error` is added to the error budget
/// before the convergence test (used for analytic tail bounds).
pub fn integrate_panels<F: FnMut(f64) -> f64>(
    mut f: F,
    seeds: &[(f64, f64)],
    extra_error: f64,
    s: &NumericSettings,
) -> QuadResult {
    let mut panels: Vec<Panel> = seeds
        .iter()
        .filter(|(a, b)| b > a)
        .map(|&(a, b)| {
            let (value, error) = gauss_kronrod(&mut f, a, b);
            Panel {
                a,
                b,
                value,
                error,
                depth: 0,
            }
        })
        .collect();
    let mut evaluations = 15 * panels.len();

    let converged = loop {
        let value = compensated_sum(panels.iter().map(|p| p.value));
        let error = compensated_sum(panels.iter().map(|p| p.error)) + extra_error;
        let target = s.abs_tol.max(s.rel_tol * value.abs());
        if error <= target || !error.is_finite() {
            break error.is_finite();
        }
        // First panel with the largest error: ties resolve by position.
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, p)| {
                if p.error > acc.1 {
                    (i, p.error)
                } else {
                    acc
                }
            });
        let p = panels[worst];
        if p.depth >= s.quad_max_depth || panels.len() >= MAX_PANELS {
            break false;
        }
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            break false;
        }
        let (lv, le) = gauss_kronrod(&mut f, p.a, mid);
        let (rv, re) = gauss_kronrod(&mut f, mid, p.b);
        evaluations += 30;
        panels[worst] = Panel {
            a: p.a,
            b: mid,
            value: lv,
            error: le,
            depth: p.depth + 1,
        };
        panels.insert(
            worst + 1,
            Panel {
                a: mid,
                b: p.b,
                value: rv,
                error: re,
                depth: p.depth + 1,
            },
        );
    };

    QuadResult {
        value: compensated_sum(panels.iter().map(|p| p.value)),
        abs_error: compensated_sum(panels.iter().map(|p| p.error)) + extra_error,
        evaluations,
        converged,
    }
}

/// Adaptive integration over a finite interval; `b < a` flips the sign.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, s: &NumericSettings) -> QuadResult {
    if b < a {
        let r = integrate_panels(f, &[(b, a)], 0.0, s);
        return QuadResult { value: -r.value, ..r };
    }
    integrate_panels(f, &[(a, b)], 0.0, s)
}

/// Seed panels `[lower + 2^-(k+1), lower + 2^-k]` for k = 0..levels, plus the
/// innermost cell `[lower, lower + 2^-levels]`, in ascending order.
fn graded_seeds(lower: f64, levels: u32) -> Vec<(f64, f64)> {
    let mut seeds = Vec::with_capacity(levels as usize + 1);
    let mut width = 0.5_f64.powi(levels as i32);
    seeds.push((lower, lower + width));
    for _ in 0..levels {
        seeds.push((lower + width, lower + 2.0 * width));
        width *= 2.0;
    }
    seeds
}

/// Upper end of explicit integration for a given lower limit.
pub fn explicit_upper(lower: f64, s: &NumericSettings) -> f64 {
    s.tail_cutoff_x.max(lower + 40.0)
}

/// ∫_lower^∞ f(x) dx for integrands bounded by `tail_sup · x·e^{-x}` beyond
/// the explicit range.
///
/// The range `[lower, X]` is integrated adaptively from the seeds
/// `[lower, lower+1]` (geometrically graded when `singular_at_lower`),
/// `[lower+1, 10]` and `[10, X]`, with `X = max(tail_cutoff_x, lower+40)`.
/// The remainder is not integrated; its majorant `tail_sup·(1+X)·e^{-X}` is
/// added to `abs_error`.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    f: F,
    lower: f64,
    singular_at_lower: bool,
    tail_sup: f64,
    s: &NumericSettings,
) -> QuadResult {
    assert!(lower >= 0.0 && lower.is_finite(), "lower limit must be finite and >= 0");
    let upper = explicit_upper(lower, s);
    let mut seeds = if singular_at_lower {
        graded_seeds(lower, GRADED_LEVELS)
    } else {
        vec![(lower, lower + 1.0)]
    };
    let mid = 10.0_f64.max(lower + 1.0);
    seeds.push((lower + 1.0, mid));
    seeds.push((mid, upper));
    let tail = tail_sup.abs() * (1.0 + upper) * (-upper).exp();
    integrate_panels(f, &seeds, tail, s)
}

/// Sums `term(1) + term(2) + ...` in ascending order until the certified
/// remainder `tail_bound(n, term(n).value)` drops below
/// `max(abs_tol, rel_tol·|partial sum|)`.
///
/// `tail_bound(n, t)` must bound `|Σ_{m>n} term(m)|` given the n-th term `t`.
/// Per-term errors are accumulated into `abs_error`, as is the final bound.
pub fn sum_series<T, B>(mut term: T, tail_bound: B, s: &NumericSettings) -> Result<SeriesResult>
where
    T: FnMut(u64) -> QuadResult,
    B: Fn(u64, f64) -> f64,
{
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut err = 0.0_f64;
    let mut evaluations = 0;
    let mut converged = true;
    let mut last_bound = f64::INFINITY;
    for n in 1..=s.max_matsubara_terms as u64 {
        let t = term(n);
        evaluations += t.evaluations;
        converged &= t.converged;
        err += t.abs_error;
        let next = sum + t.value;
        if sum.abs() >= t.value.abs() {
            comp += (sum - next) + t.value;
        } else {
            comp += (t.value - next) + sum;
        }
        sum = next;
        let partial = sum + comp;
        last_bound = tail_bound(n, t.value);
        if last_bound <= s.abs_tol.max(s.rel_tol * partial.abs()) {
            return Ok(SeriesResult {
                value: partial,
                abs_error: err + last_bound,
                tail_bound: last_bound,
                terms: n,
                evaluations,
                converged,
            });
        }
    }
    Err(CasimirError::Convergence {
        terms: s.max_matsubara_terms,
        tail_bound: last_bound,
        partial: sum + comp,
    })
}

/// Remainder of Σ_{m>n} (1+x_m)e^{-x_m} on the uniform grid x_m = m·step,
/// expressed relative to the n-th term: multiply by that term to get the
/// bound. Exact for terms of the form c·(1+x)e^{-x}.
pub fn poly_exp_tail_factor(x_n: f64, step: f64) -> f64 {
    let r = (-step).exp();
    let one_minus_r = -(-step).exp_m1();
    r / one_minus_r + step * r / ((1.0 + x_n) * one_minus_r * one_minus_r)
}
