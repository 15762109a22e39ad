//! Reproduction checks: the published numbers and limits, each with a
//! pinned tolerance, plus an error-honesty battery for the quadrature.
//!
//! Default reproduction parameters are ω_p = 2·10¹⁶ rad/s, ω_τ = 5·10¹³ rad/s,
//! a = 0.1 µm, R = 100 µm, T = 300 K. R and T are not quoted with the original
//! figures; this pair reproduces the quoted 2.9 pN expansion value.

use std::f64::consts::PI;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::constants::{C, K_B, PICONEWTON, ZETA3};
use crate::corrections::{delta_t_closed, delta_t_expansion, delta_t_general, delta_t_numeric};
use crate::dielectric::log_factor;
use crate::lifshitz::{force_integral, force_sum, force_sum_alt, ideal_thermal_bracket};
use crate::quadrature::{integrate, integrate_semi_infinite, QuadResult};
use crate::settings::NumericSettings;
use crate::system::{bare_force, effective_temperature, Geometry, Material};

pub const OMEGA_P: f64 = 2e16;
pub const OMEGA_TAU: f64 = 5e13;
pub const GAP: f64 = 1e-7;
pub const RADIUS: f64 = 1e-4;
pub const TEMPERATURE: f64 = 300.0;

/// How a check compares its measured value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Comparison {
    /// |actual − expected| ≤ tolerance.
    Within { expected: f64, tolerance: f64 },
    /// actual ≤ limit.
    AtMost { limit: f64 },
    /// lo ≤ actual ≤ hi.
    Between { lo: f64, hi: f64 },
    /// A qualitative property; actual is 1 when it holds.
    Holds,
}

impl Comparison {
    fn passes(&self, actual: f64) -> bool {
        match *self {
            Comparison::Within { expected, tolerance } => (actual - expected).abs() <= tolerance,
            Comparison::AtMost { limit } => actual <= limit,
            Comparison::Between { lo, hi } => (lo..=hi).contains(&actual),
            Comparison::Holds => actual == 1.0,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Comparison::Within { expected, tolerance } => write!(f, "{expected:.6e} ± {tolerance:.1e}"),
            Comparison::AtMost { limit } => write!(f, "<= {limit:.6e}"),
            Comparison::Between { lo, hi } => write!(f, "in [{lo:.4e}, {hi:.4e}]"),
            Comparison::Holds => f.write_str("holds"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub unit: &'static str,
    pub comparison: Comparison,
    pub actual: f64,
    pub passed: bool,
}

impl Check {
    fn new(id: &str, description: impl Into<String>, unit: &'static str, comparison: Comparison, actual: f64) -> Self {
        Self {
            id: id.to_string(),
            description: description.into(),
            unit,
            passed: comparison.passes(actual),
            comparison,
            actual,
        }
    }

    fn holds(id: &str, description: impl Into<String>, ok: bool) -> Self {
        Self::new(id, description, "", Comparison::Holds, if ok { 1.0 } else { 0.0 })
    }

    fn failed(id: &str, description: impl Into<String>, err: impl fmt::Display) -> Self {
        let mut c = Self::holds(id, format!("{} [error: {err}]", description.into()), false);
        c.actual = f64::NAN;
        c
    }
}

/// Wall-clock budget for a group of checks. Kept apart from [`Check`] so
/// the numeric part of the report is reproducible bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingCheck {
    pub id: String,
    pub budget_s: f64,
    pub elapsed_s: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
    pub timings: Vec<TimingCheck>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.timings.iter().all(|t| t.passed)
    }
}

/// Knobs for exercising the suite itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    /// Reference value the ζ(3) identity is checked against.
    pub zeta3_reference: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            zeta3_reference: ZETA3,
        }
    }
}

/// An integrand with a known integral.
pub struct BatteryCase {
    pub name: &'static str,
    pub f: fn(f64) -> f64,
    pub range: BatteryRange,
    pub truth: f64,
}

pub enum BatteryRange {
    /// [lower, ∞) with the given singular-endpoint flag.
    SemiInfinite { lower: f64, singular: bool },
    Finite { a: f64, b: f64 },
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

/// Twenty integrands with closed-form (or rapidly convergent series) values.
pub fn quadrature_battery() -> Vec<BatteryCase> {
    use BatteryRange::*;
    let semi = |lower: f64, singular: bool| SemiInfinite { lower, singular };
    vec![
        BatteryCase { name: "x e^-x", f: |x| x * (-x).exp(), range: semi(0.0, false), truth: 1.0 },
        BatteryCase { name: "x e^-x from 2", f: |x| x * (-x).exp(), range: semi(2.0, false), truth: 3.0 * (-2.0f64).exp() },
        BatteryCase { name: "x ln(1-e^-x)", f: |x| x * log_factor(1.0, 0.0, x), range: semi(0.0, true), truth: -ZETA3 },
        BatteryCase { name: "2x ln(1-e^-x)", f: |x| 2.0 * x * log_factor(1.0, 0.0, x), range: semi(0.0, true), truth: -2.0 * ZETA3 },
        BatteryCase { name: "x ln(1-e^-x) from 1", f: |x| x * log_factor(1.0, 0.0, x), range: semi(1.0, false), truth: -0.795_749_711_559_096_019_2 },
        BatteryCase { name: "x ln(1-e^-x/2)", f: |x| x * log_factor(0.5, 0.5, x), range: semi(0.0, false), truth: -0.537_213_193_608_040_200_9 },
        BatteryCase { name: "x e^-2x", f: |x| x * (-2.0 * x).exp(), range: semi(0.0, false), truth: 0.25 },
        BatteryCase { name: "e^-x", f: |x| (-x).exp(), range: semi(0.0, false), truth: 1.0 },
        BatteryCase { name: "x/(e^x-1)", f: |x| x / x.exp_m1(), range: semi(0.0, false), truth: PI * PI / 6.0 },
        BatteryCase { name: "x/(e^x+1)", f: |x| x * (-x).exp() / (1.0 + (-x).exp()), range: semi(0.0, false), truth: PI * PI / 12.0 },
        BatteryCase { name: "e^-x/(1+e^-x)", f: |x| (-x).exp() / (1.0 + (-x).exp()), range: semi(0.0, false), truth: std::f64::consts::LN_2 },
        BatteryCase { name: "ln(x) e^-x", f: |x| x.ln() * (-x).exp(), range: semi(0.0, true), truth: -EULER_GAMMA },
        BatteryCase { name: "sqrt(x) e^-x", f: |x| x.sqrt() * (-x).exp(), range: semi(0.0, true), truth: PI.sqrt() / 2.0 },
        BatteryCase { name: "e^-x cos x", f: |x| (-x).exp() * x.cos(), range: semi(0.0, false), truth: 0.5 },
        BatteryCase { name: "e^-x sin x", f: |x| (-x).exp() * x.sin(), range: semi(0.0, false), truth: 0.5 },
        BatteryCase { name: "x^2 e^-2x", f: |x| x * x * (-2.0 * x).exp(), range: semi(0.0, false), truth: 0.25 },
        BatteryCase { name: "x^3 e^-2x", f: |x| x.powi(3) * (-2.0 * x).exp(), range: semi(0.0, false), truth: 0.375 },
        BatteryCase { name: "e^-x^2", f: |x| (-x * x).exp(), range: semi(0.0, false), truth: PI.sqrt() / 2.0 },
        BatteryCase { name: "sqrt(x) on [0,1]", f: |x| x.sqrt(), range: Finite { a: 0.0, b: 1.0 }, truth: 2.0 / 3.0 },
        BatteryCase { name: "1/(1+x^2) on [0,1]", f: |x| 1.0 / (1.0 + x * x), range: Finite { a: 0.0, b: 1.0 }, truth: PI / 4.0 },
    ]
}

/// Every battery integrand is bounded by x·e^{-x} (times 1 + 1e-12) beyond x = 40.
pub const BATTERY_TAIL_SUP: f64 = 1.0 + 1e-12;

pub fn run_battery_case(case: &BatteryCase, s: &NumericSettings) -> QuadResult {
    match case.range {
        BatteryRange::SemiInfinite { lower, singular } => {
            integrate_semi_infinite(case.f, lower, singular, BATTERY_TAIL_SUP, s)
        }
        BatteryRange::Finite { a, b } => integrate(case.f, a, b, s),
    }
}

fn pn(newtons: f64) -> f64 {
    newtons / PICONEWTON
}

fn reference_geometry() -> Geometry {
    Geometry::new(RADIUS, GAP).expect("valid reference geometry")
}

fn plasma_with_alpha(alpha: f64) -> Material {
    Material::plasma(C / (2.0 * GAP * alpha)).expect("positive plasma frequency")
}

fn zeta3_identity(opts: &SuiteOptions, s: &NumericSettings) -> Vec<Check> {
    let tight = s.with_rel_tol(1e-13);
    let r = integrate_semi_infinite(|x| x * log_factor(1.0, 0.0, x), 0.0, true, BATTERY_TAIL_SUP, &tight);
    vec![Check::new(
        "1",
        "ζ(3) identity: ∫_0^∞ x ln(1−e^{-x}) dx",
        "",
        Comparison::Within {
            expected: -opts.zeta3_reference,
            tolerance: 1e-11,
        },
        r.value,
    )]
}

fn ideal_cancellation(s: &NumericSettings) -> Vec<Check> {
    let desc = "ideal mirrors: zero-frequency mismatch vanishes";
    match delta_t_general(&Material::IDEAL, &reference_geometry(), TEMPERATURE, s) {
        Ok(d) => vec![Check::new("2", desc, "N", Comparison::AtMost { limit: 1e-14 }, d.value.abs())],
        Err(e) => vec![Check::failed("2", desc, e)],
    }
}

fn plasma_correction(s: &NumericSettings) -> Vec<Check> {
    let m = Material::plasma(OMEGA_P).unwrap();
    let g = reference_geometry();
    let closed = delta_t_closed(&m, &g, TEMPERATURE, s);
    let numeric = delta_t_numeric(&m, &g, TEMPERATURE, s);
    let mut out = Vec::new();
    match &closed {
        Ok(c) => out.push(Check::new(
            "3a",
            "plasma closed-form Δ_T F at 0.1 µm",
            "pN",
            Comparison::Within { expected: 2.5, tolerance: 0.15 },
            pn(c.value),
        )),
        Err(e) => out.push(Check::failed("3a", "plasma closed-form Δ_T F", e)),
    }
    match (&closed, &numeric) {
        (Ok(c), Ok(n)) => out.push(Check::new(
            "3b",
            "plasma |numeric − closed| Δ_T F",
            "pN",
            Comparison::AtMost { limit: 0.1 },
            pn((n.value - c.value).abs()),
        )),
        (Err(e), _) => out.push(Check::failed("3b", "plasma numeric vs closed", e)),
        (_, Err(e)) => out.push(Check::failed("3b", "plasma numeric vs closed", e)),
    }
    out
}

/// Least-squares slope of ln(y) against ln(x).
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn expansion(s: &NumericSettings) -> Vec<Check> {
    let g = reference_geometry();
    let mut out = Vec::new();
    match delta_t_expansion(&Material::plasma(OMEGA_P).unwrap(), &g, TEMPERATURE) {
        Ok(v) => out.push(Check::new(
            "4a",
            "plasma α-expansion Δ_T F at 0.1 µm",
            "pN",
            Comparison::Within { expected: 2.893, tolerance: 0.01 },
            pn(v),
        )),
        Err(e) => out.push(Check::failed("4a", "plasma α-expansion", e)),
    }
    let points: Result<Vec<(f64, f64)>, _> = [0.01, 0.05, 0.1]
        .iter()
        .map(|&alpha| {
            let m = plasma_with_alpha(alpha);
            let c = delta_t_closed(&m, &g, TEMPERATURE, s)?.value;
            let e = delta_t_expansion(&m, &g, TEMPERATURE)?;
            Ok::<_, crate::CasimirError>((alpha, ((c - e) / c).abs()))
        })
        .collect();
    match points {
        Ok(p) => out.push(Check::new(
            "4b",
            "|closed − expansion|/closed log-log slope in α",
            "",
            Comparison::Within { expected: 2.0, tolerance: 0.3 },
            log_log_slope(&p),
        )),
        Err(e) => out.push(Check::failed("4b", "expansion remainder slope", e)),
    }
    out
}

fn drude_correction(s: &NumericSettings) -> Vec<Check> {
    let m = Material::drude(OMEGA_P, OMEGA_TAU).unwrap();
    match delta_t_numeric(&m, &reference_geometry(), TEMPERATURE, s) {
        Ok(d) => vec![Check::new(
            "5",
            "Drude numeric Δ_T F at 0.1 µm, ω_τ = 5e13",
            "pN",
            Comparison::Within { expected: 4.0, tolerance: 0.4 },
            pn(d.value),
        )],
        Err(e) => vec![Check::failed("5", "Drude numeric Δ_T F", e)],
    }
}

/// High-temperature point: a = 5 µm, T = 1000 K.
fn classical_geometry() -> (Geometry, f64, f64) {
    let a = 5e-6;
    let t = 1000.0;
    let g = Geometry::new(RADIUS, a).unwrap();
    let classical = K_B * t * RADIUS * ZETA3 / (4.0 * a * a);
    (g, t, classical)
}

fn classical_limits(s: &NumericSettings) -> Vec<Check> {
    let (g, t, classical) = classical_geometry();
    let drude = Material::drude(OMEGA_P, OMEGA_TAU).unwrap();
    let plasma = Material::plasma(OMEGA_P).unwrap();
    let mut out = Vec::new();
    match force_sum(&drude, &g, t, s) {
        Ok(r) => out.push(Check::new(
            "6a",
            "Drude force_sum / classical limit k_B T R ζ(3)/4a²",
            "",
            Comparison::Within { expected: 1.0, tolerance: 0.005 },
            r.force / classical,
        )),
        Err(e) => out.push(Check::failed("6a", "Drude force_sum classical limit", e)),
    }
    match force_sum_alt(&drude, &g, t, s) {
        Ok(r) => out.push(Check::new(
            "6b",
            "Drude force_sum_alt / classical limit (expect one half)",
            "",
            Comparison::Within { expected: 0.5, tolerance: 0.005 },
            r.force / classical,
        )),
        Err(e) => out.push(Check::failed("6b", "Drude force_sum_alt classical limit", e)),
    }
    let high_t = classical * (1.0 - 2.0 * C / (g.gap() * OMEGA_P));
    match force_sum_alt(&plasma, &g, t, s) {
        Ok(r) => out.push(Check::new(
            "7",
            "plasma force_sum_alt / k_B T R ζ(3)(1 − 2c/aω_p)/4a²",
            "",
            Comparison::Within { expected: 1.0, tolerance: 0.01 },
            r.force / high_t,
        )),
        Err(e) => out.push(Check::failed("7", "plasma high-temperature limit", e)),
    }
    out
}

fn ideal_low_temperature(s: &NumericSettings) -> Vec<Check> {
    let g = reference_geometry();
    let f0 = bare_force(&g);
    let integral = force_integral(&Material::IDEAL, &g, &s.with_rel_tol(1e-12));
    let t_eff = effective_temperature(GAP);
    [("8a", 0.01), ("8b", 0.02), ("8c", 0.05)]
        .iter()
        .map(|&(id, ratio)| {
            let desc = format!("ideal (sum − integral)/F_0 at T/T_eff = {ratio}");
            let expected = ideal_thermal_bracket(ratio);
            let sum = force_sum(&Material::IDEAL, &g, ratio * t_eff, &s.with_rel_tol(1e-12));
            match (&integral, sum) {
                (Ok(i), Ok(sm)) => Check::new(
                    id,
                    desc,
                    "",
                    Comparison::Within {
                        expected,
                        tolerance: 0.1 * expected,
                    },
                    (sm.force - i.force) / f0,
                ),
                (Err(e), _) => Check::failed(id, desc, e),
                (_, Err(e)) => Check::failed(id, desc, e),
            }
        })
        .collect()
}

fn replacement_error(s: &NumericSettings) -> Vec<Check> {
    let m = Material::drude(OMEGA_P, OMEGA_TAU).unwrap();
    match delta_t_numeric(&m, &reference_geometry(), TEMPERATURE, s) {
        Ok(d) => vec![Check::new(
            "9",
            "Drude replacement error Δ_T F / F_sum at 0.1 µm",
            "",
            Comparison::Between { lo: 0.01, hi: 0.04 },
            d.value / d.sum.force,
        )],
        Err(e) => vec![Check::failed("9", "Drude replacement error", e)],
    }
}

fn perfect_conductor_limit(s: &NumericSettings) -> Vec<Check> {
    let g = reference_geometry();
    let mut out = Vec::new();
    match delta_t_closed(&plasma_with_alpha(1e-4), &g, TEMPERATURE, s) {
        Ok(c) => out.push(Check::new(
            "10a",
            "plasma closed-form Δ_T F at α = 1e-4",
            "pN",
            Comparison::AtMost { limit: 0.01 },
            pn(c.value),
        )),
        Err(e) => out.push(Check::failed("10a", "closed form at α = 1e-4", e)),
    }
    let values: Result<Vec<f64>, _> = [1e17, 1e18, 1e19]
        .iter()
        .map(|&wp| delta_t_closed(&Material::plasma(wp).unwrap(), &g, TEMPERATURE, s).map(|c| c.value))
        .collect();
    match values {
        Ok(v) => out.push(Check::holds(
            "10b",
            format!(
                "closed-form Δ_T F decreases over ω_p = 1e17, 1e18, 1e19 ({:.4e}, {:.4e}, {:.4e} pN)",
                pn(v[0]),
                pn(v[1]),
                pn(v[2])
            ),
            v.windows(2).all(|w| w[1] < w[0]),
        )),
        Err(e) => out.push(Check::failed("10b", "closed form over ω_p", e)),
    }
    out
}

fn battery_honesty() -> Vec<Check> {
    let mut violations = Vec::new();
    let cases = quadrature_battery();
    for rel_tol in [1e-6, 1e-9, 1e-12] {
        let s = NumericSettings::default().with_rel_tol(rel_tol);
        for case in &cases {
            let r = run_battery_case(case, &s);
            if (r.value - case.truth).abs() > r.abs_error {
                violations.push(format!("{} @ {rel_tol:e}", case.name));
            }
        }
    }
    let desc = if violations.is_empty() {
        format!("{} battery integrands within their own error bars", cases.len())
    } else {
        format!("battery violations: {}", violations.join(", "))
    };
    vec![Check::holds("11a", desc, violations.is_empty())]
}

fn timed(id: &str, budget: Duration, start: Instant) -> TimingCheck {
    let elapsed = start.elapsed();
    TimingCheck {
        id: id.to_string(),
        budget_s: budget.as_secs_f64(),
        elapsed_s: elapsed.as_secs_f64(),
        passed: elapsed <= budget,
    }
}

/// Runs every reproduction check in a fixed order.
pub fn run_suite(opts: &SuiteOptions) -> SuiteReport {
    let s = NumericSettings::default();
    let suite_start = Instant::now();
    let mut checks = Vec::new();
    let mut timings = Vec::new();

    let t = Instant::now();
    checks.extend(zeta3_identity(opts, &s));
    timings.push(timed("1", Duration::from_secs(1), t));

    checks.extend(ideal_cancellation(&s));
    checks.extend(plasma_correction(&s));
    checks.extend(expansion(&s));
    checks.extend(drude_correction(&s));

    let t = Instant::now();
    checks.extend(classical_limits(&s));
    timings.push(timed("6", Duration::from_secs(10), t));

    checks.extend(ideal_low_temperature(&s));
    checks.extend(replacement_error(&s));
    checks.extend(perfect_conductor_limit(&s));
    checks.extend(battery_honesty());
    timings.push(timed("11", Duration::from_secs(120), suite_start));

    SuiteReport { checks, timings }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_pure_power_law() {
        let p: Vec<_> = [0.01, 0.05, 0.1].iter().map(|&a| (a, 3.0 * a * a)).collect();
        assert!((log_log_slope(&p) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn comparisons() {
        assert!(Comparison::Within { expected: 1.0, tolerance: 0.1 }.passes(1.05));
        assert!(!Comparison::Within { expected: 1.0, tolerance: 0.1 }.passes(f64::NAN));
        assert!(Comparison::AtMost { limit: 0.0 }.passes(0.0));
        assert!(!Comparison::Between { lo: 0.01, hi: 0.04 }.passes(0.05));
        assert!(!Comparison::Holds.passes(0.0));
    }

    #[test]
    fn battery_has_twenty_cases() {
        assert_eq!(quadrature_battery().len(), 20);
    }

    #[test]
    fn perturbed_reference_fails_identity_check() {
        let s = NumericSettings::default();
        let opts = SuiteOptions {
            zeta3_reference: ZETA3 * (1.0 + 1e-6),
        };
        assert!(!zeta3_identity(&opts, &s)[0].passed);
        assert!(zeta3_identity(&SuiteOptions::default(), &s)[0].passed);
    }
}
