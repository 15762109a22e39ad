//! Sphere-plate Casimir force from the Lifshitz formula with the proximity
//! force approximation.
//!
//! With x = 2pζ_n a/c the Matsubara sum becomes
//!
//! ```text
//! F = (k_B T R / 4a²) { ζ(3) − Σ_{n≥1} I(x_n) },
//! I(ξ) = ∫_ξ^∞ dx x ln[(1 − G1 e^{-x})(1 − G2 e^{-x})],
//! ```
//!
//! where the n = 0 term is taken in the ε → ∞ limit and contributes ζ(3).
//! [`force_sum_alt`] instead keeps material parameters in the n = 0 term, and
//! [`force_integral`] replaces the sum by an integral over a continuous ξ,
//! which makes the result temperature independent:
//!
//! ```text
//! F_int = (ħ c R / 16π a³) ∫_0^∞ dξ (−I(ξ)).
//! ```
//!
//! Forces are reported as positive attractive magnitudes.

use std::cell::Cell;
use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::{C, HBAR, ZETA3};
use crate::dielectric::{log_factor, pair_from_susceptibility, reflection_pair, zero_frequency_g1, zeta_from_x};
use crate::error::{require_positive, CasimirError, Result};
use crate::quadrature::{
    explicit_upper, integrate_semi_infinite, poly_exp_tail_factor, sum_series, QuadResult,
};
use crate::settings::NumericSettings;
use crate::system::{bare_force, effective_temperature, Geometry, Material, Model, ThermalGrid};

/// A computed force with its error budget and breakdown.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForceResult {
    /// Attractive magnitude, N.
    pub force: f64,
    /// Estimated numerical error, N.
    pub abs_error: f64,
    /// Contribution of the zero-frequency term, N.
    pub n_zero_part: f64,
    /// Contribution of the n ≥ 1 terms (or of the whole integral), N.
    pub series_part: f64,
    /// Last Matsubara index summed; 0 for the integral form.
    pub truncation_index: u64,
    pub quadrature_evals: usize,
    /// False when some quadrature hit its refinement limit.
    pub converged: bool,
}

/// Squared-reflection supremum used for the tail majorant: |ln(1−u)| ≤ u/(1−u)
/// with g1 + g2 ≤ 2 and u ≤ e^{-X}.
fn tail_sup(lower: f64, s: &NumericSettings) -> f64 {
    let upper = explicit_upper(lower, s);
    2.0 / (-(-upper).exp_m1()) * (1.0 + 1e-12)
}

/// `x ln[(1−G1e^{-x})(1−G2e^{-x})]` at p = x/x_n and imaginary frequency ζ.
pub fn integrand(mat: &Material, x: f64, zeta: f64, x_n: f64) -> Result<f64> {
    require_positive("x_n", x_n)?;
    if !(x >= x_n) {
        return Err(CasimirError::Domain {
            name: "x",
            value: x,
            requirement: "must be >= x_n",
        });
    }
    let r = reflection_pair(mat, (x / x_n).max(1.0), zeta)?;
    Ok(x * (log_factor(r.g1, r.one_minus_g1, x) + log_factor(r.g2, r.one_minus_g2, x)))
}

/// I(x_n) = ∫_{x_n}^∞ x ln[(1−G1e^{-x})(1−G2e^{-x})] dx for x_n > 0.
///
/// The susceptibility depends only on ζ_n, so it is computed once per term.
pub fn matsubara_term(mat: &Material, gap: f64, x_n: f64, s: &NumericSettings) -> QuadResult {
    debug_assert!(x_n > 0.0);
    let singular = x_n < 1.0;
    let sup = tail_sup(x_n, s);
    match mat.model() {
        Model::IdealMetal => integrate_semi_infinite(
            |x: f64| 2.0 * x * log_factor(1.0, 0.0, x),
            x_n,
            singular,
            sup,
            s,
        ),
        _ => {
            let zeta = zeta_from_x(x_n, gap);
            let chi = crate::dielectric::eps_imag(mat, zeta).expect("x_n > 0 and non-ideal model") - 1.0;
            integrate_semi_infinite(
                |x: f64| {
                    // Clamp: the lower limit is exactly x_n.
                    let p = (x / x_n).max(1.0);
                    let r = pair_from_susceptibility(chi, p);
                    x * (log_factor(r.g1, r.one_minus_g1, x) + log_factor(r.g2, r.one_minus_g2, x))
                },
                x_n,
                singular,
                sup,
                s,
            )
        }
    }
}

/// The n = 0 integral with ζ → 0 reflection factors:
/// ∫_0^∞ x [ln(1 − G1⁰ e^{-x}) + ln(1 − e^{-x})] dx.
pub fn zero_frequency_term(mat: &Material, gap: f64, s: &NumericSettings) -> QuadResult {
    integrate_semi_infinite(
        |x: f64| {
            let (g1, omg1) = zero_frequency_g1(mat, x, gap);
            x * (log_factor(g1, omg1, x) + log_factor(1.0, 0.0, x))
        },
        0.0,
        true,
        tail_sup(0.0, s),
        s,
    )
}

/// Settings for the dimensionless kernels: `abs_tol` converted from newtons.
fn dimensionless(s: &NumericSettings, scale: f64) -> NumericSettings {
    NumericSettings {
        abs_tol: s.abs_tol / scale,
        ..*s
    }
}

struct Series {
    value: f64,
    abs_error: f64,
    terms: u64,
    evaluations: usize,
    converged: bool,
}

/// Σ_{n≥1} I(x_n) with a certified remainder.
///
/// Once x_n ≥ 1 the ratio |I(ξ)| / ((1+ξ)e^{-ξ}) is non-increasing, so the
/// remainder after term N is bounded by |I_N| times the exact tail factor of
/// Σ_{m>N}(1+x_m)e^{-x_m} relative to (1+x_N)e^{-x_N}.
fn matsubara_series(mat: &Material, gap: f64, x1: f64, s: &NumericSettings) -> Result<Series> {
    let out = sum_series(
        |n| matsubara_term(mat, gap, n as f64 * x1, s),
        |n, t| {
            let x_n = n as f64 * x1;
            if x_n < 1.0 {
                f64::INFINITY
            } else {
                t.abs() * poly_exp_tail_factor(x_n, x1)
            }
        },
        s,
    )?;
    Ok(Series {
        value: out.value,
        abs_error: out.abs_error,
        terms: out.terms,
        evaluations: out.evaluations,
        converged: out.converged,
    })
}

fn check_inputs(s: &NumericSettings, temperature: f64, gap: f64) -> Result<ThermalGrid> {
    s.validate()?;
    ThermalGrid::new(temperature, gap)
}

/// Matsubara-sum force with the ε → ∞ zero-frequency term ζ(3).
pub fn force_sum(
    mat: &Material,
    geom: &Geometry,
    temperature: f64,
    s: &NumericSettings,
) -> Result<ForceResult> {
    let grid = check_inputs(s, temperature, geom.gap())?;
    let pre = geom.thermal_prefactor(temperature);
    let series = matsubara_series(mat, geom.gap(), grid.x1(), &dimensionless(s, pre))?;
    let n_zero_part = pre * ZETA3;
    let series_part = -pre * series.value;
    let force = n_zero_part + series_part;
    Ok(ForceResult {
        force,
        abs_error: pre * series.abs_error + 4.0 * f64::EPSILON * force.abs(),
        n_zero_part,
        series_part,
        truncation_index: series.terms,
        quadrature_evals: series.evaluations,
        converged: series.converged,
    })
}

/// Matsubara-sum force where the n = 0 term keeps the zero-frequency limit
/// of the material's reflection factors (weight ½, G2 = 1, model-dependent G1).
///
/// For the ideal metal both prescriptions agree and this returns
/// [`force_sum`].
pub fn force_sum_alt(
    mat: &Material,
    geom: &Geometry,
    temperature: f64,
    s: &NumericSettings,
) -> Result<ForceResult> {
    if mat.model() == Model::IdealMetal {
        return force_sum(mat, geom, temperature, s);
    }
    let grid = check_inputs(s, temperature, geom.gap())?;
    let pre = geom.thermal_prefactor(temperature);
    let ds = dimensionless(s, pre);
    let zero = zero_frequency_term(mat, geom.gap(), &ds);
    let series = matsubara_series(mat, geom.gap(), grid.x1(), &ds)?;
    let n_zero_part = -0.5 * pre * zero.value;
    let series_part = -pre * series.value;
    let force = n_zero_part + series_part;
    Ok(ForceResult {
        force,
        abs_error: pre * (0.5 * zero.abs_error + series.abs_error) + 4.0 * f64::EPSILON * force.abs(),
        n_zero_part,
        series_part,
        truncation_index: series.terms,
        quadrature_evals: zero.evaluations + series.evaluations,
        converged: zero.converged && series.converged,
    })
}

/// Zero-temperature limit: the Matsubara sum replaced by an integral over
/// the continuous frequency variable ξ = 2ζa/c.
pub fn force_integral(mat: &Material, geom: &Geometry, s: &NumericSettings) -> Result<ForceResult> {
    s.validate()?;
    let gap = geom.gap();
    let pre = HBAR * C * geom.radius() / (16.0 * PI * gap.powi(3));
    let outer_settings = dimensionless(s, pre);
    let inner_settings = NumericSettings {
        rel_tol: 0.1 * s.rel_tol,
        abs_tol: 0.0,
        ..*s
    };

    let inner_evals = Cell::new(0usize);
    let inner_rel_err = Cell::new(0.0_f64);
    let inner_ok = Cell::new(true);
    let outer = integrate_semi_infinite(
        |xi: f64| {
            let r = matsubara_term(mat, gap, xi, &inner_settings);
            inner_evals.set(inner_evals.get() + r.evaluations);
            inner_ok.set(inner_ok.get() && r.converged);
            if r.value != 0.0 {
                inner_rel_err.set(inner_rel_err.get().max(r.abs_error / r.value.abs()));
            }
            -r.value
        },
        0.0,
        true,
        // |I(ξ)| ≤ 2(1+ξ)e^{-ξ}/(1−e^{-ξ}) ≤ 2(1+1/X)/(1−e^{-X}) · ξe^{-ξ}
        tail_sup(0.0, s) * (1.0 + 1.0 / explicit_upper(0.0, s)),
        &outer_settings,
    );

    let force = pre * outer.value;
    Ok(ForceResult {
        force,
        abs_error: pre * (outer.abs_error + inner_rel_err.get() * outer.value.abs())
            + 4.0 * f64::EPSILON * force.abs(),
        n_zero_part: 0.0,
        series_part: force,
        truncation_index: 0,
        quadrature_evals: outer.evaluations + inner_evals.get(),
        converged: outer.converged && inner_ok.get(),
    })
}

/// Ideal-metal force at low temperature,
/// F_0 [1 + (45ζ(3)/π³)(T/T_eff)³ − (T/T_eff)⁴], valid for T/T_eff < 0.3.
pub fn ideal_force_small_t(geom: &Geometry, temperature: f64) -> Result<f64> {
    if !(temperature >= 0.0) || !temperature.is_finite() {
        return Err(CasimirError::Domain {
            name: "temperature",
            value: temperature,
            requirement: "must be finite and >= 0",
        });
    }
    let t = temperature / effective_temperature(geom.gap());
    if t >= 0.3 {
        return Err(CasimirError::Validity {
            name: "T/T_eff",
            value: t,
            limit: "< 0.3",
        });
    }
    Ok(bare_force(geom) * (1.0 + ideal_thermal_bracket(t)))
}

/// (45ζ(3)/π³) t³ − t⁴: the relative low-temperature correction for ideal mirrors.
pub fn ideal_thermal_bracket(t_over_teff: f64) -> f64 {
    45.0 * ZETA3 / PI.powi(3) * t_over_teff.powi(3) - t_over_teff.powi(4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::K_B;
    use approx::assert_relative_eq;

    fn geom() -> Geometry {
        Geometry::new(1e-4, 1e-7).unwrap()
    }

    #[test]
    fn ideal_integrand_at_one() {
        // 2 ln(1 − e^{-1}), mpmath.
        let v = integrand(&Material::IDEAL, 1.0, 1e14, 0.5).unwrap();
        assert_relative_eq!(v, -0.917_350_290_774_163_8, max_relative = 1e-14);
    }

    #[test]
    fn integrand_at_lower_limit_matches_composition() {
        let m = Material::plasma(2e16).unwrap();
        let x_n = 0.3;
        let zeta = zeta_from_x(x_n, 1e-7);
        let r = reflection_pair(&m, 1.0, zeta).unwrap();
        let direct = x_n * ((1.0 - r.g1 * (-x_n).exp()) * (1.0 - r.g2 * (-x_n).exp())).ln();
        assert_relative_eq!(integrand(&m, x_n, zeta, x_n).unwrap(), direct, max_relative = 1e-13);
    }

    #[test]
    fn integrand_decays_and_rejects_x_below_lower_limit() {
        let m = Material::drude(2e16, 5e13).unwrap();
        let zeta = zeta_from_x(0.2, 1e-7);
        let v = integrand(&m, 200.0, zeta, 0.2).unwrap();
        assert!(v <= 0.0 && v.abs() < 1e-80);
        assert!(integrand(&m, 0.1, zeta, 0.2).is_err());
    }

    #[test]
    fn classical_coefficient() {
        let pre = geom().thermal_prefactor(300.0) * ZETA3;
        // mpmath: kTRζ(3)/4a² at 300 K, 100 µm, 0.1 µm.
        assert_relative_eq!(pre, 1.244_713_995_967_793e-11, max_relative = 1e-13);
    }

    #[test]
    fn ideal_integral_reproduces_bare_force() {
        let r = force_integral(&Material::IDEAL, &geom(), &NumericSettings::default()).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.force, bare_force(&geom()), max_relative = 1e-9);
        assert!((r.force - bare_force(&geom())).abs() <= r.abs_error);
        assert_eq!(r.truncation_index, 0);
    }

    #[test]
    fn integral_is_temperature_independent_by_construction() {
        // The prefactor k_B T/x_1 = ħc/(4πa) for any T.
        for t in [10.0, 300.0, 4000.0] {
            let grid = ThermalGrid::new(t, 1e-7).unwrap();
            let via_t = geom().thermal_prefactor(t) / grid.x1();
            let direct = HBAR * C * 1e-4 / (16.0 * PI * 1e-21);
            assert_relative_eq!(via_t, direct, max_relative = 1e-14);
        }
    }

    #[test]
    fn ideal_alt_equals_sum() {
        let s = NumericSettings::default();
        let a = force_sum(&Material::IDEAL, &geom(), 300.0, &s).unwrap();
        let b = force_sum_alt(&Material::IDEAL, &geom(), 300.0, &s).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn breakdown_adds_up() {
        let m = Material::plasma(2e16).unwrap();
        let r = force_sum(&m, &geom(), 300.0, &NumericSettings::default()).unwrap();
        assert!((r.force - (r.n_zero_part + r.series_part)).abs() <= r.abs_error);
        assert!(r.truncation_index >= 1);
        assert!(r.abs_error > 0.0);
    }

    #[test]
    fn small_t_formula() {
        let g = geom();
        assert_eq!(ideal_force_small_t(&g, 0.0).unwrap(), bare_force(&g));
        let bracket = ideal_thermal_bracket(300.0 / effective_temperature(1e-7));
        // mpmath: 3.0912110029434e-5
        assert_relative_eq!(bracket, 3.091_211_002_943_412e-5, max_relative = 1e-12);
        assert!(ideal_force_small_t(&g, 0.31 * effective_temperature(1e-7)).is_err());
    }

    #[test]
    fn sum_rejects_bad_temperature() {
        let s = NumericSettings::default();
        assert!(force_sum(&Material::IDEAL, &geom(), 0.0, &s).is_err());
        assert!(force_sum(&Material::IDEAL, &geom(), -5.0, &s).is_err());
    }

    #[test]
    fn term_limit_surfaces_as_convergence_error() {
        let s = NumericSettings {
            max_matsubara_terms: 5,
            ..NumericSettings::default()
        };
        let err = force_sum(&Material::IDEAL, &geom(), 300.0, &s).unwrap_err();
        assert!(matches!(err, CasimirError::Convergence { .. }));
    }

    #[test]
    fn high_temperature_ideal_metal_is_classical() {
        let g = Geometry::new(1e-4, 5e-6).unwrap();
        let r = force_sum(&Material::IDEAL, &g, 1000.0, &NumericSettings::default()).unwrap();
        let classical = K_B * 1000.0 * 1e-4 * ZETA3 / (4.0 * 25e-12);
        assert_relative_eq!(r.force, classical, max_relative = 1e-3);
    }
}
