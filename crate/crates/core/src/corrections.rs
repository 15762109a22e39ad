//! The linear-in-temperature correction Δ_T F, obtained three ways:
//!
//! * numerically, as the Matsubara sum minus its zero-temperature integral
//!   replacement;
//! * in closed form for the plasma model,
//!   `Δ_T F = (k_B T R / 8a²) [ζ(3) + ∫_0^∞ x ln(1 − G1 e^{-x}) dx]`,
//!   with G1 the static plasma TE factor;
//! * from its small-α expansion, `(k_B T R / 8a²) ζ(3) · 8α (1 − 3α)`.
//!
//! [`delta_t_general`] is the zero-frequency mismatch between the two
//! Matsubara prescriptions for any model; for the plasma model it equals the
//! closed form.

use serde::Serialize;

use crate::constants::ZETA3;
use crate::dielectric::{log_factor, zero_frequency_g1};
use crate::error::{CasimirError, Result};
use crate::lifshitz::{force_integral, force_sum, ForceResult};
use crate::quadrature::{explicit_upper, integrate_semi_infinite};
use crate::settings::NumericSettings;
use crate::system::{effective_temperature, Geometry, Material, Model};

/// A value in newtons with its numerical error bar.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
    pub converged: bool,
}

/// Sum-minus-integral correction together with both operands.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericDelta {
    pub value: f64,
    pub abs_error: f64,
    pub sum: ForceResult,
    pub integral: ForceResult,
    /// Set when the error bar exceeds 5% of the difference.
    pub imprecise: bool,
}

/// All correction routes at one geometry and temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrectionReport {
    pub delta_numeric: f64,
    pub delta_numeric_error: f64,
    /// Plasma only.
    pub delta_closed: Option<f64>,
    /// Plasma only, and only while α < 0.25.
    pub delta_expansion: Option<f64>,
    pub alpha: Option<f64>,
    pub t_over_teff: f64,
    /// delta_numeric / force_sum.
    pub relative_to_force: f64,
    pub imprecise: bool,
    pub converged: bool,
}

/// Largest relative tolerance used for the two operands of the numeric difference.
pub const NUMERIC_DELTA_REL_TOL: f64 = 1e-10;

/// Relative tolerance for the one-dimensional correction integrals.
const CLOSED_REL_TOL: f64 = 1e-12;

fn require_plasma(mat: &Material, operation: &'static str) -> Result<f64> {
    match (mat.model(), mat.omega_p()) {
        (Model::Plasma, Some(wp)) => Ok(wp),
        _ => Err(CasimirError::UnsupportedModel {
            operation,
            model: mat.model().name(),
        }),
    }
}

fn tight(s: &NumericSettings, rel_tol: f64) -> NumericSettings {
    NumericSettings {
        rel_tol: s.rel_tol.min(rel_tol),
        abs_tol: 0.0,
        ..*s
    }
}

fn tail_sup(s: &NumericSettings) -> f64 {
    let x = explicit_upper(0.0, s);
    2.0 / (-(-x).exp_m1()) * (1.0 + 1e-12)
}

/// force_sum − force_integral, both at relative tolerance ≤ 1e-10.
pub fn delta_t_numeric(
    mat: &Material,
    geom: &Geometry,
    temperature: f64,
    s: &NumericSettings,
) -> Result<NumericDelta> {
    s.validate()?;
    let inner = NumericSettings {
        rel_tol: s.rel_tol.min(NUMERIC_DELTA_REL_TOL),
        ..*s
    };
    let (sum, integral) = rayon::join(
        || force_sum(mat, geom, temperature, &inner),
        || force_integral(mat, geom, &inner),
    );
    let (sum, integral) = (sum?, integral?);
    let value = sum.force - integral.force;
    let abs_error = sum.abs_error + integral.abs_error;
    Ok(NumericDelta {
        value,
        abs_error,
        sum,
        integral,
        imprecise: abs_error > 0.05 * value.abs(),
    })
}

/// Closed-form plasma correction, evaluated literally as ζ(3) plus the
/// static-TE integral.
pub fn delta_t_closed(
    mat: &Material,
    geom: &Geometry,
    temperature: f64,
    s: &NumericSettings,
) -> Result<Estimate> {
    require_plasma(mat, "delta_t_closed")?;
    s.validate()?;
    crate::error::require_positive("temperature", temperature)?;
    let gap = geom.gap();
    let qs = tight(s, CLOSED_REL_TOL);
    let te = integrate_semi_infinite(
        |x: f64| {
            let (g1, omg1) = zero_frequency_g1(mat, x, gap);
            x * log_factor(g1, omg1, x)
        },
        0.0,
        true,
        tail_sup(&qs),
        &qs,
    );
    let pre = 0.5 * geom.thermal_prefactor(temperature);
    let value = pre * (ZETA3 + te.value);
    Ok(Estimate {
        value,
        abs_error: pre * (te.abs_error + 4.0 * f64::EPSILON * ZETA3),
        converged: te.converged,
    })
}

/// Two-term small-α expansion of the plasma correction. Requires α < 0.25.
pub fn delta_t_expansion(mat: &Material, geom: &Geometry, temperature: f64) -> Result<f64> {
    require_plasma(mat, "delta_t_expansion")?;
    crate::error::require_positive("temperature", temperature)?;
    let alpha = mat.alpha(geom.gap()).expect("plasma has omega_p");
    if alpha >= 0.25 {
        return Err(CasimirError::Validity {
            name: "alpha",
            value: alpha,
            limit: "< 0.25",
        });
    }
    let pre = 0.5 * geom.thermal_prefactor(temperature);
    Ok(pre * ZETA3 * 8.0 * alpha * (1.0 - 3.0 * alpha))
}

/// Zero-frequency mismatch between the two Matsubara prescriptions,
/// `(k_B T R / 4a²) {ζ(3) + ½ ∫_0^∞ x ln[(1−G1e^{-x})(1−G2e^{-x})] dx}`
/// with the ζ → 0 reflection factors (G2 = 1).
///
/// Using ∫ x ln(1 − e^{-x}) = −ζ(3) for each polarization, the bracket is
/// integrated as `½ ∫ x Σ_pol ln(1 + (1 − G)/(e^x − 1)) dx`, which is free of
/// cancellation and vanishes identically for ideal mirrors.
pub fn delta_t_general(
    mat: &Material,
    geom: &Geometry,
    temperature: f64,
    s: &NumericSettings,
) -> Result<Estimate> {
    s.validate()?;
    crate::error::require_positive("temperature", temperature)?;
    let gap = geom.gap();
    let qs = tight(s, CLOSED_REL_TOL);
    let r = integrate_semi_infinite(
        |x: f64| {
            let (_, omg1) = zero_frequency_g1(mat, x, gap);
            let omg2 = 0.0;
            let bose = (x).exp_m1();
            x * ((omg1 / bose).ln_1p() + (omg2 / bose).ln_1p())
        },
        0.0,
        true,
        // ln(1 + 1/(e^x−1)) = −ln(1 − e^{-x}) ≤ e^{-x}/(1 − e^{-x})
        tail_sup(&qs),
        &qs,
    );
    let pre = 0.5 * geom.thermal_prefactor(temperature);
    Ok(Estimate {
        value: pre * r.value,
        abs_error: pre * r.abs_error,
        converged: r.converged,
    })
}

/// Runs every applicable route and assembles a report.
pub fn correction_report(
    mat: &Material,
    geom: &Geometry,
    temperature: f64,
    s: &NumericSettings,
) -> Result<CorrectionReport> {
    let (numeric, closed) = rayon::join(
        || delta_t_numeric(mat, geom, temperature, s),
        || match mat.model() {
            Model::Plasma => delta_t_closed(mat, geom, temperature, s).map(Some),
            _ => Ok(None),
        },
    );
    let numeric = numeric?;
    let closed = closed?;
    let expansion = match mat.model() {
        Model::Plasma => delta_t_expansion(mat, geom, temperature).ok(),
        _ => None,
    };
    Ok(CorrectionReport {
        delta_numeric: numeric.value,
        delta_numeric_error: numeric.abs_error,
        delta_closed: closed.map(|c| c.value),
        delta_expansion: expansion,
        alpha: mat.alpha(geom.gap()),
        t_over_teff: temperature / effective_temperature(geom.gap()),
        relative_to_force: numeric.value / numeric.sum.force,
        imprecise: numeric.imprecise,
        converged: numeric.sum.converged
            && numeric.integral.converged
            && closed.is_none_or(|c| c.converged),
    })
}
