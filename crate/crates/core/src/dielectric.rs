//! Dielectric functions at imaginary frequency and the squared reflection
//! factors G1 (TE) and G2 (TM).
//!
//! The reflection factors are computed in rearranged forms,
//!
//! ```text
//! p - s   = -(ε-1) / (p+s)
//! εp - s  = (ε-1)((ε+1)p² - 1) / (εp+s)
//! 1 - G1  = 4ps / (p+s)²
//! 1 - G2  = 4εps / (εp+s)²
//! ```
//!
//! so that neither `ε - 1 ≪ p²` (high frequency) nor `ε ≫ 1` (low frequency)
//! loses digits to subtraction.

use crate::constants::C;
use crate::error::{require_positive, CasimirError, Result};
use crate::system::{Material, Model};

/// Squared reflection factors and their complements, all in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair {
    pub g1: f64,
    pub g2: f64,
    /// 1 - g1, computed without cancellation.
    pub one_minus_g1: f64,
    /// 1 - g2, computed without cancellation.
    pub one_minus_g2: f64,
}

impl ReflectionPair {
    /// Perfect reflection in both polarizations.
    pub const PERFECT: ReflectionPair = ReflectionPair {
        g1: 1.0,
        g2: 1.0,
        one_minus_g1: 0.0,
        one_minus_g2: 0.0,
    };
}

/// ε(iζ) − 1 for the plasma or Drude model.
fn susceptibility(mat: &Material, zeta: f64) -> Result<f64> {
    match (mat.model(), mat.omega_p(), mat.omega_tau()) {
        (Model::Plasma, Some(wp), _) => Ok((wp / zeta).powi(2)),
        (Model::Drude, Some(wp), Some(wt)) => Ok(wp / zeta * (wp / (zeta + wt))),
        _ => Err(CasimirError::UnsupportedModel {
            operation: "eps_imag",
            model: mat.model().name(),
        }),
    }
}

/// Dielectric function on the imaginary axis, ε(iζ).
pub fn eps_imag(mat: &Material, zeta: f64) -> Result<f64> {
    require_positive("zeta", zeta)?;
    Ok(1.0 + susceptibility(mat, zeta)?)
}

/// G1 and G2 at p ≥ 1 and imaginary frequency ζ.
pub fn reflection_pair(mat: &Material, p: f64, zeta: f64) -> Result<ReflectionPair> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(CasimirError::Domain {
            name: "p",
            value: p,
            requirement: "must be >= 1",
        });
    }
    if mat.model() == Model::IdealMetal {
        return Ok(ReflectionPair::PERFECT);
    }
    require_positive("zeta", zeta)?;
    let chi = susceptibility(mat, zeta)?;
    Ok(pair_from_susceptibility(chi, p))
}

pub(crate) fn pair_from_susceptibility(chi: f64, p: f64) -> ReflectionPair {
    let eps = 1.0 + chi;
    let s = (chi + p * p).sqrt();

    let te_sum = p + s;
    let te_ratio = chi / (te_sum * te_sum);
    let one_minus_g1 = 4.0 * p * s / (te_sum * te_sum);

    let ep = eps * p;
    let tm_sum = ep + s;
    let tm_ratio = chi * ((eps + 1.0) * p * p - 1.0) / (tm_sum * tm_sum);
    let one_minus_g2 = 4.0 * ep * s / (tm_sum * tm_sum);

    ReflectionPair {
        g1: te_ratio * te_ratio,
        g2: tm_ratio * tm_ratio,
        one_minus_g1,
        one_minus_g2,
    }
}

/// Zero-frequency plasma-model TE factor in the x variable,
/// `((x - √(x²+α⁻²)) / (x + √(x²+α⁻²)))²`.
///
/// Evaluated as `exp(-4·asinh(αx))`, which is the same expression and stays
/// finite for α → 0.
pub fn g1_static_limit(x: f64, alpha: f64) -> Result<f64> {
    require_positive("x", x)?;
    require_positive("alpha", alpha)?;
    Ok(static_te(x, alpha).0)
}

/// `(g1, 1 - g1)` for the plasma static limit; valid for x ≥ 0.
pub(crate) fn static_te(x: f64, alpha: f64) -> (f64, f64) {
    let k = -4.0 * (alpha * x).asinh();
    (k.exp(), -k.exp_m1())
}

/// TE factor and its complement in the ζ → 0 limit at fixed x.
///
/// Ideal metal: 1. Plasma: the static limit above. Drude: 0, since ε − 1
/// grows only like 1/ζ and the TE reflection vanishes. The TM factor tends
/// to 1 for every model.
pub fn zero_frequency_g1(mat: &Material, x: f64, gap: f64) -> (f64, f64) {
    match mat.model() {
        Model::IdealMetal => (1.0, 0.0),
        Model::Plasma => {
            let alpha = mat.alpha(gap).expect("plasma has omega_p");
            static_te(x, alpha)
        }
        Model::Drude => (0.0, 1.0),
    }
}

/// ln(1 − g e^{-x}) given g and 1 − g.
///
/// Near x → 0 with g → 1 the argument is rebuilt as (1 − g) − g·(e^{-x} − 1);
/// elsewhere `ln_1p` keeps the small logarithm exact.
#[inline]
pub fn log_factor(g: f64, one_minus_g: f64, x: f64) -> f64 {
    let u = g * (-x).exp();
    if u < 0.5 {
        (-u).ln_1p()
    } else {
        (one_minus_g - g * (-x).exp_m1()).ln()
    }
}

/// Imaginary frequency ζ corresponding to the dimensionless x_n = 2ζa/c.
pub fn zeta_from_x(x_n: f64, gap: f64) -> f64 {
    x_n * C / (2.0 * gap)
}
