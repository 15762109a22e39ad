//! Geometry, material and temperature descriptions shared by every calculation.
//!
//! Everything is SI internally: meters, kelvin, rad/s, newtons.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::{C, HBAR, K_B};
use crate::error::{require_positive, CasimirError, Result};

/// Sphere above a plate, in the proximity-force regime `gap < radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    radius: f64,
    gap: f64,
}

impl Geometry {
    pub fn new(radius: f64, gap: f64) -> Result<Self> {
        require_positive("radius", radius)?;
        require_positive("gap", gap)?;
        if gap >= radius {
            return Err(CasimirError::Geometry(format!(
                "gap {gap:e} m must be smaller than the sphere radius {radius:e} m"
            )));
        }
        Ok(Self { radius, gap })
    }

    /// Sphere radius R in meters.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Sphere-plate separation a in meters.
    pub fn gap(&self) -> f64 {
        self.gap
    }

    /// The thermal prefactor k_B·T·R/(4a²), in newtons.
    pub fn thermal_prefactor(&self, temperature: f64) -> f64 {
        K_B * temperature * self.radius / (4.0 * self.gap * self.gap)
    }
}

/// Dielectric response model of the metal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    IdealMetal,
    Plasma,
    Drude,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::IdealMetal => "ideal",
            Model::Plasma => "plasma",
            Model::Drude => "drude",
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A metal: its model plus the frequencies the model needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    model: Model,
    omega_p: Option<f64>,
    omega_tau: Option<f64>,
}

impl Material {
    pub const IDEAL: Material = Material {
        model: Model::IdealMetal,
        omega_p: None,
        omega_tau: None,
    };

    pub fn ideal() -> Self {
        Self::IDEAL
    }

    pub fn plasma(omega_p: f64) -> Result<Self> {
        require_positive("omega_p", omega_p)?;
        Ok(Self {
            model: Model::Plasma,
            omega_p: Some(omega_p),
            omega_tau: None,
        })
    }

    pub fn drude(omega_p: f64, omega_tau: f64) -> Result<Self> {
        require_positive("omega_p", omega_p)?;
        require_positive("omega_tau", omega_tau)?;
        Ok(Self {
            model: Model::Drude,
            omega_p: Some(omega_p),
            omega_tau: Some(omega_tau),
        })
    }

    /// Builds a material from loose parts, rejecting inconsistent combinations.
    pub fn from_parts(model: Model, omega_p: Option<f64>, omega_tau: Option<f64>) -> Result<Self> {
        match model {
            Model::IdealMetal => Ok(Self::IDEAL),
            Model::Plasma => {
                let wp = omega_p
                    .ok_or_else(|| CasimirError::Material("plasma model requires omega_p".into()))?;
                Self::plasma(wp)
            }
            Model::Drude => {
                let wp = omega_p
                    .ok_or_else(|| CasimirError::Material("drude model requires omega_p".into()))?;
                let wt = omega_tau
                    .ok_or_else(|| CasimirError::Material("drude model requires omega_tau".into()))?;
                Self::drude(wp, wt)
            }
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Plasma frequency in rad/s; `None` for the ideal metal.
    pub fn omega_p(&self) -> Option<f64> {
        self.omega_p
    }

    /// Relaxation frequency in rad/s; `Some` only for Drude.
    pub fn omega_tau(&self) -> Option<f64> {
        self.omega_tau
    }

    /// The skin-depth parameter α = c/(2aω_p); `None` for the ideal metal.
    pub fn alpha(&self, gap: f64) -> Option<f64> {
        self.omega_p.map(|wp| C / (2.0 * gap * wp))
    }
}

/// Matsubara frequencies and their dimensionless form at a given temperature and gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalGrid {
    temperature: f64,
    gap: f64,
}

impl ThermalGrid {
    pub fn new(temperature: f64, gap: f64) -> Result<Self> {
        require_positive("temperature", temperature)?;
        require_positive("gap", gap)?;
        Ok(Self { temperature, gap })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// T_eff = ħc/(2a k_B) in kelvin.
    pub fn t_eff(&self) -> f64 {
        effective_temperature(self.gap)
    }

    /// ζ_n = 2πn k_B T/ħ in rad/s.
    pub fn zeta(&self, n: u64) -> f64 {
        2.0 * PI * n as f64 * K_B * self.temperature / HBAR
    }

    /// x_n = 2ζ_n a/c.
    pub fn x(&self, n: u64) -> f64 {
        n as f64 * self.x1()
    }

    /// The spacing x_1 = 4π k_B T a/(ħc) of the dimensionless grid.
    pub fn x1(&self) -> f64 {
        4.0 * PI * K_B * self.temperature * self.gap / (HBAR * C)
    }
}

/// T_eff = ħc/(2a k_B) in kelvin.
pub fn effective_temperature(gap: f64) -> f64 {
    HBAR * C / (2.0 * gap * K_B)
}

/// Dimensionless Matsubara variable x_n = 4π n k_B T a/(ħc).
pub fn matsubara_x(n: u64, temperature: f64, gap: f64) -> Result<f64> {
    if n == 0 {
        return Err(CasimirError::Domain {
            name: "n",
            value: 0.0,
            requirement: "must be >= 1",
        });
    }
    Ok(ThermalGrid::new(temperature, gap)?.x(n))
}

/// Zero-temperature ideal-metal force π³ħcR/(360a³), as a positive (attractive) magnitude.
pub fn bare_force(geom: &Geometry) -> f64 {
    PI.powi(3) * HBAR * C * geom.radius / (360.0 * geom.gap.powi(3))
}
