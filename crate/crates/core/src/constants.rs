//! Physical constants (CODATA 2018, exact where the SI defines them).

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum, m/s.
pub const C: f64 = 299_792_458.0;

/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;

/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_285_4;

/// One piconewton in newtons.
pub const PICONEWTON: f64 = 1e-12;

/// One micrometer in meters.
pub const MICROMETER: f64 = 1e-6;

/// The constants as a value, for callers that want to pass them around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub k_b: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        c: C,
        k_b: K_B,
    };
}
