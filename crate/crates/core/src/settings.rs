use serde::{Deserialize, Serialize};

use crate::error::{CasimirError, Result};

/// Tolerances and limits shared by the quadrature and series machinery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericSettings {
    /// Target relative accuracy, in (0, 1e-2].
    pub rel_tol: f64,
    /// Target absolute accuracy. Newtons for force routines, plain units for
    /// the raw quadrature and series kernels.
    pub abs_tol: f64,
    pub max_matsubara_terms: usize,
    /// Maximum number of bisections applied to any seed panel.
    pub quad_max_depth: u32,
    /// Upper end of explicit integration in x; beyond it an analytic tail
    /// majorant is used.
    pub tail_cutoff_x: f64,
}

impl Default for NumericSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 0.0,
            max_matsubara_terms: 100_000,
            quad_max_depth: 30,
            tail_cutoff_x: 60.0,
        }
    }
}

impl NumericSettings {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name: &'static str, value: f64, requirement: &'static str| {
            Err(CasimirError::Domain {
                name,
                value,
                requirement,
            })
        };
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return bad("rel_tol", self.rel_tol, "must lie in (0, 1e-2]");
        }
        if !(self.abs_tol >= 0.0) || !self.abs_tol.is_finite() {
            return bad("abs_tol", self.abs_tol, "must be finite and >= 0");
        }
        if self.max_matsubara_terms == 0 {
            return bad("max_matsubara_terms", 0.0, "must be >= 1");
        }
        if self.quad_max_depth == 0 {
            return bad("quad_max_depth", 0.0, "must be >= 1");
        }
        if !(self.tail_cutoff_x >= 20.0) || !self.tail_cutoff_x.is_finite() {
            return bad("tail_cutoff_x", self.tail_cutoff_x, "must be finite and >= 20");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let s = NumericSettings::default();
        s.validate().unwrap();
        assert_eq!(s.rel_tol, 1e-9);
        assert_eq!(s.max_matsubara_terms, 100_000);
        assert_eq!(s.tail_cutoff_x, 60.0);
    }

    #[test]
    fn rel_tol_range() {
        assert!(NumericSettings::default().with_rel_tol(0.0).validate().is_err());
        assert!(NumericSettings::default().with_rel_tol(0.02).validate().is_err());
        assert!(NumericSettings::default().with_rel_tol(1e-2).validate().is_ok());
    }
}
