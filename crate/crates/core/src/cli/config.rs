//! Run configuration with precedence flags > config file > defaults.
//!
//! The config file is plain `key = value` text; `#` starts a comment and
//! keys are the flag names with underscores (`omega_p`, `gap_sweep`, ...).

use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::constants::MICROMETER;
use crate::settings::NumericSettings;
use crate::system::{Geometry, Material, Model};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid {field}: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

pub fn parse_model(s: &str) -> Result<Model, String> {
    match s.to_ascii_lowercase().as_str() {
        "ideal" | "idealmetal" | "ideal_metal" => Ok(Model::IdealMetal),
        "plasma" => Ok(Model::Plasma),
        "drude" => Ok(Model::Drude),
        other => Err(format!("unknown model `{other}` (expected ideal, plasma or drude)")),
    }
}

/// Gap values in µm: one point or a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GapSpec {
    Single(f64),
    Sweep {
        start: f64,
        stop: f64,
        count: usize,
        log: bool,
    },
}

impl GapSpec {
    /// Parses `start:stop:count[:log|:lin]`.
    pub fn parse_sweep(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("`{s}` is not start:stop:count[:log]"));
        }
        let num = |p: &str| p.parse::<f64>().map_err(|_| format!("`{p}` is not a number"));
        let start = num(parts[0])?;
        let stop = num(parts[1])?;
        let count = parts[2]
            .parse::<usize>()
            .map_err(|_| format!("`{}` is not a count", parts[2]))?;
        let log = match parts.get(3) {
            None | Some(&"lin") | Some(&"linear") => false,
            Some(&"log") => true,
            Some(other) => return Err(format!("unknown spacing `{other}` (expected log or lin)")),
        };
        Ok(GapSpec::Sweep {
            start,
            stop,
            count,
            log,
        })
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        match *self {
            GapSpec::Single(g) => {
                if !(g > 0.0 && g.is_finite()) {
                    return Err(ConfigError::new("gap_um", format!("{g} must be > 0")));
                }
            }
            GapSpec::Sweep {
                start, stop, count, ..
            } => {
                if count < 2 {
                    return Err(ConfigError::new("gap_sweep", format!("count {count} must be >= 2")));
                }
                if !(start > 0.0 && stop > 0.0 && start.is_finite() && stop.is_finite()) {
                    return Err(ConfigError::new("gap_sweep", "start and stop must be positive"));
                }
            }
        }
        Ok(())
    }

    /// Gap values in µm, in sweep order.
    pub fn values(&self) -> Vec<f64> {
        match *self {
            GapSpec::Single(g) => vec![g],
            GapSpec::Sweep {
                start,
                stop,
                count,
                log,
            } => (0..count)
                .map(|i| {
                    let t = i as f64 / (count - 1) as f64;
                    if i == count - 1 {
                        stop
                    } else if log {
                        start * (stop / start).powf(t)
                    } else {
                        start + (stop - start) * t
                    }
                })
                .collect(),
        }
    }
}

/// Optional settings from one source (flags or config file).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub model: Option<Model>,
    pub omega_p: Option<f64>,
    /// `Some(None)` clears the value.
    pub omega_tau: Option<Option<f64>>,
    pub radius_um: Option<f64>,
    pub gap_um: Option<f64>,
    pub gap_sweep: Option<GapSpec>,
    pub temperature_k: Option<f64>,
    pub rel_tol: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl Overrides {
    /// Fields set in `self` win over `lower`.
    pub fn over(self, lower: Overrides) -> Overrides {
        Overrides {
            model: self.model.or(lower.model),
            omega_p: self.omega_p.or(lower.omega_p),
            omega_tau: self.omega_tau.or(lower.omega_tau),
            radius_um: self.radius_um.or(lower.radius_um),
            // A gap given at a higher level replaces a sweep from a lower one.
            gap_um: self.gap_um.or(if self.gap_sweep.is_some() { None } else { lower.gap_um }),
            gap_sweep: self.gap_sweep.or(if self.gap_um.is_some() { None } else { lower.gap_sweep }),
            temperature_k: self.temperature_k.or(lower.temperature_k),
            rel_tol: self.rel_tol.or(lower.rel_tol),
            format: self.format.or(lower.format),
            output: self.output.or(lower.output),
            jobs: self.jobs.or(lower.jobs),
        }
    }

    /// Parses config-file text.
    pub fn parse_config(text: &str) -> Result<Overrides, ConfigError> {
        let mut o = Overrides::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                ConfigError::new("config", format!("line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let num = |field: &str| {
                value
                    .parse::<f64>()
                    .map_err(|_| ConfigError::new(field, format!("`{value}` is not a number")))
            };
            match key {
                "model" => o.model = Some(parse_model(value).map_err(|m| ConfigError::new("model", m))?),
                "omega_p" => o.omega_p = Some(num("omega_p")?),
                "omega_tau" => {
                    o.omega_tau = Some(if value.is_empty() || value.eq_ignore_ascii_case("none") {
                        None
                    } else {
                        Some(num("omega_tau")?)
                    })
                }
                "radius_um" => o.radius_um = Some(num("radius_um")?),
                "gap_um" => o.gap_um = Some(num("gap_um")?),
                "gap_sweep" => {
                    o.gap_sweep =
                        Some(GapSpec::parse_sweep(value).map_err(|m| ConfigError::new("gap_sweep", m))?)
                }
                "temperature_K" | "temperature_k" => o.temperature_k = Some(num("temperature_K")?),
                "rel_tol" => o.rel_tol = Some(num("rel_tol")?),
                "format" => o.format = Some(value.parse().map_err(|m| ConfigError::new("format", m))?),
                "output" => o.output = Some(PathBuf::from(value)),
                "jobs" => {
                    o.jobs = Some(
                        value
                            .parse()
                            .map_err(|_| ConfigError::new("jobs", format!("`{value}` is not a count")))?,
                    )
                }
                other => return Err(ConfigError::new(other, "unknown configuration key")),
            }
        }
        Ok(o)
    }

    pub fn from_file(path: &Path) -> Result<Overrides, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("config", format!("{}: {e}", path.display())))?;
        Self::parse_config(&text)
    }
}

/// A fully resolved, validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: Model,
    pub omega_p: f64,
    pub omega_tau: Option<f64>,
    pub radius_um: f64,
    pub gaps: GapSpec,
    pub temperature_k: f64,
    pub rel_tol: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub const DEFAULT_OMEGA_P: f64 = 2e16;
    pub const DEFAULT_OMEGA_TAU: f64 = 5e13;
    pub const DEFAULT_RADIUS_UM: f64 = 100.0;
    pub const DEFAULT_GAP_UM: f64 = 0.1;
    pub const DEFAULT_TEMPERATURE_K: f64 = 300.0;
    pub const DEFAULT_REL_TOL: f64 = 1e-9;

    /// Resolves merged overrides against the built-in defaults and validates.
    pub fn resolve(o: Overrides) -> Result<RunConfig, ConfigError> {
        let gaps = match (o.gap_sweep, o.gap_um) {
            (Some(sweep), _) => sweep,
            (None, Some(g)) => GapSpec::Single(g),
            (None, None) => GapSpec::Single(Self::DEFAULT_GAP_UM),
        };
        let cfg = RunConfig {
            model: o.model.unwrap_or(Model::Plasma),
            omega_p: o.omega_p.unwrap_or(Self::DEFAULT_OMEGA_P),
            omega_tau: o.omega_tau.unwrap_or(Some(Self::DEFAULT_OMEGA_TAU)),
            radius_um: o.radius_um.unwrap_or(Self::DEFAULT_RADIUS_UM),
            gaps,
            temperature_k: o.temperature_k.unwrap_or(Self::DEFAULT_TEMPERATURE_K),
            rel_tol: o.rel_tol.unwrap_or(Self::DEFAULT_REL_TOL),
            format: o.format.unwrap_or(Format::Csv),
            output: o.output,
            jobs: o.jobs,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = |field: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(ConfigError::new(field, format!("{v} must be > 0")))
            }
        };
        if self.model != Model::IdealMetal {
            positive("omega_p", self.omega_p)?;
        }
        if self.model == Model::Drude {
            match self.omega_tau {
                None => return Err(ConfigError::new("omega_tau", "required by the drude model")),
                Some(w) => positive("omega_tau", w)?,
            }
        }
        positive("radius_um", self.radius_um)?;
        positive("temperature_K", self.temperature_k)?;
        self.gaps.validate()?;
        let field = match self.gaps {
            GapSpec::Single(_) => "gap_um",
            GapSpec::Sweep { .. } => "gap_sweep",
        };
        for g in self.gaps.values() {
            if g >= self.radius_um {
                return Err(ConfigError::new(
                    field,
                    format!("gap {g} µm must be smaller than radius_um {}", self.radius_um),
                ));
            }
        }
        self.settings().validate().map_err(|e| ConfigError::new("rel_tol", e.to_string()))?;
        if self.jobs == Some(0) {
            return Err(ConfigError::new("jobs", "must be >= 1"));
        }
        Ok(())
    }

    pub fn material(&self) -> Material {
        let omega_tau = if self.model == Model::Drude { self.omega_tau } else { None };
        Material::from_parts(self.model, Some(self.omega_p), omega_tau).expect("validated configuration")
    }

    pub fn geometry(&self, gap_um: f64) -> Geometry {
        Geometry::new(self.radius_um * MICROMETER, gap_um * MICROMETER).expect("validated configuration")
    }

    pub fn settings(&self) -> NumericSettings {
        NumericSettings::default().with_rel_tol(self.rel_tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::resolve(Overrides::default()).unwrap();
        assert_eq!(c.model, Model::Plasma);
        assert_eq!(c.omega_p, 2e16);
        assert_eq!(c.omega_tau, Some(5e13));
        assert_eq!(c.radius_um, 100.0);
        assert_eq!(c.gaps, GapSpec::Single(0.1));
        assert_eq!(c.temperature_k, 300.0);
        assert_eq!(c.rel_tol, 1e-9);
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file = Overrides::parse_config("model = drude\ntemperature_K = 77 # cold\nradius_um=50\n").unwrap();
        let flags = Overrides {
            temperature_k: Some(4.0),
            ..Overrides::default()
        };
        let c = RunConfig::resolve(flags.over(file)).unwrap();
        assert_eq!(c.model, Model::Drude);
        assert_eq!(c.temperature_k, 4.0);
        assert_eq!(c.radius_um, 50.0);
        assert_eq!(c.omega_p, 2e16);
    }

    #[test]
    fn flag_gap_replaces_file_sweep() {
        let file = Overrides::parse_config("gap_sweep = 0.1:1:10").unwrap();
        let flags = Overrides {
            gap_um: Some(0.2),
            ..Overrides::default()
        };
        assert_eq!(RunConfig::resolve(flags.over(file)).unwrap().gaps, GapSpec::Single(0.2));
    }

    #[test]
    fn sweep_values() {
        let lin = GapSpec::parse_sweep("0.1:1.0:10").unwrap();
        let v = lin.values();
        assert_eq!(v.len(), 10);
        assert_eq!(v[0], 0.1);
        assert_eq!(v[9], 1.0);
        assert!((v[1] - 0.2).abs() < 1e-15);
        let log = GapSpec::parse_sweep("0.1:10:3:log").unwrap().values();
        assert!((log[1] - 1.0).abs() < 1e-14);
        assert!(GapSpec::parse_sweep("0.1:1").is_err());
        assert!(GapSpec::parse_sweep("0.1:1:x").is_err());
        assert!(GapSpec::parse_sweep("0.1:1:4:cubic").is_err());
    }

    #[test]
    fn validation_names_the_field() {
        let err = |o: Overrides| RunConfig::resolve(o).unwrap_err().field;
        assert_eq!(
            err(Overrides::parse_config("model = drude\nomega_tau =").unwrap()),
            "omega_tau"
        );
        assert_eq!(
            err(Overrides {
                gap_sweep: Some(GapSpec::parse_sweep("0.1:1:1").unwrap()),
                ..Overrides::default()
            }),
            "gap_sweep"
        );
        assert_eq!(
            err(Overrides {
                gap_um: Some(200.0),
                ..Overrides::default()
            }),
            "gap_um"
        );
        assert_eq!(
            err(Overrides {
                rel_tol: Some(0.5),
                ..Overrides::default()
            }),
            "rel_tol"
        );
        assert_eq!(
            err(Overrides {
                temperature_k: Some(0.0),
                ..Overrides::default()
            }),
            "temperature_K"
        );
        assert_eq!(Overrides::parse_config("colour = red").unwrap_err().field, "colour");
        assert_eq!(Overrides::parse_config("omega_p = fast").unwrap_err().field, "omega_p");
    }

    #[test]
    fn omega_tau_ignored_outside_drude() {
        let c = RunConfig::resolve(Overrides::default()).unwrap();
        assert_eq!(c.material().omega_tau(), None);
    }
}
