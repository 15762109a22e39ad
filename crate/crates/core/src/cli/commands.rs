//! Subcommand drivers. Each returns the process exit code; rows go to the
//! given writer in input order regardless of worker completion order.

use std::io::{self, Write};

use rayon::prelude::*;

use super::config::RunConfig;
use super::output::{write_rows, CorrectionRow, ForceRow, Table};
use crate::constants::PICONEWTON;
use crate::corrections::correction_report;
use crate::error::CasimirError;
use crate::lifshitz::{force_integral, force_sum};
use crate::validation::{run_suite, SuiteOptions, SuiteReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    ConfigError = 1,
    ConvergenceWarning = 2,
    ValidationFailure = 3,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Rows plus whether every row converged.
#[derive(Debug, Clone, PartialEq)]
pub struct Rows<T> {
    pub rows: Vec<T>,
    pub converged: bool,
}

fn run_parallel<T, F>(cfg: &RunConfig, f: F) -> Result<Vec<(T, bool)>, CasimirError>
where
    T: Send,
    F: Fn(f64) -> Result<(T, bool), CasimirError> + Sync,
{
    let gaps = cfg.gaps.values();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .expect("thread pool");
    pool.install(|| gaps.par_iter().map(|&g| f(g)).collect())
}

fn collect<T>(rows: Vec<(T, bool)>) -> Rows<T> {
    let converged = rows.iter().all(|(_, ok)| *ok);
    Rows {
        rows: rows.into_iter().map(|(r, _)| r).collect(),
        converged,
    }
}

pub fn force_rows(cfg: &RunConfig) -> Result<Rows<ForceRow>, CasimirError> {
    let mat = cfg.material();
    let s = cfg.settings();
    let rows = run_parallel(cfg, |gap_um| {
        let geom = cfg.geometry(gap_um);
        let (sum, integral) = rayon::join(
            || force_sum(&mat, &geom, cfg.temperature_k, &s),
            || force_integral(&mat, &geom, &s),
        );
        let (sum, integral) = (sum?, integral?);
        Ok((
            ForceRow {
                gap_um,
                force_pn_sum: sum.force / PICONEWTON,
                force_pn_integral: integral.force / PICONEWTON,
                n_terms: sum.truncation_index,
                abs_err_pn: (sum.abs_error + integral.abs_error) / PICONEWTON,
            },
            sum.converged && integral.converged,
        ))
    })?;
    Ok(collect(rows))
}

pub fn correction_rows(cfg: &RunConfig) -> Result<Rows<CorrectionRow>, CasimirError> {
    let mat = cfg.material();
    let s = cfg.settings();
    let rows = run_parallel(cfg, |gap_um| {
        let geom = cfg.geometry(gap_um);
        let r = correction_report(&mat, &geom, cfg.temperature_k, &s)?;
        Ok((
            CorrectionRow {
                gap_um,
                delta_numeric_pn: r.delta_numeric / PICONEWTON,
                delta_closed_pn: r.delta_closed.map(|v| v / PICONEWTON),
                delta_expansion_pn: r.delta_expansion.map(|v| v / PICONEWTON),
                alpha: r.alpha,
                relative_to_force: r.relative_to_force,
            },
            r.converged && !r.imprecise,
        ))
    })?;
    Ok(collect(rows))
}

fn emit<T: Table>(
    result: Result<Rows<T>, CasimirError>,
    cfg: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> ExitCode {
    match result {
        Ok(rows) => {
            if let Err(e) = write_rows(&rows.rows, cfg.format, out) {
                let _ = writeln!(err, "error: writing output: {e}");
                return ExitCode::ConfigError;
            }
            if rows.converged {
                ExitCode::Success
            } else {
                let _ = writeln!(err, "warning: at least one row did not reach the requested tolerance");
                ExitCode::ConvergenceWarning
            }
        }
        Err(e @ CasimirError::Convergence { .. }) => {
            let _ = writeln!(err, "warning: {e}");
            ExitCode::ConvergenceWarning
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitCode::ConfigError
        }
    }
}

/// Force at each gap, as a Matsubara sum and as the zero-temperature integral.
pub fn cmd_force(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode {
    emit(force_rows(cfg), cfg, out, err)
}

/// Temperature correction at each gap by every applicable route.
pub fn cmd_correction(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode {
    emit(correction_rows(cfg), cfg, out, err)
}

pub fn print_report(report: &SuiteReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{:<5} {:<6} {:<26} {:<30} description", "check", "result", "actual", "expected")?;
    for c in &report.checks {
        let actual = if c.unit.is_empty() {
            format!("{:.10e}", c.actual)
        } else {
            format!("{:.10e} {}", c.actual, c.unit)
        };
        writeln!(
            out,
            "{:<5} {:<6} {:<26} {:<30} {}",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            actual,
            c.comparison.to_string(),
            c.description
        )?;
    }
    writeln!(out)?;
    for t in &report.timings {
        writeln!(
            out,
            "timing {:<4} {:<6} budget {:>6.1} s",
            t.id,
            if t.passed { "PASS" } else { "FAIL" },
            t.budget_s
        )?;
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count()
        + report.timings.iter().filter(|t| !t.passed).count();
    writeln!(
        out,
        "\n{} of {} checks passed",
        report.checks.len() + report.timings.len() - failed,
        report.checks.len() + report.timings.len()
    )
}

/// Runs the reproduction suite; exit 0 iff every check passes.
pub fn cmd_validate(opts: &SuiteOptions, out: &mut dyn Write) -> ExitCode {
    let report = run_suite(opts);
    let _ = print_report(&report, out);
    if report.all_passed() {
        ExitCode::Success
    } else {
        ExitCode::ValidationFailure
    }
}
