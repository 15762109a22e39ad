use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand};

use casimir::cli::config::{parse_model, GapSpec};
use casimir::cli::{cmd_correction, cmd_force, cmd_validate, ExitCode, Format, Overrides, RunConfig};
use casimir::system::Model;
use casimir::validation::SuiteOptions;

#[derive(Parser)]
#[command(name = "casimir", version, about = "Finite-temperature Casimir force between a sphere and a plate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Force as a Matsubara sum and as the zero-temperature integral, in pN
    Force(RunArgs),
    /// Linear-in-temperature correction by every applicable route, in pN
    Correction(RunArgs),
    /// Run the reproduction checks
    Validate(ValidateArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Dielectric model: ideal, plasma or drude
    #[arg(long, value_parser = parse_model)]
    model: Option<Model>,
    /// Plasma frequency, rad/s
    #[arg(long = "omega-p")]
    omega_p: Option<f64>,
    /// Relaxation frequency, rad/s (drude only); `none` clears it
    #[arg(long = "omega-tau", value_parser = parse_optional_f64)]
    omega_tau: Option<MaybeF64>,
    /// Sphere radius, µm
    #[arg(long = "radius-um")]
    radius_um: Option<f64>,
    /// Sphere-plate separation, µm
    #[arg(long = "gap-um", conflicts_with = "gap_sweep")]
    gap_um: Option<f64>,
    /// Gap sweep in µm: start:stop:count[:log]
    #[arg(long = "gap-sweep", value_parser = GapSpec::parse_sweep)]
    gap_sweep: Option<GapSpec>,
    /// Temperature, K
    #[arg(long = "temperature-K")]
    temperature_k: Option<f64>,
    /// Relative tolerance
    #[arg(long = "rel-tol")]
    rel_tol: Option<f64>,
    /// Output format: csv or json
    #[arg(long)]
    format: Option<Format>,
    /// Output file (default: standard output)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Configuration file with key = value lines
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads for sweeps (default: number of processors)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Reference value for the ζ(3) identity check (suite self-test)
    #[arg(long = "zeta3-reference", hide = true)]
    zeta3_reference: Option<f64>,
}

/// A number or the literal `none`. Wrapped so clap does not read the nested
/// option as "flag with optional value".
#[derive(Clone, Copy)]
struct MaybeF64(Option<f64>);

fn parse_optional_f64(s: &str) -> Result<MaybeF64, String> {
    if s.eq_ignore_ascii_case("none") || s.is_empty() {
        Ok(MaybeF64(None))
    } else {
        s.parse().map(|v| MaybeF64(Some(v))).map_err(|_| format!("`{s}` is not a number"))
    }
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            model: self.model,
            omega_p: self.omega_p,
            omega_tau: self.omega_tau.map(|v| v.0),
            radius_um: self.radius_um,
            gap_um: self.gap_um,
            gap_sweep: self.gap_sweep,
            temperature_k: self.temperature_k,
            rel_tol: self.rel_tol,
            format: self.format,
            output: self.output.clone(),
            jobs: self.jobs,
        }
    }

    fn resolve(&self) -> Result<RunConfig, String> {
        let file = match &self.config {
            Some(path) => Overrides::from_file(path).map_err(|e| e.to_string())?,
            None => Overrides::default(),
        };
        RunConfig::resolve(self.overrides().over(file)).map_err(|e| e.to_string())
    }
}

fn run_with_output(
    args: &RunArgs,
    command: fn(&RunConfig, &mut dyn Write, &mut dyn Write) -> ExitCode,
) -> ExitCode {
    let cfg = match args.resolve() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::ConfigError;
        }
    };
    let mut stderr = io::stderr();
    match &cfg.output {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                let code = command(&cfg, &mut w, &mut stderr);
                if let Err(e) = w.flush() {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::ConfigError;
                }
                code
            }
            Err(e) => {
                eprintln!("error: invalid output: {}: {e}", path.display());
                ExitCode::ConfigError
            }
        },
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            command(&cfg, &mut lock, &mut stderr)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::ConfigError.code() } else { 0 };
            let _ = e.print();
            process::exit(code);
        }
    };
    let code = match &cli.command {
        Command::Force(args) => run_with_output(args, cmd_force),
        Command::Correction(args) => run_with_output(args, cmd_correction),
        Command::Validate(args) => {
            let opts = SuiteOptions {
                zeta3_reference: args.zeta3_reference.unwrap_or(casimir::ZETA3),
            };
            cmd_validate(&opts, &mut io::stdout().lock())
        }
    };
    process::exit(code.code());
}
