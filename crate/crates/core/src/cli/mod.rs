//! Command-line front end: argument parsing, a validated [`RunConfig`] and
//! dispatch to the report builders.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error,
//! 3 numerical failure.

pub mod format;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::feasibility::Tolerances;

pub use report::{Report, SCHEMA, Z_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BodyArg {
    Statespace,
    Polytope,
    Cone,
}

#[derive(Parser, Debug)]
#[command(name = "qgeom", version, about = "Intrinsic volumes of the qudit state space and related bodies")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DimArg {
    /// Hilbert-space dimension.
    #[arg(long)]
    d: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form volumes and intrinsic volumes of the state space.
    Statespace(DimArg),
    /// Closed-form volumes, faces and intrinsic volumes of the complementarity polytope.
    Polytope(DimArg),
    /// Compare the polytope's intrinsic volumes with the state space's.
    Compare(DimArg),
    /// Test which spherical cones cannot be inscribed in the state space.
    Exclude {
        #[command(flatten)]
        dim: DimArg,
        /// Only report the cone of dimension D - k.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check a prescribed overlap matrix against the trivial requirements.
    Feasible {
        /// JSON ({"d": .., "M": [[..]]}) or headerless CSV (by extension).
        path: PathBuf,
        /// Hilbert-space dimension; required for CSV input.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tol_psd: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol_rank: f64,
    },
    /// Monte-Carlo estimate of the Steiner polynomial.
    Montecarlo {
        #[arg(long, value_enum, default_value = "statespace")]
        body: BodyArg,
        #[command(flatten)]
        dim: DimArg,
        /// Cone codimension k for `--body cone`.
        #[arg(long)]
        k: Option<usize>,
        /// Samples per epsilon.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, env = "QGEOM_SEED", default_value_t = 0)]
        seed: u64,
        /// Smallest epsilon (absolute); default 0.02 R.
        #[arg(long)]
        eps_min: Option<f64>,
        /// Largest epsilon (absolute); default 0.5 R.
        #[arg(long)]
        eps_max: Option<f64>,
        #[arg(long, default_value_t = 12)]
        eps_points: usize,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    StateSpace,
    Polytope,
    Compare,
    Exclude,
    Feasible,
    MonteCarlo,
}

/// Fully validated options for one invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    /// Hilbert-space dimension; for `feasible` taken from the file when
    /// `d_override` is absent.
    pub d: usize,
    pub d_override: Option<usize>,
    pub k: Option<usize>,
    pub path: Option<PathBuf>,
    pub body: BodyArg,
    pub samples: u64,
    pub seed: u64,
    pub eps_min: Option<f64>,
    pub eps_max: Option<f64>,
    pub eps_points: usize,
    pub jobs: Option<usize>,
    pub tolerances: Tolerances,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn base(command: CommandKind, d: usize, format: Format, out: Option<PathBuf>) -> Self {
        RunConfig {
            command,
            d,
            d_override: None,
            k: None,
            path: None,
            body: BodyArg::Statespace,
            samples: 1_000_000,
            seed: 0,
            eps_min: None,
            eps_max: None,
            eps_points: 12,
            jobs: None,
            tolerances: Tolerances::default(),
            format,
            out,
        }
    }

    fn from_cli(cli: Cli) -> Result<Self> {
        let (format, out) = (cli.format, cli.out);
        let cfg = match cli.command {
            Command::Statespace(a) => Self::base(CommandKind::StateSpace, a.d, format, out),
            Command::Polytope(a) => Self::base(CommandKind::Polytope, a.d, format, out),
            Command::Compare(a) => Self::base(CommandKind::Compare, a.d, format, out),
            Command::Exclude { dim, k } => RunConfig {
                k,
                ..Self::base(CommandKind::Exclude, dim.d, format, out)
            },
            Command::Feasible { path, d, tol_psd, tol_rank } => RunConfig {
                d_override: d,
                path: Some(path),
                tolerances: Tolerances {
                    tol_psd,
                    tol_rank,
                    ..Tolerances::default()
                },
                ..Self::base(CommandKind::Feasible, d.unwrap_or(2), format, out)
            },
            Command::Montecarlo {
                body,
                dim,
                k,
                samples,
                seed,
                eps_min,
                eps_max,
                eps_points,
                jobs,
            } => RunConfig {
                body,
                k,
                samples,
                seed,
                eps_min,
                eps_max,
                eps_points,
                jobs,
                ..Self::base(CommandKind::MonteCarlo, dim.d, format, out)
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::Dimension(self.d, 2));
        }
        if self.command == CommandKind::MonteCarlo {
            if self.samples == 0 {
                return Err(Error::Input("--samples must be positive".into()));
            }
            if self.eps_points < 8 {
                return Err(Error::Input("--eps-points must be at least 8".into()));
            }
            if self.jobs == Some(0) {
                return Err(Error::Input("--jobs must be positive".into()));
            }
            for e in [self.eps_min, self.eps_max].into_iter().flatten() {
                if !(e > 0.0) || !e.is_finite() {
                    return Err(Error::Input(format!("epsilon bound {e} must be positive")));
                }
            }
            if let (Some(lo), Some(hi)) = (self.eps_min, self.eps_max) {
                if hi <= lo {
                    return Err(Error::Input("--eps-max must exceed --eps-min".into()));
                }
            }
            if self.k.is_some() && self.body != BodyArg::Cone {
                return Err(Error::Input("--k applies to --body cone only".into()));
            }
        }
        for t in [self.tolerances.tol_psd, self.tolerances.tol_rank] {
            if !(t >= 0.0) || !t.is_finite() {
                return Err(Error::Input(format!("tolerance {t} must be a nonnegative number")));
            }
        }
        Ok(())
    }
}

/// Builds the report for a validated configuration.
pub fn dispatch(cfg: &RunConfig) -> Result<Report> {
    match cfg.command {
        CommandKind::StateSpace => report::statespace_report(cfg),
        CommandKind::Polytope => report::polytope_report(cfg),
        CommandKind::Compare => report::compare_report(cfg),
        CommandKind::Exclude => report::exclude_report(cfg),
        CommandKind::Feasible => report::feasible_report(cfg),
        CommandKind::MonteCarlo => report::montecarlo_report(cfg),
    }
}

fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_)
        | Error::Dimension(..)
        | Error::Input(_)
        | Error::Io(_)
        | Error::Json(_)
        | Error::Csv(_) => EXIT_USAGE,
        Error::NoConvergence { .. } | Error::IterationCap { .. } | Error::IllConditioned(_) => {
            EXIT_NUMERIC
        }
    }
}

fn emit(cfg: &RunConfig, bytes: &[u8]) -> Result<()> {
    match &cfg.out {
        Some(p) => std::fs::write(p, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let cfg = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = dispatch(&cfg).and_then(|r| {
        let bytes = r.render(cfg.format)?;
        emit(&cfg, &bytes)?;
        Ok(r.exit_code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}
