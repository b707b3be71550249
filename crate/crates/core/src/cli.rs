//! The `toralsym` command line: `analyze`, `verify` and `orbits`.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::dynamics::TorusPoint;
use crate::error::Error;
use crate::reversibility::DEFAULT_REVERSOR_RADIUS;
use crate::report::{self, AnalyzeOptions, VerifyMode};
use crate::symmetry::{DEFAULT_SEARCH_BUDGET, DEFAULT_TORSION_RADIUS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "toralsym", version, about = "Symmetries, reversibility and orbits of toral automorphisms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symmetry,
    Reversor,
    PglReversor,
    Weak,
    Affine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: charpoly, invariants, symmetry group, reversibility.
    Analyze {
        /// Matrix file, or `-` for standard input.
        input: PathBuf,
        /// Include periodic-orbit counts up to this period.
        #[arg(long, value_name = "K")]
        orbits: Option<usize>,
        /// Also search for G with G M G^-1 = -M^-1.
        #[arg(long)]
        projective: bool,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_TORSION_RADIUS)]
        torsion_radius: u32,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_REVERSOR_RADIUS)]
        reversor_radius: u32,
        /// Analyze a matrix with det != +-1 (symmetry and weak reversibility only).
        #[arg(long)]
        allow_nonunimodular: bool,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Check a candidate (reversing) symmetry.
    Verify {
        input: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Rational translation for affine mode, e.g. 1/2,0.
        #[arg(long, allow_hyphen_values = true)]
        translation: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Periodic points, orbit counts and zeta coefficients.
    Orbits {
        input: PathBuf,
        #[arg(long, value_name = "K")]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_USAGE,
            Error::Invariant(_) => EXIT_INTERNAL,
            _ => EXIT_PRECONDITION,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure { code: EXIT_USAGE, message: format!("cannot read {}: {}", path.display(), e) })?;
    Ok(text)
}

fn emit<T: serde::Serialize>(format: Format, value: &T, human: impl FnOnce(&T) -> String) -> Result<String, Failure> {
    match format {
        Format::Human => Ok(human(value)),
        Format::Json => serde_json::to_string_pretty(value)
            .map(|s| s + "\n")
            .map_err(|e| Failure { code: EXIT_INTERNAL, message: e.to_string() }),
    }
}

/// Runs a parsed command and returns its standard output.
pub fn execute(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Analyze { input, orbits, projective, torsion_radius, reversor_radius, allow_nonunimodular, format } => {
            let m = report::parse_matrix(&read_input(input)?)?;
            let opts = AnalyzeOptions {
                torsion_radius: *torsion_radius,
                reversor_radius: *reversor_radius,
                orbits: *orbits,
                projective: *projective,
                allow_nonunimodular: *allow_nonunimodular,
                budget: DEFAULT_SEARCH_BUDGET,
            };
            let r = report::analyze(&m, &opts)?;
            emit(*format, &r, report::render_analysis)
        }
        Command::Verify { input, candidate, mode, translation, format } => {
            let m = report::parse_matrix(&read_input(input)?)?;
            let g = report::parse_matrix(&read_input(candidate)?)?;
            let t = translation.as_deref().map(str::parse::<TorusPoint>).transpose()?;
            let mode = match mode {
                Mode::Symmetry => VerifyMode::Symmetry,
                Mode::Reversor => VerifyMode::Reversor,
                Mode::PglReversor => VerifyMode::PglReversor,
                Mode::Weak => VerifyMode::Weak,
                Mode::Affine => VerifyMode::Affine,
            };
            if mode == VerifyMode::Affine && t.is_none() {
                return Err(Failure { code: EXIT_USAGE, message: "--mode affine needs --translation".into() });
            }
            let r = report::verify(&m, &g, mode, t.as_ref())?;
            emit(*format, &r, report::render_verify)
        }
        Command::Orbits { input, depth, format } => {
            if *depth == 0 {
                return Err(Failure { code: EXIT_USAGE, message: "--depth must be at least 1".into() });
            }
            let m = report::parse_matrix(&read_input(input)?)?;
            let r = report::orbits_command(&m, *depth)?;
            emit(*format, &r, report::render_orbits_command)
        }
    }
}

/// Parses `args` (program name first), runs, prints, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            eprintln!("toralsym: {}", f.message);
            f.code
        }
    }
}
