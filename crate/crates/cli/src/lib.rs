//! The `ncwitt` command line.
//!
//! Exit codes: 0 success, 1 verification failure or an undetermined
//! verdict, 2 usage error, 3 word limit reached.

mod conjecture;
mod gen;
mod ghost;
mod verify;

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use ncwitt::wittpoly::{VariableOrder, DEFAULT_MAX_WORDS};
use ncwitt::LiftStrategy;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "ncwitt", version, about = "Witt vectors over free associative algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate the Witt sum and difference polynomials.
    GenWittPolys(GenArgs),
    /// Evaluate a formal sum of `V^n T(a)` terms and its ghost components.
    Ghost(GhostArgs),
    /// Check the Witt identities on random inputs.
    Verify(VerifyArgs),
    /// Run the linear-independence harness on sampled or explicit triples.
    CheckConjecture(ConjectureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct PrimeArgs {
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    /// Truncation level N: coordinates 0..=N are computed.
    #[arg(long = "levels", default_value_t = 2)]
    pub levels: usize,
    /// Accept p = 2, where `<-x> = -<x>` fails.
    #[arg(long)]
    pub allow_p2: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub prime: PrimeArgs,
    /// `interleaved` (X0,Y0,X1,...), `grouped` (X0,X1,...,Y0,...) or an
    /// explicit comma-separated list.
    #[arg(long, default_value = "interleaved")]
    pub order: VariableOrder,
    #[arg(long, default_value = "necklace")]
    pub lift: LiftStrategy,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub guard: GuardArgs,
}

#[derive(Debug, Args)]
pub struct GhostArgs {
    #[command(flatten)]
    pub prime: PrimeArgs,
    /// Variables, comma-separated. Defaults to those in the expression.
    #[arg(long)]
    pub vars: Option<String>,
    /// For example `T(X+Y) + T(-X) + T(-Y) + V^1 T(Z)`.
    pub expr: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub prime: PrimeArgs,
    #[arg(long, default_value_t = 50)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Degree bound of the random inputs.
    #[arg(long, default_value_t = 2)]
    pub max_degree: usize,
    #[command(flatten)]
    pub guard: GuardArgs,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    /// Highest level tested.
    #[arg(long = "levels", default_value_t = 2)]
    pub levels: usize,
    /// Alphabet, comma-separated. Explicit instances default to the
    /// variables they mention.
    #[arg(long)]
    pub vars: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Redraws per sample before it is skipped.
    #[arg(long, default_value_t = 100)]
    pub max_attempts: usize,
    /// One explicit instance, polynomials separated by `;`.
    #[arg(long, conflicts_with = "input")]
    pub polys: Option<String>,
    /// File of explicit instances, one `;`-separated list per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Add wall-clock `millis` to each record (breaks byte reproducibility).
    #[arg(long)]
    pub timings: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub guard: GuardArgs,
}

#[derive(Debug, Args)]
pub struct GuardArgs {
    /// Largest intermediate polynomial, in words; 0 disables the guard.
    #[arg(long, env = "NCWITT_MAX_WORDS", default_value_t = DEFAULT_MAX_WORDS)]
    pub max_words: usize,
}

impl GuardArgs {
    pub fn limit(&self) -> Option<usize> {
        (self.max_words > 0).then_some(self.max_words)
    }
}

/// A command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: io::Error) -> Self {
        Failure::failed(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<ncwitt::Error> for Failure {
    fn from(e: ncwitt::Error) -> Self {
        if matches!(e, ncwitt::Error::PrimeTwoRefused) {
            return Failure::usage("p = 2 is refused: the Teichmüller identities used here require p != 2 (pass --allow-p2 to proceed)");
        }
        let code = if e.is_resource_limit() { EXIT_RESOURCE } else { EXIT_USAGE };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::failed(e.to_string())
    }
}

pub type CmdResult = Result<u8, Failure>;

/// Where a command's main output goes.
pub(crate) enum Sink<'a> {
    Stream(&'a mut dyn Write),
    File(PathBuf, io::BufWriter<fs::File>),
}

impl<'a> Sink<'a> {
    pub(crate) fn open(path: Option<&Path>, stdout: &'a mut dyn Write) -> Result<Self, Failure> {
        match path {
            None => Ok(Sink::Stream(stdout)),
            Some(p) => {
                let f = fs::File::create(p).map_err(|e| Failure::io(p, e))?;
                Ok(Sink::File(p.to_path_buf(), io::BufWriter::new(f)))
            }
        }
    }

    pub(crate) fn write_str(&mut self, s: &str) -> Result<(), Failure> {
        let r = match self {
            Sink::Stream(w) => w.write_all(s.as_bytes()),
            Sink::File(_, w) => w.write_all(s.as_bytes()),
        };
        r.map_err(|e| self.fail(e))
    }

    pub(crate) fn finish(mut self) -> Result<(), Failure> {
        let r = match &mut self {
            Sink::Stream(w) => w.flush(),
            Sink::File(_, w) => w.flush(),
        };
        r.map_err(|e| self.fail(e))
    }

    fn fail(&self, e: io::Error) -> Failure {
        match self {
            Sink::Stream(_) => e.into(),
            Sink::File(p, _) => Failure::io(p, e),
        }
    }
}

pub(crate) fn split_names(list: &str) -> Vec<String> {
    list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match &cli.command {
        Command::GenWittPolys(a) => gen::run(a, out, err),
        Command::Ghost(a) => ghost::run(a, out),
        Command::Verify(a) => verify::run(a, out, err),
        Command::CheckConjecture(a) => conjecture::run(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.code
        }
    }
}
