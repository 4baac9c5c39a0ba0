//! Command-line front end: reads fan files, prints reports and answers
//! element-order queries.
//!
//! Exit codes: 0 success, 1 invalid fan, 2 I/O or schema error, 3 element
//! parse error, 4 infinitely generated `K₀`.

pub mod corpus;
pub mod fanfile;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;
use toric_k0::exactlinalg::Order;
use toric_k0::ktheory::{element_order_with, k0_structure_with, ray_ring, K0Options, KTheoryError, Mode};
use toric_k0::ringpres::parse_element;
use toric_k0::simplicial::DEFAULT_SHELL_CAP;

use crate::fanfile::FanFile;
use crate::report::{build_report, check_primes, ReportOptions};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid fan: {}", .0.join("; "))]
    InvalidFan(Vec<String>),
    #[error("{message}\n{caret}")]
    Parse { message: String, caret: String },
    #[error("K0 is not finitely generated over Z; element orders are unavailable")]
    InfiniteStructure,
    #[error("{0}")]
    Compute(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidFan(_) | CliError::Compute(_) => 1,
            CliError::Io { .. } | CliError::Schema(_) | CliError::Usage(_) => 2,
            CliError::Parse { .. } => 3,
            CliError::InfiniteStructure => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Laurent,
    GroupRing,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Laurent => Mode::Laurent,
            ModeArg::GroupRing => Mode::GroupRing,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "toric-k0", version, about = "K0 of toric Deligne-Mumford stacks from stacky fans")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a fan and report its Gale dual, K0 group and simplicial checks.
    Report {
        path: PathBuf,
        /// Primes for the Cohen-Macaulay check, replacing the defaults.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        #[arg(long)]
        no_shellability: bool,
        #[arg(long, value_enum, default_value = "group-ring")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Largest facet count searched for a shelling.
        #[arg(long, default_value_t = DEFAULT_SHELL_CAP)]
        shell_cap: usize,
        /// Record per-stage wall-clock times.
        #[arg(long)]
        timings: bool,
    },
    /// Print the additive order of an element of K0, written in x1..xn.
    Order {
        path: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value = "group-ring")]
        mode: ModeArg,
    },
    /// List the bundled fans, or print one of them.
    Corpus { name: Option<String> },
}

pub fn read_fan_file(path: &Path) -> Result<FanFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    FanFile::parse(&text)
}

/// The order of `element` in `K₀`, as printed by the `order` command.
pub fn order_query(file: &FanFile, element: &str, mode: Mode) -> Result<Order, CliError> {
    let fan = file.to_fan()?;
    parse_element(element, &ray_ring(&fan))
        .map_err(|e| CliError::Parse { message: format!("error: {e}"), caret: e.caret(element) })?;
    let k = k0_structure_with(&fan, K0Options { mode, ..K0Options::default() }).map_err(|e| match e {
        KTheoryError::InvalidFan(m) => CliError::InvalidFan(m),
        e => CliError::Compute(e.to_string()),
    })?;
    match element_order_with(&k, element) {
        Ok(o) => Ok(o),
        Err(KTheoryError::InfiniteStructure) => Err(CliError::InfiniteStructure),
        Err(e) => Err(CliError::Compute(e.to_string())),
    }
}

pub fn format_order(o: &Order) -> String {
    match o {
        Order::Finite(n) => n.to_string(),
        Order::Infinite => "infinite".into(),
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Report { path, primes, no_shellability, mode, format, shell_cap, timings } => {
            if let Some(p) = &primes {
                check_primes(p).map_err(|p| CliError::Usage(format!("--primes: {p} is not prime")))?;
            }
            let file = read_fan_file(&path)?;
            let fan = file.to_fan()?;
            let opts = ReportOptions { primes, shellability: !no_shellability, mode: mode.into(), shell_cap, timings };
            let (report, valid) = build_report(&file, &fan, &opts);
            let body = match format {
                FormatArg::Json => report.to_json() + "\n",
                FormatArg::Text => report.to_text(),
            };
            let _ = out.write_all(body.as_bytes());
            if !valid {
                let _ = writeln!(err, "{}", CliError::InvalidFan(report.validation.messages.clone()));
                return Ok(1);
            }
            Ok(0)
        }
        Command::Order { path, element, mode } => {
            let file = read_fan_file(&path)?;
            let order = order_query(&file, &element, mode.into())?;
            let _ = writeln!(out, "{}", format_order(&order));
            Ok(0)
        }
        Command::Corpus { name: None } => {
            for n in corpus::names() {
                let _ = writeln!(out, "{n}");
            }
            Ok(0)
        }
        Command::Corpus { name: Some(name) } => match corpus::source(&name) {
            Some(src) => {
                let _ = out.write_all(src.as_bytes());
                Ok(0)
            }
            None => {
                let _ = writeln!(err, "no bundled fan named '{name}'");
                Ok(2)
            }
        },
    }
}
