//! Batch front end for `semiinv`: reads JSON matrix documents, runs one
//! decision procedure or certification, and prints a deterministic report.
//!
//! Exit codes: 0 success, 2 input error, 3 precondition violation,
//! 4 certification failure.

pub mod commands;
pub mod input;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use input::{parse_document, InputDocument};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable, malformed or mis-shaped input.
    Input(String),
    /// Valid input outside an operation's domain.
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }

    pub fn reason(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Precondition(m) => m,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Precondition(_) => "precondition",
        }
    }
}

impl From<semiinv::Error> for CliError {
    fn from(e: semiinv::Error) -> Self {
        use semiinv::Error as E;
        match e {
            E::NotSquare { .. }
            | E::ShapeMismatch(_)
            | E::IndexOutOfRange { .. }
            | E::IndicesNotIncreasing(_) => CliError::Input(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[default]
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "semiinv",
    version,
    about = "Exact semi-invariant, separation and dimension checks"
)]
pub struct Cli {
    /// Seed for randomized certification.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of certification trials.
    #[arg(long, global = true, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Structured)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generating invariants of a tuple, or maximal minors of a left matrix.
    Invariants { file: PathBuf },
    /// Whether some generating invariant separates the two sides of a pair.
    Separate { file: PathBuf },
    /// Stability and a triangularizer when one exists.
    Stability { file: PathBuf },
    /// Nullcone membership (with component flags for tuples).
    Nullcone { file: PathBuf },
    /// The map Φ on an upper-triangular pair.
    Phi { file: PathBuf },
    /// Component flags of a pair in the separating variety.
    Classify { file: PathBuf },
    /// Graph-closure membership.
    Graph { file: PathBuf },
    /// Witness curve for a left pair with l = 2 or 3.
    Curve { file: PathBuf },
    /// Jacobian-rank certification of the builtin dimension claims.
    Certify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: Option<usize>,
        /// Comma-separated claim keys; all claims when omitted.
        #[arg(long, value_delimiter = ',')]
        claims: Vec<String>,
    },
    /// Symbolic identity checks.
    Identities,
    /// Generator counts, invariant dimensions and separating-set lower bounds.
    Counts {
        /// Comma-separated values of n; 2..=6 when omitted.
        #[arg(long, value_delimiter = ',')]
        n: Vec<u64>,
        #[arg(long)]
        l: Option<u64>,
    },
}

/// What a run prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_input(path: &PathBuf) -> Result<(InputDocument, String), CliError> {
    let bytes =
        std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Input("input is not UTF-8".into()))?;
    Ok((parse_document(&text)?, sha256_hex(&bytes)))
}

fn command_echo(cli: &Cli) -> String {
    let mut s = match &cli.command {
        Command::Invariants { file } => format!("invariants {}", file.display()),
        Command::Separate { file } => format!("separate {}", file.display()),
        Command::Stability { file } => format!("stability {}", file.display()),
        Command::Nullcone { file } => format!("nullcone {}", file.display()),
        Command::Phi { file } => format!("phi {}", file.display()),
        Command::Classify { file } => format!("classify {}", file.display()),
        Command::Graph { file } => format!("graph {}", file.display()),
        Command::Curve { file } => format!("curve {}", file.display()),
        Command::Certify { n, l, claims } => {
            let mut s = format!("certify --n {n}");
            if let Some(l) = l {
                let _ = write!(s, " --l {l}");
            }
            if !claims.is_empty() {
                let _ = write!(s, " --claims {}", claims.join(","));
            }
            let _ = write!(s, " --trials {} --seed {}", cli.trials, cli.seed);
            s
        }
        Command::Identities => "identities".into(),
        Command::Counts { n, l } => {
            let mut s = "counts".to_string();
            if !n.is_empty() {
                let ns: Vec<String> = n.iter().map(u64::to_string).collect();
                let _ = write!(s, " --n {}", ns.join(","));
            }
            if let Some(l) = l {
                let _ = write!(s, " --l {l}");
            }
            s
        }
    };
    if cli.format == Format::Text {
        s.push_str(" --format text");
    }
    s
}

/// Result payload plus whether it signals a certification failure.
pub struct Payload {
    pub result: Value,
    pub failed: bool,
}

impl Payload {
    fn ok(result: Value) -> Self {
        Self {
            result,
            failed: false,
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Payload, Option<String>), CliError> {
    let with_file = |file: &PathBuf, f: fn(&InputDocument) -> Result<Value, CliError>| {
        let (doc, digest) = read_input(file)?;
        Ok((Payload::ok(f(&doc)?), Some(digest)))
    };
    match &cli.command {
        Command::Invariants { file } => with_file(file, commands::invariants),
        Command::Separate { file } => with_file(file, commands::separate),
        Command::Stability { file } => with_file(file, commands::stability),
        Command::Nullcone { file } => with_file(file, commands::nullcone),
        Command::Phi { file } => with_file(file, commands::phi),
        Command::Classify { file } => with_file(file, commands::classify),
        Command::Graph { file } => with_file(file, commands::graph),
        Command::Curve { file } => with_file(file, commands::curve),
        Command::Certify { n, l, claims } => Ok((
            commands::certify(*n, *l, claims, cli.trials, cli.seed)?,
            None,
        )),
        Command::Identities => Ok((commands::identities(), None)),
        Command::Counts { n, l } => Ok((Payload::ok(commands::counts(n, *l)?), None)),
    }
}

/// Flattens a JSON value into `path: value` lines.
fn render_text(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                render_text(&p, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                render_text(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{prefix}: {s}");
        }
        other => {
            let _ = writeln!(out, "{prefix}: {other}");
        }
    }
}

fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            render_text("", report, &mut s);
            s
        }
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let echo = command_echo(cli);
    match dispatch(cli) {
        Ok((payload, digest)) => {
            let digest = digest.unwrap_or_else(|| sha256_hex(echo.as_bytes()));
            let report = json!({
                "command": echo,
                "input_digest": format!("sha256:{digest}"),
                "version": VERSION,
                "result": payload.result,
            });
            Outcome {
                stdout: render(&report, cli.format),
                stderr: if payload.failed {
                    "certification failed\n".into()
                } else {
                    String::new()
                },
                code: if payload.failed { 4 } else { 0 },
            }
        }
        Err(e) => {
            let report = json!({
                "command": echo,
                "version": VERSION,
                "error": {"kind": e.kind(), "reason": e.reason()},
            });
            Outcome {
                stdout: render(&report, cli.format),
                stderr: format!("error: {}\n", e.reason()),
                code: e.exit_code(),
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}
