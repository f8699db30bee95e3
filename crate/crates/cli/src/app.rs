//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use geographer_core::circle_bundle::{EulerTag, PairingRules};
use geographer_core::geography::{enumerate, BundleParams};
use geographer_core::verify::verify_grid;
use geographer_core::{realize, realize_null, Construction, Error, NullRealization};

use crate::document::{CertificateDocument, OpenDocument, VerifyDocument};
use crate::table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_OPEN: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

pub const GENUS_ENV: &str = "GEOGRAPHER_GENUS_DEFAULT";

#[derive(Debug, Parser)]
#[command(name = "geographer", version, about = "Certify symplectic 4-manifolds realizing (signature, b1, degeneracy) triples")]
pub struct Cli {
    /// Write the output to FILE instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Realize (sigma, b1, degeneracy), or (sigma, b1, nullity) with --null
    Realize(RealizeArgs),
    /// Certificate for an explicit construction
    Invariants(InvariantsArgs),
    /// Realize every admissible triple in a region
    Enumerate(EnumerateArgs),
    /// Check the bundle formulas on every (d, k, g, e) up to a genus
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct RealizeArgs {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    /// Read c as the nullity instead of the degeneracy
    #[arg(long)]
    pub null: bool,
    /// Fiber genus; must be at least max(k, 2)
    #[arg(long, env = GENUS_ENV)]
    pub genus: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("manifold").required(true).args(["bundle", "fibersum", "dolgachev"])))]
pub struct InvariantsArgs {
    /// Bundle manifold B(d,k,g;e)
    #[arg(long, num_args = 4, value_names = ["D", "K", "G", "E"])]
    pub bundle: Option<Vec<u32>>,
    /// Fiber sum E(n) # B(d,k,g;0)
    #[arg(long, num_args = 4, value_names = ["N", "D", "K", "G"])]
    pub fibersum: Option<Vec<u32>>,
    /// Fiber sum E(1)_{p,q} # B(d,k,g;0)
    #[arg(long, num_args = 5, value_names = ["P", "Q", "D", "K", "G"])]
    pub dolgachev: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub sigma_min: i64,
    #[arg(long)]
    pub b1_max: i64,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub grid_max: u32,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Corrupt one pairing entry; verification must then fail
    #[arg(long, hide = true)]
    pub inject_sign_flip: bool,
}

/// What a command produced: the exit code, the document, and diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self { code, stdout: String::new(), stderr }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Nothing is written anywhere; see [`main_with`] for that.
pub fn run_args<I, T>(args: I) -> (Option<PathBuf>, Outcome)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => {
            let out = cli.out.clone();
            (out, run(&cli.command))
        }
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                (None, Outcome::ok(text))
            } else {
                (None, Outcome::fail(code, text))
            }
        }
    }
}

/// Runs the process: parses, executes, writes stdout or `--out`, and
/// returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use std::io::Write;

    let (out, outcome) = run_args(args);
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
    }
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &outcome.stdout) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_IO;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return EXIT_IO;
            }
        }
    }
    outcome.code
}

pub fn run(command: &Command) -> Outcome {
    match command {
        Command::Realize(a) => cmd_realize(a),
        Command::Invariants(a) => cmd_invariants(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Consistency(_) | Error::Overflow | Error::Dimension => EXIT_VERIFY,
        _ => EXIT_INVALID,
    }
}

fn error_outcome(e: &Error) -> Outcome {
    Outcome::fail(exit_code(e), format!("error: {e}\n"))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn emit(docs: &[CertificateDocument], format: Format, single: bool) -> Outcome {
    if let Some(bad) = docs.iter().find(|d| !d.all_checks_passed()) {
        return Outcome::fail(EXIT_VERIFY, format!("error: identity check failed for {}\n", bad.recipe));
    }
    Outcome::ok(match (format, single) {
        (Format::Tsv, _) => table::render(docs),
        (Format::Json, true) => to_json(&docs[0]),
        (Format::Json, false) => to_json(&docs),
    })
}

fn cmd_realize(args: &RealizeArgs) -> Outcome {
    let RealizeArgs { a, b, c, genus, .. } = *args;
    if args.null {
        return match realize_null(a, b, c, genus) {
            Ok(NullRealization::Realized(recipe)) => emit(&[CertificateDocument::from_recipe(&recipe)], args.format, true),
            Ok(NullRealization::Open(case)) => Outcome {
                code: EXIT_OPEN,
                stdout: to_json(&OpenDocument::from(&case)),
                stderr: format!("open: {}\n", case.note),
            },
            Err(e) => error_outcome(&e),
        };
    }
    match realize(a, b, c, genus) {
        Ok(recipe) => emit(&[CertificateDocument::from_recipe(&recipe)], args.format, true),
        Err(e) => error_outcome(&e),
    }
}

/// The construction named by `invariants`, validated only as far as the
/// argument shapes go; certification checks the rest.
pub fn invariants_construction(args: &InvariantsArgs) -> Result<Construction, Error> {
    if let Some(v) = &args.bundle {
        let e = u8::try_from(v[3])
            .ok()
            .and_then(|t| EulerTag::try_from(t).ok())
            .ok_or(Error::EulerClass(geographer_core::error::EulerClassError::UnknownTag))?;
        return Ok(Construction::Bundle {
            bundle: BundleParams { d: v[0], k: v[1], g: v[2], e },
        });
    }
    if let Some(v) = &args.fibersum {
        return Ok(Construction::FiberSum { n: v[0], d: v[1], k: v[2], g: v[3] });
    }
    match args.dolgachev.as_deref() {
        Some(&[p, q, d, k, g]) => Ok(Construction::DolgachevSum { p, q, d, k, g }),
        _ => Err(Error::Dimension),
    }
}

fn cmd_invariants(args: &InvariantsArgs) -> Outcome {
    let doc = invariants_construction(args).and_then(CertificateDocument::from_construction);
    match doc {
        Ok(doc) => emit(&[doc], args.format, true),
        Err(e) => error_outcome(&e),
    }
}

fn cmd_enumerate(args: &EnumerateArgs) -> Outcome {
    let mut docs = Vec::new();
    for recipe in enumerate(args.sigma_min, args.b1_max) {
        match recipe {
            Ok(r) => docs.push(CertificateDocument::from_recipe(&r)),
            // Every enumerated triple is admissible, so any failure is ours.
            Err(e) => return Outcome::fail(EXIT_VERIFY, format!("error: {e}\n")),
        }
    }
    emit(&docs, args.format, false)
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let rules = if args.inject_sign_flip {
        PairingRules::SignFlipTripwire
    } else {
        PairingRules::FiberIntegration
    };
    let report = verify_grid(args.grid_max, rules);
    let doc = VerifyDocument::new(args.grid_max, &report);
    let stdout = match args.format {
        ReportFormat::Json => to_json(&doc),
        ReportFormat::Text => {
            let mut s = format!("cases: {}\nfailures: {}\n", doc.cases, doc.failures.len());
            for f in &doc.failures {
                s.push_str(&format!("FAIL B({},{},{};{}): {}\n", f.d, f.k, f.g, f.e, f.reason));
            }
            s.push_str(if doc.passed { "result: pass\n" } else { "result: fail\n" });
            s
        }
    };
    Outcome {
        code: if doc.passed { EXIT_OK } else { EXIT_VERIFY },
        stdout,
        stderr: String::new(),
    }
}
