//! Command-line driver.
//!
//! Exit status: 0 on success, 1 when a counterexample or a contradiction is
//! found, 2 on usage, input or parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::conn::{explain, infer, ExplainError, DEFAULT_CAP};
use crate::dsl::parse;
use crate::lab::{replay, CheckReport, Scope, Suite};
use crate::report::{emit_reports, inference_json, inference_text, Format};
use crate::witness::Witness;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest set size checked exhaustively when no sample count is given.
pub const EXHAUSTIVE_LIMIT: usize = 3;

#[derive(Debug, Parser)]
#[command(name = "bmlab", version, about = "Connectivity inference and finite-set model checking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a diagram file and derive connectivity and truncation bounds.
    Infer {
        file: PathBuf,
        /// Largest connectivity the engine tracks.
        #[arg(long, default_value_t = DEFAULT_CAP, value_parser = clap::value_parser!(i64).range(0..=1_000_000))]
        cap: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Print the derivation of this map's bounds.
        #[arg(long, value_name = "MAP")]
        explain: Option<String>,
        /// Report elapsed time.
        #[arg(long)]
        timing: bool,
    },
    /// Check statements on finite sets.
    ModelCheck {
        /// One of the suite names, or `all`.
        suite: String,
        /// Largest set size; the default depends on the suite.
        #[arg(long)]
        max_size: Option<usize>,
        /// Seed for sampled runs.
        #[arg(long)]
        seed: Option<u64>,
        /// Draw this many cases instead of enumerating.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Report elapsed time.
        #[arg(long)]
        timing: bool,
    },
    /// Re-evaluate a witness, given as JSON or as a JSON report containing one.
    Replay { file: PathBuf },
}

/// Default largest set size for a suite.
pub fn default_max_size(suite: Suite) -> usize {
    match suite {
        Suite::Adjunction | Suite::LCartesian => 2,
        Suite::Squareford | Suite::TopFace | Suite::FiberJoin | Suite::CoverReduction => 4,
        _ => 3,
    }
}

/// The scope a suite runs with for the given flags: exhaustive up to
/// [`EXHAUSTIVE_LIMIT`] unless a sample count is given, sampled with seed 0
/// otherwise.
pub fn scope_for(suite: Suite, max_size: Option<usize>, seed: Option<u64>, sample: Option<usize>) -> Scope {
    let max_size = max_size.unwrap_or_else(|| default_max_size(suite));
    if sample.is_none() && max_size <= EXHAUSTIVE_LIMIT {
        Scope::Exhaustive { max_size }
    } else {
        Scope::Sampled { max_size, seed: seed.unwrap_or(0), samples: sample.unwrap_or_else(|| suite.default_samples()) }
    }
}

fn suite_names() -> String {
    Suite::ALL.map(Suite::id).join(", ") + ", all"
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ =
                if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let status = match cli.command {
        Command::Infer { file, cap, format, explain, timing } => {
            run_infer(&file, cap, format.into(), explain.as_deref(), timing, out, err)
        }
        Command::ModelCheck { suite, max_size, seed, sample, format, timing } => {
            run_model_check(&suite, max_size, seed, sample, format.into(), timing, out, err)
        }
        Command::Replay { file } => run_replay(&file, out, err),
    };
    let _ = out.flush();
    status
}

fn read_file(path: &Path, err: &mut dyn Write) -> Option<String> {
    match std::fs::read_to_string(path) {
        Ok(s) => Some(s),
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
            None
        }
    }
}

fn run_infer(
    path: &Path,
    cap: i64,
    format: Format,
    explain_map: Option<&str>,
    timing: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let Some(src) = read_file(path, err) else { return EXIT_USAGE };
    let file = path.display().to_string();
    let d = match parse(&file, &src) {
        Ok(d) => d,
        Err(errors) => {
            for e in errors {
                let _ = writeln!(err, "{e}");
            }
            return EXIT_USAGE;
        }
    };
    let start = Instant::now();
    let inf = infer(&d, cap);
    let elapsed = start.elapsed();
    let name = path.file_name().map_or(file.clone(), |n| n.to_string_lossy().into_owned());
    let explanation = match explain_map.map(|m| explain(&d, &inf, m)) {
        None => None,
        Some(Ok(text)) => Some(text),
        Some(Err(e @ ExplainError::NoBoundDerived { .. })) => Some(format!("{e}\n")),
        Some(Err(e @ ExplainError::UnknownMap(_))) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match format {
        Format::Json => {
            let mut j = inference_json(&name, &d, &inf, elapsed, timing);
            if let Some(text) = explanation {
                j["explanation"] = text.into();
            }
            let _ = writeln!(out, "{j}");
        }
        Format::Text => {
            let _ = out.write_all(inference_text(&name, &d, &inf, elapsed, timing).as_bytes());
            if let Some(text) = explanation {
                let _ = writeln!(out);
                let _ = out.write_all(text.as_bytes());
            }
        }
    }
    if inf.contradictions.is_empty() {
        EXIT_OK
    } else {
        EXIT_FOUND
    }
}

#[allow(clippy::too_many_arguments)]
fn run_model_check(
    suite: &str,
    max_size: Option<usize>,
    seed: Option<u64>,
    sample: Option<usize>,
    format: Format,
    timing: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else if let Some(s) = Suite::parse(suite) {
        vec![s]
    } else {
        let _ = writeln!(err, "error: unknown suite '{suite}'; expected one of {}", suite_names());
        return EXIT_USAGE;
    };
    let mut status = EXIT_OK;
    for s in suites {
        let scope = scope_for(s, max_size, seed, sample);
        let reports: Vec<CheckReport> = match s.run(&scope) {
            Ok(r) => r,
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", s.id());
                return EXIT_USAGE;
            }
        };
        if reports.iter().any(|r| !r.passed()) {
            status = EXIT_FOUND;
        }
        let _ = out.write_all(emit_reports(&reports, format, timing).as_bytes());
    }
    status
}

fn run_replay(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(src) = read_file(path, err) else { return EXIT_USAGE };
    let value: serde_json::Value = match serde_json::from_str(&src) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    };
    let body = if value.get("check").is_some() { value } else { value.get("witness").cloned().unwrap_or_default() };
    let witness: Witness = match serde_json::from_value(body) {
        Ok(w) => w,
        Err(e) => {
            let _ = writeln!(err, "error: {}: not a witness: {e}", path.display());
            return EXIT_USAGE;
        }
    };
    match replay(&witness) {
        Ok(v) => {
            let verdict = if v.is_counterexample() { "counterexample" } else { "not a counterexample" };
            let _ = writeln!(out, "{}: premise {}, conclusion {}: {verdict}", witness.check, v.premise, v.conclusion);
            if v.is_counterexample() {
                EXIT_FOUND
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
