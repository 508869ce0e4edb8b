//! The `regflow` command line.
//!
//! Exit status: 0 on success, 1 on bad input or a failed check the user
//! asked for (e.g. a matrix that is not totally unimodular), 2 when an
//! internal invariant breaks (non-regular space, iteration bound exceeded,
//! oracle disagreement).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::io::{load_instance, serialize_trace, LoadedInstance};
use crate::linalg::{format_rational, parse_rational};
use crate::solver::{
    lp_reference_solve, max_flow, max_flow_observed, shortest_augmenting_path, MaxFlowOutcome,
    OracleKind, ReferenceOptimum,
};
use crate::space::{SpaceMode, TuVerdict, DEFAULT_TU_SIZE_LIMIT};

#[derive(Debug, Parser)]
#[command(name = "regflow", version, about = "Max-flow on regular spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Kernel,
    Rowspace,
}

impl From<ModeArg> for SpaceMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Kernel => SpaceMode::Kernel,
            ModeArg::Rowspace => SpaceMode::Rowspace,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleArg {
    Generic,
    Graphic,
    Cographic,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve by shortest augmenting paths.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "generic")]
        oracle: OracleArg,
        /// Write the augmentation trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Space built from a DIMACS digraph.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Optimum from the exact LP reference solver.
    Reference {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Check total unimodularity of the generator by exhaustive minors.
    VerifyTu {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TU_SIZE_LIMIT)]
        max_size: usize,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// List the canonical circuits (primitive vectors up to sign).
    Circuits {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Conformal decomposition of an integral member of the space.
    Decompose {
        file: PathBuf,
        /// Whitespace- or comma-separated integer entries.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Check that the generic and graph-specialized oracles agree.
    CompareOracles {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
}

/// Runs the CLI on `argv` (including the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the exit status.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Io(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
        Err(Failure::Solver(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_invariant_violation() {
                2
            } else {
                1
            }
        }
        Err(Failure::Disagreement(message)) => {
            let _ = writeln!(err, "invariant violated: {message}");
            2
        }
    }
}

enum Failure {
    Io(String),
    Solver(Error),
    Disagreement(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn load(path: &Path, mode: Option<ModeArg>) -> Result<LoadedInstance, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(load_instance(&text, mode.map(Into::into))?)
}

fn oracle_for(loaded: &LoadedInstance, oracle: OracleArg) -> Result<OracleKind, Failure> {
    if oracle == OracleArg::Generic {
        return Ok(OracleKind::Generic);
    }
    let Some(net) = &loaded.network else {
        return Err(
            Error::OracleMismatch("graph oracles need a DIMACS digraph input".into()).into(),
        );
    };
    let net = Arc::new(net.clone());
    Ok(match oracle {
        OracleArg::Graphic => OracleKind::Graphic(net),
        _ => OracleKind::Cographic(net),
    })
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Solve {
            file,
            oracle,
            trace,
            mode,
        } => {
            let loaded = load(&file, mode)?;
            let oracle = oracle_for(&loaded, oracle)?;
            let inst = &loaded.instance;
            let outcome = max_flow(inst, &oracle)?;
            match outcome.objective() {
                Some(v) => writeln!(out, "objective {}", format_rational(v))?,
                None => writeln!(out, "objective unbounded")?,
            }
            writeln!(out, "return element {}", inst.r() + 1)?;
            writeln!(out, "augmentations {}", outcome.trace().steps.len())?;
            if let MaxFlowOutcome::Optimal { flow, .. } = &outcome {
                let values: Vec<String> = flow.values.iter().map(format_rational).collect();
                writeln!(out, "flow {}", values.join(" "))?;
            }
            if let Some(path) = trace {
                fs::write(&path, serialize_trace(outcome.trace()))
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(0)
        }
        Command::Reference { file, mode } => {
            let loaded = load(&file, mode)?;
            match lp_reference_solve(&loaded.instance) {
                ReferenceOptimum::Bounded(v) => writeln!(out, "objective {}", format_rational(&v))?,
                ReferenceOptimum::Unbounded => writeln!(out, "objective unbounded")?,
            }
            Ok(0)
        }
        Command::VerifyTu {
            file,
            max_size,
            mode,
        } => {
            let loaded = load(&file, mode)?;
            match loaded.instance.space().generator().verify_tu(max_size)? {
                TuVerdict::Unimodular => {
                    writeln!(out, "TU")?;
                    Ok(0)
                }
                TuVerdict::Violation(v) => {
                    writeln!(out, "NOT TU ({v})")?;
                    Ok(1)
                }
            }
        }
        Command::Circuits { file, mode } => {
            let loaded = load(&file, mode)?;
            for c in loaded.instance.space().circuits()? {
                writeln!(out, "{c}")?;
            }
            Ok(0)
        }
        Command::Decompose { file, vector, mode } => {
            let loaded = load(&file, mode)?;
            let mut x = Vec::new();
            for token in vector
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
            {
                x.push(
                    parse_rational(token)
                        .ok_or_else(|| Failure::Io(format!("bad vector entry {token:?}")))?,
                );
            }
            let decomposition = loaded.instance.space().conformal_decomposition(&x)?;
            for (p, k) in &decomposition.terms {
                writeln!(out, "{k} x {p}")?;
            }
            Ok(0)
        }
        Command::CompareOracles { file, mode } => {
            let loaded = load(&file, mode)?;
            let specialized = match loaded.instance.space().mode() {
                SpaceMode::Kernel => oracle_for(&loaded, OracleArg::Graphic)?,
                SpaceMode::Rowspace => oracle_for(&loaded, OracleArg::Cographic)?,
            };
            compare_oracles(&loaded, &specialized, out)
        }
    }
}

/// Drives the generic solver and queries the specialized oracle on the same
/// flow at every iteration; then runs both solvers to completion.
fn compare_oracles(
    loaded: &LoadedInstance,
    specialized: &OracleKind,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let inst = &loaded.instance;
    let mut rows = Vec::new();
    let mut mismatch: Option<String> = None;
    let generic = max_flow_observed(inst, &OracleKind::Generic, |f, iteration| {
        let a = shortest_augmenting_path(f, inst, &OracleKind::Generic)?.map(|p| p.len());
        let b = shortest_augmenting_path(f, inst, specialized)?.map(|p| p.len());
        if a != b && mismatch.is_none() {
            mismatch = Some(format!(
                "iteration {iteration}: generic {a:?}, {} {b:?}",
                specialized.name()
            ));
        }
        if let (Some(a), Some(b)) = (a, b) {
            rows.push((iteration, a, b));
        }
        Ok(())
    })?;
    let other = max_flow(inst, specialized)?;
    for (iteration, a, b) in rows {
        writeln!(
            out,
            "iter {iteration} generic {a} {} {b}",
            specialized.name()
        )?;
    }
    let show = |o: &MaxFlowOutcome| {
        o.objective()
            .map_or("unbounded".to_string(), format_rational)
    };
    writeln!(
        out,
        "objective generic {} {} {}",
        show(&generic),
        specialized.name(),
        show(&other)
    )?;
    if let Some(m) = mismatch {
        return Err(Failure::Disagreement(m));
    }
    if generic.objective() != other.objective() {
        return Err(Failure::Disagreement("final objectives differ".into()));
    }
    writeln!(out, "agree")?;
    Ok(0)
}
