//! The `exotic` command line: one subcommand per library area, JSON on
//! stdout (DOT where asked), and the acceptance scenarios under `repro`.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

mod algebra;
mod output;
pub mod repro;
mod topology;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use output::stringify_numbers;
use output::Output;

/// Environment variable overriding the normal-form step budget.
pub const STEP_BUDGET_ENV: &str = "EXOTIC_STEP_BUDGET";

#[derive(Debug, Error)]
pub(crate) enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

macro_rules! domain_errors {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        })*
    };
}

domain_errors!(
    crate::polyring::PolyError,
    crate::grading::GradingError,
    crate::derivations::DerivationError,
    crate::constructions::ConstructionError,
    crate::dualgraph::GraphError,
    crate::fpgroups::GroupError,
    crate::smithhom::SmithError,
    serde_json::Error
);

pub(crate) type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "exotic",
    version,
    about = "Exact algebra and topology for exotic affine structures"
)]
struct Cli {
    /// Print elapsed time to stderr.
    #[arg(long, global = true)]
    verbose: bool,
    /// Read the primary input (graph, presentation, complex, derivation or
    /// polynomial) from a file, or `-` for stdin.
    #[arg(long, global = true, value_name = "PATH")]
    json_in: Option<PathBuf>,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,
    /// Emit DOT instead of JSON for commands that produce a graph.
    #[arg(long, global = true)]
    dot: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Polynomial arithmetic over Q.
    #[command(subcommand)]
    Poly(algebra::PolyCmd),
    /// Weight degrees, quasi-homogeneous parts and associated graded rings.
    #[command(subcommand)]
    Grade(algebra::GradeCmd),
    /// Locally nilpotent derivations.
    #[command(subcommand)]
    Lnd(algebra::LndCmd),
    /// Named hypersurface families.
    Family(algebra::FamilyArgs),
    /// Weighted dual graphs.
    #[command(subcommand)]
    Graph(topology::GraphCmd),
    /// Finitely presented groups.
    #[command(subcommand)]
    Group(topology::GroupCmd),
    /// Smith theory for cyclic actions on simplicial complexes.
    #[command(subcommand)]
    Smith(topology::SmithCmd),
    /// Run an acceptance scenario by name, or `all`.
    Repro(ReproArgs),
}

#[derive(Debug, Args)]
struct ReproArgs {
    /// Scenario name; `list` prints the available names.
    name: String,
}

/// Options shared by every handler.
pub(crate) struct Context {
    pub json_in: Option<PathBuf>,
    pub dot: bool,
    pub step_budget: Option<usize>,
}

impl Context {
    /// Contents of `file`, else of `--json-in`, else a usage error.
    pub fn primary_input(&self, file: Option<&Path>, what: &str) -> CliResult<String> {
        match (file, &self.json_in) {
            (Some(p), _) => read_path(p),
            (None, Some(p)) => read_path(p),
            (None, None) => Err(CliError::Usage(format!(
                "missing {what}: pass a file or --json-in"
            ))),
        }
    }

    pub fn budget(&self) -> usize {
        self.step_budget
            .unwrap_or(crate::polyring::DEFAULT_STEP_BUDGET)
    }
}

pub(crate) fn read_path(p: &Path) -> CliResult<String> {
    if p == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(p)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))
}

fn step_budget_from_env() -> CliResult<Option<usize>> {
    match std::env::var(STEP_BUDGET_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{STEP_BUDGET_ENV} must be a positive integer, got '{v}'"
            ))),
        },
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let start = Instant::now();
    let result = execute(&cli);
    if cli.verbose {
        let _ = writeln!(stderr, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    let (out, code) = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let text = out.render();
    match &cli.json_out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    code
}

/// Runs the process: real argv, real streams.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn execute(cli: &Cli) -> CliResult<(Output, i32)> {
    let ctx = Context {
        json_in: cli.json_in.clone(),
        dot: cli.dot,
        step_budget: step_budget_from_env()?,
    };
    let produces_graph = matches!(&cli.command, Command::Graph(g) if g.produces_graph());
    if ctx.dot && !produces_graph {
        return Err(CliError::Usage(
            "--dot applies only to graph commands that produce a graph".into(),
        ));
    }
    let ok = |o: Output| Ok((o, 0));
    match &cli.command {
        Command::Poly(c) => ok(algebra::poly(c, &ctx)?),
        Command::Grade(c) => ok(algebra::grade(c, &ctx)?),
        Command::Lnd(c) => ok(algebra::lnd(c, &ctx)?),
        Command::Family(a) => algebra::family(a, &ctx),
        Command::Graph(c) => ok(topology::graph(c, &ctx)?),
        Command::Group(c) => ok(topology::group(c, &ctx)?),
        Command::Smith(c) => ok(topology::smith(c, &ctx)?),
        Command::Repro(a) => repro_command(&a.name),
    }
}

fn repro_command(name: &str) -> CliResult<(Output, i32)> {
    if name == "list" {
        let names: Vec<&str> = repro::SCENARIOS.iter().map(|s| s.name).collect();
        return Ok((Output::json(&names)?, 0));
    }
    let reports = if name == "all" {
        repro::run_all()
    } else {
        vec![repro::run_scenario(name).map_err(|e| CliError::Usage(e.to_string()))?]
    };
    let code = if reports.iter().all(|r| r.passed()) {
        0
    } else {
        1
    };
    let out = if name == "all" {
        Output::json(&reports)?
    } else {
        Output::json(&reports[0])?
    };
    Ok((out, code))
}
