//! The `divbound` command line: `measure`, `bounds`, `sweep` and `verify`.
//!
//! Exit codes: 0 success, 1 property violation, 2 usage or parse error,
//! 3 validation error.

pub mod files;
pub mod output;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bounds::{
    averaged_family, bound_report, lower_bound_family, upper_bound_xi, upper_bound_zeta, Family, SANDWICH_TOL,
};
use crate::divergence::{measure, MeasureId};
use crate::sampling::DEFAULT_SEED;
use crate::verify::{run_verification, Fault, VerifyOptions, VerifySummary};
use output::{num, opt_num, Format, Table};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("{path}: {source}")]
    Validation {
        path: String,
        #[source]
        source: crate::Error,
    },
}

impl CliError {
    pub(crate) fn parse(path: &Path, message: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.display().to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn validation(path: &Path, source: crate::Error) -> Self {
        CliError::Validation {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => EXIT_USAGE,
            CliError::Validation { .. } => EXIT_VALIDATION,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "divbound",
    version,
    about = "Symmetric divergence measures and Bayes error bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one measure between two distributions.
    Measure {
        /// Vector file for P.
        #[arg(long)]
        p: PathBuf,
        /// Vector file for Q.
        #[arg(long)]
        q: PathBuf,
        /// Delta, I, h, d, J, T, Psi, zeta:S, xi:S or D_<diff>.
        #[arg(long)]
        measure: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Exact Bayes error and every bound for a two-class problem.
    Bounds {
        #[arg(long)]
        problem: PathBuf,
        /// Order parameters: a:b:n or a comma list.
        #[arg(long, default_value = "-1:2:7", allow_hyphen_values = true)]
        s_grid: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Averaged divergence and bounds across a range of order parameters.
    Sweep {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Range a:b:n with a < b and n >= 2.
        #[arg(long, allow_hyphen_values = true)]
        s_grid: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Randomized check of every invariant suite.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, env = "DIVBOUND_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Zeta,
    Xi,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Zeta => Family::Zeta,
            FamilyArg::Xi => Family::Xi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    ChainCoefficient,
}

/// What a command produced: text for stdout and stderr plus an exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            ..Self::default()
        }
    }
}

pub fn cmd_measure(p: &Path, q: &Path, spec: &str, format: Format) -> Result<Outcome, CliError> {
    let id: MeasureId = spec.parse().map_err(|e: crate::Error| CliError::Usage(e.to_string()))?;
    let dp = files::load_vector(p)?;
    let dq = files::load_vector(q)?;
    let value = measure(id, &dp, &dq).map_err(|e| CliError::validation(q, e))?;
    let s = id.order().map_or_else(|| "-".to_string(), |s| num(s.value()));
    let mut table = Table::new(vec!["measure", "s", "value"]);
    table.push(vec![id.to_string(), s, num(value)]);
    Ok(Outcome::ok(table.render(format)))
}

pub fn cmd_bounds(problem: &Path, s_grid: &str, format: Format) -> Result<Outcome, CliError> {
    let grid = files::parse_s_grid(s_grid)?;
    let prob = files::load_problem(problem)?;
    let report = bound_report(&prob, &grid);
    let mut table = Table::new(vec!["name", "kind", "value", "applicable", "note"]);
    table.push(vec![
        "exact_pe".into(),
        "exact".into(),
        num(report.exact_pe),
        "true".into(),
        "-".into(),
    ]);
    for e in &report.entries {
        table.push(vec![
            e.name.clone(),
            e.kind.as_str().into(),
            opt_num(e.value),
            e.applicable().to_string(),
            e.note.clone().unwrap_or_else(|| "-".into()),
        ]);
    }
    let mut out = Outcome::ok(table.render(format));
    let violations = report.violations(SANDWICH_TOL);
    if !violations.is_empty() {
        out.code = EXIT_VIOLATION;
        for e in violations {
            out.stderr.push_str(&format!(
                "sandwich violation: {} = {} against exact {}\n",
                e.name,
                opt_num(e.value),
                num(report.exact_pe)
            ));
        }
    }
    Ok(out)
}

pub fn cmd_sweep(problem: &Path, family: Family, s_grid: &str, format: Format) -> Result<Outcome, CliError> {
    if !s_grid.contains(':') {
        return Err(CliError::Usage("sweep needs a range a:b:n".into()));
    }
    let grid = files::parse_s_grid(s_grid)?;
    let (first, last) = (grid[0].value(), grid[grid.len() - 1].value());
    if grid.len() < 2 || !(first < last) {
        return Err(CliError::Usage(format!(
            "sweep needs a < b and at least 2 steps, got '{s_grid}'"
        )));
    }
    let prob = files::load_problem(problem)?;
    let mut table = Table::new(vec!["s", "averaged", "lower", "upper"]);
    for s in grid {
        let upper = match family {
            Family::Zeta => upper_bound_zeta(&prob, s),
            Family::Xi => upper_bound_xi(&prob, s),
        };
        table.push(vec![
            num(s.value()),
            num(averaged_family(&prob, family, s)),
            num(lower_bound_family(&prob, family, s)),
            opt_num(upper.ok()),
        ]);
    }
    Ok(Outcome::ok(table.render(format)))
}

fn render_summary(summary: &VerifySummary, format: Format) -> String {
    let mut table = Table::new(vec!["suite", "checks", "failures", "worst_slack", "tolerance"]);
    for s in &summary.suites {
        table.push(vec![
            s.name.into(),
            s.checks.to_string(),
            s.failures.to_string(),
            num(s.worst_slack),
            num(s.tolerance),
        ]);
    }
    let body = table.render(format);
    match format {
        Format::Machine => body,
        Format::Table => {
            let verdict = if summary.all_passed() {
                "all suites passed"
            } else {
                "FAILED"
            };
            format!("seed {}, {} trials\n{body}{verdict}\n", summary.seed, summary.trials)
        }
    }
}

pub fn cmd_verify(opts: &VerifyOptions, format: Format) -> Result<Outcome, CliError> {
    let summary = run_verification(opts).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut out = Outcome::ok(render_summary(&summary, format));
    if !summary.all_passed() {
        out.code = EXIT_VIOLATION;
        for s in summary.suites.iter().filter(|s| !s.passed()) {
            if let Some(f) = &s.first_failure {
                out.stderr.push_str(&format!(
                    "{}: {} failures; first at seed {} trial {}: {}\n",
                    s.name, s.failures, summary.seed, f.trial, f.detail
                ));
            }
        }
    }
    Ok(out)
}

pub fn execute(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Measure { p, q, measure, format } => cmd_measure(&p, &q, &measure, format),
        Command::Bounds {
            problem,
            s_grid,
            format,
        } => cmd_bounds(&problem, &s_grid, format),
        Command::Sweep {
            problem,
            family,
            s_grid,
            format,
        } => cmd_sweep(&problem, family.into(), &s_grid, format),
        Command::Verify {
            trials,
            seed,
            n_max,
            format,
            inject_fault,
        } => {
            let opts = VerifyOptions {
                trials,
                seed,
                n_max,
                fault: inject_fault.map(|FaultArg::ChainCoefficient| Fault::ChainCoefficient),
            };
            cmd_verify(&opts, format)
        }
    }
}

/// Parse `args`, run the command, write its output and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stderr.write_all(out.stderr.as_bytes());
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
