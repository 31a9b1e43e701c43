//! Randomized batch verification of the library's invariants.
//!
//! Every trial draws one distribution pair, one two-class problem and a
//! handful of star-form arguments from its own seeded stream, then feeds
//! them to six suites. Trials run in parallel; results are reduced in trial
//! order so the summary is identical across runs and thread counts.

use rand::Rng;
use rayon::prelude::*;

use crate::bounds::{bound_report, comparison_check, TwoClassProblem, COMPARISON_TOL, SANDWICH_TOL};
use crate::divergence::{chain_check, measure, Chain, ChainReport, DiscreteDistribution, CHAIN_TOL};
use crate::error::{Error, Result};
use crate::generator::{catalog_keys, csiszar_sum, generator};
use crate::numeric::OrderParameter;
use crate::sampling::{random_pair, random_problem, trial_rng, DEFAULT_SEED, PROBLEM_K_MAX};

/// Allowed `|C_f - M| / (1 + |M|)` between the Csiszár sum and the direct measure.
pub const CSISZAR_TOL: f64 = 1e-11;

/// Allowed `|f*(x) - f*(1-x)|`.
pub const STAR_TOL: f64 = 1e-12;

/// Star-form arguments drawn per trial, each in `[0.5, 0.99)`.
pub const STAR_POINTS_PER_TRIAL: usize = 4;

/// Order parameters used by the sandwich suite.
pub const STANDARD_S_GRID: [f64; 9] = [-1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0];

pub fn standard_s_grid() -> Vec<OrderParameter> {
    STANDARD_S_GRID
        .iter()
        .map(|&s| OrderParameter::new(s).expect("finite"))
        .collect()
}

/// Deliberate corruption used to exercise the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Scale Δ by 4 instead of ¼ at the bottom of the measure chain.
    ChainCoefficient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub trials: u64,
    pub seed: u64,
    pub n_max: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            trials: 10_000,
            seed: DEFAULT_SEED,
            n_max: 64,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub trial: u64,
    pub detail: String,
}

/// Pass/fail counts for one suite. `worst_slack` is the smallest signed
/// margin seen; a check fails when its margin is below `-tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteStats {
    pub name: &'static str,
    pub tolerance: f64,
    pub checks: u64,
    pub failures: u64,
    pub worst_slack: f64,
    pub first_failure: Option<Failure>,
}

impl SuiteStats {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            checks: 0,
            failures: 0,
            worst_slack: f64::INFINITY,
            first_failure: None,
        }
    }

    fn record(&mut self, trial: u64, slack: f64, detail: impl FnOnce() -> String) {
        self.checks += 1;
        // NaN margins count as failures
        if slack < self.worst_slack || slack.is_nan() {
            self.worst_slack = slack;
        }
        if !(slack >= -self.tolerance) {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(Failure {
                    trial,
                    detail: detail(),
                });
            }
        }
    }

    fn absorb(&mut self, other: SuiteStats) {
        self.checks += other.checks;
        self.failures += other.failures;
        if other.worst_slack < self.worst_slack || other.worst_slack.is_nan() {
            self.worst_slack = other.worst_slack;
        }
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifySummary {
    pub seed: u64,
    pub trials: u64,
    pub suites: Vec<SuiteStats>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteStats::passed)
    }
}

fn empty_suites() -> Vec<SuiteStats> {
    vec![
        SuiteStats::new("chain_measures", CHAIN_TOL),
        SuiteStats::new("chain_differences", CHAIN_TOL),
        SuiteStats::new("csiszar_equivalence", CSISZAR_TOL),
        SuiteStats::new("star_symmetry", STAR_TOL),
        SuiteStats::new("sandwich", SANDWICH_TOL),
        SuiteStats::new("comparisons", COMPARISON_TOL),
    ]
}

fn fmt_vec(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn pair_inputs(p: &DiscreteDistribution, q: &DiscreteDistribution) -> String {
    format!("p={} q={}", fmt_vec(p.probs()), fmt_vec(q.probs()))
}

fn problem_inputs(problem: &TwoClassProblem) -> String {
    let (p1, p2) = problem.priors();
    format!(
        "priors=[{p1}, {p2}] cond1={} cond2={}",
        fmt_vec(problem.cond1()),
        fmt_vec(problem.cond2())
    )
}

fn chain_detail(report: &ChainReport, inputs: &str) -> String {
    let links: Vec<String> = report
        .violations
        .iter()
        .map(|v| format!("{} > {} by {}", v.left, v.right, -v.slack))
        .collect();
    format!("{} ({inputs})", links.join("; "))
}

fn run_trial(opts: &VerifyOptions, index: u64, s_grid: &[OrderParameter]) -> Vec<SuiteStats> {
    let mut rng = trial_rng(opts.seed, index);
    let (p, q) = random_pair(&mut rng, opts.n_max);
    let problem = random_problem(&mut rng, PROBLEM_K_MAX);
    let star_points: Vec<f64> = (0..STAR_POINTS_PER_TRIAL)
        .map(|_| rng.random_range(0.5..0.99))
        .collect();

    let mut suites = empty_suites();

    let mut measures = chain_check(&p, &q, Chain::Measures).expect("same alphabet");
    if opts.fault == Some(Fault::ChainCoefficient) {
        measures = ChainReport::from_values(
            measures
                .values
                .into_iter()
                .enumerate()
                .map(|(i, (label, v))| (label, if i == 0 { 16.0 * v } else { v }))
                .collect(),
        );
    }
    let differences = chain_check(&p, &q, Chain::Differences).expect("same alphabet");
    for (suite, report) in suites.iter_mut().zip([&measures, &differences]) {
        suite.record(index, report.worst_relative_slack(), || {
            chain_detail(report, &pair_inputs(&p, &q))
        });
    }

    for key in catalog_keys() {
        let f = generator(key);
        let direct = measure(key, &p, &q).expect("same alphabet");
        let via_f = csiszar_sum(&f, &p, &q).expect("same alphabet");
        let slack = -(direct - via_f).abs() / (1.0 + direct.abs());
        suites[2].record(index, slack, || {
            format!("{key}: direct {direct} vs csiszar {via_f} ({})", pair_inputs(&p, &q))
        });
        for &x in &star_points {
            let (a, b) = (f.star(x).expect("interior"), f.star(1.0 - x).expect("interior"));
            suites[3].record(index, -(a - b).abs(), || format!("{key}: f*({x}) = {a}, f*(1-x) = {b}"));
        }
    }

    let report = bound_report(&problem, s_grid);
    for entry in &report.entries {
        if let Some(slack) = entry.slack(report.exact_pe) {
            suites[4].record(index, slack, || {
                format!(
                    "{} = {:?} vs exact {} ({})",
                    entry.name,
                    entry.value,
                    report.exact_pe,
                    problem_inputs(&problem)
                )
            });
        }
    }
    for cmp in comparison_check(&problem) {
        suites[5].record(index, cmp.slack, || {
            format!("{}: {} > {} ({})", cmp.id, cmp.lhs, cmp.rhs, problem_inputs(&problem))
        });
    }
    suites
}

/// Run all suites over `opts.trials` seeded trials.
pub fn run_verification(opts: &VerifyOptions) -> Result<VerifySummary> {
    if opts.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if opts.n_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "n-max must be at least 2, got {}",
            opts.n_max
        )));
    }
    let s_grid = standard_s_grid();
    let per_trial: Vec<Vec<SuiteStats>> = (0..opts.trials)
        .into_par_iter()
        .map(|i| run_trial(opts, i, &s_grid))
        .collect();
    let mut suites = empty_suites();
    for trial in per_trial {
        for (total, part) in suites.iter_mut().zip(trial) {
            total.absorb(part);
        }
    }
    Ok(VerifySummary {
        seed: opts.seed,
        trials: opts.trials,
        suites,
    })
}
