//! Acceptance gates. Each test prints one PASS/FAIL line with the
//! measured worst case and then asserts it.

#![allow(clippy::excessive_precision)]

use std::f64::consts::{LN_2, SQRT_2};
use std::process::Command;
use std::time::{Duration, Instant};

use divbound::bounds::{averaged_zeta, error_function, SANDWICH_TOL};
use divbound::divergence::CHAIN_TOL;
use divbound::generator::catalog_keys;
use divbound::numeric::BISECTION_TOL;
use divbound::sampling::{random_pair, random_problem, trial_rng, PROBLEM_K_MAX};
use divbound::verify::standard_s_grid;
use divbound::*;
use rand::Rng;

const SEED: u64 = 42;

fn verdict(criterion: u32, title: &str, pass: bool, detail: String) {
    println!(
        "criterion {criterion:>2} {:<4} {title}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} ({title}) failed: {detail}");
}

fn op(s: f64) -> OrderParameter {
    OrderParameter::new(s).unwrap()
}

fn pairs(seed: u64, count: u64) -> impl Iterator<Item = (DiscreteDistribution, DiscreteDistribution)> {
    (0..count).map(move |i| random_pair(&mut trial_rng(seed, i), 64))
}

fn problems(seed: u64, count: u64) -> impl Iterator<Item = TwoClassProblem> {
    (0..count).map(move |i| random_problem(&mut trial_rng(seed, i), PROBLEM_K_MAX))
}

fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn chain_gate(criterion: u32, title: &str, chain: Chain, budget: Option<Duration>) {
    let start = Instant::now();
    let mut worst = f64::INFINITY;
    let mut violations = 0;
    for (p, q) in pairs(SEED, 10_000) {
        let report = chain_check(&p, &q, chain).unwrap();
        worst = worst.min(report.worst_relative_slack());
        violations += report.violations.len();
    }
    let elapsed = start.elapsed();
    let in_time = budget.is_none_or(|b| elapsed < b);
    verdict(
        criterion,
        title,
        violations == 0 && worst >= -CHAIN_TOL && in_time,
        format!("10000 pairs, {violations} violations, worst relative slack {worst:e}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_01_measure_chain() {
    chain_gate(1, "measure chain", Chain::Measures, Some(Duration::from_secs(10)));
}

#[test]
fn criterion_02_difference_chain() {
    chain_gate(2, "difference chain", Chain::Differences, None);
}

#[test]
fn criterion_03_particular_cases() {
    let m = |id: MeasureId, p: &DiscreteDistribution, q: &DiscreteDistribution| measure(id, p, q).unwrap();
    let mut worst = 0.0f64;
    for (p, q) in pairs(3, 1000) {
        let psi = m(MeasureId::SymChiSq, &p, &q);
        let identities = [
            (zeta(op(2.0), &p, &q).unwrap(), 0.5 * psi),
            (zeta(op(-1.0), &p, &q).unwrap(), 0.5 * psi),
            (zeta(op(0.5), &p, &q).unwrap(), 8.0 * m(MeasureId::Hellinger, &p, &q)),
            (xi(op(-1.0), &p, &q).unwrap(), 0.25 * m(MeasureId::Triangular, &p, &q)),
            (xi(op(0.5), &p, &q).unwrap(), 4.0 * m(MeasureId::DDivergence, &p, &q)),
            (xi(op(2.0), &p, &q).unwrap(), psi / 16.0),
        ];
        for (a, b) in identities {
            worst = worst.max(rel_err(a, b));
        }
        for s in [-2.0, -1.0, -0.5, 0.25, 0.3, 3.0] {
            let a = zeta(op(s), &p, &q).unwrap();
            let b = zeta(op(1.0 - s), &p, &q).unwrap();
            worst = worst.max(rel_err(a, b));
        }
    }
    verdict(
        3,
        "particular cases",
        worst <= 1e-12,
        format!("1000 pairs, worst relative error {worst:e}"),
    );
}

#[test]
fn criterion_04_limit_continuity() {
    let mut worst = 0.0f64;
    for (p, q) in pairs(4, 1000) {
        let j = measure(MeasureId::JDivergence, &p, &q).unwrap();
        let i = measure(MeasureId::JensenShannon, &p, &q).unwrap();
        let t = measure(MeasureId::ArithGeo, &p, &q).unwrap();
        for eps in [1e-7, -1e-7] {
            let checks = [
                (zeta(op(1.0 + eps), &p, &q).unwrap(), j),
                (zeta(op(eps), &p, &q).unwrap(), j),
                (xi(op(eps), &p, &q).unwrap(), i),
                (xi(op(1.0 + eps), &p, &q).unwrap(), t),
            ];
            for (v, limit) in checks {
                worst = worst.max((v - limit).abs() / (1.0 + limit));
            }
        }
    }
    verdict(
        4,
        "limit continuity",
        worst <= 1e-8,
        format!("1000 pairs, worst |M_s - M| / (1 + M) = {worst:e}"),
    );
}

#[test]
fn criterion_05_csiszar_equivalence() {
    let keys = catalog_keys();
    let mut worst = 0.0f64;
    let mut worst_key = String::new();
    for (p, q) in pairs(5, 1000) {
        for &key in &keys {
            let direct = measure(key, &p, &q).unwrap();
            let via_f = csiszar_sum(&generator(key), &p, &q).unwrap();
            let err = (direct - via_f).abs() / (1.0 + direct.abs());
            if err > worst {
                worst = err;
                worst_key = key.to_string();
            }
        }
    }
    verdict(
        5,
        "csiszar equivalence",
        worst <= 1e-11,
        format!(
            "{} keys x 1000 pairs, worst scaled error {worst:e} ({worst_key})",
            keys.len()
        ),
    );
}

#[test]
fn criterion_06_star_laws() {
    // x_i + x_(1000-i) = 1 exactly on this grid
    let grid: Vec<f64> = (0..=1000).map(|i| (i + 12) as f64 / 1024.0).collect();
    let mut symmetry = 0.0f64;
    let mut centre = 0.0f64;
    let mut endpoint_failures = Vec::new();
    for key in catalog_keys() {
        let f = generator(key);
        for &x in &grid {
            symmetry = symmetry.max((f.star(x).unwrap() - f.star(1.0 - x).unwrap()).abs());
        }
        centre = centre.max(f.star(0.5).unwrap().abs());
        let f_inf = f.f_infinity();
        if f_inf.is_finite() {
            let gap = (f.star(1e-8).unwrap() - f_inf).abs();
            if gap > 1e-4 * (1.0 + f_inf.abs()) {
                endpoint_failures.push(format!("{key} (gap {gap:.3e}, allowed {:.3e})", 1e-4 * (1.0 + f_inf)));
            }
        }
    }
    let constants = [
        (DiffId::DDelta, (7.0 - 4.0 * SQRT_2) / 4.0),
        (DiffId::DI, 2.0 - SQRT_2 - 0.5 * LN_2),
        (DiffId::DH, (3.0 - 2.0 * SQRT_2) / 2.0),
        (DiffId::HDelta, 0.25),
        (DiffId::HI, (1.0 - LN_2) / 2.0),
        (DiffId::IDelta, (2.0 * LN_2 - 1.0) / 4.0),
    ];
    let mut constant_err = constants
        .iter()
        .map(|&(d, c)| (generator(MeasureId::Diff(d)).f_infinity() - c).abs())
        .fold(0.0f64, f64::max);
    constant_err = constant_err.max((generator(MeasureId::JensenShannon).f_infinity() - 0.5 * LN_2).abs());
    constant_err = constant_err.max((generator(MeasureId::xi(0.0).unwrap()).f_infinity() - 0.5 * LN_2).abs());

    verdict(
        6,
        "star transform laws",
        symmetry <= 1e-12 && centre <= 1e-14 && endpoint_failures.is_empty() && constant_err <= 1e-15,
        format!(
            "symmetry {symmetry:e}, f*(1/2) {centre:e}, constants {constant_err:e}, endpoint misses [{}]",
            endpoint_failures.join(", ")
        ),
    );
}

#[test]
fn criterion_07_convexity() {
    let mut worst = f64::INFINITY;
    let mut worst_key = String::new();
    for key in catalog_keys() {
        let f = generator(key);
        let m = f.convexity().unwrap().min(f.star_convexity().unwrap());
        if m < worst {
            worst = m;
            worst_key = key.to_string();
        }
    }
    verdict(
        7,
        "convexity probes",
        worst >= -1e-9,
        format!("minimum second difference {worst:e} ({worst_key})"),
    );
}

#[test]
fn criterion_08_sandwich() {
    let start = Instant::now();
    let grid = standard_s_grid();
    let mut worst = f64::INFINITY;
    let mut exceptions = 0;
    for problem in problems(8, 1000) {
        let report = bound_report(&problem, &grid);
        worst = worst.min(report.worst_slack());
        exceptions += report.violations(SANDWICH_TOL).len();
    }
    let elapsed = start.elapsed();
    verdict(
        8,
        "bound sandwich",
        exceptions == 0 && elapsed < Duration::from_secs(30),
        format!("1000 problems, {exceptions} exceptions, worst slack {worst:e}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_09_jensen_equality() {
    let cases = [
        (TwoClassProblem::new((0.5, 0.5), &[0.8, 0.2], &[0.2, 0.8]).unwrap(), 0.2),
        (
            TwoClassProblem::new((0.5, 0.5), &[0.54, 0.36, 0.06, 0.04], &[0.06, 0.04, 0.54, 0.36]).unwrap(),
            0.1,
        ),
    ];
    let mut worst = 0.0f64;
    for (problem, pe) in &cases {
        worst = worst.max((bayes_error(problem) - pe).abs());
        for family in [Family::Zeta, Family::Xi] {
            for s in [-1.0, -0.5, 0.0, 0.5, 1.0, 2.0] {
                worst = worst.max((lower_bound_family(problem, family, op(s)) - pe).abs());
            }
        }
    }
    let zeta0 = averaged_zeta(&cases[0].0, op(0.0));
    let zeta_err = (zeta0 - 0.8317766).abs();
    verdict(
        9,
        "jensen equality",
        worst <= 1e-10 && zeta_err <= 1e-7,
        format!("worst |lower - Pe| {worst:e}, averaged zeta_0 = {zeta0}"),
    );
}

#[test]
fn criterion_10_comparisons() {
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    let mut ids = Vec::new();
    for problem in problems(10, 1000) {
        for c in comparison_check(&problem) {
            worst = worst.min(c.slack);
            if !c.satisfied {
                violations += 1;
            }
            if !ids.contains(&c.id) {
                ids.push(c.id);
            }
        }
    }
    verdict(
        10,
        "upper bound orderings",
        violations == 0,
        format!(
            "{} orderings x 1000 problems, {violations} violations, worst slack {worst:e}",
            ids.len()
        ),
    );
}

#[test]
fn criterion_11_inversion_round_trip() {
    let mut rng = trial_rng(11, 0);
    let mut worst = 0.0f64;
    let (lo, hi) = bounds::LOWER_BRACKET;
    for family in [Family::Zeta, Family::Xi] {
        for s in [-1.0, 0.0, 0.5, 1.0, 2.0] {
            let g = |a: f64| error_function(family, op(s), a);
            for _ in 0..1000 {
                let a_star: f64 = rng.random_range(lo..hi);
                let v = g(a_star);
                let a = invert_decreasing(g, v, lo, hi, BISECTION_TOL).unwrap();
                worst = worst.max((g(a) - v).abs());
            }
        }
    }
    verdict(
        11,
        "inversion round trip",
        worst <= 1e-10,
        format!("10 functions x 1000 targets, worst |g(a) - v| {worst:e}"),
    );
}

#[test]
fn criterion_12_cli_determinism() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_divbound"))
            .args(["verify", "--seed", "42", "--trials", "10000", "--format", "machine"])
            .env_remove("DIVBOUND_SEED")
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout;
    verdict(
        12,
        "cli determinism",
        a.status.code() == Some(0) && b.status.code() == Some(0) && same && !a.stdout.is_empty(),
        format!(
            "exit codes {:?}/{:?}, {} bytes, identical: {same}",
            a.status.code(),
            b.status.code(),
            a.stdout.len()
        ),
    );
}
