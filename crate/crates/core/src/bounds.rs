//! Two-class Bayes problems on a finite outcome space: posteriors, the
//! exact Bayes error, posterior-averaged divergences and the lower and
//! upper bounds on the error that they certify.

use std::f64::consts::{LN_2, SQRT_2};
use std::fmt;

use crate::divergence::{cell, check_masses, sum_cells, DiffId, DiscreteDistribution, MeasureId, Support};
use crate::error::{Error, Result};
use crate::generator::{generator, GeneratingFunction};
use crate::numeric::{invert_decreasing, xlx, OrderParameter, Regime, BISECTION_TOL};

/// Largest accepted `|p1 + p2 - 1|`, also the equal-priors tolerance.
pub const PRIOR_TOL: f64 = 1e-12;

/// Slack allowed between a certified bound and the exact error.
pub const SANDWICH_TOL: f64 = 1e-10;

/// Search interval for inverting the pointwise error functions.
pub const LOWER_BRACKET: (f64, f64) = (1e-12, 0.5);

/// Slack allowed on the upper-bound orderings in [`comparison_check`].
pub const COMPARISON_TOL: f64 = 1e-12;

/// Priors plus the two class-conditional distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoClassProblem {
    priors: (f64, f64),
    cond1: Vec<f64>,
    cond2: Vec<f64>,
    label: Option<String>,
}

impl TwoClassProblem {
    /// Conditionals are validated in permissive mode and may have a single
    /// outcome.
    pub fn new(priors: (f64, f64), cond1: &[f64], cond2: &[f64]) -> Result<Self> {
        let (p1, p2) = priors;
        if !(p1.is_finite() && p2.is_finite() && p1 > 0.0 && p2 > 0.0) {
            return Err(Error::InvalidProblem(format!(
                "priors must be finite and positive, got ({p1}, {p2})"
            )));
        }
        if (p1 + p2 - 1.0).abs() > PRIOR_TOL {
            return Err(Error::InvalidProblem(format!("priors sum to {}, not 1", p1 + p2)));
        }
        if cond1.len() != cond2.len() {
            return Err(Error::AlphabetMismatch {
                left: cond1.len(),
                right: cond2.len(),
            });
        }
        for (class, cond) in [(1, cond1), (2, cond2)] {
            check_masses(cond, Support::Permissive, 1)
                .map_err(|e| Error::InvalidProblem(format!("conditional {class}: {e}")))?;
        }
        Ok(Self {
            priors,
            cond1: cond1.to_vec(),
            cond2: cond2.to_vec(),
            label: None,
        })
    }

    pub fn from_distributions(
        priors: (f64, f64),
        cond1: &DiscreteDistribution,
        cond2: &DiscreteDistribution,
    ) -> Result<Self> {
        Self::new(priors, cond1.probs(), cond2.probs())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn priors(&self) -> (f64, f64) {
        self.priors
    }

    pub fn cond1(&self) -> &[f64] {
        &self.cond1
    }

    pub fn cond2(&self) -> &[f64] {
        &self.cond2
    }

    pub fn outcomes(&self) -> usize {
        self.cond1.len()
    }

    pub fn has_equal_priors(&self) -> bool {
        (self.priors.0 - self.priors.1).abs() <= PRIOR_TOL
    }

    /// Joint masses `(p1 c1(x), p2 c2(x))` per outcome.
    fn joint(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (p1, p2) = self.priors;
        self.cond1.iter().zip(&self.cond2).map(move |(&a, &b)| (p1 * a, p2 * b))
    }
}

/// Marginal `p(x)` and the class posteriors at one outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PosteriorPoint {
    pub px: f64,
    /// `NaN` when `px == 0`.
    pub post1: f64,
    /// `NaN` when `px == 0`.
    pub post2: f64,
}

impl PosteriorPoint {
    /// Outcomes with zero marginal carry no posterior and are skipped by
    /// every expectation.
    pub fn is_null(&self) -> bool {
        self.px == 0.0
    }
}

pub fn posteriors(problem: &TwoClassProblem) -> Vec<PosteriorPoint> {
    problem
        .joint()
        .map(|(w1, w2)| {
            let px = w1 + w2;
            if px == 0.0 {
                PosteriorPoint {
                    px,
                    post1: f64::NAN,
                    post2: f64::NAN,
                }
            } else {
                PosteriorPoint {
                    px,
                    post1: w1 / px,
                    post2: w2 / px,
                }
            }
        })
        .collect()
}

/// `Σ_x min(p1 c1(x), p2 c2(x))`.
pub fn bayes_error(problem: &TwoClassProblem) -> f64 {
    problem.joint().map(|(w1, w2)| w1.min(w2)).sum()
}

/// Which one-parameter family a bound is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Zeta,
    Xi,
}

impl Family {
    pub fn measure(&self, s: OrderParameter) -> MeasureId {
        match self {
            Family::Zeta => MeasureId::ZetaFamily(s),
            Family::Xi => MeasureId::XiFamily(s),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Zeta => "zeta",
            Family::Xi => "xi",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zeta" => Ok(Family::Zeta),
            "xi" => Ok(Family::Xi),
            other => Err(Error::InvalidArgument(format!(
                "unknown family '{other}' (expected zeta or xi)"
            ))),
        }
    }
}

/// The pointwise divergence between posteriors `(a, 1-a)`; strictly
/// decreasing on `(0, ½]`.
pub fn error_function(family: Family, s: OrderParameter, a: f64) -> f64 {
    cell(family.measure(s), a, 1.0 - a)
}

/// `Σ_x p(x) · g(P(C1|x))` over outcomes with `p(x) > 0`.
pub fn averaged_family(problem: &TwoClassProblem, family: Family, s: OrderParameter) -> f64 {
    let id = family.measure(s);
    posteriors(problem)
        .iter()
        .filter(|pt| !pt.is_null())
        .map(|pt| pt.px * cell(id, pt.post1, pt.post2))
        .sum()
}

pub fn averaged_zeta(problem: &TwoClassProblem, s: OrderParameter) -> f64 {
    averaged_family(problem, Family::Zeta, s)
}

pub fn averaged_xi(problem: &TwoClassProblem, s: OrderParameter) -> f64 {
    averaged_family(problem, Family::Xi, s)
}

/// `Σ_x p(x) f*(P(C2|x))`.
pub fn average_f_divergence(problem: &TwoClassProblem, f: &GeneratingFunction) -> f64 {
    posteriors(problem)
        .iter()
        .filter(|pt| !pt.is_null())
        .map(|pt| pt.px * f.star_closed(pt.post2))
        .sum()
}

/// A lower bound together with an optional qualifier.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBound {
    pub value: f64,
    pub note: Option<&'static str>,
}

pub fn lower_bound_detail(problem: &TwoClassProblem, family: Family, s: OrderParameter) -> LowerBound {
    let target = averaged_family(problem, family, s);
    if !target.is_finite() {
        return LowerBound {
            value: 0.0,
            note: Some("vacuous"),
        };
    }
    let (lo, hi) = LOWER_BRACKET;
    let g = |a: f64| error_function(family, s, a);
    let value = invert_decreasing(g, target, lo, hi, BISECTION_TOL).expect("finite target, valid bracket");
    let note = (value == lo).then_some("near-vacuous");
    LowerBound { value, note }
}

/// The largest `a` in `[1e-12, ½]` with `g(a) >= ḡ`, where `g` is the
/// pointwise family divergence and `ḡ` its posterior average. Convexity
/// of `g` gives `g(P_e) <= ḡ`, so the result never exceeds the Bayes error.
pub fn lower_bound_family(problem: &TwoClassProblem, family: Family, s: OrderParameter) -> f64 {
    lower_bound_detail(problem, family, s).value
}

/// `¼ exp(-J/2)` with `J` between the conditionals; equal priors only.
pub fn kailath_bound(problem: &TwoClassProblem) -> Result<f64> {
    if !problem.has_equal_priors() {
        return Err(Error::unavailable("kailath", "requires equal priors"));
    }
    let j = sum_cells(MeasureId::JDivergence, problem.cond1(), problem.cond2());
    Ok(0.25 * (-0.5 * j).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToussaintBounds {
    /// `None` when the radicand is negative.
    pub general: Option<f64>,
    pub via_inversion: f64,
}

/// `½ - ½√(1 - 4 exp(-2H - J̄))` with the prior entropy `H` and the
/// averaged J, and the sharper bound from inverting
/// `J̄ >= (1 - 2a) ln((1-a)/a)`.
pub fn toussaint_bounds(problem: &TwoClassProblem) -> ToussaintBounds {
    let (p1, p2) = problem.priors();
    let entropy = -xlx(p1) - xlx(p2);
    let zero = OrderParameter::new(0.0).expect("finite");
    let j = averaged_zeta(problem, zero);
    let radicand = 1.0 - 4.0 * (-2.0 * entropy - j).exp();
    let general = (radicand >= 0.0).then(|| 0.5 - 0.5 * radicand.sqrt());
    ToussaintBounds {
        general,
        via_inversion: lower_bound_family(problem, Family::Zeta, zero),
    }
}

/// `½[1 + s(s-1) ζ̄_s]` for `0 < s < 1`.
pub fn upper_bound_zeta(problem: &TwoClassProblem, s: OrderParameter) -> Result<f64> {
    let v = s.value();
    if !(s.is_regular() && v > 0.0 && v < 1.0) {
        return Err(Error::unavailable(
            format!("zeta upper bound at s = {v}"),
            "requires 0 < s < 1",
        ));
    }
    let avg = average_f_divergence(problem, &generator(MeasureId::ZetaFamily(s)));
    Ok(0.5 * (1.0 + s.normalizer() * avg))
}

/// `½[1 - (2s(s-1)/(2^-s - 1)) ξ̄_s]` for `s < 1`, coefficient `2/ln 2` at `s = 0`.
pub fn upper_bound_xi(problem: &TwoClassProblem, s: OrderParameter) -> Result<f64> {
    let v = s.value();
    let coefficient = match s.regime() {
        Regime::AtZero => 2.0 / LN_2,
        Regime::Regular if v < 1.0 => 2.0 * s.normalizer() / (-v * LN_2).exp_m1(),
        _ => {
            return Err(Error::unavailable(
                format!("xi upper bound at s = {v}"),
                "requires s < 1",
            ))
        }
    };
    let avg = average_f_divergence(problem, &generator(MeasureId::XiFamily(s)));
    Ok(0.5 * (1.0 - coefficient * avg))
}

/// `½[1 - D̄ / f_∞]` for one of the six difference measures.
pub fn upper_bound_difference(problem: &TwoClassProblem, diff: DiffId) -> f64 {
    let f = generator(MeasureId::Diff(diff));
    0.5 * (1.0 - average_f_divergence(problem, &f) / f.f_infinity())
}

/// Upper bound from any catalog generator: `(f_∞ - C̄)/(2f_∞ - f(1))` when
/// `f_∞` is finite and `f*` symmetric, otherwise
/// `(f(0) p2 + f_∞ p1 - C̄)/(f_2 - f(1))` when `f_2` is finite. Clamped to `[0, ½]`.
pub fn generic_upper_bound(problem: &TwoClassProblem, f: &GeneratingFunction) -> Result<f64> {
    let c = f.limit_constants();
    let avg = average_f_divergence(problem, f);
    let value = if c.f_inf.is_finite() && f.is_star_symmetric() {
        (c.f_inf - avg) / (2.0 * c.f_inf - c.f1)
    } else if c.f2.is_finite() {
        let (p1, p2) = problem.priors();
        (c.f0 * p2 + c.f_inf * p1 - avg) / (c.f2 - c.f1)
    } else {
        return Err(Error::unavailable(
            format!("upper bound from the {} generator", f.id()),
            "f(0+) + lim f(u)/u is infinite",
        ));
    };
    Ok(value.clamp(0.0, 0.5))
}

// ---------------------------------------------------------------------------
// reports

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundEntry {
    pub name: String,
    pub kind: BoundKind,
    /// `None` for inapplicable entries.
    pub value: Option<f64>,
    pub note: Option<String>,
}

impl BoundEntry {
    fn from_result(name: String, kind: BoundKind, result: Result<f64>) -> Self {
        match result {
            Ok(v) => Self {
                name,
                kind,
                value: Some(v),
                note: None,
            },
            Err(Error::BoundUnavailable { reason, .. }) => Self {
                name,
                kind,
                value: None,
                note: Some(reason),
            },
            Err(e) => Self {
                name,
                kind,
                value: None,
                note: Some(e.to_string()),
            },
        }
    }

    pub fn applicable(&self) -> bool {
        self.value.is_some()
    }

    /// `P_e - value` for lower bounds, `value - P_e` for upper bounds.
    pub fn slack(&self, exact: f64) -> Option<f64> {
        self.value.map(|v| match self.kind {
            BoundKind::Lower => exact - v,
            BoundKind::Upper => v - exact,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub label: Option<String>,
    pub exact_pe: f64,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn best_lower(&self) -> Option<&BoundEntry> {
        self.best(BoundKind::Lower)
    }

    pub fn best_upper(&self) -> Option<&BoundEntry> {
        self.best(BoundKind::Upper)
    }

    fn best(&self, kind: BoundKind) -> Option<&BoundEntry> {
        // smallest slack, first entry wins ties
        self.entries
            .iter()
            .filter(|e| e.kind == kind)
            .filter_map(|e| e.slack(self.exact_pe).map(|s| (s, e)))
            .fold(None, |best: Option<(f64, &BoundEntry)>, (s, e)| match best {
                Some((bs, _)) if bs <= s => best,
                _ => Some((s, e)),
            })
            .map(|(_, e)| e)
    }

    /// Applicable entries on the wrong side of the exact error by more than `tol`.
    pub fn violations(&self, tol: f64) -> Vec<&BoundEntry> {
        self.entries
            .iter()
            .filter(|e| e.slack(self.exact_pe).is_some_and(|s| s < -tol))
            .collect()
    }

    pub fn worst_slack(&self) -> f64 {
        self.entries
            .iter()
            .filter_map(|e| e.slack(self.exact_pe))
            .fold(f64::INFINITY, f64::min)
    }
}

fn s_label(s: OrderParameter) -> String {
    format!("{}", s.value())
}

/// Every bound on one problem in a fixed order: Kailath, both Toussaint
/// bounds, the family lower bounds over `s_grid`, the family upper bounds
/// over `s_grid`, then the six difference-measure upper bounds.
pub fn bound_report(problem: &TwoClassProblem, s_grid: &[OrderParameter]) -> BoundReport {
    let mut entries = Vec::with_capacity(3 + 4 * s_grid.len() + DiffId::ALL.len());
    entries.push(BoundEntry::from_result(
        "kailath".into(),
        BoundKind::Lower,
        kailath_bound(problem),
    ));

    let toussaint = toussaint_bounds(problem);
    entries.push(BoundEntry {
        name: "toussaint_general".into(),
        kind: BoundKind::Lower,
        value: toussaint.general,
        note: toussaint.general.is_none().then(|| "negative radicand".to_string()),
    });
    entries.push(BoundEntry {
        name: "toussaint_inversion".into(),
        kind: BoundKind::Lower,
        value: Some(toussaint.via_inversion),
        note: None,
    });

    for &s in s_grid {
        for family in [Family::Zeta, Family::Xi] {
            let lb = lower_bound_detail(problem, family, s);
            entries.push(BoundEntry {
                name: format!("{family}_lower[s={}]", s_label(s)),
                kind: BoundKind::Lower,
                value: Some(lb.value),
                note: lb.note.map(str::to_string),
            });
        }
    }
    for &s in s_grid {
        entries.push(BoundEntry::from_result(
            format!("zeta_upper[s={}]", s_label(s)),
            BoundKind::Upper,
            upper_bound_zeta(problem, s),
        ));
        entries.push(BoundEntry::from_result(
            format!("xi_upper[s={}]", s_label(s)),
            BoundKind::Upper,
            upper_bound_xi(problem, s),
        ));
    }
    for diff in DiffId::ALL {
        entries.push(BoundEntry {
            name: format!("D_{}_upper", diff.symbol()),
            kind: BoundKind::Upper,
            value: Some(upper_bound_difference(problem, diff)),
            note: None,
        });
    }
    BoundReport {
        label: problem.label().map(str::to_string),
        exact_pe: bayes_error(problem),
        entries,
    }
}

/// One ordering `lhs <= rhs` between two upper bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub id: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub satisfied: bool,
}

/// Orderings between the difference-measure upper bounds that follow from
/// the difference chain: each names a sharper bound on the left.
pub fn comparison_check(problem: &TwoClassProblem) -> Vec<Comparison> {
    let avg = |d: DiffId| average_f_divergence(problem, &generator(MeasureId::Diff(d)));
    let (i_delta, h_delta, d_delta, d_h, h_i) = (
        avg(DiffId::IDelta),
        avg(DiffId::HDelta),
        avg(DiffId::DDelta),
        avg(DiffId::DH),
        avg(DiffId::HI),
    );
    let bound = |coefficient: f64, value: f64| 0.5 * (1.0 - coefficient * value);
    let c_dh = 2.0 / (3.0 - 2.0 * SQRT_2);
    let c_hi = 2.0 / (1.0 - LN_2);
    let c_i_delta = 4.0 / (2.0 * LN_2 - 1.0);
    let c_d_delta = 4.0 / (7.0 - 4.0 * SQRT_2);
    let c_d_delta_via_hi = 8.0 / (15.0 * (1.0 - LN_2));

    let relations = [
        ("h_delta_vs_i_delta", bound(8.0 / 3.0, h_delta), bound(4.0, i_delta)),
        ("i_delta_sharpened", bound(c_i_delta, i_delta), bound(4.0, i_delta)),
        ("h_i_vs_d_delta", bound(c_hi, h_i), bound(c_d_delta_via_hi, d_delta)),
        ("d_h_vs_d_delta", bound(c_dh, d_h), bound(c_d_delta_via_hi, d_delta)),
        (
            "d_delta_vs_h_delta",
            bound(c_d_delta, d_delta),
            bound(c_d_delta, h_delta),
        ),
        ("h_delta_sharpened", bound(4.0, h_delta), bound(c_d_delta, h_delta)),
    ];
    relations
        .into_iter()
        .map(|(id, lhs, rhs)| {
            let slack = rhs - lhs;
            Comparison {
                id,
                lhs,
                rhs,
                slack,
                satisfied: slack >= -COMPARISON_TOL,
            }
        })
        .collect()
}
