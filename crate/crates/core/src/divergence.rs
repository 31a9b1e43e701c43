//! Validated distributions on the probability simplex and direct evaluation
//! of the symmetric divergence measures, the ζ/ξ families, the six
//! difference measures and the two inequality chains.
//!
//! Every measure is a sum of per-outcome cells `c(p_i, q_i)`. Each cell is
//! written so that swapping `p` and `q` performs the same floating point
//! operations on swapped operands, which makes `M(P, Q) == M(Q, P)` hold
//! bit-for-bit, and so that `p == q` gives an exact zero.
//!
//! The ξ family uses the parametrization with `ξ_0 = I` and `ξ_1 = T`:
//! `ξ_s = [s(s-1)]^-1 [Σ ((p^(1-s) + q^(1-s))/2) ((p+q)/2)^s - 1]`.
//! Some texts index the same family by `1 - s`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::{OrderParameter, Regime};

/// Largest accepted `|Σ p_i - 1|`.
pub const SUM_TOL: f64 = 1e-12;

/// Relative slack allowed on each link of an inequality chain.
pub const CHAIN_TOL: f64 = 1e-9;

/// Whether zero masses are admitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Support {
    /// Every mass strictly positive.
    Strict,
    /// Zero masses allowed; measures that blow up on them return `+inf`.
    Permissive,
}

/// A validated point on the probability simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    probs: Vec<f64>,
    support: Support,
}

impl DiscreteDistribution {
    pub fn new(raw: &[f64], support: Support) -> Result<Self> {
        validate(raw, support)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn support(&self) -> Support {
        self.support
    }
}

/// Validate raw masses as a distribution with at least two outcomes.
///
/// Never renormalizes: a vector that misses the simplex by more than
/// [`SUM_TOL`] is rejected.
pub fn validate(raw: &[f64], support: Support) -> Result<DiscreteDistribution> {
    check_masses(raw, support, 2)?;
    Ok(DiscreteDistribution {
        probs: raw.to_vec(),
        support,
    })
}

pub(crate) fn check_masses(raw: &[f64], support: Support, min_len: usize) -> Result<()> {
    if raw.len() < min_len {
        return Err(Error::TooFewOutcomes {
            n: raw.len(),
            min: min_len,
        });
    }
    for (index, &value) in raw.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { index, value });
        }
        if value < 0.0 {
            return Err(Error::NegativeEntry { index, value });
        }
        if value == 0.0 && support == Support::Strict {
            return Err(Error::ZeroEntry { index });
        }
    }
    let sum: f64 = raw.iter().sum();
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::NotNormalized { sum, tol: SUM_TOL });
    }
    Ok(())
}

/// The six nonnegative differences between `¼Δ ≤ I ≤ h ≤ 4d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiffId {
    /// `4d - ¼Δ`
    DDelta,
    /// `4d - h`
    DH,
    /// `4d - I`
    DI,
    /// `h - I`
    HI,
    /// `h - ¼Δ`
    HDelta,
    /// `I - ¼Δ`
    IDelta,
}

impl DiffId {
    pub const ALL: [DiffId; 6] = [
        DiffId::DDelta,
        DiffId::DI,
        DiffId::DH,
        DiffId::HDelta,
        DiffId::HI,
        DiffId::IDelta,
    ];

    pub fn symbol(&self) -> &'static str {
        match self {
            DiffId::DDelta => "dDelta",
            DiffId::DH => "dh",
            DiffId::DI => "dI",
            DiffId::HI => "hI",
            DiffId::HDelta => "hDelta",
            DiffId::IDelta => "IDelta",
        }
    }

    /// `(larger, smaller)` operands, each as `(coefficient, base measure)`.
    pub(crate) fn operands(&self) -> ((f64, MeasureId), (f64, MeasureId)) {
        use MeasureId::*;
        let quarter_delta = (0.25, Triangular);
        let four_d = (4.0, DDivergence);
        match self {
            DiffId::DDelta => (four_d, quarter_delta),
            DiffId::DH => (four_d, (1.0, Hellinger)),
            DiffId::DI => (four_d, (1.0, JensenShannon)),
            DiffId::HI => ((1.0, Hellinger), (1.0, JensenShannon)),
            DiffId::HDelta => ((1.0, Hellinger), quarter_delta),
            DiffId::IDelta => ((1.0, JensenShannon), quarter_delta),
        }
    }
}

/// Every measure reachable by the library.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureId {
    /// Δ = Σ (p-q)²/(p+q)
    Triangular,
    /// I, Jensen–Shannon
    JensenShannon,
    /// h = ½ Σ (√p - √q)²
    Hellinger,
    /// d = 1 - Σ ((√p+√q)/2) √((p+q)/2)
    DDivergence,
    /// J = Σ (p-q) ln(p/q)
    JDivergence,
    /// T = Σ ((p+q)/2) ln((p+q)/(2√(pq)))
    ArithGeo,
    /// Ψ = Σ (p-q)²(p+q)/(pq)
    SymChiSq,
    ZetaFamily(OrderParameter),
    XiFamily(OrderParameter),
    Diff(DiffId),
}

impl MeasureId {
    pub const BASE: [MeasureId; 7] = [
        MeasureId::Triangular,
        MeasureId::JensenShannon,
        MeasureId::Hellinger,
        MeasureId::DDivergence,
        MeasureId::JDivergence,
        MeasureId::ArithGeo,
        MeasureId::SymChiSq,
    ];

    pub fn zeta(s: f64) -> Result<Self> {
        Ok(MeasureId::ZetaFamily(OrderParameter::new(s)?))
    }

    pub fn xi(s: f64) -> Result<Self> {
        Ok(MeasureId::XiFamily(OrderParameter::new(s)?))
    }

    pub fn is_base(&self) -> bool {
        !matches!(
            self,
            MeasureId::ZetaFamily(_) | MeasureId::XiFamily(_) | MeasureId::Diff(_)
        )
    }

    pub fn order(&self) -> Option<OrderParameter> {
        match self {
            MeasureId::ZetaFamily(s) | MeasureId::XiFamily(s) => Some(*s),
            _ => None,
        }
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureId::Triangular => f.write_str("Delta"),
            MeasureId::JensenShannon => f.write_str("I"),
            MeasureId::Hellinger => f.write_str("h"),
            MeasureId::DDivergence => f.write_str("d"),
            MeasureId::JDivergence => f.write_str("J"),
            MeasureId::ArithGeo => f.write_str("T"),
            MeasureId::SymChiSq => f.write_str("Psi"),
            MeasureId::ZetaFamily(s) => write!(f, "zeta:{}", s.value()),
            MeasureId::XiFamily(s) => write!(f, "xi:{}", s.value()),
            MeasureId::Diff(d) => write!(f, "D_{}", d.symbol()),
        }
    }
}

impl FromStr for DiffId {
    type Err = Error;

    fn from_str(name: &str) -> Result<Self> {
        DiffId::ALL
            .into_iter()
            .find(|d| d.symbol() == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown difference measure '{name}'")))
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    /// Accepts the symbols produced by `Display` plus a few long names:
    /// `triangular`, `jensen-shannon`, `hellinger`, `j-divergence`,
    /// `arith-geo`, `sym-chi2`, `zeta:S`, `xi:S`, `D_<diff>` / `diff:<diff>`.
    fn from_str(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let parse_s = |text: &str| -> Result<OrderParameter> {
            let s: f64 = text
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad order parameter '{text}'")))?;
            OrderParameter::new(s)
        };
        if let Some(rest) = spec.strip_prefix("zeta:") {
            return Ok(MeasureId::ZetaFamily(parse_s(rest)?));
        }
        if let Some(rest) = spec.strip_prefix("xi:") {
            return Ok(MeasureId::XiFamily(parse_s(rest)?));
        }
        if let Some(rest) = spec.strip_prefix("D_").or_else(|| spec.strip_prefix("diff:")) {
            return Ok(MeasureId::Diff(rest.parse()?));
        }
        let id = match spec {
            "Delta" | "delta" | "triangular" => MeasureId::Triangular,
            "I" | "js" | "jensen-shannon" => MeasureId::JensenShannon,
            "h" | "hellinger" => MeasureId::Hellinger,
            "d" | "d-divergence" => MeasureId::DDivergence,
            "J" | "j-divergence" => MeasureId::JDivergence,
            "T" | "arith-geo" => MeasureId::ArithGeo,
            "Psi" | "psi" | "sym-chi2" => MeasureId::SymChiSq,
            other => {
                return Err(Error::InvalidArgument(format!("unknown measure '{other}'")));
            }
        };
        Ok(id)
    }
}

// ---------------------------------------------------------------------------
// per-outcome cells

#[inline]
fn weighted_log(weight: f64, log: f64) -> f64 {
    if weight == 0.0 {
        0.0
    } else {
        weight * log
    }
}

/// `(ln(2p/(p+q)), ln(2q/(p+q)))` for `p + q > 0`, via `ln(1±δ)` with
/// `δ = (p-q)/(p+q)` near the diagonal and direct quotients away from it.
#[inline]
fn half_logs(p: f64, q: f64) -> (f64, f64) {
    let sum = p + q;
    let delta = (p - q) / sum;
    if delta.abs() <= 0.5 {
        (delta.ln_1p(), (-delta).ln_1p())
    } else {
        ((2.0 * p / sum).ln(), (2.0 * q / sum).ln())
    }
}

#[inline]
fn odd_sinh(x: f64) -> f64 {
    x.abs().sinh().copysign(x)
}

fn cell_triangular(p: f64, q: f64) -> f64 {
    let sum = p + q;
    if sum == 0.0 {
        return 0.0;
    }
    let diff = p - q;
    diff * diff / sum
}

fn cell_jensen_shannon(p: f64, q: f64) -> f64 {
    let sum = p + q;
    if sum == 0.0 {
        return 0.0;
    }
    let (lp, lq) = half_logs(p, q);
    0.5 * (weighted_log(p, lp) + weighted_log(q, lq))
}

fn cell_hellinger(p: f64, q: f64) -> f64 {
    let diff = p.sqrt() - q.sqrt();
    0.5 * diff * diff
}

fn cell_d(p: f64, q: f64) -> f64 {
    // A - m√A with A = (p+q)/2, m = (√p+√q)/2, rewritten without cancellation
    let mean = 0.5 * (p + q);
    if mean == 0.0 {
        return 0.0;
    }
    let (rp, rq) = (p.sqrt(), q.sqrt());
    let root_mean = mean.sqrt();
    let diff = rp - rq;
    root_mean * diff * diff / (4.0 * (root_mean + 0.5 * (rp + rq)))
}

fn cell_j(p: f64, q: f64) -> f64 {
    let sum = p + q;
    if sum == 0.0 {
        return 0.0;
    }
    let (lp, lq) = half_logs(p, q);
    (p - q) * (lp - lq)
}

fn cell_arith_geo(p: f64, q: f64) -> f64 {
    let mean = 0.5 * (p + q);
    if mean == 0.0 {
        return 0.0;
    }
    let delta = (p - q) / (p + q);
    // (p+q)/(2√(pq)) = (1-δ²)^(-1/2)
    let log_term = if delta.abs() <= 0.5 {
        (-(delta * delta)).ln_1p()
    } else {
        let (lp, lq) = half_logs(p, q);
        lp + lq
    };
    -0.5 * mean * log_term
}

fn cell_sym_chi_sq(p: f64, q: f64) -> f64 {
    if p == 0.0 && q == 0.0 {
        return 0.0;
    }
    let diff = p - q;
    diff * diff * (p + q) / (p * q)
}

fn cell_zeta_regular(s: f64, p: f64, q: f64) -> f64 {
    let norm = s * (s - 1.0);
    if p == 0.0 && q == 0.0 {
        return 0.0;
    }
    let product = if p == 0.0 || q == 0.0 {
        (p.powf(s) - q.powf(s)) * (p.powf(1.0 - s) - q.powf(1.0 - s))
    } else {
        // p^a - q^a = 2 (pq)^(a/2) sinh(a L / 2), L = ln(p/q)
        let (lp, lq) = half_logs(p, q);
        let log_ratio = lp - lq;
        4.0 * p.sqrt() * q.sqrt() * odd_sinh(0.5 * s * log_ratio) * odd_sinh(0.5 * (1.0 - s) * log_ratio)
    };
    // p^s q^(1-s) + p^(1-s) q^s - p - q = -(p^s - q^s)(p^(1-s) - q^(1-s))
    -product / norm
}

fn cell_xi_regular(s: f64, p: f64, q: f64) -> f64 {
    let mean = 0.5 * (p + q);
    if mean == 0.0 {
        return 0.0;
    }
    let (lp, lq) = half_logs(p, q);
    let t = 1.0 - s;
    // ((p/A)^t + (q/A)^t)/2 - 1
    let bracket = 0.5 * ((t * lp).exp_m1() + (t * lq).exp_m1());
    mean * bracket / (s * (s - 1.0))
}

/// Contribution of a single outcome with masses `(p, q)`.
///
/// Cells are positively homogeneous of degree one, so they also evaluate
/// the prior-weighted and pointwise (posterior) forms.
pub(crate) fn cell(id: MeasureId, p: f64, q: f64) -> f64 {
    match id {
        MeasureId::Triangular => cell_triangular(p, q),
        MeasureId::JensenShannon => cell_jensen_shannon(p, q),
        MeasureId::Hellinger => cell_hellinger(p, q),
        MeasureId::DDivergence => cell_d(p, q),
        MeasureId::JDivergence => cell_j(p, q),
        MeasureId::ArithGeo => cell_arith_geo(p, q),
        MeasureId::SymChiSq => cell_sym_chi_sq(p, q),
        MeasureId::ZetaFamily(s) => match s.regime() {
            Regime::AtZero | Regime::AtOne => cell_j(p, q),
            Regime::Regular => cell_zeta_regular(s.value(), p, q),
        },
        MeasureId::XiFamily(s) => match s.regime() {
            Regime::AtZero => cell_jensen_shannon(p, q),
            Regime::AtOne => cell_arith_geo(p, q),
            Regime::Regular => cell_xi_regular(s.value(), p, q),
        },
        MeasureId::Diff(diff) => {
            let ((ca, a), (cb, b)) = diff.operands();
            ca * cell(a, p, q) - cb * cell(b, p, q)
        }
    }
}

pub(crate) fn sum_cells(id: MeasureId, p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(&pi, &qi)| cell(id, pi, qi)).sum()
}

fn check_alphabet(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::AlphabetMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

/// Any measure in scope. Zero masses in permissive mode yield `+inf` for
/// the measures whose integrands blow up there.
pub fn measure(id: MeasureId, p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    check_alphabet(p, q)?;
    Ok(sum_cells(id, p.probs(), q.probs()))
}

/// One of the seven base measures Δ, I, h, d, J, T, Ψ.
pub fn base_measure(id: MeasureId, p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    if !id.is_base() {
        return Err(Error::InvalidArgument(format!("{id} is not a base measure")));
    }
    measure(id, p, q)
}

/// `ζ_s(P‖Q)`; the J row inside the switch band around 0 and 1.
pub fn zeta(s: OrderParameter, p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    measure(MeasureId::ZetaFamily(s), p, q)
}

/// `ξ_s(P‖Q)`; the I row near 0 and the T row near 1.
pub fn xi(s: OrderParameter, p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    measure(MeasureId::XiFamily(s), p, q)
}

pub fn difference_measure(diff: DiffId, p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    measure(MeasureId::Diff(diff), p, q)
}

// ---------------------------------------------------------------------------
// chains

/// Which inequality chain to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chain {
    /// `¼Δ ≤ I ≤ h ≤ 4d ≤ ⅛J ≤ T ≤ Ψ/16`
    Measures,
    /// `D_IΔ ≤ ⅔D_hΔ ≤ 8/15·D_dΔ ≤ 8/3·D_dh ≤ 8/7·D_dI ≤ 2D_hI`
    Differences,
}

impl Chain {
    /// `(label, coefficient, measure)` from smallest to largest.
    pub fn links(&self) -> Vec<(&'static str, f64, MeasureId)> {
        use MeasureId::*;
        match self {
            Chain::Measures => vec![
                ("Delta/4", 0.25, Triangular),
                ("I", 1.0, JensenShannon),
                ("h", 1.0, Hellinger),
                ("4d", 4.0, DDivergence),
                ("J/8", 0.125, JDivergence),
                ("T", 1.0, ArithGeo),
                ("Psi/16", 1.0 / 16.0, SymChiSq),
            ],
            Chain::Differences => vec![
                ("D_IDelta", 1.0, Diff(DiffId::IDelta)),
                ("2/3 D_hDelta", 2.0 / 3.0, Diff(DiffId::HDelta)),
                ("8/15 D_dDelta", 8.0 / 15.0, Diff(DiffId::DDelta)),
                ("8/3 D_dh", 8.0 / 3.0, Diff(DiffId::DH)),
                ("8/7 D_dI", 8.0 / 7.0, Diff(DiffId::DI)),
                ("2 D_hI", 2.0, Diff(DiffId::HI)),
            ],
        }
    }
}

/// A link `left ≤ right` that failed, with signed slack `right - left`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainViolation {
    pub left: String,
    pub right: String,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub values: Vec<(String, f64)>,
    pub violations: Vec<ChainViolation>,
}

impl ChainReport {
    /// Check every adjacent pair of an ordered list of values.
    ///
    /// A link holds when `right - left >= -CHAIN_TOL * |right|`; `+inf` on
    /// the right always holds.
    pub fn from_values(values: Vec<(String, f64)>) -> Self {
        let violations = values
            .windows(2)
            .filter_map(|pair| {
                let (ref left, l) = pair[0];
                let (ref right, r) = pair[1];
                let slack = r - l;
                let holds = r == f64::INFINITY || slack >= -CHAIN_TOL * r.abs();
                (!holds).then(|| ChainViolation {
                    left: left.clone(),
                    right: right.clone(),
                    slack,
                })
            })
            .collect();
        Self { values, violations }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Smallest `(right - left) / |right|` over all links (`0/0` counts as 0).
    pub fn worst_relative_slack(&self) -> f64 {
        self.values
            .windows(2)
            .map(|pair| relative_slack(pair[0].1, pair[1].1))
            .fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn relative_slack(left: f64, right: f64) -> f64 {
    if right == f64::INFINITY {
        return f64::INFINITY;
    }
    let slack = right - left;
    if right == 0.0 {
        if slack == 0.0 {
            0.0
        } else {
            slack.signum() * f64::INFINITY
        }
    } else {
        slack / right.abs()
    }
}

pub fn chain_check(p: &DiscreteDistribution, q: &DiscreteDistribution, chain: Chain) -> Result<ChainReport> {
    check_alphabet(p, q)?;
    let values = chain
        .links()
        .into_iter()
        .map(|(label, coef, id)| (label.to_string(), coef * sum_cells(id, p.probs(), q.probs())))
        .collect();
    Ok(ChainReport::from_values(values))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(v: &[f64]) -> DiscreteDistribution {
        validate(v, Support::Strict).unwrap()
    }

    fn example_pair() -> (DiscreteDistribution, DiscreteDistribution) {
        (dist(&[0.5, 0.5]), dist(&[0.25, 0.75]))
    }

    fn op(s: f64) -> OrderParameter {
        OrderParameter::new(s).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn validation_kinds() {
        assert!(validate(&[0.5, 0.5], Support::Strict).is_ok());
        assert!(matches!(
            validate(&[0.5, 0.5001], Support::Strict),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            validate(&[0.0, 1.0], Support::Strict),
            Err(Error::ZeroEntry { index: 0 })
        ));
        assert!(validate(&[0.0, 1.0], Support::Permissive).is_ok());
        assert!(matches!(
            validate(&[-0.1, 1.1], Support::Permissive),
            Err(Error::NegativeEntry { index: 0, .. })
        ));
        assert!(matches!(
            validate(&[1.0], Support::Strict),
            Err(Error::TooFewOutcomes { n: 1, min: 2 })
        ));
        assert!(matches!(
            validate(&[f64::NAN, 1.0], Support::Strict),
            Err(Error::NonFinite { index: 0, .. })
        ));
        let d = validate(&[0.0, 1.0], Support::Permissive).unwrap();
        assert_eq!(d.support(), Support::Permissive);
        assert_eq!(d.probs(), &[0.0, 1.0]);
    }

    #[test]
    fn base_measures_on_example_pair() {
        // extended-precision direct summation
        let (p, q) = example_pair();
        let expected = [
            (MeasureId::Triangular, 1.0, 0.13333333333333333),
            (MeasureId::JensenShannon, 1.0, 0.033822075568605230),
            (MeasureId::Hellinger, 1.0, 0.034074173710931713),
            (MeasureId::DDivergence, 4.0, 0.034261778006956697),
            (MeasureId::JDivergence, 1.0, 0.27465307216702742),
            (MeasureId::ArithGeo, 1.0, 0.034841192473151626),
            (MeasureId::SymChiSq, 1.0, 0.58333333333333333),
        ];
        for (id, coef, value) in expected {
            let got = coef * base_measure(id, &p, &q).unwrap();
            assert!(close(got, value, 1e-15), "{id}: {got} vs {value}");
            let swapped = coef * base_measure(id, &q, &p).unwrap();
            assert_eq!(got, swapped, "{id} not symmetric");
            assert_eq!(base_measure(id, &p, &p).unwrap(), 0.0);
        }
    }

    #[test]
    fn base_measure_rejects_family_ids() {
        let (p, q) = example_pair();
        assert!(base_measure(MeasureId::zeta(0.5).unwrap(), &p, &q).is_err());
        let r = dist(&[0.2, 0.3, 0.5]);
        assert!(matches!(
            base_measure(MeasureId::Hellinger, &p, &r),
            Err(Error::AlphabetMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn zeta_examples() {
        let (p, q) = example_pair();
        assert!(close(zeta(op(0.5), &p, &q).unwrap(), 0.27259338968745371, 1e-15));
        assert!(close(zeta(op(2.0), &p, &q).unwrap(), 0.29166666666666667, 1e-15));
        let j = 0.27465307216702742;
        assert!(close(zeta(op(1.0 + 1e-8), &p, &q).unwrap(), j, 1e-6));
        assert!(close(zeta(op(1.0 - 1e-8), &p, &q).unwrap(), j, 1e-6));
    }

    #[test]
    fn xi_examples() {
        let (p, q) = example_pair();
        assert!(close(xi(op(-1.0), &p, &q).unwrap(), 0.033333333333333333, 1e-15));
        assert!(close(xi(op(0.5), &p, &q).unwrap(), 0.034261778006956697, 1e-15));
        assert!(close(xi(op(2.0), &p, &q).unwrap(), 0.036458333333333333, 1e-15));
        assert_eq!(
            xi(op(0.0), &p, &q).unwrap(),
            base_measure(MeasureId::JensenShannon, &p, &q).unwrap()
        );
        assert_eq!(
            xi(op(1.0), &p, &q).unwrap(),
            base_measure(MeasureId::ArithGeo, &p, &q).unwrap()
        );
    }

    #[test]
    fn regular_formula_meets_limit_rows_at_switch_edge() {
        let (p, q) = example_pair();
        let j = base_measure(MeasureId::JDivergence, &p, &q).unwrap();
        let i = base_measure(MeasureId::JensenShannon, &p, &q).unwrap();
        let t = base_measure(MeasureId::ArithGeo, &p, &q).unwrap();
        for s in [2e-6, -2e-6] {
            assert!(close(zeta(op(s), &p, &q).unwrap(), j, 1e-5 * (1.0 + j)));
            assert!(close(xi(op(s), &p, &q).unwrap(), i, 1e-5 * (1.0 + i)));
            assert!(close(xi(op(1.0 + s), &p, &q).unwrap(), t, 1e-5 * (1.0 + t)));
        }
    }

    #[test]
    fn difference_examples() {
        let (p, q) = example_pair();
        let expected = [
            (DiffId::IDelta, 0.00048874223527189667),
            (DiffId::HDelta, 0.00074084037759837992),
            (DiffId::DDelta, 0.00092844467362336351),
            (DiffId::DH, 0.00018760429602498359),
            (DiffId::DI, 0.00043970243835146684),
            (DiffId::HI, 0.00025209814232648325),
        ];
        for (diff, value) in expected {
            let got = difference_measure(diff, &p, &q).unwrap();
            assert!(close(got, value, 1e-16), "{diff:?}: {got} vs {value}");
            assert_eq!(got, difference_measure(diff, &q, &p).unwrap());
            assert_eq!(difference_measure(diff, &p, &p).unwrap(), 0.0);
        }
    }

    #[test]
    fn permissive_zeros() {
        let p = validate(&[0.0, 1.0], Support::Permissive).unwrap();
        let q = validate(&[0.5, 0.5], Support::Permissive).unwrap();
        for id in [MeasureId::JDivergence, MeasureId::ArithGeo, MeasureId::SymChiSq] {
            assert_eq!(measure(id, &p, &q).unwrap(), f64::INFINITY, "{id}");
        }
        for id in [
            MeasureId::Triangular,
            MeasureId::JensenShannon,
            MeasureId::Hellinger,
            MeasureId::DDivergence,
        ] {
            let v = measure(id, &p, &q).unwrap();
            assert!(v.is_finite() && v > 0.0, "{id}: {v}");
        }
        // I with one zero cell: ½[ln(2/1.5)·1 + 0.5 ln(1/1.5)... ] by hand
        let i = 0.5 * ((1.0f64 * (2.0 / 1.5f64).ln()) + 0.5 * (1.0 / 0.5f64).ln() + 0.5 * (1.0 / 1.5f64).ln());
        assert!(close(measure(MeasureId::JensenShannon, &p, &q).unwrap(), i, 1e-15));
        // ζ_s stays finite on zeros only for 0 < s < 1
        assert!(zeta(op(0.5), &p, &q).unwrap().is_finite());
        assert_eq!(zeta(op(2.0), &p, &q).unwrap(), f64::INFINITY);
        assert_eq!(zeta(op(-1.0), &p, &q).unwrap(), f64::INFINITY);
        assert!(xi(op(-1.0), &p, &q).unwrap().is_finite());
        assert_eq!(xi(op(2.0), &p, &q).unwrap(), f64::INFINITY);
    }

    #[test]
    fn measure_id_parsing() {
        for id in MeasureId::BASE {
            assert_eq!(id.to_string().parse::<MeasureId>().unwrap(), id);
        }
        for d in DiffId::ALL {
            let id = MeasureId::Diff(d);
            assert_eq!(id.to_string().parse::<MeasureId>().unwrap(), id);
        }
        assert_eq!("xi:0.5".parse::<MeasureId>().unwrap(), MeasureId::xi(0.5).unwrap());
        assert_eq!("zeta:-1".parse::<MeasureId>().unwrap(), MeasureId::zeta(-1.0).unwrap());
        assert_eq!("hellinger".parse::<MeasureId>().unwrap(), MeasureId::Hellinger);
        assert!("xi:abc".parse::<MeasureId>().is_err());
        assert!("chi".parse::<MeasureId>().is_err());
        assert!("D_xy".parse::<MeasureId>().is_err());
    }

    #[test]
    fn chain_examples() {
        let (p, q) = example_pair();
        let report = chain_check(&p, &q, Chain::Measures).unwrap();
        let expected = [
            0.033333333333333333,
            0.033822075568605230,
            0.034074173710931713,
            0.034261778006956697,
            0.034331634020878428,
            0.034841192473151626,
            0.036458333333333333,
        ];
        for ((_, got), want) in report.values.iter().zip(expected) {
            assert!(close(*got, want, 1e-15));
        }
        assert!(report.holds());
        assert!(chain_check(&p, &q, Chain::Differences).unwrap().holds());

        for chain in [Chain::Measures, Chain::Differences] {
            let same = chain_check(&p, &p, chain).unwrap();
            assert!(same.values.iter().all(|(_, v)| *v == 0.0));
            assert!(same.holds());
        }
    }

    #[test]
    fn chain_detects_corrupted_value() {
        let (p, q) = example_pair();
        let mut values = chain_check(&p, &q, Chain::Measures).unwrap().values;
        values[2].1 *= 1.5; // h inflated above 4d
        let report = ChainReport::from_values(values);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].left, "h");
        assert!(report.violations[0].slack < 0.0);
        assert!(report.worst_relative_slack() < 0.0);
    }

    #[test]
    fn chain_treats_right_infinity_as_satisfied() {
        let report = ChainReport::from_values(vec![
            ("a".into(), 1.0),
            ("b".into(), f64::INFINITY),
            ("c".into(), f64::INFINITY),
        ]);
        assert!(report.holds());
        let report = ChainReport::from_values(vec![("a".into(), f64::INFINITY), ("b".into(), 1.0)]);
        assert!(!report.holds());
    }
}
