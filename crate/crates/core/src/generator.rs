//! Convex generating functions `f` on `(0, ∞)` with `f(1) = 0`, their
//! star forms `f*(x) = x f((1-x)/x)`, limit constants and the Csiszár
//! f-divergence sum `C_f(P‖Q) = Σ q_i f(p_i/q_i)`.

use std::f64::consts::{LN_2, SQRT_2};

use crate::divergence::{DiffId, DiscreteDistribution, MeasureId};
use crate::error::{Error, Result};
use crate::numeric::{convexity_probe, xlx, OrderParameter, Regime, Spacing};

/// Points used for the numeric cross-check of `f(0+)` and `f(∞)/∞`.
pub const NUMERIC_LIMIT_POINTS: (f64, f64) = (1e-12, 1e12);

/// `(lo, hi, n)` of the log-spaced grid used to probe generator convexity.
pub const GENERATOR_GRID: (f64, f64, usize) = (1e-3, 1e3, 601);

/// `(lo, hi, n)` of the linear grid used to probe star-form convexity.
pub const STAR_GRID: (f64, f64, usize) = (1e-3, 1.0 - 1e-3, 999);

/// `f(0+)`, `lim f(u)/u` as `u → ∞`, `f(1)`, and `f(0+) + lim f(u)/u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitConstants {
    pub f0: f64,
    pub f_inf: f64,
    pub f1: f64,
    pub f2: f64,
}

/// The generator of one measure in the catalog.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratingFunction {
    id: MeasureId,
    f_inf: f64,
}

/// Look up the generator of `key`. The `d` entry generates `d` itself; the
/// `4d` member of the ξ family is `ξ_½`.
pub fn generator(key: MeasureId) -> GeneratingFunction {
    GeneratingFunction {
        id: key,
        f_inf: f_infinity(key),
    }
}

/// Representative keys covering every row of the catalog.
pub fn catalog_keys() -> Vec<MeasureId> {
    let mut keys = MeasureId::BASE.to_vec();
    for s in [-1.0, 0.0, 0.5, 1.0, 2.0] {
        let s = OrderParameter::new(s).expect("finite");
        keys.push(MeasureId::ZetaFamily(s));
        keys.push(MeasureId::XiFamily(s));
    }
    keys.extend(DiffId::ALL.into_iter().map(MeasureId::Diff));
    keys
}

fn f_triangular(u: f64) -> f64 {
    let d = u - 1.0;
    d * d / (u + 1.0)
}

fn f_hellinger(u: f64) -> f64 {
    let d = u.sqrt() - 1.0;
    0.5 * d * d
}

fn f_jensen_shannon(u: f64) -> f64 {
    let half_sum = 0.5 * (u + 1.0);
    0.5 * xlx(u) - half_sum * half_sum.ln()
}

fn f_d(u: f64) -> f64 {
    (2.0 * (u + 1.0) - (u.sqrt() + 1.0) * (2.0 * u + 2.0).sqrt()) / 4.0
}

fn f_j(u: f64) -> f64 {
    if u == 1.0 {
        return 0.0;
    }
    (u - 1.0) * u.ln()
}

fn f_arith_geo(u: f64) -> f64 {
    let half_sum = 0.5 * (u + 1.0);
    half_sum * (half_sum / u.sqrt()).ln()
}

fn f_sym_chi_sq(u: f64) -> f64 {
    let d = u - 1.0;
    d * d * (u + 1.0) / u
}

fn f_zeta(s: f64, u: f64) -> f64 {
    let ln_u = u.ln();
    -(s * ln_u).exp_m1() * ((1.0 - s) * ln_u).exp_m1() / (s * (s - 1.0))
}

fn f_xi(s: f64, u: f64) -> f64 {
    let half_sum = 0.5 * (u + 1.0);
    (0.5 * (u.powf(1.0 - s) + 1.0) * half_sum.powf(s) - half_sum) / (s * (s - 1.0))
}

fn eval_id(id: MeasureId, u: f64) -> f64 {
    match id {
        MeasureId::Triangular => f_triangular(u),
        MeasureId::JensenShannon => f_jensen_shannon(u),
        MeasureId::Hellinger => f_hellinger(u),
        MeasureId::DDivergence => f_d(u),
        MeasureId::JDivergence => f_j(u),
        MeasureId::ArithGeo => f_arith_geo(u),
        MeasureId::SymChiSq => f_sym_chi_sq(u),
        MeasureId::ZetaFamily(s) => match s.regime() {
            Regime::AtZero | Regime::AtOne => f_j(u),
            Regime::Regular => f_zeta(s.value(), u),
        },
        MeasureId::XiFamily(s) => match s.regime() {
            Regime::AtZero => f_jensen_shannon(u),
            Regime::AtOne => f_arith_geo(u),
            Regime::Regular => f_xi(s.value(), u),
        },
        MeasureId::Diff(diff) => {
            let ((ca, a), (cb, b)) = diff.operands();
            ca * eval_id(a, u) - cb * eval_id(b, u)
        }
    }
}

fn diff_f_infinity(diff: DiffId) -> f64 {
    match diff {
        DiffId::DDelta => (7.0 - 4.0 * SQRT_2) / 4.0,
        DiffId::DI => 2.0 - SQRT_2 - 0.5 * LN_2,
        DiffId::DH => (3.0 - 2.0 * SQRT_2) / 2.0,
        DiffId::HDelta => 0.25,
        DiffId::HI => (1.0 - LN_2) / 2.0,
        DiffId::IDelta => (2.0 * LN_2 - 1.0) / 4.0,
    }
}

/// Closed form of `lim f(u)/u`, which equals `f(0+)` for every entry.
fn f_infinity(id: MeasureId) -> f64 {
    match id {
        MeasureId::Triangular => 1.0,
        MeasureId::JensenShannon => 0.5 * LN_2,
        MeasureId::Hellinger => 0.5,
        MeasureId::DDivergence => (2.0 - SQRT_2) / 4.0,
        MeasureId::JDivergence | MeasureId::ArithGeo | MeasureId::SymChiSq => f64::INFINITY,
        MeasureId::ZetaFamily(s) => {
            let v = s.value();
            if s.is_regular() && v > 0.0 && v < 1.0 {
                -1.0 / (v * (v - 1.0))
            } else {
                f64::INFINITY
            }
        }
        MeasureId::XiFamily(s) => match s.regime() {
            Regime::AtZero => 0.5 * LN_2,
            Regime::AtOne => f64::INFINITY,
            Regime::Regular => {
                let v = s.value();
                if v < 1.0 {
                    // 2^-s - 1 = expm1(-s ln 2)
                    (-v * LN_2).exp_m1() / (2.0 * v * (v - 1.0))
                } else {
                    f64::INFINITY
                }
            }
        },
        MeasureId::Diff(diff) => diff_f_infinity(diff),
    }
}

impl GeneratingFunction {
    pub fn id(&self) -> MeasureId {
        self.id
    }

    /// `f(u)` for `u >= 0`; `u = 0` gives the right limit `f(0+)`.
    pub fn eval(&self, u: f64) -> f64 {
        if u == 0.0 {
            return self.f_inf;
        }
        eval_id(self.id, u)
    }

    /// `lim f(u)/u` as `u → ∞`.
    pub fn f_infinity(&self) -> f64 {
        self.f_inf
    }

    /// `f(0+)`.
    pub fn f_zero(&self) -> f64 {
        self.f_inf
    }

    /// Every catalog generator satisfies `u f(1/u) = f(u)`, so its star
    /// form is symmetric about ½.
    pub fn is_star_symmetric(&self) -> bool {
        true
    }

    /// `f*(x) = x f((1-x)/x)` on `(0, 1)`.
    pub fn star(&self, x: f64) -> Result<f64> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Domain(format!("star form needs 0 < x < 1, got {x}")));
        }
        Ok(self.star_closed(x))
    }

    /// Star form on `[0, 1]` with `f*(0) = f(∞)/∞` and `f*(1) = f(0+)`.
    pub(crate) fn star_closed(&self, x: f64) -> f64 {
        if x == 0.0 {
            return self.f_inf;
        }
        x * self.eval((1.0 - x) / x)
    }

    pub fn limit_constants(&self) -> LimitConstants {
        LimitConstants {
            f0: self.f_zero(),
            f_inf: self.f_inf,
            f1: eval_id(self.id, 1.0),
            f2: self.f_zero() + self.f_inf,
        }
    }

    /// `(f(u_lo), f(u_hi)/u_hi)` at [`NUMERIC_LIMIT_POINTS`], a direct
    /// cross-check of the closed-form constants.
    pub fn numeric_limits(&self) -> (f64, f64) {
        let (lo, hi) = NUMERIC_LIMIT_POINTS;
        (eval_id(self.id, lo), eval_id(self.id, hi) / hi)
    }

    /// Minimum second difference of `f` over [`GENERATOR_GRID`].
    pub fn convexity(&self) -> Result<f64> {
        let (lo, hi, n) = GENERATOR_GRID;
        convexity_probe(|u| eval_id(self.id, u), lo, hi, n, Spacing::Log)
    }

    /// Minimum second difference of `f*` over [`STAR_GRID`].
    pub fn star_convexity(&self) -> Result<f64> {
        let (lo, hi, n) = STAR_GRID;
        convexity_probe(|x| self.star_closed(x), lo, hi, n, Spacing::Linear)
    }
}

pub fn star(f: &GeneratingFunction, x: f64) -> Result<f64> {
    f.star(x)
}

pub fn limit_constants(f: &GeneratingFunction) -> LimitConstants {
    f.limit_constants()
}

/// `Σ q_i f(p_i/q_i)` with `0 f(0/0) = 0`, `0 f(p/0) = p f(∞)/∞` and
/// `q f(0/q) = q f(0+)`.
pub fn csiszar_sum(f: &GeneratingFunction, p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::AlphabetMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(p.probs()
        .iter()
        .zip(q.probs())
        .map(|(&pi, &qi)| {
            if qi == 0.0 {
                if pi == 0.0 {
                    0.0
                } else {
                    pi * f.f_inf
                }
            } else if pi == 0.0 {
                qi * f.f_zero()
            } else {
                qi * eval_id(f.id, pi / qi)
            }
        })
        .sum())
}
