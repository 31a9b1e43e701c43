//! Elementary numerics shared by the rest of the crate: the order parameter
//! with its limit-point classification, `x ln x`, monotone inversion by
//! bisection and a second-difference convexity probe.

use crate::error::{Error, Result};

/// Half-width of the band around `s = 0` and `s = 1` inside which the
/// closed-form limit rows replace the `[s(s-1)]^-1` formulas.
pub const SWITCH_EPS: f64 = 1e-6;

/// Default absolute tolerance used by [`invert_decreasing`].
pub const BISECTION_TOL: f64 = 1e-12;

/// Hard cap on bisection steps.
pub const BISECTION_MAX_ITER: usize = 200;

/// Where an order parameter sits relative to the removable singularities at 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    AtZero,
    AtOne,
    Regular,
}

/// Real family index `s` for the ζ and ξ families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderParameter {
    s: f64,
    regime: Regime,
}

impl OrderParameter {
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::Domain(format!("order parameter must be finite, got {s}")));
        }
        let regime = if s.abs() < SWITCH_EPS {
            Regime::AtZero
        } else if (s - 1.0).abs() < SWITCH_EPS {
            Regime::AtOne
        } else {
            Regime::Regular
        };
        Ok(Self { s, regime })
    }

    /// The raw parameter value as supplied.
    pub fn value(&self) -> f64 {
        self.s
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn is_regular(&self) -> bool {
        self.regime == Regime::Regular
    }

    /// The value with limit regimes replaced by the exact limit point.
    pub fn snapped(&self) -> f64 {
        match self.regime {
            Regime::AtZero => 0.0,
            Regime::AtOne => 1.0,
            Regime::Regular => self.s,
        }
    }

    /// `s(s - 1)`, the family normalizer.
    pub(crate) fn normalizer(&self) -> f64 {
        self.s * (self.s - 1.0)
    }
}

/// `x ln x` with the continuous extension `0 ln 0 = 0`.
pub fn x_ln_x(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!("x ln x needs x >= 0, got {x}")));
    }
    Ok(xlx(x))
}

/// Unchecked `x ln x` for callers that already guarantee `x >= 0`.
#[inline]
pub(crate) fn xlx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Invert a strictly decreasing `f` on `[lo, hi]` by bisection.
///
/// Targets above `f(lo)` clamp to `lo`, targets below `f(hi)` clamp to `hi`.
/// Otherwise the bracket is halved until it is narrower than `tol` and
/// `|f(a) - target| <= tol`, or until it collapses to adjacent floats.
/// The returned point is the left end of the final bracket, so
/// `f(a) >= target` always holds for the returned `a`.
pub fn invert_decreasing<F>(f: F, target: f64, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !target.is_finite() {
        return Err(Error::Domain(format!("inversion target must be finite, got {target}")));
    }
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "bisection bracket needs lo < hi, got [{lo}, {hi}]"
        )));
    }
    let mut f_lo = f(lo);
    if target >= f_lo {
        return Ok(lo);
    }
    if target <= f(hi) {
        return Ok(hi);
    }
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= tol && (f_lo - target).abs() <= tol {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid >= target {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Grid layout for [`convexity_probe`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    /// Geometric spacing; needs `grid_lo > 0`.
    Log,
}

/// Minimum symmetric second difference `f(x-δ) - 2f(x) + f(x+δ)` over the
/// interior points of a grid, where `δ` is the local grid step.
pub fn convexity_probe<F>(f: F, grid_lo: f64, grid_hi: f64, n_points: usize, spacing: Spacing) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(grid_lo < grid_hi) || !grid_lo.is_finite() || !grid_hi.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "probe grid needs finite lo < hi, got [{grid_lo}, {grid_hi}]"
        )));
    }
    if n_points < 3 {
        return Err(Error::InvalidArgument(format!(
            "probe grid needs at least 3 points, got {n_points}"
        )));
    }
    if spacing == Spacing::Log && grid_lo <= 0.0 {
        return Err(Error::InvalidArgument("log-spaced grid needs grid_lo > 0".into()));
    }
    let steps = (n_points - 1) as f64;
    let point = |i: usize| -> f64 {
        let t = i as f64 / steps;
        match spacing {
            Spacing::Linear => grid_lo + t * (grid_hi - grid_lo),
            Spacing::Log => (grid_lo.ln() + t * (grid_hi.ln() - grid_lo.ln())).exp(),
        }
    };
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::ProbeFailure { x })
        }
    };

    let mut min = f64::INFINITY;
    for i in 1..n_points - 1 {
        let x = point(i);
        let delta = match spacing {
            Spacing::Linear => (grid_hi - grid_lo) / steps,
            // backward step is the smaller one on a geometric grid
            Spacing::Log => x - point(i - 1),
        };
        let second = eval(x - delta)? - 2.0 * eval(x)? + eval(x + delta)?;
        min = min.min(second);
    }
    Ok(min)
}
