//! Symmetric divergence measures on finite alphabets, the one-parameter
//! ζ_s and ξ_s families that interpolate them, the generating functions
//! behind them, and lower/upper bounds on the Bayes probability of error of
//! a two-class problem.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bounds;
pub mod cli;
pub mod divergence;
pub mod error;
pub mod generator;
pub mod numeric;
pub mod sampling;
pub mod verify;

pub use bounds::{
    average_f_divergence, averaged_family, bayes_error, bound_report, comparison_check, generic_upper_bound,
    kailath_bound, lower_bound_family, posteriors, toussaint_bounds, upper_bound_difference, upper_bound_xi,
    upper_bound_zeta, BoundEntry, BoundKind, BoundReport, Comparison, Family, PosteriorPoint, ToussaintBounds,
    TwoClassProblem,
};
pub use divergence::{
    base_measure, chain_check, difference_measure, measure, validate, xi, zeta, Chain, ChainReport, DiffId,
    DiscreteDistribution, MeasureId, Support,
};
pub use error::{Error, Result};
pub use generator::{csiszar_sum, generator, limit_constants, star, GeneratingFunction, LimitConstants};
pub use numeric::{convexity_probe, invert_decreasing, x_ln_x, OrderParameter, Regime, Spacing};
