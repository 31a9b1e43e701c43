//! Seeded random distributions and two-class problems.
//!
//! Trial `i` of a run with seed `s` draws from a ChaCha8 stream keyed by
//! `(s, i)`, so any single trial can be replayed without the others.
//! Masses are normalized `exp(Z)` with `Z ~ N(0, 1)`; priors are
//! `U(0.05, 0.95)`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bounds::TwoClassProblem;
use crate::divergence::{validate, DiscreteDistribution, Support};

/// Default seed for randomized checks.
pub const DEFAULT_SEED: u64 = 42;

/// Largest alphabet drawn for random problems.
pub const PROBLEM_K_MAX: usize = 16;

/// Independent RNG for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Strictly positive masses summing to 1 within rounding.
pub fn random_simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            z.exp()
        })
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// A strict pair on a common alphabet of size `n` drawn from `2..=n_max`.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, n_max: usize) -> (DiscreteDistribution, DiscreteDistribution) {
    let n = rng.random_range(2..=n_max.max(2));
    let p = validate(&random_simplex(rng, n), Support::Strict).expect("normalized draw");
    let q = validate(&random_simplex(rng, n), Support::Strict).expect("normalized draw");
    (p, q)
}

/// A problem with `k` in `2..=k_max` outcomes and priors in `(0.05, 0.95)`.
pub fn random_problem<R: Rng + ?Sized>(rng: &mut R, k_max: usize) -> TwoClassProblem {
    let k = rng.random_range(2..=k_max.max(2));
    let p1: f64 = rng.random_range(0.05..0.95);
    let cond1 = random_simplex(rng, k);
    let cond2 = random_simplex(rng, k);
    TwoClassProblem::new((p1, 1.0 - p1), &cond1, &cond2).expect("valid random problem")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = random_simplex(&mut trial_rng(7, 3), 5);
        let b = random_simplex(&mut trial_rng(7, 3), 5);
        let c = random_simplex(&mut trial_rng(7, 4), 5);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn draws_are_valid() {
        let mut rng = trial_rng(1, 0);
        for _ in 0..200 {
            let (p, q) = random_pair(&mut rng, 64);
            assert_eq!(p.len(), q.len());
            assert!((2..=64).contains(&p.len()));
            let prob = random_problem(&mut rng, PROBLEM_K_MAX);
            assert!((2..=PROBLEM_K_MAX).contains(&prob.outcomes()));
            let (p1, _) = prob.priors();
            assert!((0.05..0.95).contains(&p1));
        }
    }
}
