//! Trial runner for randomised identity checks.
//!
//! Every check that samples random inputs derives one RNG per trial from a
//! master seed, so the outcome is independent of evaluation order and of
//! whether the trials run in parallel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Deterministic per-trial RNG.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Run `n` independent trials, in parallel when the `parallel` feature is on.
pub fn run_trials<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_trials_seq(n, f)
    }
}

/// Sequential reference runner (also the benchmark baseline).
pub fn run_trials_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Fold trial deviations into (max deviation, all-pass).
pub fn max_deviation(devs: &[f64], tol: f64) -> (f64, bool) {
    let max = devs.iter().copied().fold(0.0, f64::max);
    (max, max.is_finite() && max <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn trials_are_order_independent() {
        let f = |i: usize| {
            let mut rng = trial_rng(7, i);
            rng.gen_range(-1.0f64..1.0)
        };
        let par = run_trials(64, f);
        let seq = run_trials_seq(64, f);
        assert_eq!(par, seq);
    }
}
