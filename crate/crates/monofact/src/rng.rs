//! Seeded randomness with a stability guarantee.
//!
//! Every sampler in this crate draws from [`ChaCha8Rng`], whose output
//! stream is documented by the `rand_chacha` crate to be reproducible
//! across platforms and versions. Bounded sampling and shuffling are
//! implemented here rather than through `rand`'s distribution helpers so
//! that golden outputs cannot drift with upstream algorithm changes.
//!
//! Independent Monte Carlo trials use `(seed, trial)`: the seed picks the
//! key, the trial index picks the ChaCha stream.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator for a given seed, stream 0.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for trial `trial` of a run seeded with `seed`; distinct trials
/// give independent streams of the same keyed generator.
pub fn rng_for_trial(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform draw from `0..bound` by rejection, unbiased for every bound.
pub fn uniform_below(rng: &mut ChaCha8Rng, bound: u64) -> u64 {
    assert!(bound > 0);
    let threshold = bound.wrapping_neg() % bound;
    loop {
        let r = rng.next_u64();
        if r >= threshold {
            return r % bound;
        }
    }
}

/// Fisher-Yates shuffle driven by [`uniform_below`].
pub fn shuffle<T>(rng: &mut ChaCha8Rng, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = uniform_below(rng, (i + 1) as u64) as usize;
        items.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..8).map(|_| rng_for_trial(7, 3).next_u64()).collect();
        let b: Vec<u64> = (0..8).map(|_| rng_for_trial(7, 3).next_u64()).collect();
        assert_eq!(a, b);
        assert_ne!(rng_for_trial(7, 3).next_u64(), rng_for_trial(7, 4).next_u64());
        assert_ne!(rng_from_seed(7).next_u64(), rng_from_seed(8).next_u64());
    }

    #[test]
    fn uniform_below_covers_range() {
        let mut rng = rng_from_seed(1);
        let mut seen = [false; 5];
        for _ in 0..200 {
            seen[uniform_below(&mut rng, 5) as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
