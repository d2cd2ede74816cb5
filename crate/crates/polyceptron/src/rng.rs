//! Seeded randomness.
//!
//! Everything random in this crate flows through ChaCha8 so that a given
//! seed produces identical results on every platform. Independent concerns
//! within one seeded computation use distinct ChaCha streams
//! (`set_stream`) rather than sharing one draw sequence, so adding draws to
//! one concern never perturbs another.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator for `(seed, stream)`.
pub(crate) fn seeded_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// The trainers' shared weight initialization: K augmented weight vectors of
/// length `dim + 1`, every entry drawn independently and uniformly from
/// `[-0.5, 0.5]`, row-major, from stream 0 of the given seed.
///
/// Distinct random rows keep the least-index tie-break from freezing all
/// activity onto one hyperplane, which is what identical initial vectors
/// would do. Exposed so that reference implementations (for example a
/// hand-rolled perceptron in a test) can start from bit-identical weights.
pub fn initial_weights(dim: usize, k: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = seeded_stream(seed, 0);
    (0..k)
        .map(|_| (0..=dim).map(|_| rng.gen_range(-0.5..=0.5)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_weights_are_deterministic_and_in_range() {
        let a = initial_weights(7, 3, 42);
        let b = initial_weights(7, 3, 42);
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert!(a.iter().all(|row| row.len() == 8));
        assert!(a.iter().flatten().all(|&v| (-0.5..=0.5).contains(&v)));
        assert_ne!(a, initial_weights(7, 3, 43));
    }

    #[test]
    fn streams_are_independent() {
        let mut s0 = seeded_stream(1, 0);
        let mut s1 = seeded_stream(1, 1);
        let a: Vec<u64> = (0..4).map(|_| s0.gen()).collect();
        let b: Vec<u64> = (0..4).map(|_| s1.gen()).collect();
        assert_ne!(a, b);
    }
}
