//! Seeded instances that are feasible by construction.
//!
//! The generator is PCG32 (`rand_pcg::Pcg32`, XSH-RR 64/32) seeded through
//! `SeedableRng::seed_from_u64`, and bounded draws use rejection sampling on
//! `next_u32`. Both are fixed algorithms, so a seed reproduces the same
//! instance on every platform.

use rand_core::{RngCore, SeedableRng};
use rand_pcg::Pcg32;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sequence::ScoreSequence;
use crate::tournament::GeneralizedTournament;

/// Uniform integer in `0..bound` without modulo bias.
fn below(rng: &mut Pcg32, bound: u32) -> u32 {
    assert!(bound > 0);
    let range = u64::from(bound);
    let limit = (1u64 << 32) - (1u64 << 32) % range;
    loop {
        let x = u64::from(rng.next_u32());
        if x < limit {
            return (x % range) as u32;
        }
    }
}

/// A random generalized tournament with weights in `{0, 1/D, ..., D/D}`.
///
/// Pairs `i < j` are drawn in lexicographic order; `w(j, i) = 1 - w(i, j)`.
pub fn random_generalized(n: usize, denominator: u32, seed: u64) -> Result<GeneralizedTournament> {
    if denominator == 0 || denominator == u32::MAX {
        return Err(Error::InvalidArgument(
            "denominator bound must be in 1..u32::MAX".into(),
        ));
    }
    let mut rng = Pcg32::seed_from_u64(seed);
    let mut weights = vec![Rational::zero(); n * n];
    let one = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            let k = below(&mut rng, denominator + 1);
            let w = Rational::new(k, denominator)?;
            weights[j * n + i] = &one - &w;
            weights[i * n + j] = w;
        }
    }
    GeneralizedTournament::new(n, weights)
}

/// Row sums of [`random_generalized`]; always passes the feasibility check.
/// `denominator = 1` gives ordinary tournament score sequences.
pub fn random_feasible(n: usize, denominator: u32, seed: u64) -> Result<ScoreSequence> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(random_generalized(n, denominator, seed)?.scores())
}
