//! Oracles and instance generators shared by the integration tests.
//!
//! Nothing here calls the code paths it is used to check: the oracles
//! enumerate subsets, denominators or orientations directly.
#![allow(dead_code)]

use std::path::PathBuf;

use moonforge::{binom2, rat, Rational, ScoreSequence};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Every sequence of length `n` with entries in `0..=max`, in odometer order.
pub fn all_integer_sequences(n: usize, max: i64) -> Vec<ScoreSequence> {
    let mut out = Vec::new();
    let mut digits = vec![0i64; n];
    loop {
        out.push(ScoreSequence::from_integers(digits.iter().copied()));
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            digits[k] += 1;
            if digits[k] <= max {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// The condition read literally: sum every subset with plain rational adds.
pub fn literally_feasible(seq: &ScoreSequence) -> bool {
    let n = seq.len();
    for mask in 0u32..(1 << n) {
        let sum: Rational = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| seq[i].clone())
            .sum();
        let need = Rational::from(binom2(u64::from(mask.count_ones())));
        if sum < need {
            return false;
        }
    }
    seq.total() == Rational::from(binom2(n as u64))
}

/// `max over proper J of {2..n}` of `C(|J| + 1, 2) - sum_J`, by enumeration.
pub fn brute_strict_slack(seq: &ScoreSequence) -> Rational {
    let rest = &seq.as_slice()[1..];
    let k = rest.len();
    let mut best: Option<Rational> = None;
    for mask in 0u32..(1 << k) {
        if k > 0 && mask == (1 << k) - 1 {
            continue;
        }
        let size = mask.count_ones() as u64;
        let sum: Rational = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| rest[i].clone())
            .sum();
        let gap = Rational::from(binom2(size + 1)) - sum;
        if best.as_ref().is_none_or(|b| gap > *b) {
            best = Some(gap);
        }
    }
    best.unwrap_or_else(Rational::zero)
}

/// Least denominator, then least |numerator|, by trying q = 1, 2, ...
pub fn enumerate_simplest(lo: &Rational, hi: &Rational) -> Rational {
    for q in 1i64.. {
        let qr = Rational::from(q);
        let start: BigInt = (lo * &qr).floor() + 1;
        let end: BigInt = (hi * &qr).ceil() - 1;
        if start <= end {
            let p = if start.is_positive() {
                start
            } else if end.is_negative() {
                end
            } else {
                BigInt::zero()
            };
            return Rational::new(p, q).unwrap();
        }
    }
    unreachable!()
}

/// Raw entries `p/q`, `q <= max_den`, with total near `C(n, 2)`.
pub fn random_rational_sequence(rng: &mut StdRng, n: usize, max_den: i64) -> ScoreSequence {
    let top = (n as i64 - 1).max(0);
    (0..n)
        .map(|_| {
            let q = rng.random_range(1..=max_den);
            let p = rng.random_range(0..=top * q);
            rat(p, q)
        })
        .collect()
}

/// A feasible sequence with mass moved between two entries: same total,
/// often infeasible.
pub fn shifted_feasible(rng: &mut StdRng, n: usize, den: u32) -> ScoreSequence {
    let base = moonforge::random_feasible(n, den, rng.random()).unwrap();
    if n < 2 {
        return base;
    }
    let mut v = base.into_vec();
    let i = rng.random_range(0..n);
    let j = (i + rng.random_range(1..n)) % n;
    let amount = rat(rng.random_range(1..=2 * i64::from(den)), i64::from(den));
    let amount = std::cmp::min(amount, v[j].clone());
    v[i] = &v[i] + &amount;
    v[j] = &v[j] - &amount;
    ScoreSequence::new(v)
}

/// A mix: raw random, feasible, and mass-shifted feasible sequences.
pub fn mixed_sequence(rng: &mut StdRng, max_n: usize, max_den: u32) -> ScoreSequence {
    let n = rng.random_range(1..=max_n);
    let den = rng.random_range(1..=max_den);
    match rng.random_range(0..3) {
        0 => random_rational_sequence(rng, n, i64::from(den)),
        1 => moonforge::random_feasible(n, den, rng.random()).unwrap(),
        _ => shifted_feasible(rng, n, den),
    }
}

/// Non-decreasing counts in `0..=m`.
pub fn random_partition(rng: &mut StdRng, n: usize, m: u64) -> Vec<u64> {
    let mut j: Vec<u64> = (0..n).map(|_| rng.random_range(0..=m)).collect();
    j.sort_unstable();
    j
}

pub fn shuffle(rng: &mut StdRng, seq: &ScoreSequence) -> ScoreSequence {
    let mut v = seq.clone().into_vec();
    for i in (1..v.len()).rev() {
        let k = rng.random_range(0..=i);
        v.swap(i, k);
    }
    ScoreSequence::new(v)
}

pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

/// One or more invocations per verb; stdout is frozen in `tests/golden/<name>.json`.
#[rustfmt::skip]
pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase { name: "check_feasible", args: &["check", "--scores", "1,1,1"], code: 0 },
    GoldenCase { name: "check_infeasible", args: &["check", "--scores", "0,0,2"], code: 1 },
    GoldenCase { name: "check_full_sum", args: &["check", "--scores", "1,1,2"], code: 1 },
    GoldenCase { name: "check_file", args: &["check", "--in", "@data/worked.json"], code: 0 },
    GoldenCase { name: "realize_transitive", args: &["realize", "--scores", "0,1,2"], code: 0 },
    GoldenCase { name: "realize_regular5", args: &["realize", "--scores", "2,2,2,2,2"], code: 0 },
    GoldenCase { name: "realize_infeasible", args: &["realize", "--scores", "0,0"], code: 1 },
    GoldenCase { name: "blowup_weights", args: &["blowup", "--scores", "1/2,1/2,2"], code: 0 },
    GoldenCase { name: "blowup_plan", args: &["blowup", "--scores", "1/2,1/2,2", "--plan-only"], code: 0 },
    GoldenCase { name: "perturb_worked", args: &["perturb", "--scores", "6/5,6/5,3/5", "--m", "10"], code: 0 },
    GoldenCase { name: "perturb_decimal", args: &["perturb", "--scores", "1.41421356,1.41421356,0.17157288", "--m", "100"], code: 0 },
    GoldenCase { name: "approx_no_weights", args: &["approx", "--scores", "6/5,6/5,3/5", "--schedule", "10,20,40", "--no-weights"], code: 0 },
    GoldenCase { name: "approx_halves", args: &["approx", "--scores", "1/2,1/2", "--schedule", "2,4"], code: 0 },
    GoldenCase { name: "random_d4", args: &["random", "--n", "8", "--den", "4", "--seed", "42"], code: 0 },
    GoldenCase { name: "random_integer", args: &["random", "--n", "6", "--seed", "7"], code: 0 },
    GoldenCase { name: "verify_generalized", args: &["verify", "--in", "@golden/blowup_weights.json", "--scores", "1/2,1/2,2"], code: 0 },
    GoldenCase { name: "verify_tournament", args: &["verify", "--in", "@golden/realize_regular5.json", "--scores", "2,2,2,2,2"], code: 0 },
    GoldenCase { name: "verify_approx", args: &["verify", "--in", "@golden/approx_halves.json", "--scores", "1/2,1/2"], code: 0 },
    GoldenCase { name: "verify_mismatch", args: &["verify", "--in", "@golden/realize_regular5.json", "--scores", "3,2,2,2,1"], code: 1 },
];

pub fn tests_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

/// Expands `@rel/path` arguments to files under `tests/`.
pub fn expand_args(args: &[&str]) -> Vec<String> {
    args.iter()
        .map(|a| match a.strip_prefix('@') {
            Some(rel) => tests_dir().join(rel).to_string_lossy().into_owned(),
            None => a.to_string(),
        })
        .collect()
}

pub fn golden_path(name: &str) -> PathBuf {
    tests_dir().join("golden").join(format!("{name}.json"))
}
