//! The score-sequence condition: every index set `J` has score sum at least
//! `C(|J|, 2)`, with equality on the full set.
//!
//! [`check_fast`] uses the ascending sorted-prefix reduction (for a fixed
//! size the smallest entries give the smallest sum). [`check_exhaustive`]
//! enumerates all subsets and serves as its oracle.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{binom2_rational, Rational};
use crate::sequence::ScoreSequence;

/// Largest `n` accepted by [`check_exhaustive`] unless overridden.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// Some subset sums to less than `C(|J|, 2)`.
    SubsetDeficit,
    /// The full sequence does not sum to `C(n, 2)`.
    FullSumMismatch,
}

/// Certificate that a sequence violates the condition.
///
/// `indices` are 0-based and sorted; JSON uses 1-based positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "one_based")]
    pub indices: Vec<usize>,
    /// `C(|indices|, 2)` minus the sum over `indices`.
    pub deficit: Rational,
    pub kind: WitnessKind,
}

impl Witness {
    /// Re-checks the witness against `seq`.
    pub fn certifies(&self, seq: &ScoreSequence) -> bool {
        if self.indices.iter().any(|&i| i >= seq.len())
            || self.indices.windows(2).any(|w| w[0] >= w[1])
        {
            return false;
        }
        let sum: Rational = self.indices.iter().map(|&i| &seq[i]).sum();
        let deficit = binom2_rational(self.indices.len()) - sum;
        if deficit != self.deficit {
            return false;
        }
        match self.kind {
            WitnessKind::SubsetDeficit => deficit > 0,
            WitnessKind::FullSumMismatch => self.indices.len() == seq.len() && !deficit.is_zero(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let positions: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        match self.kind {
            WitnessKind::SubsetDeficit => write!(
                f,
                "positions {{{}}} fall short of C({}, 2) by {}",
                positions.join(", "),
                self.indices.len(),
                self.deficit
            ),
            WitnessKind::FullSumMismatch => write!(
                f,
                "total differs from C({}, 2) by {}",
                self.indices.len(),
                self.deficit
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl FeasibilityVerdict {
    pub fn feasible() -> Self {
        FeasibilityVerdict {
            feasible: true,
            witness: None,
        }
    }

    pub fn infeasible(witness: Witness) -> Self {
        FeasibilityVerdict {
            feasible: false,
            witness: Some(witness),
        }
    }

    /// `Ok(())` when feasible, `Err(Error::Infeasible)` otherwise.
    pub fn into_result(self) -> Result<()> {
        match self.witness {
            None => Ok(()),
            Some(w) => Err(Error::Infeasible(w)),
        }
    }
}

fn full_sum_check(seq: &ScoreSequence) -> FeasibilityVerdict {
    let deficit = binom2_rational(seq.len()) - seq.total();
    if deficit.is_zero() {
        FeasibilityVerdict::feasible()
    } else {
        FeasibilityVerdict::infeasible(Witness {
            indices: (0..seq.len()).collect(),
            deficit,
            kind: WitnessKind::FullSumMismatch,
        })
    }
}

/// Sorted-prefix check in `O(n log n)` rational operations.
///
/// Reports the shortest violating ascending prefix (mapped back to original
/// positions), or a full-sum mismatch when every proper prefix passes.
pub fn check_fast(seq: &ScoreSequence) -> Result<FeasibilityVerdict> {
    seq.validate()?;
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by(|&a, &b| seq[a].cmp(&seq[b]));

    let mut prefix = Rational::zero();
    for k in 1..seq.len() {
        prefix += &seq[order[k - 1]];
        let needed = binom2_rational(k);
        if prefix < needed {
            let mut indices = order[..k].to_vec();
            indices.sort_unstable();
            return Ok(FeasibilityVerdict::infeasible(Witness {
                indices,
                deficit: needed - prefix,
                kind: WitnessKind::SubsetDeficit,
            }));
        }
    }
    Ok(full_sum_check(seq))
}

pub fn check_exhaustive(seq: &ScoreSequence) -> Result<FeasibilityVerdict> {
    check_exhaustive_with_cap(seq, DEFAULT_EXHAUSTIVE_CAP)
}

/// Literal check over all `2^n` subsets.
///
/// Returns the lexicographically smallest violating subset if any; otherwise
/// checks the full-set equality.
pub fn check_exhaustive_with_cap(seq: &ScoreSequence, cap: usize) -> Result<FeasibilityVerdict> {
    let n = seq.len();
    if n > cap || n >= usize::BITS as usize - 1 {
        return Err(Error::TooLarge {
            what: "exhaustive feasibility check",
            n,
            cap,
        });
    }
    seq.validate()?;

    // Scale by the common denominator so subset sums are integers.
    let scale = BigInt::from(seq.lcm_denominators());
    let scaled: Vec<BigInt> = seq
        .iter()
        .map(|x| x.numer() * (&scale / x.denom()))
        .collect();
    let thresholds: Vec<BigInt> = (0..=n)
        .map(|k| binom2_rational(k).numer() * &scale)
        .collect();

    let small: Option<(Vec<i128>, Vec<i128>)> = scaled
        .iter()
        .map(BigInt::to_i128)
        .collect::<Option<Vec<_>>>()
        .zip(
            thresholds
                .iter()
                .map(BigInt::to_i128)
                .collect::<Option<Vec<_>>>(),
        )
        .filter(|(vals, _)| {
            // subset sums must not overflow
            vals.iter()
                .try_fold(0i128, |acc, v| acc.checked_add(*v))
                .is_some()
        });

    let violation = match small {
        Some((vals, limits)) => smallest_violating_subset(&vals, &limits),
        None => smallest_violating_subset(&scaled, &thresholds),
    };

    if let Some((indices, scaled_deficit)) = violation {
        let deficit = Rational::new(scaled_deficit, scale).expect("positive scale");
        return Ok(FeasibilityVerdict::infeasible(Witness {
            indices,
            deficit,
            kind: WitnessKind::SubsetDeficit,
        }));
    }
    Ok(full_sum_check(seq))
}

fn smallest_violating_subset<T>(vals: &[T], thresholds: &[T]) -> Option<(Vec<usize>, BigInt)>
where
    T: Clone + Ord + Zero + for<'a> std::ops::Add<&'a T, Output = T> + Into<BigInt>,
{
    let n = vals.len();
    let mut sums: Vec<T> = Vec::with_capacity(1 << n);
    sums.push(T::zero());
    let mut best: Option<(Vec<usize>, BigInt)> = None;
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let sum = sums[mask & (mask - 1)].clone() + &vals[low];
        let size = mask.count_ones() as usize;
        if sum < thresholds[size] {
            let indices: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if best.as_ref().is_none_or(|(b, _)| indices < *b) {
                let deficit: BigInt = thresholds[size].clone().into() - sum.clone().into();
                best = Some((indices, deficit));
            }
        }
        sums.push(sum);
    }
    best
}

/// `max_{k = 0..n-2} [C(k+1, 2) - (sum of the k smallest among entries 2..n)]`.
///
/// This is the largest amount by which a proper subset `J` of the entries
/// after the first, together with a vertex of score zero, falls short of
/// `C(|J| + 1, 2)`. When the first entry is a maximum of a feasible
/// sequence it is strictly below that entry, which leaves room to lower it.
pub fn max_deficit_excluding_first(seq: &ScoreSequence) -> Result<Rational> {
    let n = seq.len();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "strict slack needs at least one entry".into(),
        ));
    }
    let mut rest: Vec<&Rational> = seq.iter().skip(1).collect();
    rest.sort();
    let mut best = Rational::zero();
    let mut prefix = Rational::zero();
    for (k, x) in rest.iter().take(n.saturating_sub(2)).enumerate() {
        prefix += *x;
        let gap = binom2_rational(k + 2) - &prefix;
        if gap > best {
            best = gap;
        }
    }
    Ok(best)
}

pub(crate) mod one_based {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(indices: &[usize], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(indices.iter().map(|i| i + 1))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
        let raw = Vec::<usize>::deserialize(d)?;
        raw.into_iter()
            .map(|i| {
                i.checked_sub(1)
                    .ok_or_else(|| serde::de::Error::custom("positions are 1-based"))
            })
            .collect()
    }
}
