//! Rational score sequences via integer blow-up.
//!
//! Each vertex `i` becomes a cluster of `m` vertices with integer scores
//! `m * d_i + b_l`, where `b = (0, 1, ..., m-1)` is the transitive score
//! sequence and `m` is the lcm of the denominators. The lifted sequence is
//! realized as an ordinary tournament, and the weight between two clusters is
//! the fraction of their `m^2` cross pairs pointing one way. Row sums come
//! out to exactly `d_i`.
//!
//! Vertex `l` of cluster `i` (both 0-based) is vertex `i * m + l`.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::check_fast;
use crate::rational::Rational;
use crate::realize::{realize_integer_with, RealizeOptions};
use crate::sequence::{as_list, ScoreSequence};
use crate::tournament::{GeneralizedTournament, Tournament};

/// Default limit on `m * n`, the blow-up vertex count.
pub const DEFAULT_VERTEX_CAP: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlowupOptions {
    pub vertex_cap: usize,
    pub realize: RealizeOptions,
}

impl Default for BlowupOptions {
    fn default() -> Self {
        BlowupOptions {
            vertex_cap: DEFAULT_VERTEX_CAP,
            realize: RealizeOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupPlan {
    pub n: usize,
    pub m: u64,
    #[serde(with = "as_list")]
    pub base: ScoreSequence,
    #[serde(with = "as_list")]
    pub targets: ScoreSequence,
    #[serde(with = "as_list")]
    pub lifted: ScoreSequence,
}

impl BlowupPlan {
    pub fn vertex_count(&self) -> usize {
        self.lifted.len()
    }

    /// Re-derives every field relation of the plan from `targets` and `m`.
    pub fn verify(&self) -> Result<()> {
        let m = Rational::from(self.m);
        let lcm = BigInt::from(self.targets.lcm_denominators());
        if self.m == 0 || !(BigInt::from(self.m) % &lcm).is_zero() {
            return Err(Error::NotDivisible {
                m: self.m,
                lcm: lcm.to_string(),
            });
        }
        if self.targets.len() != self.n
            || self.base != base_sequence(self.m)?
            || self.lifted.len() as u64 != self.n as u64 * self.m
        {
            return Err(Error::SizeMismatch("plan fields are inconsistent".into()));
        }
        for (i, d) in self.targets.iter().enumerate() {
            for (l, b) in self.base.iter().enumerate() {
                if self.lifted[i * self.m as usize + l] != &m * d + b {
                    return Err(Error::SizeMismatch(format!(
                        "lifted entry for cluster {} slot {} is wrong",
                        i + 1,
                        l + 1
                    )));
                }
            }
        }
        check_fast(&self.lifted)?.into_result()
    }
}

/// `(0, 1, ..., m-1)`, the score sequence of the transitive tournament.
pub fn base_sequence(m: u64) -> Result<ScoreSequence> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "blow-up factor must be positive".into(),
        ));
    }
    Ok((0..m).map(Rational::from).collect())
}

pub fn blowup_scores(targets: &ScoreSequence, m: u64) -> Result<BlowupPlan> {
    check_fast(targets)?.into_result()?;
    let lcm = targets.lcm_denominators();
    if m == 0 || !(BigUint::from(m) % &lcm).is_zero() {
        return Err(Error::NotDivisible {
            m,
            lcm: lcm.to_string(),
        });
    }
    let base = base_sequence(m)?;
    let scale = Rational::from(m);
    let lifted: ScoreSequence = targets
        .iter()
        .flat_map(|d| {
            let cluster = &scale * d;
            base.iter().map(move |b| &cluster + b)
        })
        .collect();

    // Holds for every feasible target; a failure here is a bug.
    if !check_fast(&lifted)?.feasible {
        return Err(Error::Internal(
            "lifted sequence failed the feasibility check".into(),
        ));
    }
    Ok(BlowupPlan {
        n: targets.len(),
        m,
        base,
        targets: targets.clone(),
        lifted,
    })
}

/// Averages a blown-up tournament back onto `n` clusters of size `m`.
pub fn cluster_average(h: &Tournament, n: usize, m: usize) -> Result<GeneralizedTournament> {
    if m == 0 || h.n() != n * m {
        return Err(Error::SizeMismatch(format!(
            "tournament has {} vertices, expected {n} clusters of {m}",
            h.n()
        )));
    }
    let cross = Rational::from((m * m) as u64);
    let mut weights = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                weights.push(Rational::zero());
                continue;
            }
            let count: u64 = (i * m..(i + 1) * m)
                .map(|v| h.score_into(v, j * m, (j + 1) * m))
                .sum();
            weights.push(&Rational::from(count) / &cross);
        }
    }
    GeneralizedTournament::new(n, weights)
}

pub fn realize_rational(targets: &ScoreSequence) -> Result<GeneralizedTournament> {
    realize_rational_with(targets, BlowupOptions::default())
}

/// Blow-up, integer realization, cluster averaging.
///
/// Every weight of the result has a denominator dividing `m^2`.
pub fn realize_rational_with(
    targets: &ScoreSequence,
    options: BlowupOptions,
) -> Result<GeneralizedTournament> {
    check_fast(targets)?.into_result()?;
    let n = targets.len();
    let lcm = targets.lcm_denominators();
    let vertices = &lcm * BigUint::from(n);
    let m = match (lcm.to_u64(), vertices.to_usize()) {
        (Some(m), Some(v)) if v <= options.vertex_cap => m,
        _ => {
            return Err(Error::BlowupTooLarge {
                vertices: vertices.to_string(),
                cap: options.vertex_cap,
            })
        }
    };
    let plan = blowup_scores(targets, m)?;
    let h = realize_integer_with(&plan.lifted, options.realize)?;
    let g = cluster_average(&h, n, m as usize)?;
    if g.scores() != *targets {
        return Err(Error::Internal(
            "cluster averages do not reproduce the targets".into(),
        ));
    }
    Ok(g)
}

/// Evaluates the three partition inequalities behind the lifted sequence's
/// feasibility, for clusters hit `j_1 <= ... <= j_n` times:
///
/// 1. `sum j_i d_i >= sum j_i (n - i)`
/// 2. base contribution, at worst the `j_i` smallest base entries per cluster,
///    `>= (sum j_i^2 - sum j_i) / 2`
/// 3. `m sum j_i (n - i) >= ((sum j_i)^2 - sum j_i^2) / 2`
///
/// `targets[i]` is paired with `j[i]` in the given order.
pub fn check_partition_inequalities(targets: &ScoreSequence, m: u64, j: &[u64]) -> Result<bool> {
    let n = targets.len();
    if j.len() != n {
        return Err(Error::MalformedPartition(format!(
            "{} counts for {n} clusters",
            j.len()
        )));
    }
    if j.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::MalformedPartition(
            "counts must be non-decreasing".into(),
        ));
    }
    if let Some(&big) = j.iter().find(|&&x| x > m) {
        return Err(Error::MalformedPartition(format!(
            "count {big} exceeds cluster size {m}"
        )));
    }
    let base = base_sequence(m)?;
    let mut sorted_base: Vec<&Rational> = base.iter().collect();
    sorted_base.sort();
    let mut base_prefix = vec![Rational::zero()];
    for b in sorted_base {
        let next = base_prefix.last().expect("non-empty") + b;
        base_prefix.push(next);
    }

    let jr: Vec<Rational> = j.iter().map(|&x| Rational::from(x)).collect();
    let weight_to_later: Vec<Rational> =
        (0..n).map(|i| Rational::from((n - 1 - i) as u64)).collect();

    let lhs1: Rational = jr.iter().zip(targets).map(|(a, d)| a * d).sum();
    let rhs1: Rational = jr.iter().zip(&weight_to_later).map(|(a, w)| a * w).sum();

    let sum_j: Rational = jr.iter().sum();
    let sum_sq: Rational = jr.iter().map(|a| a * a).sum();
    let half = Rational::new(1, 2)?;

    let lhs2: Rational = j.iter().map(|&x| base_prefix[x as usize].clone()).sum();
    let rhs2 = &half * &(&sum_sq - &sum_j);

    let lhs3 = Rational::from(m) * &rhs1;
    let rhs3 = &half * &(&sum_j * &sum_j - &sum_sq);

    Ok(lhs1 >= rhs1 && lhs2 >= rhs2 && lhs3 >= rhs3)
}
