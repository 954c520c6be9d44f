//! Nearby rational sequences with small denominators.
//!
//! [`perturb`] lowers a maximum entry by less than `1/m`, spreads the freed
//! mass over the middle entries and closes the total with the last entry.
//! Every pick is the simplest rational in its open interval, so outputs are
//! deterministic and denominators stay small. [`approximate_realize`] runs
//! perturbation plus blow-up realization over a schedule of accuracies.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::blowup::{realize_rational_with, BlowupOptions};
use crate::error::{Error, Result};
use crate::feasibility::{check_fast, max_deficit_excluding_first};
use crate::rational::{binom2_rational, Rational};
use crate::sequence::{as_list, ScoreSequence};
use crate::tournament::GeneralizedTournament;

/// The rational of least denominator in the open interval `(lo, hi)`; among
/// integers, the one of least magnitude.
///
/// Descends the Stern–Brocot tree via continued-fraction steps, so the cost
/// is proportional to the continued-fraction length of the endpoints.
pub fn simplest_rational_in(lo: &Rational, hi: &Rational) -> Result<Rational> {
    if lo >= hi {
        return Err(Error::EmptyInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let first_above: BigInt = lo.floor() + 1;
    let last_below: BigInt = hi.ceil() - 1;
    if first_above <= last_below {
        let k = if first_above.is_positive() {
            first_above
        } else if last_below.is_negative() {
            last_below
        } else {
            BigInt::zero()
        };
        return Ok(Rational::from(k));
    }
    // No integer inside: (lo, hi) sits in [a, a + 1].
    let a = lo.floor();
    let shift = Rational::from(a.clone());
    let frac_lo = lo - &shift;
    let frac_hi = hi - &shift;
    let x = simplest_above_one(&recip(&frac_hi), frac_lo.recip().as_ref());
    Ok(shift + recip(&x))
}

fn recip(x: &Rational) -> Rational {
    x.recip().expect("nonzero")
}

/// Simplest rational in `(lo, hi)` for `lo >= 1`; `hi = None` means infinity.
fn simplest_above_one(lo: &Rational, hi: Option<&Rational>) -> Rational {
    let mut terms: Vec<BigInt> = Vec::new();
    let mut lo = lo.clone();
    let mut hi = hi.cloned();
    loop {
        let candidate: BigInt = lo.floor() + 1;
        let fits = match &hi {
            None => true,
            Some(h) => Rational::from(candidate.clone()) < *h,
        };
        if fits {
            terms.push(candidate);
            break;
        }
        // lo and hi share the integer part a; recurse on 1 / (x - a).
        let a = lo.floor();
        let shift = Rational::from(a.clone());
        let h = hi.expect("finite when no integer fits");
        let next_lo = recip(&(&h - &shift));
        let next_hi = (&lo - &shift).recip();
        terms.push(a);
        lo = next_lo;
        hi = next_hi;
    }
    // Fold the continued fraction [t0; t1, ..., tk].
    let mut value = Rational::from(terms.pop().expect("at least one term"));
    while let Some(t) = terms.pop() {
        value = Rational::from(t) + recip(&value);
    }
    value
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbResult {
    pub m: u64,
    #[serde(with = "as_list")]
    pub targets: ScoreSequence,
    #[serde(with = "as_list")]
    pub output: ScoreSequence,
    /// Original position of each entry of the permuted sequence (maximum
    /// first). 1-based in JSON.
    #[serde(with = "crate::feasibility::one_based")]
    pub permutation: Vec<usize>,
    pub sup_error: Rational,
}

impl PerturbResult {
    /// Re-checks feasibility, the full-sum equality and the `1/m` bound.
    pub fn verify(&self) -> Result<()> {
        if self.output.len() != self.targets.len() {
            return Err(Error::SizeMismatch(
                "output and targets differ in length".into(),
            ));
        }
        check_fast(&self.output)?.into_result()?;
        let sup = sup_error(&self.output, &self.targets);
        if sup != self.sup_error {
            return Err(Error::Internal(format!(
                "recorded sup error {} differs from actual {sup}",
                self.sup_error
            )));
        }
        if !self.output.is_empty() && self.m > 0 && sup >= recip(&Rational::from(self.m)) {
            return Err(Error::Internal(format!(
                "sup error {sup} is not below 1/{}",
                self.m
            )));
        }
        Ok(())
    }
}

fn sup_error(a: &ScoreSequence, b: &ScoreSequence) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Replaces `targets` by a feasible sequence within `1/m` of it, entry by
/// entry, with small denominators.
///
/// Applied to rational input too; that is the denominator-reduction use.
pub fn perturb(targets: &ScoreSequence, m: u64) -> Result<PerturbResult> {
    if m == 0 {
        return Err(Error::InvalidArgument("accuracy m must be positive".into()));
    }
    check_fast(targets)?.into_result()?;
    let n = targets.len();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "perturb needs at least one entry".into(),
        ));
    }
    if n == 1 {
        return Ok(PerturbResult {
            m,
            targets: targets.clone(),
            output: targets.clone(),
            permutation: vec![0],
            sup_error: Rational::zero(),
        });
    }

    // First maximum to the front, everything else in order.
    let top = (0..n).fold(
        0,
        |best, i| if targets[i] > targets[best] { i } else { best },
    );
    let mut permutation = vec![top];
    permutation.extend((0..n).filter(|&i| i != top));
    let d: Vec<&Rational> = permutation.iter().map(|&i| &targets[i]).collect();
    let permuted: ScoreSequence = d.iter().map(|&x| x.clone()).collect();

    let slack = max_deficit_excluding_first(&permuted)?;
    let step = recip(&Rational::from(m));
    let lower = std::cmp::max(d[0] - &step, slack);
    let first = simplest_rational_in(&lower, d[0])
        .map_err(|e| Error::Internal(format!("no room to lower the maximum: {e}")))?;
    let freed = d[0] - &first;
    let spread = &freed / &Rational::from((n - 1) as u64);

    let mut picks = vec![first];
    for x in &d[1..n - 1] {
        picks.push(simplest_rational_in(x, &(*x + &spread))?);
    }
    let closing = binom2_rational(n) - picks.iter().sum::<Rational>();
    picks.push(closing);

    let mut output = vec![Rational::zero(); n];
    for (k, &i) in permutation.iter().enumerate() {
        output[i] = picks[k].clone();
    }
    let output = ScoreSequence::new(output);
    let result = PerturbResult {
        m,
        sup_error: sup_error(&output, targets),
        targets: targets.clone(),
        output,
        permutation,
    };
    result
        .verify()
        .map_err(|e| Error::Internal(format!("perturbation postcondition failed: {e}")))?;
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxRecord {
    pub m: u64,
    #[serde(with = "as_list")]
    pub perturbed: ScoreSequence,
    pub sup_error: Rational,
    /// Decimal string; may exceed 64 bits.
    #[serde(with = "big_string")]
    pub lcm_denominator: BigUint,
    #[serde(with = "big_string")]
    pub vertices: BigUint,
    /// Absent when skipped or elided.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tournament: Option<GeneralizedTournament>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl ApproxRecord {
    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }
}

/// Serialized as the bare array of records.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<ApproxRecord>", into = "Vec<ApproxRecord>")]
pub struct ApproxRun {
    pub schedule: Vec<u64>,
    pub records: Vec<ApproxRecord>,
}

impl From<Vec<ApproxRecord>> for ApproxRun {
    fn from(records: Vec<ApproxRecord>) -> Self {
        ApproxRun {
            schedule: records.iter().map(|r| r.m).collect(),
            records,
        }
    }
}

impl From<ApproxRun> for Vec<ApproxRecord> {
    fn from(run: ApproxRun) -> Self {
        run.records
    }
}

impl ApproxRun {
    /// Drops the weight matrices, keeping everything else.
    pub fn without_weights(mut self) -> Self {
        for r in &mut self.records {
            r.tournament = None;
        }
        self
    }
}

pub fn approximate_realize(targets: &ScoreSequence, schedule: &[u64]) -> Result<ApproxRun> {
    approximate_realize_with(targets, schedule, BlowupOptions::default())
}

/// Perturbs and realizes once per accuracy in `schedule`.
///
/// Records whose blow-up exceeds the vertex cap are kept but marked skipped.
/// The weight matrices are recorded as computed; a finite run says nothing
/// about their convergence.
pub fn approximate_realize_with(
    targets: &ScoreSequence,
    schedule: &[u64],
    options: BlowupOptions,
) -> Result<ApproxRun> {
    if schedule.contains(&0) || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "schedule must be strictly increasing positive integers".into(),
        ));
    }
    check_fast(targets)?.into_result()?;
    let mut records = Vec::with_capacity(schedule.len());
    for &m in schedule {
        let p = perturb(targets, m)?;
        let lcm = p.output.lcm_denominators();
        let vertices = &lcm * BigUint::from(p.output.len());
        let (tournament, skipped) = match realize_rational_with(&p.output, options) {
            Ok(g) => (Some(g), None),
            Err(e @ Error::BlowupTooLarge { .. }) => (None, Some(e.to_string())),
            Err(e) => return Err(e),
        };
        records.push(ApproxRecord {
            m,
            perturbed: p.output,
            sup_error: p.sup_error,
            lcm_denominator: lcm,
            vertices,
            tournament,
            skipped,
        });
    }
    Ok(ApproxRun {
        schedule: schedule.to_vec(),
        records,
    })
}

impl ApproxRecord {
    /// Checks the bound and, when present, the weight matrix row sums.
    pub fn verify(&self) -> Result<()> {
        check_fast(&self.perturbed)?.into_result()?;
        if self.sup_error >= recip(&Rational::from(self.m.max(1))) && !self.perturbed.is_empty() {
            return Err(Error::Internal(format!(
                "sup error {} is not below 1/{}",
                self.sup_error, self.m
            )));
        }
        if self.lcm_denominator != self.perturbed.lcm_denominators() {
            return Err(Error::Internal("recorded lcm is wrong".into()));
        }
        if let Some(g) = &self.tournament {
            if g.scores() != self.perturbed {
                return Err(Error::Internal(
                    "weight matrix row sums differ from the perturbed sequence".into(),
                ));
            }
        }
        Ok(())
    }
}

mod big_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::check_exhaustive;
    use crate::rational::rat;

    /// Smallest denominator first, then smallest |numerator|, by enumeration.
    fn enumerate_simplest(lo: &Rational, hi: &Rational) -> Rational {
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

    #[test]
    fn simplest_rational_examples() {
        let cases = [
            ((1, 2), (7, 10), rat(2, 3)),
            ((11, 10), (6, 5), rat(7, 6)),
            ((3, 2), (5, 2), rat(2, 1)),
            ((6, 5), (73, 60), rat(17, 14)),
            ((1, 4), (1, 2), rat(1, 3)),
        ];
        for ((a, b), (c, d), want) in cases {
            let (lo, hi) = (rat(a, b), rat(c, d));
            assert_eq!(enumerate_simplest(&lo, &hi), want);
            assert_eq!(simplest_rational_in(&lo, &hi).unwrap(), want);
        }
    }

    #[test]
    fn simplest_rational_edge_cases() {
        assert_eq!(
            simplest_rational_in(&rat(-1, 2), &rat(1, 2)).unwrap(),
            rat(0, 1)
        );
        assert_eq!(
            simplest_rational_in(&rat(-7, 10), &rat(-1, 2)).unwrap(),
            rat(-2, 3)
        );
        assert_eq!(
            simplest_rational_in(&rat(-5, 2), &rat(-1, 2)).unwrap(),
            rat(-1, 1)
        );
        assert_eq!(
            simplest_rational_in(&rat(0, 1), &rat(1, 1)).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            simplest_rational_in(&rat(2, 1), &rat(3, 1)).unwrap(),
            rat(5, 2)
        );
        assert_eq!(
            simplest_rational_in(&rat(0, 1), &rat(1, 1000)).unwrap(),
            rat(1, 1001)
        );
        assert!(matches!(
            simplest_rational_in(&rat(1, 2), &rat(1, 2)),
            Err(Error::EmptyInterval { .. })
        ));
        assert!(simplest_rational_in(&rat(1, 1), &rat(0, 1)).is_err());
    }

    #[test]
    fn perturb_worked_example() {
        let targets = ScoreSequence::new(vec![rat(6, 5), rat(6, 5), rat(3, 5)]);
        let p = perturb(&targets, 10).unwrap();
        assert_eq!(p.output.as_slice(), &[rat(7, 6), rat(17, 14), rat(13, 21)]);
        assert_eq!(p.sup_error, rat(1, 30));
        assert_eq!(p.permutation, vec![0, 1, 2]);
        assert!(check_exhaustive(&p.output).unwrap().feasible);
        assert_eq!(p.output.lcm_denominators(), BigUint::from(42u32));
    }

    #[test]
    fn perturb_small_cases() {
        let single = perturb(&ScoreSequence::from_integers([0]), 7).unwrap();
        assert_eq!(single.output, ScoreSequence::from_integers([0]));
        assert!(single.sup_error.is_zero());

        let halves = ScoreSequence::new(vec![rat(1, 2), rat(1, 2)]);
        let p = perturb(&halves, 4).unwrap();
        assert_eq!(p.output.as_slice(), &[rat(1, 3), rat(2, 3)]);
        assert_eq!(p.sup_error, rat(1, 6));
    }

    #[test]
    fn perturb_moves_first_maximum_and_restores_order() {
        let targets = ScoreSequence::new(vec![rat(1, 2), rat(3, 2), rat(1, 1)]);
        let p = perturb(&targets, 10).unwrap();
        assert_eq!(p.permutation, vec![1, 0, 2]);
        assert!(p.output[1] < targets[1]);
        assert!(p.output[0] > targets[0]);
        assert!(p.output[2] > targets[2]);
        p.verify().unwrap();
    }

    #[test]
    fn perturb_errors() {
        assert!(matches!(
            perturb(&ScoreSequence::from_integers([0, 0, 2]), 3),
            Err(Error::Infeasible(_))
        ));
        assert!(perturb(&ScoreSequence::from_integers([1, 1, 1]), 0).is_err());
        assert!(perturb(&ScoreSequence::default(), 3).is_err());
    }

    #[test]
    fn approx_run_records() {
        let targets = ScoreSequence::new(vec![rat(6, 5), rat(6, 5), rat(3, 5)]);
        let run = approximate_realize(&targets, &[10, 20, 40]).unwrap();
        assert_eq!(run.schedule, vec![10, 20, 40]);
        for r in &run.records {
            r.verify().unwrap();
            assert!(r.sup_error < recip(&Rational::from(r.m)));
            assert_eq!(r.tournament.as_ref().unwrap().scores(), r.perturbed);
        }
        assert!(approximate_realize(&targets, &[10, 10]).is_err());
        assert!(approximate_realize(&targets, &[0, 10]).is_err());
    }

    #[test]
    fn approx_run_skips_oversized_records() {
        let targets = ScoreSequence::new(vec![rat(6, 5), rat(6, 5), rat(3, 5)]);
        let opts = BlowupOptions {
            vertex_cap: 130,
            ..Default::default()
        };
        let run = approximate_realize_with(&targets, &[10, 1000], opts).unwrap();
        assert!(!run.records[0].is_skipped());
        assert!(run.records[1].is_skipped());
        assert!(run.records[1].tournament.is_none());
    }

    #[test]
    fn approx_run_json_is_a_record_array() {
        let run = approximate_realize(&ScoreSequence::from_integers([0]), &[2, 4]).unwrap();
        let json = serde_json::to_string(&run).unwrap();
        assert!(json.starts_with('['));
        let back: ApproxRun = serde_json::from_str(&json).unwrap();
        assert_eq!(back, run);
        assert_eq!(run.records[0].tournament.as_ref().unwrap().n(), 1);
    }
}
