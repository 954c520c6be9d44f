//! Exact rational scalar used for every score and weight in the crate.
//!
//! `Rational` wraps a normalized big rational (`den > 0`, `gcd(|num|, den) = 1`).
//! Text form is `k`, `p/q` or a finite decimal `a.b`; rendering always emits
//! `k` or `p/q`, so `parse(render(x)) == x`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`, normalizing sign and common factors.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(k: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(k.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn denom_unsigned(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// The value as a `u64` when it is a non-negative integer that fits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.is_integer() {
            self.numer().to_u64()
        } else {
            None
        }
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// Lossy conversion for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<u64> for Rational {
    fn from(value: u64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_integer(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

fn parse_integer(text: &str, original: &str) -> Result<BigInt> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(original.to_string()));
    }
    text.parse::<BigInt>()
        .map_err(|_| Error::Parse(original.to_string()))
}

/// Parses `k`, `p/q` or a finite decimal `a.b` exactly.
///
/// Decimals become `digits / 10^len(b)` before reduction, so `"0.6"` is `3/5`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num = parse_integer(p.trim(), text)?;
        let q = q.trim();
        if q.starts_with(['+', '-']) {
            return Err(Error::Parse(text.to_string()));
        }
        let den = parse_integer(q, text)?;
        return Rational::new(num, den);
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let unsigned = int_part.strip_prefix(['+', '-']).unwrap_or(int_part);
        if frac_part.is_empty()
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
            || !unsigned.bytes().all(|b| b.is_ascii_digit())
            || (unsigned.is_empty() && int_part.len() > 1)
        {
            return Err(Error::Parse(text.to_string()));
        }
        let mut digits = String::with_capacity(unsigned.len() + frac_part.len() + 1);
        if negative {
            digits.push('-');
        }
        digits.push_str(if unsigned.is_empty() { "0" } else { unsigned });
        digits.push_str(frac_part);
        let num: BigInt = digits.parse().map_err(|_| Error::Parse(text.to_string()))?;
        let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
        return Rational::new(num, den);
    }
    Ok(Rational::from_integer(parse_integer(s, text)?))
}

/// `k(k-1)/2`, the number of unordered pairs among `k` items.
pub fn binom2(k: u64) -> u64 {
    if k < 2 {
        0
    } else {
        k * (k - 1) / 2
    }
}

/// `binom2` as an exact rational, for comparisons against score sums.
pub fn binom2_rational(k: usize) -> Rational {
    let k = BigInt::from(k);
    let pairs = if k < BigInt::from(2) {
        BigInt::zero()
    } else {
        &k * (&k - 1u32) / 2u32
    };
    Rational::from_integer(pairs)
}

/// Least common multiple of the denominators; `1` for an empty slice.
pub fn lcm_denominators<'a, I>(entries: I) -> BigUint
where
    I: IntoIterator<Item = &'a Rational>,
{
    entries
        .into_iter()
        .fold(BigUint::one(), |acc, x| acc.lcm(&x.denom_unsigned()))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;

    /// Panics on division by zero, like integer division.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division of a rational by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;

    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && *self.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => parse_rational(&s).map_err(serde::de::Error::custom),
            Repr::Int(k) => Ok(Rational::from_integer(k)),
        }
    }
}

/// Shorthand for tests and examples: `rat(3, 4)` is `3/4`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binom2_small_values() {
        assert_eq!(binom2(0), 0);
        assert_eq!(binom2(1), 0);
        assert_eq!(binom2(5), 10);
        assert_eq!(binom2_rational(5), Rational::from(10i64));
        assert_eq!(binom2_rational(0), Rational::zero());
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("1.25").unwrap(), rat(5, 4));
        assert_eq!(parse_rational("0.6").unwrap(), rat(3, 5));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-2/6").unwrap(), rat(-1, 3));
        assert_eq!(
            parse_rational("1.41421356").unwrap(),
            rat(35_355_339, 25_000_000)
        );
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in [
            "", "abc", "1/", "/2", "1/0", "1.", "1.2.3", "1/-2", "--1", "1e3", "0x10", "-",
        ] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
        assert!(matches!(parse_rational("3/0"), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn renders_normalized() {
        assert_eq!(rat(6, 4).to_string(), "3/2");
        assert_eq!(rat(4, 2).to_string(), "2");
        assert_eq!(rat(3, -6).to_string(), "-1/2");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn lcm_of_denominators() {
        assert_eq!(
            lcm_denominators(&[rat(1, 2), rat(1, 2), rat(2, 1)]),
            BigUint::from(2u32)
        );
        assert_eq!(
            lcm_denominators(&[rat(1, 3), rat(5, 6)]),
            BigUint::from(6u32)
        );
        assert_eq!(lcm_denominators(&[Rational::zero()]), BigUint::from(1u32));
        assert_eq!(lcm_denominators(&[]), BigUint::from(1u32));
    }

    #[test]
    fn serde_uses_strings() {
        let x = rat(7, 6);
        assert_eq!(serde_json::to_string(&x).unwrap(), "\"7/6\"");
        let back: Rational = serde_json::from_str("\"7/6\"").unwrap();
        assert_eq!(back, x);
        let int: Rational = serde_json::from_str("3").unwrap();
        assert_eq!(int, rat(3, 1));
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
            let x = rat(p, q);
            prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x.clone());
            prop_assert!(*x.denom() > BigInt::zero());
            prop_assert!(x.numer().gcd(x.denom()) == BigInt::one() || x.is_zero());
        }

        #[test]
        fn lcm_is_divisible_by_each_denominator(
            entries in proptest::collection::vec((0i64..500, 1i64..60), 0..12)
        ) {
            let xs: Vec<Rational> = entries.iter().map(|&(p, q)| rat(p, q)).collect();
            let l = lcm_denominators(&xs);
            for x in &xs {
                prop_assert!((&l % x.denom_unsigned()).is_zero());
            }
        }
    }
}
