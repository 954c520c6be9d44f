use std::fmt;
use std::ops::Index;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{lcm_denominators, parse_rational, Rational};

/// An ordered list of scores, one per vertex.
///
/// Entries may be any rational while the value is being built; operations
/// that treat it as a score sequence call [`ScoreSequence::validate`] first.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ScoreSequence {
    scores: Vec<Rational>,
}

impl ScoreSequence {
    pub fn new(scores: Vec<Rational>) -> Self {
        ScoreSequence { scores }
    }

    pub fn from_integers<I>(values: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        ScoreSequence::new(
            values
                .into_iter()
                .map(|v| Rational::from(v.into()))
                .collect(),
        )
    }

    /// Parses a comma-separated list of rational tokens, e.g. `"1/2,1/2,2"`.
    pub fn parse_list(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(ScoreSequence::default());
        }
        text.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(ScoreSequence::new)
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.scores.iter()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.scores
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.scores
    }

    pub fn total(&self) -> Rational {
        self.scores.iter().sum()
    }

    pub fn lcm_denominators(&self) -> BigUint {
        lcm_denominators(&self.scores)
    }

    /// Rejects negative entries.
    pub fn validate(&self) -> Result<()> {
        match self.scores.iter().position(Rational::is_negative) {
            Some(index) => Err(Error::NegativeScore {
                index,
                value: self.scores[index].to_string(),
            }),
            None => Ok(()),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.scores.iter().all(Rational::is_integer)
    }

    /// The entries as machine integers; fails on negative or fractional entries.
    pub fn to_integers(&self) -> Result<Vec<u64>> {
        self.validate()?;
        self.scores
            .iter()
            .enumerate()
            .map(|(index, x)| {
                x.to_u64().ok_or_else(|| Error::NotInteger {
                    index,
                    value: x.to_string(),
                })
            })
            .collect()
    }
}

impl Index<usize> for ScoreSequence {
    type Output = Rational;

    fn index(&self, index: usize) -> &Rational {
        &self.scores[index]
    }
}

impl From<Vec<Rational>> for ScoreSequence {
    fn from(scores: Vec<Rational>) -> Self {
        ScoreSequence::new(scores)
    }
}

impl FromIterator<Rational> for ScoreSequence {
    fn from_iter<T: IntoIterator<Item = Rational>>(iter: T) -> Self {
        ScoreSequence::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a ScoreSequence {
    type Item = &'a Rational;
    type IntoIter = std::slice::Iter<'a, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.scores.iter()
    }
}

impl fmt::Display for ScoreSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.scores.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ScoreSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serde adapter writing a [`ScoreSequence`] as a bare JSON array of rationals.
pub(crate) mod as_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::ScoreSequence;
    use crate::rational::Rational;

    pub fn serialize<S: Serializer>(seq: &ScoreSequence, s: S) -> Result<S::Ok, S::Error> {
        seq.as_slice().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ScoreSequence, D::Error> {
        Vec::<Rational>::deserialize(d).map(ScoreSequence::new)
    }
}
