//! Tournament containers.
//!
//! [`Tournament`] stores one bit per ordered pair, row-major, so a vertex's
//! score is a popcount over its row. [`GeneralizedTournament`] stores an
//! exact weight matrix. Both run their validator in every constructor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sequence::ScoreSequence;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Tournament {
    fn blank(n: usize) -> Self {
        let words = n.div_ceil(64);
        Tournament {
            n,
            words,
            bits: vec![0; words * n],
        }
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    /// Orients every pair `u < v` as `u -> v` when `forward(u, v)` is true,
    /// `v -> u` otherwise.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut t = Tournament::blank(n);
        for u in 0..n {
            for v in u + 1..n {
                if forward(u, v) {
                    t.set(u, v);
                } else {
                    t.set(v, u);
                }
            }
        }
        t.validate()?;
        Ok(t)
    }

    /// The transitive tournament in which `u` beats every `v > u`.
    pub fn transitive(n: usize) -> Self {
        Tournament::from_fn(n, |_, _| true).expect("transitive tournament is valid")
    }

    /// Builds from 0-based directed edges `(winner, loser)`; every unordered
    /// pair must appear exactly once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut t = Tournament::blank(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTournament(format!(
                    "edge ({}, {}) out of range for n = {n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::InvalidTournament(format!("self-loop at {}", u + 1)));
            }
            if t.beats(u, v) || t.beats(v, u) {
                return Err(Error::InvalidTournament(format!(
                    "pair {{{}, {}}} listed twice",
                    u.min(v) + 1,
                    u.max(v) + 1
                )));
            }
            t.set(u, v);
        }
        t.validate()?;
        Ok(t)
    }

    /// Builds from a full adjacency matrix, `rows[u][v]` meaning `u -> v`.
    pub fn from_matrix(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        let mut t = Tournament::blank(n);
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTournament(format!(
                    "row {} has {} entries, expected {n}",
                    u + 1,
                    row.len()
                )));
            }
            for (v, &edge) in row.iter().enumerate() {
                if edge {
                    t.set(u, v);
                }
            }
        }
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        for u in 0..self.n {
            if self.beats(u, u) {
                return Err(Error::InvalidTournament(format!("self-loop at {}", u + 1)));
            }
            for v in u + 1..self.n {
                if self.beats(u, v) == self.beats(v, u) {
                    return Err(Error::InvalidTournament(format!(
                        "pair {{{}, {}}} must be oriented exactly one way",
                        u + 1,
                        v + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn beats(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn score(&self, u: usize) -> u64 {
        self.row(u).iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Out-neighbours of `u` among vertices `lo..hi`.
    pub fn score_into(&self, u: usize, lo: usize, hi: usize) -> u64 {
        let row = self.row(u);
        let mut count = 0u64;
        let mut v = lo;
        while v < hi {
            let word = v / 64;
            let start = v % 64;
            let end = (hi - word * 64).min(64);
            let mut mask = u64::MAX << start;
            if end < 64 {
                mask &= (1u64 << end) - 1;
            }
            count += u64::from((row[word] & mask).count_ones());
            v = (word + 1) * 64;
        }
        count
    }

    pub fn scores(&self) -> Vec<u64> {
        (0..self.n).map(|u| self.score(u)).collect()
    }

    /// Directed edges `(winner, loser)`, 0-based, ordered by unordered pair.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).map(move |v| if self.beats(u, v) { (u, v) } else { (v, u) })
        })
    }
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tournament")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct TournamentJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Tournament {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TournamentJson {
            n: self.n,
            edges: self.edges().map(|(u, v)| [u + 1, v + 1]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tournament {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = TournamentJson::deserialize(deserializer)?;
        let mut edges = Vec::with_capacity(raw.edges.len());
        for [u, v] in raw.edges {
            if u == 0 || v == 0 {
                return Err(serde::de::Error::custom("vertices are 1-based"));
            }
            edges.push((u - 1, v - 1));
        }
        Tournament::from_edges(raw.n, &edges).map_err(serde::de::Error::custom)
    }
}

/// Complete graph with exact weights, `w(i, j) + w(j, i) = 1` off the diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedTournament {
    n: usize,
    weights: Vec<Rational>,
}

impl GeneralizedTournament {
    /// `weights` is row-major, length `n * n`.
    pub fn new(n: usize, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != n * n {
            return Err(Error::InvalidGeneralized(format!(
                "expected {} weights for n = {n}, got {}",
                n * n,
                weights.len()
            )));
        }
        let g = GeneralizedTournament { n, weights };
        g.validate()?;
        Ok(g)
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::InvalidGeneralized(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        GeneralizedTournament::new(n, rows.into_iter().flatten().collect())
    }

    pub fn from_tournament(t: &Tournament) -> Self {
        let n = t.n();
        let weights = (0..n * n)
            .map(|k| {
                if t.beats(k / n, k % n) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        GeneralizedTournament::new(n, weights).expect("a tournament is a generalized tournament")
    }

    pub fn validate(&self) -> Result<()> {
        let one = Rational::one();
        for i in 0..self.n {
            if !self.weight(i, i).is_zero() {
                return Err(Error::InvalidGeneralized(format!(
                    "diagonal entry w({0}, {0}) = {1} is not zero",
                    i + 1,
                    self.weight(i, i)
                )));
            }
            for j in 0..self.n {
                let w = self.weight(i, j);
                if w.is_negative() || *w > one {
                    return Err(Error::InvalidGeneralized(format!(
                        "w({}, {}) = {w} is outside [0, 1]",
                        i + 1,
                        j + 1
                    )));
                }
                if i < j && self.weight(i, j) + self.weight(j, i) != one {
                    return Err(Error::InvalidGeneralized(format!(
                        "w({0}, {1}) + w({1}, {0}) != 1",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> &Rational {
        &self.weights[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    /// Weighted outdegrees.
    pub fn scores(&self) -> ScoreSequence {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }
}

impl std::fmt::Debug for GeneralizedTournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<&[Rational]> = (0..self.n).map(|i| self.row(i)).collect();
        f.debug_struct("GeneralizedTournament")
            .field("n", &self.n)
            .field("weights", &rows)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GeneralizedJson {
    n: usize,
    weights: Vec<Vec<Rational>>,
}

impl Serialize for GeneralizedTournament {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GeneralizedJson {
            n: self.n,
            weights: (0..self.n).map(|i| self.row(i).to_vec()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GeneralizedTournament {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = GeneralizedJson::deserialize(deserializer)?;
        if raw.weights.len() != raw.n {
            return Err(serde::de::Error::custom(format!(
                "expected {} rows, got {}",
                raw.n,
                raw.weights.len()
            )));
        }
        GeneralizedTournament::from_rows(raw.weights).map_err(serde::de::Error::custom)
    }
}
