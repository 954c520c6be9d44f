//! Tournaments with a prescribed integer score sequence.
//!
//! The reference path orients pairs by an integral maximum flow:
//!
//! ```text
//! source --1--> {u,v} --1--> u --score(u)--> sink
//!                     \--1--> v
//! ```
//!
//! Each pair node passes its unit to the endpoint that wins the pair. A
//! feasible sequence admits a flow of value `C(n, 2)`.

use crate::error::{Error, Result};
use crate::feasibility::check_fast;
use crate::flow::{FlowGraphBuilder, MaxFlow};
use crate::rational::binom2;
use crate::sequence::ScoreSequence;
use crate::tournament::Tournament;

/// Largest `n` accepted by [`realize_backtrack`].
pub const BACKTRACK_CAP: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RealizeOptions {
    /// Try the residual-score greedy orientation first. Its output is
    /// verified and the flow path runs whenever it misses.
    pub greedy: bool,
}

/// The pair-orientation flow network for a score vector.
///
/// Node layout: source `0`, pair nodes `1..=C(n,2)` in lexicographic pair
/// order, vertex nodes next, sink last.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    n: usize,
    source: usize,
    sink: usize,
    /// For each pair `(u, v)`, `u < v`, the arc id of `pair -> u`.
    lower_arcs: Vec<usize>,
    solver: MaxFlow,
}

impl FlowNetwork {
    pub fn for_scores(scores: &[u64]) -> Self {
        let n = scores.len();
        let pairs = (binom2(n as u64)) as usize;
        let source = 0;
        let vertex = |u: usize| 1 + pairs + u;
        let sink = 1 + pairs + n;
        let mut builder = FlowGraphBuilder::new(sink + 1);

        for p in 0..pairs {
            builder.add_arc(source, 1 + p, 1);
        }
        let mut lower_arcs = Vec::with_capacity(pairs);
        let mut p = 0;
        for u in 0..n {
            for v in u + 1..n {
                lower_arcs.push(builder.add_arc(1 + p, vertex(u), 1));
                builder.add_arc(1 + p, vertex(v), 1);
                p += 1;
            }
        }
        for (u, &s) in scores.iter().enumerate() {
            builder.add_arc(vertex(u), sink, u32::try_from(s).unwrap_or(u32::MAX));
        }

        FlowNetwork {
            n,
            source,
            sink,
            lower_arcs,
            solver: builder.build(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.solver.node_count()
    }

    /// Computes a maximum flow and returns its value.
    pub fn solve(&mut self) -> u64 {
        self.solver.run(self.source, self.sink)
    }

    /// Orients each pair toward the endpoint that received its unit.
    ///
    /// Only meaningful after [`solve`](Self::solve) saturated every source arc.
    pub fn orientation(&self) -> Result<Tournament> {
        let mut pair = self.lower_arcs.iter();
        Tournament::from_fn(self.n, |_, _| {
            let arc = *pair.next().expect("one arc per pair");
            self.solver.flow_on(arc) == 1
        })
    }
}

pub fn realize_integer(seq: &ScoreSequence) -> Result<Tournament> {
    realize_integer_with(seq, RealizeOptions::default())
}

/// Builds a tournament whose score vector is exactly `seq`.
pub fn realize_integer_with(seq: &ScoreSequence, options: RealizeOptions) -> Result<Tournament> {
    let scores = seq.to_integers()?;
    check_fast(seq)?.into_result()?;

    if options.greedy {
        if let Some(t) = realize_greedy(&scores) {
            return Ok(t);
        }
    }

    let mut network = FlowNetwork::for_scores(&scores);
    let value = network.solve();
    let expected = binom2(scores.len() as u64);
    if value != expected {
        return Err(Error::Internal(format!(
            "max flow {value} does not saturate the {expected} pairs of a feasible sequence"
        )));
    }
    let t = network.orientation()?;
    if t.scores() != scores {
        return Err(Error::Internal(
            "flow orientation does not reproduce the scores".into(),
        ));
    }
    Ok(t)
}

/// Orients pairs in lexicographic order toward the endpoint with the larger
/// residual score, ties toward the lower index. `None` if the result misses.
pub fn realize_greedy(scores: &[u64]) -> Option<Tournament> {
    let mut residual: Vec<i64> = scores.iter().map(|&s| s as i64).collect();
    let t = Tournament::from_fn(scores.len(), |u, v| {
        let u_wins = residual[u] >= residual[v];
        residual[if u_wins { u } else { v }] -= 1;
        u_wins
    })
    .ok()?;
    (t.scores() == scores).then_some(t)
}

/// Exhaustive search over pair orientations; `Ok(None)` proves that no
/// tournament has these scores. Independent of the feasibility checks.
pub fn realize_backtrack(seq: &ScoreSequence) -> Result<Option<Tournament>> {
    let n = seq.len();
    if n > BACKTRACK_CAP {
        return Err(Error::TooLarge {
            what: "backtracking realization",
            n,
            cap: BACKTRACK_CAP,
        });
    }
    let scores = seq.to_integers()?;
    if scores.iter().any(|&s| s >= n.max(1) as u64) {
        return Ok(None);
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut residual: Vec<i64> = scores.iter().map(|&s| s as i64).collect();
    // unassigned pairs still touching each vertex
    let mut open: Vec<i64> = vec![n.saturating_sub(1) as i64; n];
    let mut choice = vec![false; pairs.len()];

    fn search(
        k: usize,
        pairs: &[(usize, usize)],
        residual: &mut [i64],
        open: &mut [i64],
        choice: &mut [bool],
    ) -> bool {
        if k == pairs.len() {
            return residual.iter().all(|&r| r == 0);
        }
        let (u, v) = pairs[k];
        open[u] -= 1;
        open[v] -= 1;
        for (winner, u_wins) in [(u, true), (v, false)] {
            if residual[winner] == 0 {
                continue;
            }
            residual[winner] -= 1;
            if residual[u] <= open[u] && residual[v] <= open[v] {
                choice[k] = u_wins;
                if search(k + 1, pairs, residual, open, choice) {
                    return true;
                }
            }
            residual[winner] += 1;
        }
        open[u] += 1;
        open[v] += 1;
        false
    }

    if !search(0, &pairs, &mut residual, &mut open, &mut choice) {
        return Ok(None);
    }
    let mut picks = choice.iter();
    Tournament::from_fn(n, |_, _| *picks.next().expect("one choice per pair")).map(Some)
}

/// Outdegree of every vertex.
pub fn scores_of(t: &Tournament) -> ScoreSequence {
    ScoreSequence::from_integers(t.scores().into_iter().map(|s| s as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::WitnessKind;

    fn ints(xs: &[i64]) -> ScoreSequence {
        ScoreSequence::from_integers(xs.iter().copied())
    }

    #[test]
    fn transitive_sequence_has_unique_realization() {
        let t = realize_integer(&ints(&[0, 1, 2])).unwrap();
        let edges: Vec<_> = t.edges().collect();
        assert_eq!(edges, vec![(1, 0), (2, 0), (2, 1)]);
    }

    #[test]
    fn regular_three_gives_a_cycle() {
        let t = realize_integer(&ints(&[1, 1, 1])).unwrap();
        assert_eq!(scores_of(&t), ints(&[1, 1, 1]));
    }

    #[test]
    fn infeasible_inputs_carry_witnesses() {
        match realize_integer(&ints(&[0, 0])) {
            Err(Error::Infeasible(w)) => assert_eq!(w.kind, WitnessKind::FullSumMismatch),
            other => panic!("unexpected {other:?}"),
        }
        match realize_integer(&ints(&[0, 0, 2])) {
            Err(Error::Infeasible(w)) => assert_eq!(w.indices, vec![0, 1]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fractional_input_is_rejected() {
        let s = ScoreSequence::parse_list("1/2,1/2").unwrap();
        assert!(matches!(realize_integer(&s), Err(Error::NotInteger { .. })));
    }

    #[test]
    fn empty_and_single() {
        assert_eq!(realize_integer(&ints(&[])).unwrap().n(), 0);
        assert_eq!(realize_integer(&ints(&[0])).unwrap().scores(), vec![0]);
    }

    #[test]
    fn flow_value_is_number_of_pairs() {
        let mut net = FlowNetwork::for_scores(&[2, 2, 2, 2, 2]);
        assert_eq!(net.node_count(), 1 + 10 + 5 + 1);
        assert_eq!(net.solve(), 10);
        assert_eq!(net.orientation().unwrap().scores(), vec![2; 5]);
    }

    #[test]
    fn flow_falls_short_on_infeasible_scores() {
        let mut net = FlowNetwork::for_scores(&[0, 0, 3]);
        assert!(net.solve() < 3);
    }

    #[test]
    fn output_is_deterministic() {
        let s = ints(&[2, 2, 2, 1, 3]);
        assert_eq!(realize_integer(&s).unwrap(), realize_integer(&s).unwrap());
    }

    #[test]
    fn greedy_path_is_verified() {
        let s = ints(&[1, 1, 1]);
        let t = realize_integer_with(&s, RealizeOptions { greedy: true }).unwrap();
        assert_eq!(t.scores(), vec![1, 1, 1]);
        // whatever the greedy does, only exact realizations come back
        for scores in [[0u64, 1, 2, 3], [1, 1, 2, 2], [3, 1, 1, 1]] {
            if let Some(t) = realize_greedy(&scores) {
                assert_eq!(t.scores(), scores);
            }
            let seq = ints(&scores.map(|s| s as i64));
            let t = realize_integer_with(&seq, RealizeOptions { greedy: true }).unwrap();
            assert_eq!(t.scores(), scores);
        }
    }

    #[test]
    fn backtracking_examples() {
        assert!(realize_backtrack(&ints(&[1, 1, 1])).unwrap().is_some());
        assert!(realize_backtrack(&ints(&[0, 0, 2])).unwrap().is_none());
        let t = realize_backtrack(&ints(&[2, 2, 2, 2, 2])).unwrap().unwrap();
        assert_eq!(t.scores(), vec![2; 5]);
        assert!(realize_backtrack(&ints(&[])).unwrap().is_some());
        assert!(realize_backtrack(&ints(&[0; 9])).is_err());
    }
}
