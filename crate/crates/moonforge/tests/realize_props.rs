mod common;

use common::all_integer_sequences;
use moonforge::realize::{realize_integer_with, RealizeOptions};
use moonforge::{
    binom2, check_exhaustive, check_fast, realize_backtrack, realize_integer, scores_of,
    FlowNetwork, ScoreSequence, Tournament,
};
use proptest::prelude::*;

#[test]
fn every_small_feasible_sequence_round_trips() {
    for n in 0..=6 {
        for s in all_integer_sequences(n, n.saturating_sub(1) as i64) {
            if !check_fast(&s).unwrap().feasible {
                continue;
            }
            let t = realize_integer(&s).unwrap();
            assert_eq!(scores_of(&t), s);
            assert_eq!(t.edges().count() as u64, binom2(n as u64));
            t.validate().unwrap();
        }
    }
}

#[test]
fn realizers_and_exhaustive_check_agree() {
    for n in 0..=5 {
        for s in all_integer_sequences(n, 4) {
            let exhaustive = check_exhaustive(&s).unwrap().feasible;
            let flow = realize_integer(&s).is_ok();
            let search = realize_backtrack(&s).unwrap();
            assert_eq!(flow, exhaustive, "{s}");
            assert_eq!(search.is_some(), exhaustive, "{s}");
            if let Some(t) = search {
                assert_eq!(scores_of(&t), s);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn random_tournaments_are_reproduced(n in 1usize..80, seed in any::<u64>()) {
        let s = moonforge::random_feasible(n, 1, seed).unwrap();
        let scores = s.to_integers().unwrap();
        let mut net = FlowNetwork::for_scores(&scores);
        prop_assert_eq!(net.solve(), binom2(n as u64));
        let t = realize_integer(&s).unwrap();
        prop_assert_eq!(scores_of(&t), s.clone());
        let g = realize_integer_with(&s, RealizeOptions { greedy: true }).unwrap();
        prop_assert_eq!(scores_of(&g), s);
    }

    #[test]
    fn tournament_json_round_trips(n in 0usize..12, seed in any::<u64>()) {
        let s = moonforge::random_feasible(n.max(1), 1, seed).unwrap();
        let t = realize_integer(&s).unwrap();
        let back: Tournament = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }
}

#[test]
fn large_instance_realizes() {
    let s = moonforge::random_feasible(300, 1, 2024).unwrap();
    let t = realize_integer(&s).unwrap();
    assert_eq!(scores_of(&t), s);
}

#[test]
fn scores_of_examples() {
    let cycle = Tournament::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    assert_eq!(scores_of(&cycle), ScoreSequence::from_integers([1, 1, 1]));
    assert_eq!(
        scores_of(&Tournament::transitive(4)),
        ScoreSequence::from_integers([3, 2, 1, 0])
    );
    assert_eq!(
        scores_of(&Tournament::transitive(1)),
        ScoreSequence::from_integers([0])
    );
}
