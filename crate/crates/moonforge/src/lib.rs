//! Exact score sequences of tournaments and generalized tournaments.
//!
//! A sequence of non-negative rationals `d_1, ..., d_n` is the score sequence
//! of a generalized tournament exactly when every index set `J` satisfies
//! `sum_{i in J} d_i >= C(|J|, 2)`, with equality for the full set. This
//! crate decides that condition exactly and, when it holds, builds a
//! realization:
//!
//! - integer scores: a tournament from an integral max flow ([`realize`]);
//! - rational scores: blow each vertex up into `m` vertices, realize the
//!   integer sequence `m * d_i + b_l`, and average clusters ([`blowup`]);
//! - arbitrary finite decimals: perturb to a nearby feasible sequence with
//!   small denominators first ([`approx`]).
//!
//! All arithmetic is exact. See the `examples/` directory for one runnable
//! program per capability.
//!
//! ```
//! use moonforge::{realize_rational, ScoreSequence};
//!
//! let targets = ScoreSequence::parse_list("1/2,1/2,2").unwrap();
//! let g = realize_rational(&targets).unwrap();
//! assert_eq!(g.scores(), targets);
//! ```

pub mod approx;
pub mod blowup;
pub mod cli;
pub mod error;
pub mod feasibility;
pub mod flow;
pub mod generate;
pub mod rational;
pub mod realize;
pub mod sequence;
pub mod tournament;

pub use approx::{
    approximate_realize, perturb, simplest_rational_in, ApproxRecord, ApproxRun, PerturbResult,
};
pub use blowup::{
    base_sequence, blowup_scores, check_partition_inequalities, cluster_average, realize_rational,
    BlowupOptions, BlowupPlan,
};
pub use error::{Error, Result};
pub use feasibility::{
    check_exhaustive, check_fast, max_deficit_excluding_first, FeasibilityVerdict, Witness,
    WitnessKind,
};
pub use generate::random_feasible;
pub use rational::{binom2, lcm_denominators, parse_rational, rat, Rational};
pub use realize::{realize_backtrack, realize_integer, scores_of, FlowNetwork};
pub use sequence::ScoreSequence;
pub use tournament::{GeneralizedTournament, Tournament};
