use thiserror::Error;

use crate::feasibility::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rational: {0:?}")]
    Parse(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("score {value} at position {} is negative", .index + 1)]
    NegativeScore { index: usize, value: String },

    #[error("score {value} at position {} is not an integer", .index + 1)]
    NotInteger { index: usize, value: String },

    #[error("sequence is not a score sequence: {0}")]
    Infeasible(Witness),

    #[error("{what}: n = {n} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error(
        "blow-up needs {vertices} vertices, over the cap of {cap}; \
         run `perturb` first to shrink denominators or raise the cap"
    )]
    BlowupTooLarge { vertices: String, cap: usize },

    #[error("blow-up factor {m} is not a multiple of the denominator lcm {lcm}")]
    NotDivisible { m: u64, lcm: String },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("invalid tournament: {0}")]
    InvalidTournament(String),

    #[error("invalid generalized tournament: {0}")]
    InvalidGeneralized(String),

    #[error("empty interval ({lo}, {hi})")]
    EmptyInterval { lo: String, hi: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Mismatch(String),

    #[error("internal error: {0}")]
    Internal(String),
}
