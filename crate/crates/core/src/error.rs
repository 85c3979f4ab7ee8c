use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid lens space parameters (p, q) = ({p}, {q}): {constraint}")]
    InvalidParams {
        p: i64,
        q: i64,
        constraint: &'static str,
    },

    #[error("Osborne-Zieschang word w({m}, {n}) requires {constraint}")]
    InvalidOzCounts {
        m: u64,
        n: u64,
        constraint: &'static str,
    },

    #[error("word {0} contains inverse letters; use the Whitehead oracle")]
    NotPositive(String),

    #[error("word {0} uses more than two generators")]
    NotRankTwo(String),

    #[error(
        "L({p},{q}) has a connected primitive disk complex (p ≡ ±1 mod q); \
         no non-connectivity witness exists"
    )]
    Connected { p: u64, q: u64 },

    #[error(
        "L({p},{q}) is not covered by the theorem: it requires p ≡ ± 1 (mod q), \
         but {p} ≡ {r} (mod {q})"
    )]
    NotCovered { p: u64, q: u64, r: u64 },

    #[error("L({p},1): every primitive pair has a common dual disk")]
    AlwaysCommonDual { p: u64 },

    #[error("shell indices must satisfy 0 ≤ i < j ≤ {p}, got ({i}, {j})")]
    IndexOrder { i: usize, j: usize, p: u64 },

    #[error("pair stabilizers are only defined for p ≥ 3 (got p = {p})")]
    PairStabilizerNeedsP3 { p: u64 },

    #[error("continued fraction of {num}/{den}: {constraint}")]
    InvalidFraction {
        num: u64,
        den: u64,
        constraint: &'static str,
    },

    #[error("unknown sweep check {0:?}")]
    UnknownCheck(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
