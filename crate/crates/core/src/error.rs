use alloc::string::String;

use crate::group::Elem;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("group order exceeds the cap of {cap} (reached {reached})")]
    OrderCap { cap: usize, reached: usize },

    #[error("{what}: order {order} exceeds the cap of {cap}")]
    SizeCap {
        what: &'static str,
        order: usize,
        cap: usize,
    },

    #[error("generator {index} is not a permutation of 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },

    #[error("subgroup is not normal: conjugating {n} by {g} leaves it")]
    NotNormal { g: Elem, n: Elem },

    #[error("subgroup belongs to a different parent group")]
    ForeignSubgroup,

    #[error("group of order {order} is not a {p}-group")]
    NotPGroup { order: usize, p: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precision mismatch: {0}")]
    Precision(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
