use thiserror::Error;

use crate::cartan::{CartanType, Family};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank {rank} is not valid for family {family:?}")]
    InvalidRank { family: Family, rank: usize },

    #[error("cannot parse Cartan type from {0:?}")]
    ParseCartanType(String),

    #[error("relabeled simple roots are only supported in rank 2, got {0}")]
    SwapNeedsRankTwo(CartanType),

    #[error("root index {0} is out of range for this root system")]
    ForeignRoot(usize),

    #[error("operands belong to different root systems ({0} and {1})")]
    MismatchedSystems(CartanType, CartanType),

    #[error("coordinates {0:?} are not a root of the system")]
    NotARoot(Vec<i32>),

    #[error("roots must be linearly independent")]
    Proportional,

    #[error("simple reflection index {0} is out of range")]
    BadSimpleIndex(usize),

    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<u8>),

    #[error("set of positive roots is not biconvex")]
    NotBiconvex,

    #[error("affine root must be real (nonzero finite part)")]
    ImaginaryRoot,

    #[error("affine root set contains a negative root")]
    NegativeAffineRoot,

    #[error("|W({cartan_type})| = {order} exceeds the enumeration budget {budget}")]
    BudgetExceeded {
        cartan_type: CartanType,
        order: u128,
        budget: u128,
    },

    #[error("reduced-word enumeration exceeded the cap of {0} words")]
    WordCapExceeded(usize),

    #[error("roots are not pairwise orthogonal")]
    NotOrthogonal,

    #[error("set of positive roots is not a combinatorial ideal")]
    NotAnIdeal,

    #[error("element has support outside the positive roots")]
    NotNilpotentSupport,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
