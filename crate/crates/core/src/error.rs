use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{value} is not an element of {group}")]
    NotMember { value: String, group: String },
    #[error("convex subgroup index {k} is invalid for rank {rank}")]
    InvalidSubgroup { k: usize, rank: usize },
    #[error("operands live over different domains")]
    DomainMismatch,
    #[error("containment violated: {0}")]
    Containment(String),
    #[error("operation needs a rank-one value group, got rank {0}")]
    RankOneRequired(usize),
    #[error("the zero module is not a fractional ideal")]
    ZeroModule,
    #[error("result is the whole quotient field")]
    WholeField,
    #[error("invalid discriminant {disc}: {reason}")]
    InvalidDiscriminant { disc: i64, reason: String },
    #[error("not a module over the order: {0}")]
    NotAnIdeal(String),
    #[error("incompatible orders: {0}")]
    IncompatibleOrders(String),
    #[error("{op} cannot be interpreted on this backend: {reason}")]
    Uninterpretable { op: String, reason: String },
    #[error("test-family member {0} is not finitely generated with H^v = D")]
    BadTestFamily(String),
    #[error("the zero polynomial has no content")]
    ZeroPolynomial,
    #[error("{0} is not a v-invertible v-ideal")]
    NotVInvertible(String),
    #[error("ideal classes have different moduli")]
    ModulusMismatch,
    #[error("bound out of range: {0}")]
    Bound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
