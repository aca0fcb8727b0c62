use thiserror::Error;

use crate::fraction::Fraction;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("0/0 is not a fraction")]
    ZeroOverZero,

    #[error("-1/0 is not a vertex of the Farey diagram")]
    NegativeInfinity,

    #[error("cannot parse {0:?} as a fraction p/q")]
    Parse(String),

    #[error("{0} is not in lowest terms")]
    NotReduced(String),

    #[error("{fraction} is out of range: {reason}")]
    OutOfRange { fraction: Fraction, reason: &'static str },

    #[error("{} and {} are not Farey neighbors", .0.0, .0.1)]
    NotNeighbors(Box<(Fraction, Fraction)>),

    #[error("malformed edge path: {0}")]
    MalformedPath(String),

    #[error("turning number at position {0} is zero")]
    ZeroTurn(usize),

    #[error("partial sum {0} of the continued fraction is 1/0")]
    DegeneratePartialSum(usize),

    #[error("invalid triangle move: {0}")]
    InvalidMove(String),

    #[error("more than {cap} minimal paths")]
    CapExceeded { cap: usize },

    #[error("invalid link diagram: {0}")]
    InvalidDiagram(String),

    #[error("value does not fit in a machine integer: {0}")]
    Overflow(String),

    /// An identity that the theory guarantees did not hold. Always a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn not_neighbors(u: Fraction, v: Fraction) -> Error {
        Error::NotNeighbors(Box::new((u, v)))
    }
}
