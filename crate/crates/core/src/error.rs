//! Error type shared by every module of the crate.

use thiserror::Error;

/// Exponent triple `(a, b, c)` of the monomial `z^a zb^b u^c`.
pub type Exp3 = (u32, u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot normalize zero polynomial")]
    ZeroPolynomial,

    #[error("identically zero polynomial has all integers as roots")]
    ZeroPolynomialRoots,

    #[error("integer root bound {bound} exceeds the search ceiling {ceiling}")]
    RootSearchCeiling { bound: String, ceiling: u64 },

    #[error("mismatched truncation orders {left} and {right}")]
    OrderMismatch { left: u32, right: u32 },

    #[error("composition requires vanishing constant term")]
    NonzeroConstant,

    #[error("reversion requires a unipotent linear part (z + a*u, u): {0}")]
    NotUnipotent(String),

    #[error("reversion did not reach a fixed point after {0} passes")]
    ReversionStalled(usize),

    #[error("monomial ({a},{b},{c}) is beyond truncation order {order}")]
    BeyondTruncation { a: u32, b: u32, c: u32, order: u32 },

    #[error("series is not Hermitian: monomial ({},{},{}) has no matching conjugate term", .0.0, .0.1, .0.2)]
    NotHermitian(Exp3),

    #[error("invalid graphing function: {0}")]
    InvalidSurface(String),

    #[error("invalid formal map: {0}")]
    InvalidMap(String),

    #[error("invalid vector field: {0}")]
    InvalidField(String),

    #[error("surface is not prenormalized at u-level 1: phi_{{{l},1}} is nonzero")]
    NotPrenormalized { l: u32 },

    #[error("surface is not in the class: {0}")]
    ClassViolation(String),

    #[error("truncation order {order} is too small: {what} needs at least {needed}")]
    OrderTooSmall { order: u32, needed: u32, what: &'static str },

    #[error("stage {k} out of range 2..={max}")]
    StageOutOfRange { k: u32, max: u32 },

    #[error("stage {k} is resonant: the stage system is singular")]
    Resonant { k: u32 },

    #[error("degenerate jet: characteristic polynomial vanishes identically")]
    DegenerateJet,

    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),

    #[error("generator sanity violation: {0}")]
    GeneratorSanity(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;
