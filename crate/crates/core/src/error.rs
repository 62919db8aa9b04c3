use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("resultant of a zero polynomial")]
    ZeroInput,
    #[error("valuation of zero is infinite")]
    ZeroArgument,
    #[error("rank {0} is not supported (only ranks 1 and 2)")]
    UnsupportedRank(usize),
    #[error("exponent vector has length {found}, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("polytope has {points} lattice points, bound is {bound}")]
    TooLarge { points: u64, bound: u64 },
    #[error("polynomial is a unit monomial: the quotient ring is zero")]
    UnitPolynomial,
    #[error("polynomial vanishes modulo {0}")]
    ZeroResidue(u64),
    #[error("factorization modulo {0} exceeded the search bounds")]
    FactorizationIncomplete(u64),
    #[error("coefficient {0} could not be factored into primes within the trial bound")]
    CoefficientTooLarge(String),
    #[error("algebraic extension required: {0}")]
    ExtensionRequired(String),
    #[error("polynomial does not involve the second variable")]
    NotACurve,
    #[error("series has no nonzero terms")]
    ZeroSeries,
    #[error("insufficient precision: need {needed} coefficients, have {available}")]
    InsufficientPrecision { needed: usize, available: usize },
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("irreducibility could not be decided")]
    IrreducibilityUndetermined,
    #[error("the set is the whole sphere; its boundary is empty")]
    WholeSphere,
    #[error("minimal polynomial {0} is not irreducible over Q")]
    ReducibleModulus(String),
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("fractional exponent at position {pos}")]
    FractionalExponent { pos: usize },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
