use thiserror::Error;

/// Errors produced by every operation in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("part set is empty")]
    EmptyInput,
    #[error("part {0} is not a positive integer")]
    NonPositivePart(i64),
    #[error("part {0} appears more than once")]
    DuplicatePart(i64),
    #[error("enumeration would visit more than {limit} compositions")]
    TooLarge { limit: u64 },
    #[error("resource limit exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("modulus q = {0} must be at least 2")]
    InvalidModulus(usize),
    #[error("residue r = {r} must satisfy 0 <= r < q = {q}")]
    InvalidResidue { r: usize, q: usize },
    #[error("coefficient too large for floating-point evaluation")]
    Overflow,
    #[error("|w| = {0} is not on the unit circle")]
    NotOnUnitCircle(f64),
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("no composition of {0} exists with the given parts")]
    NoCompositions(usize),
    #[error("operation requires at least two parts")]
    SingletonSet,
    #[error("part set does not satisfy the prefix-gcd condition (gcd of the smaller parts is {0})")]
    NotBalancedCandidate(u64),
    #[error("polynomial is not real-rooted")]
    NotRealRooted,
    #[error("polynomial degrees {0} and {1} differ by more than one")]
    DegreeMismatch(usize, usize),
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("sequence has {len} terms, need at least {min}")]
    TooShort { len: usize, min: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
