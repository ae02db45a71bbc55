use thiserror::Error;

/// Errors produced by the arithmetic kernels and the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no factorization")]
    ZeroInput,

    #[error("modulus {0} is outside 1..2^63")]
    ModulusOutOfRange(u64),

    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(u64, u64),

    #[error("residue {residue} is not reduced modulo {modulus}")]
    UnreducedResidue { residue: u64, modulus: u64 },

    #[error("product of CRT moduli exceeds 2^63 - 1")]
    CrtOverflow,

    #[error("base {0} is outside 2..2^32")]
    BaseOutOfRange(u64),

    #[error("sequence index {0} is outside 1..2^63")]
    IndexOutOfRange(u64),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("oracle path only accepts n <= {bound}, got {n}")]
    OracleBoundExceeded { n: u64, bound: u64 },

    #[error("window {lo}..={hi} has {len} terms, at least {required} are needed")]
    WindowTooSmall {
        lo: u64,
        hi: u64,
        len: u64,
        required: u64,
    },

    #[error("window {lo}..={hi} is too large to scan (limit {limit} terms)")]
    WindowTooLarge { lo: u64, hi: u64, limit: u64 },

    #[error("no period dividing {0} was detected in the window")]
    PeriodNotDetected(u64),

    #[error("base {0} is not of the form 2^(2^s)")]
    NotTwoPowerTower(u64),

    #[error("base {0} is not even and square-free")]
    NotEvenSquarefree(u64),

    #[error("parameters overflow the 2^63 index cap: {0}")]
    Overflow(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
