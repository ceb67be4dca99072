use thiserror::Error;

/// Errors raised by the synthesis library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("exponent r must be at least 1")]
    ZeroExponent,
    #[error("modulus {p}^{r} exceeds the supported bound 2^31")]
    ModulusTooLarge { p: u64, r: u32 },
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("zero has no unit-power decomposition")]
    ZeroDecomposition,
    #[error("leading data of the zero vector is undefined")]
    ZeroVector,
    #[error("mode {mode} requires r = 1, got r = {r}")]
    ModeMismatch { mode: &'static str, r: u32 },
    #[error("operation not supported in {0} mode")]
    UnsupportedMode(&'static str),
    #[error("rows are not sorted by strictly decreasing leading monomial")]
    Ordering,
    #[error("oracle search needs about {cost} candidates, limit is {limit}")]
    Infeasible { cost: u128, limit: u128 },
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
