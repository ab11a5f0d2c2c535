use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative argument {0}")]
    NegativeArgument(i64),
    #[error("invalid binomial ({n} choose {k})")]
    InvalidBinomial { n: i64, k: i64 },
    #[error("inexact division")]
    InexactDivision,
    #[error("zero substituted for a variable")]
    ZeroSubstitution,
    #[error("odd power of v: v^{0}")]
    OddVPower(i64),
    #[error("coefficient of t^{t_exp} is not an integer at q = {q}")]
    NotIntegral { q: i64, t_exp: i64 },
    #[error("monomial v^{a} t^{b} has odd total degree")]
    NotDescendable { a: i64, b: i64 },
    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("diagonal chain infeasible: {0}")]
    ChainInfeasible(String),
    #[error("stabilization fit inconsistent: {0}")]
    FitInconsistent(String),
    #[error("degenerate specialization: {0}")]
    DegenerateSpecialization(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("infeasible shift: {0}")]
    InfeasibleShift(String),
    #[error("rank did not stabilize: {0}")]
    RankNotStable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
