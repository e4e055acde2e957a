use thiserror::Error;

/// Errors raised by construction and evaluation routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenPrime,
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{r} exceeds the budget of {max}")]
    FieldTooLarge { p: u64, r: u32, max: u64 },
    #[error("zero has no {0}")]
    ZeroArgument(&'static str),
    #[error("{p} is not congruent to 1 mod 4")]
    NotOneModFour { p: u64 },
    #[error("cyclotomic order {0} exceeds the promotion budget")]
    OrderBudget(usize),
    #[error("Gauss sums over F_{q} exceed the budget q <= {max}")]
    GaussBudget { q: u64, max: u64 },
    #[error("coefficient overflow in cyclotomic arithmetic")]
    CoefficientOverflow,
    #[error("denominator {den} is divisible by p = {p}")]
    DenominatorDivisibleByP { den: i64, p: u64 },
    #[error("precision budget exceeded: {p}^{n} is too large")]
    PrecisionBudget { p: u64, n: u32 },
    #[error("element is not a unit in Z_q")]
    NotAUnit,
    #[error("argument excluded from the domain: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
