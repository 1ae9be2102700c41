use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("window has length {found}, expected {expected}")]
    BadLength { expected: usize, found: usize },
    #[error("entries at positions {0} and {1} are congruent modulo the rank")]
    ResidueClash(usize, usize),
    #[error("window sums to {found}, expected {expected}")]
    BadSum { expected: i64, found: i64 },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("vector {0:?} is outside the domain {1}")]
    DomainViolation(Vec<i64>, String),
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("invalid level {ell} for {context}")]
    BadEll { ell: usize, context: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("backtracking search failed: {0}")]
    SearchFailed(String),
    #[error("enumeration needs {needed} items, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("charge vector {0:?} is not in D_s")]
    NotInDs(Vec<i64>),
    #[error("reduced window {0:?} does not define a type C affine permutation")]
    MirrorViolation(Vec<i64>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}
