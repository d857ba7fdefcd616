use thiserror::Error;

/// Errors surfaced by the algebra, division and reduction engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("invalid mother code: {0}")]
    InvalidMotherCode(String),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("box condition failed: monomial {witness} in component {component} has no pure power of {variable} below it")]
    BoxConditionFailed {
        witness: String,
        component: usize,
        variable: String,
    },
    #[error("leading module is not an echelon: term {term} is covered by {covers} scoped divisors")]
    NotEchelon { term: String, covers: usize },
    #[error("precedence constraints are cyclic: {0:?}")]
    CycleError(Vec<String>),
    #[error("division did not stabilize: {0}")]
    Unstable(String),
    #[error("nonzero weak-normal-form remainder when expressing a virtual basis element: {0}")]
    NonzeroExpressRemainder(String),
    #[error("initial module is not regular in the last variable: {0}")]
    NotXnRegular(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
