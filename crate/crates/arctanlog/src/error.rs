use thiserror::Error;

/// Evaluation failure modes shared across the crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polygamma pole at nonpositive integer argument {0}")]
    Pole(String),
    #[error("did not converge: {0}")]
    NonConvergence(String),
    #[error("no closed-form family covers ({a},{p},{q},{r})")]
    NotCovered { a: u32, p: u32, q: u32, r: u32 },
    #[error("outside the closed-form region: {0}")]
    OutOfRegion(String),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("singular term: {0}")]
    SingularTerm(String),
    #[error("unknown suite selector `{0}`")]
    UnknownSuite(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
