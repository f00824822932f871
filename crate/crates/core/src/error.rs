use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("empty coefficient list")]
    Empty,
    #[error("the zero polynomial is not representable")]
    Zero,
    #[error("leading coefficient is zero")]
    LeadingZero,
    #[error("half encoding must start with 1 (monic)")]
    NotMonic,
    #[error("polynomial is not monic palindromic of even degree")]
    NotHalfEncodable,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("degree must be at least 1")]
    ConstantPolynomial,
    #[error("polynomial has repeated roots (gcd(P, P') is nonconstant)")]
    NotSquareFree,
    #[error("root iteration did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("could not certify roots: achieved radius {achieved:e} exceeds tolerance {tol:e}")]
    Uncertified { achieved: f64, tol: f64 },
    #[error("undecidable at current precision: a root disk straddles the unit circle")]
    Undecidable,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("reciprocal bound requires d >= 6, got {0}")]
    ReciprocalDegreeTooSmall(usize),
    #[error("degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("reciprocal witness requires even degree, got {0}")]
    OddReciprocalDegree(usize),
    #[error("degree {0} is not congruent to 5 mod 6")]
    NotFiveModSix(usize),
    #[error("division left a nonzero remainder")]
    InexactDivision,
    #[error("no divisor record available for degree {0}")]
    MissingDivisorRecord(usize),
    #[error("polynomial does not match the coefficient pattern")]
    PatternMismatch,
    #[error("sign condition failed: P({at}) has the wrong sign")]
    SignConditionFailed { at: String },
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("records were produced by different configurations")]
    MismatchedConfigs,
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorpusError {
    #[error("{table} line {line}: {msg}")]
    Malformed {
        table: String,
        line: usize,
        msg: String,
    },
    #[error("unresolved reference `{0}`")]
    UnresolvedReference(String),
    #[error("unknown table `{0}`")]
    UnknownTable(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
