use thiserror::Error;

/// Errors raised by the algebra kernel and its file formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("elements live over different graded spaces")]
    SpaceMismatch,
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("argument {0} is not a primal element")]
    NonPrimalArgument(usize),
    #[error("argument {0} is not homogeneous in parity")]
    InhomogeneousArgument(usize),
    #[error("k-unshuffles need 0 <= k <= n, got n = {n}, k = {k}")]
    BadUnshuffle { n: usize, k: usize },
    #[error("element is not in the required subspace: {0}")]
    NotInSubspace(String),
    #[error("component t{k}{l} contains a monomial of bidegree ({p},{q})")]
    WrongBidegree { k: usize, l: usize, p: usize, q: usize },
    #[error("structure constants are not alternating: {0}")]
    NotAlternating(String),
    #[error("operator table is not closed: word `{0}` missing")]
    NotClosed(String),
    #[error("Maurer-Cartan equation fails: {0}")]
    MaurerCartan(String),
    #[error("triple verification failed: {0}")]
    TripleInvalid(String),
    #[error("unknown structure kind `{0}`")]
    UnknownKind(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("schema violation: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
