use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("monomials have {left} and {right} variables")]
    LengthMismatch { left: usize, right: usize },

    #[error("inhomogeneous element: {0}")]
    Inhomogeneous(String),

    #[error("{0} is not prime or exceeds 2^31")]
    NotPrime(u64),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("{0} is undefined for the zero module")]
    ZeroModule(&'static str),

    #[error("an unbounded resolution was requested over a non-regular ring")]
    NonRegularBase,

    #[error("betti numbers require a minimal resolution")]
    NonMinimal,

    #[error("ring is not artinian (dim R = {0})")]
    NotArtinian(i32),

    #[error("ring is not Cohen-Macaulay")]
    NotCohenMacaulay,

    #[error("hypothesis not established: {0}")]
    HypothesisNotMet(String),

    #[error("element is not in the span of the given generators")]
    NotInSpan,

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: unknown variable `{name}`")]
    UnknownVariable { line: usize, name: String },

    #[error("unknown module `{0}`")]
    UnknownModule(String),

    #[error("unknown command `{0}`")]
    UnknownCommand(String),

    #[error("missing module name")]
    MissingModule,

    #[error("command requires an input document")]
    MissingDocument,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
