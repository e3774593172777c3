use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no leading term")]
    NoLeadingTerm,
    #[error("odd word not encodable")]
    OddWord,
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared generator {0}")]
    UndeclaredGenerator(String),
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("malformed schema exponent: {0}")]
    MalformedSchema(String),
    #[error("relation is the zero polynomial")]
    ZeroRelation,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("degree exceeds truncation ({degree} > {bound})")]
    DegreeExceedsTruncation { degree: usize, bound: usize },
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("monomial fast path requires monomial rules")]
    NonMonomialRule,

    #[error("the even-part construction requires odd generators ({0} is even)")]
    EvenGenerator(String),

    #[error("no idempotent designated")]
    MissingIdempotent,
    #[error("missing idempotent relation {0}^2 - {0}")]
    MissingIdempotentRelation(String),
    #[error("witness decomposition must be nonempty")]
    EmptyWitness,
    #[error("witnesses not verified ({0})")]
    WitnessesNotVerified(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}
