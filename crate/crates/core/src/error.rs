use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("atom `{name}` at line {line}, column {column} uses the reserved `_` prefix")]
    ReservedAtom {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),

    #[error("invalid alphabet specification `{0}` (expected `direct:a,b` or `complement:a,b`)")]
    InvalidAlphabet(String),

    #[error("operation requires a normal program, but a rule has {head_size} head atoms")]
    NotNormal { head_size: usize },

    #[error("operation requires a Horn program (no negative body literals)")]
    NotHorn,

    #[error("candidate universe has {size} atoms, above the limit of {limit}")]
    UniverseTooLarge { size: usize, limit: usize },

    #[error("formula has {size} variables, above the evaluation limit of {limit}")]
    TooManyVariables { size: usize, limit: usize },

    #[error("atom `{0}` collides with an atom reserved by the construction")]
    AtomCollision(String),

    #[error("invalid construction input: {0}")]
    Precondition(String),

    #[error("DIMACS input error at line {line}: {message}")]
    Dimacs { line: usize, message: String },

    #[error("no witness: the verdict is equivalent")]
    NoWitness,

    #[error("no distinguishing context found within the given bounds")]
    ContextNotFound,
}
