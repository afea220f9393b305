use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("{modulus} is not a prime below 2^31")]
    NonPrimeModulus { modulus: u64 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("algorithm needs a global monomial order")]
    LocalOrder,
    #[error("algorithm needs a local monomial order")]
    GlobalOrder,
    #[error("initial form of the zero element")]
    ZeroInitialForm,
    #[error("exponent overflow (per-variable cap {0})")]
    ExponentOverflow(u32),
    #[error("complex is not minimal: {0}")]
    NotMinimal(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Move a byte position by `offset`, for text parsed out of a larger input.
    pub fn shifted(self, offset: usize) -> Error {
        match self {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
            Error::UnknownVariable { name, pos } => Error::UnknownVariable {
                name,
                pos: pos + offset,
            },
            e => e,
        }
    }

    /// CLI exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded(_) => 2,
            Error::Invariant(_) => 3,
            _ => 1,
        }
    }
}
