use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live in different variable systems")]
    SystemMismatch,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown variable group `{0}`")]
    UnknownGroup(String),
    #[error("duplicate variable group `{0}`")]
    DuplicateGroup(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("group `{group}` has the wrong kind: {message}")]
    KindMismatch { group: String, message: String },
    #[error("twisted operators need an even-length complex group, `{group}` has length {len}")]
    OddLength { group: String, len: usize },
    #[error("polynomial is not homogeneous of the required (bi)degree in `{0}`")]
    Inhomogeneous(String),
    #[error("symbols outside group `{0}` are not allowed here")]
    ForeignSymbols(String),
    #[error("groups `{0}` and `{1}` have different lengths")]
    LengthMismatch(String, String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("target space is zero-dimensional")]
    ZeroDimensional,
    #[error("resource cap `{cap}` exceeded ({value} > {limit})")]
    CapExceeded {
        cap: &'static str,
        value: usize,
        limit: usize,
    },
}
