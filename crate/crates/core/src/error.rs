use thiserror::Error;

use crate::syntax::Path;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("bang construct in lambda mode at offset {pos}")]
    BangInLambdaMode { pos: usize },
    #[error("invalid redex at {path}: {reason}")]
    InvalidRedex { path: Path, reason: String },
    #[error("term is not in the image of the {0} translation")]
    NotInImage(&'static str),
    #[error("inconclusive within budget {budget}: {what}")]
    Inconclusive { budget: usize, what: String },
    #[error("{0}")]
    Mismatch(String),
}
