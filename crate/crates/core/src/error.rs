use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`{0}` is not an intervention target")]
    NotATarget(String),
    #[error("value `{value}` is not in the domain of `{variable}`")]
    UnknownValue { variable: String, value: String },
    #[error("regime {0} is not present in the model")]
    RegimeAbsent(String),
    #[error("variable sets must be disjoint: {0}")]
    NotDisjoint(String),
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("invalid statement: {0}")]
    InvalidStatement(String),
    #[error("invalid structural spec: {0}")]
    InvalidSpec(String),
    #[error("invalid model shape: {0}")]
    InvalidShape(String),
    #[error("regime subset must contain the all-idle regime")]
    IdleRegimeMissing,
    #[error("malformed lemma binding: {0}")]
    MalformedBinding(String),
    #[error("unknown graph node `{0}`")]
    UnknownNode(String),
    #[error("model and DAG disagree: {0}")]
    NameMismatch(String),
    #[error("conditional undefined: {0}")]
    UndefinedConditional(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("generator gave up after {0} attempts")]
    GenerationFailed(usize),
}
