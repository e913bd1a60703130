use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("sequential compound needs at least one component")]
    EmptySequential,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumberError {
    #[error("sign sequence has transfinite length {0}; only finite stacks realize as forms")]
    Transfinite(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("cannot parse {what} from {text:?}")]
    Parse { what: &'static str, text: String },
}

/// Violated move rule, named by the clause of the protocol it breaks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArenaError {
    #[error("component {0} does not exist")]
    NoComponent(usize),
    #[error("illegal move: {0}")]
    Illegal(String),
    #[error("unknown sequence {0:?}")]
    UnknownSequence(String),
    #[error("birthday measure is undefined while a series is unopened")]
    Unopened,
    #[error("bound-dependent emptiness: {0}")]
    BoundDependent(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("strategy precondition failed: {0}")]
    Precondition(String),
    #[error("oracle check failed: {0}")]
    Oracle(String),
}
