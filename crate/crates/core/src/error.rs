use thiserror::Error;

use crate::grammar::Base;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("base {base} is not allowed at seed position {index}: {reason}")]
    Position {
        index: usize,
        base: Base,
        reason: &'static str,
    },

    #[error("C can only be used as a singleton seed (found at position {index})")]
    SingletonC { index: usize },

    #[error("seed path intersects itself at position {index}")]
    SelfIntersection { index: usize },

    #[error("seed rotation at position {index} does not follow from its predecessor")]
    Disconnected { index: usize },

    #[error("base {0} has a closed exit and no successor")]
    NoSuccessor(Base),

    #[error("{what} {value} out of range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("level {level} exceeds the expansion limit {max}")]
    LevelTooLarge { level: usize, max: usize },

    #[error("operation requires a single-base seed")]
    NotSingleBase,

    #[error("operation requires level >= {min}, got {level}")]
    LevelTooSmall { level: usize, min: usize },

    #[error("not a level >= 1 curve walk: {0}")]
    NotAWalk(String),

    #[error("no encoding matches the walk: {0}")]
    NoMatch(String),

    #[error("inconsistent endpoints: {0}")]
    InconsistentEndpoints(String),

    #[error("rule derivation failed for {base}{code}: {candidates} candidates")]
    RuleDerivation {
        base: Base,
        code: u8,
        candidates: usize,
    },

    #[error("mismatched inputs: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
