use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid state space: {0}")]
    Space(String),

    #[error("{vars} variable(s) mod {modulus} exceed the cap of {cap} states")]
    StateCap {
        vars: usize,
        modulus: u32,
        cap: usize,
    },

    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("unknown variable `{name}` at {line}:{col}")]
    UnknownVariable {
        name: String,
        line: usize,
        col: usize,
    },

    #[error("configuration graph exceeds the budget of {limit} nodes")]
    Budget { limit: usize },

    #[error("malformed term: {0}")]
    MalformedTerm(String),

    #[error("unknown {kind} `{id}`")]
    UnknownId { kind: &'static str, id: String },

    #[error("invalid corpus configuration: {0}")]
    Corpus(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
