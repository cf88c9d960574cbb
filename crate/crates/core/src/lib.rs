//! Finite-state laboratory for the nondeterministic guarded command language:
//! semantics, the eight predicate transformers, the relational TopKAT model,
//! and exhaustive checks of the program-logic taxonomy built on top of them.

pub mod error;
pub mod lang;
pub mod par;
pub mod semantics;
pub mod taxonomy;
pub mod topkat;
pub mod transformers;

pub use error::{Error, Result};
pub use lang::{
    parse_file, parse_guard, parse_program, Expr, Guard, Predicate, Program, State, StateSpace,
};
pub use semantics::Relation;
pub use transformers::TransformerKind;

/// Version string stamped into reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
