//! Meaning of programs: collecting semantics, configuration graphs and
//! relational denotations.

mod collecting;
pub mod graph;
mod relation;

pub use collecting::{assign_image, collecting, denote_relation, inverse, must_diverge};
pub use graph::{build_graph, may_diverge, TransitionGraph, DEFAULT_NODE_BUDGET};
pub use relation::Relation;
