//! The eight predicate transformers, computed two independent ways.

mod classes;
mod inductive;
mod kind;
mod oracle;

pub use classes::{classes_of, coreachability_class, reachability_class, transform_by_classes};
pub use inductive::{gfp, inductive_transform, lfp};
pub use kind::{Direction, Resolution, TransformerKind};
pub use oracle::{oracle_transform, ProgramModel};
