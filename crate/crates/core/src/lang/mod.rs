//! Syntax and state model of nGCL.

mod ast;
pub mod parser;
mod predicate;
mod space;

pub use ast::{CmpOp, Expr, Guard, Program};
pub use parser::{parse_file, parse_guard, parse_program, ProgramFile};
pub use predicate::{all_predicates, Predicate};
pub use space::{State, StateSpace, MAX_STATES};
