//! Horn programs with at most one body atom: validation, satisfiability,
//! intersection, the exponent bound and a ground-model oracle.

mod bound;
mod extension;
mod inf;
mod inh;
mod program;

pub use bound::{bound_set, BoundSet};
pub use extension::{enumerate_all, enumerate_extension};
pub use inf::{intersect, Intersection};
pub use inh::{inh, Goal, InhOutcome, Rule, TraceEvent};
pub use program::{validate_program, Atom, Clause, HornProgram, ValidProgram};
