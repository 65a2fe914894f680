//! Concrete syntax: the program parser and renderers.

mod parser;
pub mod render;

pub use parser::{parse_atom, parse_program, parse_term};
pub use render::{parse_machine, render_diagnostics, render_program, Format, Machine};
