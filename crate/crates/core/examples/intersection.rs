//! The intersection of two predicates as a new predicate.

use hornsat::deletion::SearchLimits;
use hornsat::engine::intersect;
use hornsat::syntax::{parse_program, render_program};

fn main() {
    let prog = parse_program(include_str!("../fixtures/pairs.hn"))
        .unwrap()
        .validated(SearchLimits::default())
        .unwrap();
    let i = intersect(&prog, "p", "q").unwrap();
    println!("new predicate {}:", i.predicate);
    for c in i.new_clauses() {
        println!("  {c}");
    }
    println!("\nfull program:\n{}", render_program(&i.program));
}
