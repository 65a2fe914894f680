//! The finite set of terms a satisfiability run can visit.

use hornsat::deletion::SearchLimits;
use hornsat::engine::{bound_set, inh, intersect, Atom};
use hornsat::syntax::{parse_program, parse_term};

fn main() {
    let limits = SearchLimits::default();
    let prog = parse_program(include_str!("../fixtures/pairs.hn"))
        .unwrap()
        .validated(limits)
        .unwrap();
    let i = intersect(&prog, "p", "q").unwrap();
    let prog = i.program.validated(limits).unwrap();

    let goal = Atom::new(&i.predicate, parse_term("s(s(X)):s(s(X))").unwrap());
    let bound = bound_set(&prog, &goal.term, limits).unwrap();
    println!("{} terms bound the exponents of {goal}:", bound.len());
    for t in bound.iter() {
        println!("  {t}");
    }
    let run = inh(&prog, &goal, limits).unwrap();
    let inside = run.exponents.iter().all(|(_, e)| bound.contains(e));
    println!(
        "{} exponents visited, all inside: {inside}",
        run.exponents.len()
    );
}
