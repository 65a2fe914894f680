//! Deciding whether a predicate holds for some instance of a goal.

use hornsat::deletion::SearchLimits;
use hornsat::engine::{inh, intersect, Atom};
use hornsat::syntax::{parse_program, parse_term};

fn main() {
    let limits = SearchLimits::default();
    let prog = parse_program(include_str!("../fixtures/pairs.hn"))
        .unwrap()
        .validated(limits)
        .unwrap_or_else(|d| panic!("{d:?}"));
    let both = intersect(&prog, "p", "q").unwrap();
    let prog = both.program.validated(limits).unwrap();

    for goal in ["s(s(X)):s(s(X))", "X:Y"] {
        let goal = Atom::new(&both.predicate, parse_term(goal).unwrap());
        let out = inh(&prog, &goal, limits).unwrap();
        println!("{goal}: {}", out.satisfiable);
        for e in &out.trace {
            println!(
                "{:indent$}{} {}({})",
                "",
                e.rule,
                e.pred,
                e.term,
                indent = 2 + 2 * e.depth
            );
        }
        if let Some(w) = out.witness {
            println!("  witness {w}");
        }
    }
}
