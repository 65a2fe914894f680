//! Ground extensions by bottom-up enumeration, compared with intersection.

use std::collections::BTreeSet;

use hornsat::deletion::SearchLimits;
use hornsat::engine::{enumerate_all, intersect};
use hornsat::syntax::parse_program;

fn main() {
    let limits = SearchLimits::default();
    let prog = parse_program(include_str!("../fixtures/pairs.hn"))
        .unwrap()
        .validated(limits)
        .unwrap();
    let i = intersect(&prog, "p", "q").unwrap();
    let depth = 4;
    let model = enumerate_all(&i.program, depth, limits).unwrap();
    for (pred, terms) in &model {
        let shown: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        println!("{pred} ({} terms): {}", terms.len(), shown.join("  "));
    }
    let meet: BTreeSet<_> = model["p"].intersection(&model["q"]).cloned().collect();
    println!(
        "p & q agrees with {}: {}",
        i.predicate,
        meet == model[&i.predicate]
    );
}
