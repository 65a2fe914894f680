//! Deleting path segments, and the orders that deletions induce.

use hornsat::deletion::{
    del_term, leq, leq_star, less_set, DeletionSeq, GlobalCongruence, SearchLimits,
};
use hornsat::syntax::{parse_program, parse_term};

fn main() {
    let t = parse_term("f(g1(X1), X2, g3(X2))").unwrap();
    let s: DeletionSeq = "f.3 <- f.3.g3.1".parse().unwrap();
    println!("del({s}, {t}) = {}", del_term(&s, &t).unwrap());

    // Deleting only one of two shared positions is not compatible.
    let shared = parse_term("s(X):s(X)").unwrap();
    let half: DeletionSeq = ":.1 <- :.1.s.1".parse().unwrap();
    println!(
        "del({half}, {shared}) fails: {}",
        del_term(&half, &shared).unwrap_err()
    );

    let prog = parse_program(include_str!("../fixtures/pairs.hn")).unwrap();
    let small = parse_term("s(X):Y").unwrap();
    let large = parse_term("s(s(X)):s(Y)").unwrap();
    let gc =
        GlobalCongruence::new(&prog.signature, prog.generators.clone()).covering([&small, &large]);
    let limits = SearchLimits::default();
    match leq_star(&small, &large, &gc, limits).unwrap() {
        Some(w) => println!("{small} below {large} via {w}"),
        None => println!("{small} not below {large}"),
    }
    println!(
        "plain order agrees: {}",
        leq(&small, &large, limits).unwrap().is_some()
    );

    println!("everything below {large}:");
    for x in less_set(&large, &gc, limits).unwrap() {
        println!("  {x}");
    }
}
