//! Terms as path sets with a congruence, and back.

use hornsat::repr::{is_instance, lci_repr, repr_of, term_of, validate_repr, Congruence, TermRepr};
use hornsat::syntax::parse_term;

fn main() {
    let t = parse_term("s(X):s(X)").unwrap();
    let r = repr_of(&t);
    let paths: Vec<String> = r.paths.iter().map(|p| p.to_string()).collect();
    println!("paths({t}) = {{{}}}", paths.join(", "));
    for class in r.eq.nontrivial_classes() {
        let c: Vec<String> = class.iter().map(|p| p.to_string()).collect();
        println!("  class {{{}}}", c.join(", "));
    }
    println!("term_of gives back {}", term_of(&r).unwrap());

    // A hand-built representation that misses the sibling :.1.
    let ps = ["eps", ":.2"].iter().map(|s| s.parse().unwrap()).collect();
    let bad = TermRepr::new(
        ps,
        Congruence::identity(["eps".parse().unwrap(), ":.2".parse().unwrap()]),
    );
    for v in validate_repr(&bad.paths, &bad.eq) {
        println!("invalid: {v}");
    }

    // Unification as union of path sets and congruences.
    let a = repr_of(&parse_term("f(g1(X1), X2, g3(X2))").unwrap());
    let b = repr_of(&parse_term("f(X3, g2(X3), X4)").unwrap());
    let joined = lci_repr(&[a, b]).expect("unifiable");
    println!("lci via paths = {}", term_of(&joined).unwrap());

    let check = is_instance(&parse_term("X:Y").unwrap(), &parse_term("X:X").unwrap());
    println!(
        "X:X instance of X:Y: {} (flat {}, linear {})",
        check.instance, check.flat, check.linear
    );
}
