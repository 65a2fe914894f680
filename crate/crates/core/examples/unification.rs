//! Most general unifiers, matching and least common instances.

use hornsat::syntax::parse_term;
use hornsat::term::{lci, match_term, mgu};

fn main() {
    let a = parse_term("f(X, g(Y))").unwrap();
    let b = parse_term("f(h(Z), g(X))").unwrap();
    let beta = mgu(&a, &b).expect("unifiable");
    println!("mgu({a}, {b}) = {beta}");
    println!("  instance: {}", beta.apply(&a));

    // X occurs in g(X), so no unifier exists.
    let c = parse_term("g(X)").unwrap();
    println!("mgu(X, {c}) = {:?}", mgu(&parse_term("X").unwrap(), &c));

    let general = parse_term("X:Y").unwrap();
    let t = parse_term("s(0):0").unwrap();
    let m = match_term(&general, &t).unwrap();
    let kind = m.classify();
    println!(
        "{t} = {general}{m}  (flat: {}, linear: {})",
        kind.flat, kind.linear
    );
    let (flat, linear) = m.decompose();
    println!("  split into flat {flat} after linear {linear}");

    // Variables of the inputs are renamed apart before unifying.
    let terms = [
        parse_term("f(g1(X1), X2, g3(X2))").unwrap(),
        parse_term("f(X3, g2(X3), X4)").unwrap(),
    ];
    println!("lci = {}", lci(&terms).unwrap());
}
