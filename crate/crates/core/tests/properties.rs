mod common;

use common::*;
use hornsat::deletion::{del_term, leq, less_plain, SearchLimits};
use hornsat::engine::{Atom, Clause, HornProgram};
use hornsat::path::paths;
use hornsat::repr::{lci_repr, repr_of, term_of};
use hornsat::syntax::{parse_program, parse_term, render_program};
use hornsat::term::{alpha_eq, lci, mgu, Term};
use proptest::prelude::*;
use rand::Rng;

fn term_strategy() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["X", "Y", "Z"]).prop_map(Term::var),
        prop::sample::select(vec!["a", "b"]).prop_map(Term::constant),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (prop::sample::select(vec!["g", "h"]), inner.clone())
                .prop_map(|(f, x)| Term::app(f, vec![x])),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Term::app("f", vec![x, y])),
            (inner.clone(), inner.clone(), inner)
                .prop_map(|(x, y, z)| Term::app("k", vec![x, y, z])),
        ]
    })
}

proptest! {
    #[test]
    fn display_parses_back(x in term_strategy()) {
        prop_assert_eq!(parse_term(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn colon_terms_display_and_parse(x in term_strategy(), y in term_strategy(), z in term_strategy()) {
        let left = Term::app(":", vec![Term::app(":", vec![x.clone(), y.clone()]), z.clone()]);
        let right = Term::app(":", vec![x, Term::app(":", vec![y, z])]);
        prop_assert_eq!(parse_term(&left.to_string()).unwrap(), left);
        prop_assert_eq!(parse_term(&right.to_string()).unwrap(), right);
    }

    #[test]
    fn mgu_unifies_and_is_idempotent(x in term_strategy(), y in term_strategy()) {
        let y = prefixed(&y, "B");
        if let Some(s) = mgu(&x, &y) {
            prop_assert_eq!(s.apply(&x), s.apply(&y));
            prop_assert!(s.is_idempotent());
        }
    }

    #[test]
    fn decomposition_is_flat_after_linear(x in term_strategy(), y in term_strategy()) {
        if let Some(s) = mgu(&x, &prefixed(&y, "B")) {
            let (flat, linear) = s.decompose();
            prop_assert!(flat.classify().flat);
            prop_assert!(linear.classify().linear);
            for v in x.vars() {
                let t = Term::Var(v);
                prop_assert_eq!(flat.apply(&linear.apply(&t)), s.apply(&t));
            }
        }
    }

    #[test]
    fn lci_of_linear_terms_is_linear(x in term_strategy(), y in term_strategy()) {
        let y = prefixed(&y, "B");
        prop_assume!(x.is_linear() && y.is_linear());
        if let Some(r) = lci_repr(&[repr_of(&x), repr_of(&y)]) {
            let t = term_of(&r).unwrap();
            prop_assert!(t.is_linear(), "{}", t);
            prop_assert!(alpha_eq(&t, &lci(&[x, y]).unwrap()));
        }
    }

    #[test]
    fn everything_below_is_reachable_and_smaller(x in term_strategy()) {
        let limits = SearchLimits::default();
        let below = less_plain(&x, limits).unwrap();
        prop_assert!(below.iter().any(|b| alpha_eq(b, &x)));
        for b in &below {
            prop_assert!(paths(b).len() <= paths(&x).len());
            let w = leq(b, &x, limits).unwrap();
            prop_assert!(w.is_some(), "{} not below {}", b, x);
            prop_assert!(alpha_eq(&del_term(&w.unwrap(), &x).unwrap(), b));
        }
    }
}

/// A syntactically arbitrary program; it need not validate.
fn raw_program(rng: &mut TestRng) -> HornProgram {
    let sig = mixed_signature();
    let preds = ["p", "q", "r", "congruence"];
    let mut prog = HornProgram::new(sig.clone(), Vec::new(), Vec::new());
    prog.congruence_declared = rng.gen_bool(0.5);
    if prog.congruence_declared && rng.gen_bool(0.7) {
        prog.generators
            .push(("f.1".parse().unwrap(), "f.2".parse().unwrap()));
        if rng.gen_bool(0.3) {
            prog.generators
                .push(("k.1.g.1".parse().unwrap(), "eps".parse().unwrap()));
        }
    }
    for _ in 0..rng.gen_range(1..=6) {
        let vars = random_vars(rng, 3);
        let head = Atom::new(preds[rng.gen_range(0..4)], random_term(rng, &sig, 4, &vars));
        let c = if rng.gen_bool(0.4) {
            Clause::fact(head)
        } else {
            let body = Atom::new(preds[rng.gen_range(0..4)], random_term(rng, &sig, 3, &vars));
            Clause::rule(head, body)
        };
        prog.clauses.push(c);
    }
    prog
}

#[test]
fn render_parse_round_trip() {
    let mut rng = rng(21);
    for i in 0..200 {
        let prog = raw_program(&mut rng);
        let text = render_program(&prog);
        let again = parse_program(&text).unwrap_or_else(|d| panic!("program {i}:\n{text}\n{d:?}"));
        assert!(prog.same_shape(&again), "program {i}:\n{text}");
        assert_eq!(render_program(&again), text);
    }
}
