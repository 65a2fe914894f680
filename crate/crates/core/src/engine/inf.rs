//! Intersection predicates.
//!
//! For predicates `p` and `q` a new predicate is built whose clauses come
//! from unifiable pairs of `p`- and `q`-clauses. Two rules yield a rule on
//! the pair of their body predicates; a fact paired with a rule keeps the
//! rule's own body atom; two facts yield a fact.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::diag::{Code, Diagnostic};
use crate::error::{Error, Result};
use crate::term::{mgu, Sym};

use super::program::{Atom, Clause, HornProgram, ValidProgram};

#[derive(Debug, Clone)]
pub struct Intersection {
    /// The input program extended by the new clauses.
    pub program: HornProgram,
    /// Name of the predicate for `left ∧ right`.
    pub predicate: Sym,
    /// Every predicate created, as `(left, right, name)`.
    pub created: Vec<(Sym, Sym, Sym)>,
}

impl Intersection {
    pub fn new_clauses<'a>(&'a self) -> impl Iterator<Item = &'a Clause> + 'a {
        let names: BTreeSet<&Sym> = self.created.iter().map(|(_, _, n)| n).collect();
        self.program
            .clauses
            .iter()
            .filter(move |c| names.contains(&c.head.pred))
    }
}

struct Namer {
    taken: BTreeSet<Sym>,
    pairs: BTreeMap<(Sym, Sym), Sym>,
    created: Vec<(Sym, Sym, Sym)>,
    queue: VecDeque<(Sym, Sym)>,
}

impl Namer {
    fn name(&mut self, l: &Sym, r: &Sym) -> Sym {
        if let Some(n) = self.pairs.get(&(l.clone(), r.clone())) {
            return n.clone();
        }
        let base = format!("{l}_{r}");
        let name: Sym = std::iter::once(base.clone())
            .chain((2..).map(|k| format!("{base}_{k}")))
            .map(|s| Sym::from(s.as_str()))
            .find(|s| !self.taken.contains(s))
            .expect("unbounded");
        self.taken.insert(name.clone());
        self.pairs.insert((l.clone(), r.clone()), name.clone());
        self.created.push((l.clone(), r.clone(), name.clone()));
        self.queue.push_back((l.clone(), r.clone()));
        name
    }
}

pub fn intersect(prog: &ValidProgram, left: &str, right: &str) -> Result<Intersection> {
    let p = prog.program();
    if !prog.pair_condition() {
        let mut diags = vec![Diagnostic::error(
            Code::PairNotBelow,
            "intersection needs the pair conditions, which this program does not meet",
        )];
        diags.extend(prog.warnings().iter().cloned());
        return Err(Error::Diagnostics(diags));
    }
    for name in [left, right] {
        if !p.defines(name) {
            return Err(Error::Diagnostics(vec![Diagnostic::error(
                Code::UnknownPredicate,
                format!("predicate `{name}` does not occur in the program"),
            )]));
        }
    }
    let mut namer = Namer {
        taken: p.preds().into_iter().collect(),
        pairs: BTreeMap::new(),
        created: Vec::new(),
        queue: VecDeque::new(),
    };
    let predicate = namer.name(&Sym::from(left), &Sym::from(right));
    let mut out = p.clone();
    while let Some((l, r)) = namer.queue.pop_front() {
        let name = namer.pairs[&(l.clone(), r.clone())].clone();
        for c1 in p.clauses_of(&l) {
            for c2 in p.clauses_of(&r) {
                let c2 = c2.rename_apart(&c1.vars());
                let Some(beta) = mgu(&c1.head.term, &c2.head.term) else {
                    continue;
                };
                let head = Atom {
                    pred: name.clone(),
                    term: beta.apply(&c1.head.term),
                };
                let body = match (c1.body_atom(), c2.body_atom()) {
                    (None, None) => None,
                    (Some(b), None) | (None, Some(b)) => Some(Atom {
                        pred: b.pred.clone(),
                        term: beta.apply(&b.term),
                    }),
                    (Some(b1), Some(b2)) => {
                        let (u1, u2) = (beta.apply(&b1.term), beta.apply(&b2.term));
                        if u1 != u2 {
                            return Err(Error::Diagnostics(vec![Diagnostic::error(
                                Code::PairNotBelow,
                                format!(
                                    "bodies of `{c1}` and `{c2}` differ under the head unifier ({u1} vs {u2})"
                                ),
                            )]));
                        }
                        Some(Atom {
                            pred: namer.name(&b1.pred, &b2.pred),
                            term: u1,
                        })
                    }
                };
                out.clauses.push(Clause {
                    head,
                    body: body.into_iter().collect(),
                    span: None,
                });
            }
        }
    }
    for (_, _, name) in &namer.created {
        if !out.clauses.iter().any(|c| c.head.pred == *name) {
            out.empty_preds.insert(name.clone());
        }
    }
    Ok(Intersection {
        program: out,
        predicate,
        created: namer.created,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deletion::SearchLimits;
    use crate::syntax::{parse_program, parse_term};
    use crate::term::alpha_eq;

    const EXAMPLE: &str = "
        constructors 0/0, s/1, :/2.
        congruence :.1 ~ :.2.
        p(s(s(X)):s(Y)) <- p(s(X):Y).
        p(X:0).
        q(s(X):s(X)) <- q(X:X).
        q(0:X).
    ";

    fn valid(src: &str) -> ValidProgram {
        parse_program(src)
            .unwrap()
            .validated(SearchLimits::default())
            .unwrap()
    }

    #[test]
    fn example_intersection() {
        let i = intersect(&valid(EXAMPLE), "p", "q").unwrap();
        assert_eq!(&*i.predicate, "p_q");
        let new: Vec<&Clause> = i.new_clauses().collect();
        assert_eq!(new.len(), 2);
        assert!(alpha_eq(
            &new[0].head.term,
            &parse_term("s(s(X)):s(s(X))").unwrap()
        ));
        let b = new[0].body_atom().unwrap();
        assert_eq!(&*b.pred, "p_q");
        assert!(alpha_eq(&b.term, &parse_term("s(X):s(X)").unwrap()));
        assert!(new[1].is_fact());
        assert_eq!(new[1].head.term, parse_term("0:0").unwrap());
    }

    #[test]
    fn no_unifiable_heads() {
        let i = intersect(&valid("constructors a/0, b/0. p(a). q(b)."), "p", "q").unwrap();
        assert_eq!(i.new_clauses().count(), 0);
        assert_eq!(i.created.len(), 1);
        let both = i.program.validated(SearchLimits::default()).unwrap();
        let goal = Atom::new("p_q", crate::term::Term::var("X"));
        let out = crate::engine::inh(&both, &goal, SearchLimits::default()).unwrap();
        assert!(!out.satisfiable);
    }

    #[test]
    fn names_avoid_existing_predicates() {
        let i = intersect(&valid("constructors a/0. p(a). q(a). p_q(a)."), "p", "q").unwrap();
        assert_eq!(&*i.predicate, "p_q_2");
    }

    #[test]
    fn fact_with_rule_keeps_the_rule_body() {
        let i = intersect(
            &valid("constructors a/0, s/1. p(X). q(s(X)) <- r(X). r(a)."),
            "p",
            "q",
        )
        .unwrap();
        let new: Vec<&Clause> = i.new_clauses().collect();
        assert_eq!(new.len(), 1);
        assert_eq!(&*new[0].body_atom().unwrap().pred, "r");
    }
}
