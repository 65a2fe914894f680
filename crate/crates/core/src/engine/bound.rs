//! The finite set every exponent of a satisfiability run falls into:
//! least common instances of terms below the heads and the query.

use std::collections::BTreeSet;

use crate::deletion::{less_with, SearchLimits, SearchStats};
use crate::error::{Error, Result};
use crate::term::{alpha_eq, lci, Term};

use super::program::ValidProgram;

/// Terms in canonical form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundSet {
    terms: BTreeSet<Term>,
}

impl BoundSet {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains(&t.canonical())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter()
    }

    fn insert(&mut self, t: Term) -> bool {
        self.terms.insert(t.canonical())
    }
}

pub fn bound_set(prog: &ValidProgram, query: &Term, limits: SearchLimits) -> Result<BoundSet> {
    let p = prog.program();
    let heads: Vec<&Term> = p.clauses.iter().map(|c| &c.head.term).collect();
    let gc = prog.global().covering(heads.iter().copied().chain([query]));
    let mut below = BoundSet::default();
    let mut stats = SearchStats::default();
    for t in heads.into_iter().chain([query]) {
        for s in less_with(t, &gc, limits, &mut stats)? {
            below.insert(s);
        }
    }
    let base: Vec<Term> = below.iter().cloned().collect();
    let mut out = below;
    let mut frontier: Vec<Term> = base.clone();
    let mut work = 0usize;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &base {
                work += 1;
                if work > limits.max_states {
                    return Err(Error::ResourceExhausted {
                        limit: limits.max_states,
                    });
                }
                if let Some(c) = lci(&[a.clone(), b.clone()]) {
                    if out.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
        }
        frontier = next;
    }
    debug_assert!(out.iter().any(|t| alpha_eq(t, query)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_program, parse_term};

    #[test]
    fn example_bound_set() {
        let prog = parse_program(
            "constructors 0/0, s/1, :/2.
             congruence :.1 ~ :.2.
             p(s(s(X)):s(Y)) <- p(s(X):Y).
             p(X:0).
             q(s(X):s(X)) <- q(X:X).
             q(0:X).",
        )
        .unwrap()
        .validated(SearchLimits::default())
        .unwrap();
        let q = parse_term("s(s(X)):s(s(X))").unwrap();
        let b = bound_set(&prog, &q, SearchLimits::default()).unwrap();
        assert!(b.contains(&q));
        assert!(b.contains(&parse_term("s(X):s(X)").unwrap()));
        assert!(b.contains(&parse_term("s(s(X)):s(Y)").unwrap()));
    }
}
