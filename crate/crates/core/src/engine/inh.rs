//! Satisfiability of a predicate on instances of a goal term.
//!
//! Each call expands every clause whose renamed head unifies with the
//! current term. A clause instance already on the current branch ends that
//! branch; a fact ends it successfully; a rule continues with its body
//! instance. The branch's visited set keeps every run finite.

use std::collections::BTreeSet;
use std::fmt;

use crate::deletion::{GlobalCongruence, SearchLimits};
use crate::diag::{Code, Diagnostic};
use crate::error::{Error, Result};
use crate::repr::repr_of;
use crate::term::{mgu, Sym, Term};

use super::program::{Atom, ValidProgram};

pub type Goal = Atom;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Disjunction over the clauses whose heads unify with the call.
    Expand,
    /// The clause instance already occurs on this branch.
    Occurs,
    /// Continue with the body instance.
    Body,
    /// A fact closes the branch.
    Fact,
}

impl Rule {
    pub fn number(self) -> u8 {
        match self {
            Rule::Expand => 1,
            Rule::Occurs => 2,
            Rule::Body => 3,
            Rule::Fact => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Expand => "expand",
            Rule::Occurs => "occurs",
            Rule::Body => "body",
            Rule::Fact => "fact",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub rule: Rule,
    pub pred: Sym,
    /// Canonical form of the exponent.
    pub term: Term,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InhOutcome {
    pub satisfiable: bool,
    /// A ground instance of the goal term in the predicate's extension.
    pub witness: Option<Term>,
    pub trace: Vec<TraceEvent>,
    /// Every exponent the run touched: calls and clause instances.
    pub exponents: Vec<(Sym, Term)>,
    pub calls: usize,
}

struct Run<'a> {
    prog: &'a ValidProgram,
    gc: GlobalCongruence,
    limits: SearchLimits,
    calls: usize,
    trace: Vec<TraceEvent>,
    exponents: Vec<(Sym, Term)>,
}

type Occ = BTreeSet<(Sym, Term)>;

impl Run<'_> {
    /// Checks an exponent's congruence against the global one.
    fn monitor(&mut self, t: &Term) -> Result<()> {
        self.gc.cover(t);
        if let Some((a, b)) = self.gc.first_outside(&repr_of(t).eq)? {
            return Err(Error::MonitorViolation(format!(
                "{t} relates {a} and {b}, which the global congruence does not"
            )));
        }
        Ok(())
    }

    fn event(&mut self, rule: Rule, pred: &Sym, t: &Term, depth: usize) {
        self.trace.push(TraceEvent {
            rule,
            pred: pred.clone(),
            term: t.canonical(),
            depth,
        });
    }

    fn call(
        &mut self,
        pred: &Sym,
        t: &Term,
        goal: &Term,
        occ: &Occ,
        depth: usize,
    ) -> Result<Option<Term>> {
        self.calls += 1;
        if self.calls > self.limits.max_states {
            return Err(Error::ResourceExhausted {
                limit: self.limits.max_states,
            });
        }
        self.monitor(t)?;
        self.exponents.push((pred.clone(), t.clone()));
        self.event(Rule::Expand, pred, t, depth);

        let prog = self.prog.program();
        for clause in prog.clauses_of(pred) {
            let mut avoid = t.vars();
            avoid.extend(goal.vars());
            let c = clause.rename_apart(&avoid);
            let Some(beta) = mgu(t, &c.head.term) else {
                continue;
            };
            let e = beta.apply(&c.head.term);
            self.monitor(&e)?;
            self.exponents.push((pred.clone(), e.clone()));
            let goal2 = beta.apply(goal);
            let key = (pred.clone(), e.canonical());
            if occ.contains(&key) {
                self.event(Rule::Occurs, pred, &e, depth);
                continue;
            }
            let Some(body) = c.body_atom() else {
                self.event(Rule::Fact, pred, &e, depth);
                return Ok(Some(goal2));
            };
            self.event(Rule::Body, pred, &e, depth);
            let mut occ2 = occ.clone();
            occ2.insert(key);
            let b = beta.apply(&body.term);
            if let Some(g) = self.call(&body.pred, &b, &goal2, &occ2, depth + 1)? {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }
}

/// Decides whether `goal.pred` holds for some instance of `goal.term`.
pub fn inh(prog: &ValidProgram, goal: &Goal, limits: SearchLimits) -> Result<InhOutcome> {
    let p = prog.program();
    if let Err(e) = p.signature.check(&goal.term) {
        return Err(Error::Diagnostics(vec![Diagnostic::error(
            Code::UnknownConstructor,
            format!("goal {goal}: {e}"),
        )]));
    }
    if !p.defines(&goal.pred) {
        return Err(Error::Diagnostics(vec![Diagnostic::error(
            Code::UnknownPredicate,
            format!("predicate `{}` does not occur in the program", goal.pred),
        )]));
    }
    let gc = prog.global().covering([&goal.term]);
    if let Some((a, b)) = gc.first_outside(&repr_of(&goal.term).eq)? {
        return Err(Error::Diagnostics(vec![Diagnostic::error(
            Code::GoalCongruenceNotGlobal,
            format!("goal {goal} relates {a} and {b}, which the global congruence does not"),
        )]));
    }
    let mut run = Run {
        prog,
        gc,
        limits,
        calls: 0,
        trace: Vec::new(),
        exponents: Vec::new(),
    };
    let found = run.call(&goal.pred, &goal.term, &goal.term, &Occ::new(), 0)?;
    let witness = match &found {
        Some(g) => {
            let ground = p.signature.least_ground_term();
            match ground {
                Some(z) => Some(g.map_vars(&mut |_| Some(z.clone()))),
                None if g.is_ground() => Some(g.clone()),
                None => None,
            }
        }
        None => None,
    };
    Ok(InhOutcome {
        satisfiable: found.is_some(),
        witness,
        trace: run.trace,
        exponents: run.exponents,
        calls: run.calls,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::intersect;
    use crate::syntax::{parse_program, parse_term};

    const EXAMPLE: &str = "
        constructors 0/0, s/1, :/2.
        congruence :.1 ~ :.2.
        p(s(s(X)):s(Y)) <- p(s(X):Y).
        p(X:0).
        q(s(X):s(X)) <- q(X:X).
        q(0:X).
    ";

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn with_pq() -> ValidProgram {
        let prog = parse_program(EXAMPLE)
            .unwrap()
            .validated(SearchLimits::default())
            .unwrap();
        let i = intersect(&prog, "p", "q").unwrap();
        i.program.validated(SearchLimits::default()).unwrap()
    }

    #[test]
    fn four_step_refutation() {
        let prog = with_pq();
        let goal = Atom::new("p_q", t("s(s(X)):s(s(X))"));
        let out = inh(&prog, &goal, SearchLimits::default()).unwrap();
        assert!(!out.satisfiable);
        let rules: Vec<u8> = out.trace.iter().map(|e| e.rule.number()).collect();
        assert_eq!(rules, vec![1, 3, 1, 2]);
        assert_eq!(out.trace[2].term, t("s(X1):s(X1)"));
        assert_eq!(out.trace[3].term, t("s(s(X1)):s(s(X1))"));
    }

    #[test]
    fn trivial_satisfiability() {
        let prog = with_pq();
        let out = inh(&prog, &Atom::new("p_q", t("X:Y")), SearchLimits::default()).unwrap();
        assert!(out.satisfiable);
        assert_eq!(out.witness, Some(t("0:0")));
    }

    #[test]
    fn pure_loop_is_unsatisfiable() {
        let prog = parse_program("constructors a/0. p(X) <- p(X).")
            .unwrap()
            .validated(SearchLimits::default())
            .unwrap();
        let out = inh(&prog, &Atom::new("p", t("X")), SearchLimits::default()).unwrap();
        assert!(!out.satisfiable);
        assert_eq!(out.witness, None);
    }

    #[test]
    fn witness_follows_the_derivation() {
        let prog = parse_program(EXAMPLE)
            .unwrap()
            .validated(SearchLimits::default())
            .unwrap();
        let out = inh(
            &prog,
            &Atom::new("p", t("s(s(X)):Y")),
            SearchLimits::default(),
        )
        .unwrap();
        assert!(out.satisfiable);
        assert_eq!(out.witness, Some(t("s(s(0)):s(0)")));
    }

    #[test]
    fn goal_outside_global_congruence() {
        let prog = parse_program(EXAMPLE)
            .unwrap()
            .validated(SearchLimits::default())
            .unwrap();
        let r = inh(&prog, &Atom::new("p", t("s(X):X")), SearchLimits::default());
        let Err(Error::Diagnostics(d)) = r else {
            panic!("{r:?}")
        };
        assert_eq!(d[0].code, Code::GoalCongruenceNotGlobal);
    }
}
