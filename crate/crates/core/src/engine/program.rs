use std::collections::BTreeSet;
use std::fmt;

use crate::deletion::{
    leq_with, GlobalCongruence, PairLift, PathClasses, SearchLimits, SearchStats,
};
use crate::diag::{Code, Diagnostic, Span};
use crate::error::Error;
use crate::path::Path;
use crate::repr::repr_of;
use crate::term::{renaming_apart, Signature, Sym, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub pred: Sym,
    pub term: Term,
}

impl Atom {
    pub fn new(pred: &str, term: Term) -> Self {
        Atom {
            pred: Sym::from(pred),
            term,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.pred, self.term)
    }
}

#[derive(Debug, Clone)]
pub struct Clause {
    pub head: Atom,
    pub body: Vec<Atom>,
    pub span: Option<Span>,
}

impl Clause {
    pub fn fact(head: Atom) -> Self {
        Clause {
            head,
            body: Vec::new(),
            span: None,
        }
    }

    pub fn rule(head: Atom, body: Atom) -> Self {
        Clause {
            head,
            body: vec![body],
            span: None,
        }
    }

    pub fn is_fact(&self) -> bool {
        self.body.is_empty()
    }

    /// The single body atom of a rule.
    pub fn body_atom(&self) -> Option<&Atom> {
        self.body.first()
    }

    pub fn vars(&self) -> BTreeSet<Sym> {
        let mut v = self.head.term.vars();
        for a in &self.body {
            v.extend(a.term.vars());
        }
        v
    }

    /// The clause with variables renamed away from `avoid`.
    pub fn rename_apart(&self, avoid: &BTreeSet<Sym>) -> Clause {
        let mut order = self.head.term.var_order();
        for a in &self.body {
            order.extend(a.term.var_order());
        }
        let ren = renaming_apart(&order, avoid);
        Clause {
            head: Atom {
                pred: self.head.pred.clone(),
                term: ren.apply(&self.head.term),
            },
            body: self
                .body
                .iter()
                .map(|a| Atom {
                    pred: a.pred.clone(),
                    term: ren.apply(&a.term),
                })
                .collect(),
            span: self.span,
        }
    }

    /// Same head and body, ignoring source positions.
    pub fn same_shape(&self, other: &Clause) -> bool {
        self.head == other.head && self.body == other.body
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        for (i, a) in self.body.iter().enumerate() {
            f.write_str(if i == 0 { " <- " } else { ", " })?;
            write!(f, "{a}")?;
        }
        f.write_str(".")
    }
}

#[derive(Debug, Clone, Default)]
pub struct HornProgram {
    pub signature: Signature,
    pub constructors_declared: bool,
    pub generators: Vec<(Path, Path)>,
    pub congruence_declared: bool,
    pub clauses: Vec<Clause>,
    /// Predicates that exist without clauses, such as an intersection of
    /// predicates whose heads never unify. Their extension is empty.
    pub empty_preds: BTreeSet<Sym>,
}

impl HornProgram {
    pub fn new(signature: Signature, generators: Vec<(Path, Path)>, clauses: Vec<Clause>) -> Self {
        HornProgram {
            signature,
            constructors_declared: true,
            congruence_declared: !generators.is_empty(),
            generators,
            clauses,
            empty_preds: BTreeSet::new(),
        }
    }

    /// Predicate names in order of first appearance.
    pub fn preds(&self) -> Vec<Sym> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for c in &self.clauses {
            for a in std::iter::once(&c.head).chain(&c.body) {
                if seen.insert(a.pred.clone()) {
                    out.push(a.pred.clone());
                }
            }
        }
        out.extend(
            self.empty_preds
                .iter()
                .filter(|p| !seen.contains(*p))
                .cloned(),
        );
        out
    }

    pub fn clauses_of<'a>(&'a self, pred: &'a str) -> impl Iterator<Item = &'a Clause> + 'a {
        self.clauses.iter().filter(move |c| &*c.head.pred == pred)
    }

    pub fn defines(&self, pred: &str) -> bool {
        self.preds().iter().any(|p| &**p == pred)
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.clauses
            .iter()
            .flat_map(|c| std::iter::once(&c.head.term).chain(c.body.iter().map(|a| &a.term)))
    }

    /// The global congruence over a universe covering every clause term.
    pub fn global(&self) -> GlobalCongruence {
        GlobalCongruence::new(&self.signature, self.generators.clone()).covering(self.terms())
    }

    /// Same clauses, ignoring source positions.
    pub fn same_shape(&self, other: &HornProgram) -> bool {
        self.signature == other.signature
            && self.generators == other.generators
            && self.clauses.len() == other.clauses.len()
            && self
                .clauses
                .iter()
                .zip(&other.clauses)
                .all(|(a, b)| a.same_shape(b))
    }
}

/// A program that passed validation. Engine entry points take this.
#[derive(Debug, Clone)]
pub struct ValidProgram {
    program: HornProgram,
    global: GlobalCongruence,
    pair_condition: bool,
    warnings: Vec<Diagnostic>,
}

impl ValidProgram {
    pub fn program(&self) -> &HornProgram {
        &self.program
    }

    pub fn global(&self) -> &GlobalCongruence {
        &self.global
    }

    /// Whether the sharpened pair conditions hold, which intersection needs.
    pub fn pair_condition(&self) -> bool {
        self.pair_condition
    }

    pub fn warnings(&self) -> &[Diagnostic] {
        &self.warnings
    }

    pub fn into_program(self) -> HornProgram {
        self.program
    }
}

impl HornProgram {
    pub fn validated(self, limits: SearchLimits) -> Result<ValidProgram, Vec<Diagnostic>> {
        let diags = validate_program(&self, limits);
        if diags.iter().any(Diagnostic::is_error) {
            return Err(diags);
        }
        let pair_condition = diags.is_empty();
        let global = self.global();
        Ok(ValidProgram {
            program: self,
            global,
            pair_condition,
            warnings: diags,
        })
    }
}

fn clause_label(i: usize, c: &Clause) -> String {
    format!("clause {} `{c}`", i + 1)
}

/// Checks structure, the body-below-head and congruence side conditions,
/// and the pair conditions intersection relies on. Pair failures are
/// warnings; everything else is an error.
pub fn validate_program(prog: &HornProgram, limits: SearchLimits) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if prog.clauses.is_empty() {
        out.push(Diagnostic::error(
            Code::EmptyProgram,
            "program has no clauses",
        ));
        return out;
    }

    let mut structural = false;
    for (i, c) in prog.clauses.iter().enumerate() {
        for a in std::iter::once(&c.head).chain(&c.body) {
            if let Err(e) = prog.signature.check(&a.term) {
                let code = match e {
                    crate::term::SignatureError::Unknown(_) => Code::UnknownConstructor,
                    crate::term::SignatureError::Arity { .. } => Code::ArityMismatch,
                };
                out.push(
                    Diagnostic::error(code, format!("{}: {e}", clause_label(i, c))).at(c.span),
                );
                structural = true;
            }
        }
        if c.body.len() > 1 {
            out.push(
                Diagnostic::error(
                    Code::MultipleBodyAtoms,
                    format!("{}: at most one body atom is allowed", clause_label(i, c)),
                )
                .at(c.span),
            );
            structural = true;
            let mut seen = BTreeSet::new();
            for a in &c.body {
                let vs = a.term.vars();
                if let Some(v) = vs.iter().find(|v| seen.contains(*v)) {
                    out.push(
                        Diagnostic::error(
                            Code::BodyVariablesShared,
                            format!("{}: body atoms share variable {v}", clause_label(i, c)),
                        )
                        .at(c.span),
                    );
                }
                seen.extend(vs);
            }
        }
    }
    for (a, b) in &prog.generators {
        for p in [a, b] {
            if let Err(e) = p.check(&prog.signature) {
                out.push(Diagnostic::error(
                    Code::UnknownConstructor,
                    format!("congruence path {p}: {e}"),
                ));
                structural = true;
            }
        }
    }
    if structural {
        return out;
    }

    let gc = prog.global();

    for (i, c) in prog.clauses.iter().enumerate() {
        let eq = repr_of(&c.head.term).eq;
        if !prog.congruence_declared && !eq.is_identity() {
            out.push(
                Diagnostic::error(
                    Code::CongruenceBlockRequired,
                    format!(
                        "{}: head shares subterms, so a congruence block is required",
                        clause_label(i, c)
                    ),
                )
                .at(c.span),
            );
            continue;
        }
        if let Ok(Some((a, b))) = gc.first_outside(&eq) {
            out.push(
                Diagnostic::error(
                    Code::HeadCongruenceNotGlobal,
                    format!(
                        "{}: {a} and {b} are related in the head but not globally",
                        clause_label(i, c)
                    ),
                )
                .at(c.span),
            );
            continue;
        }
        if let Some(b) = c.body_atom() {
            let mut stats = SearchStats::default();
            match leq_with(&b.term, &c.head.term, &gc, limits, &mut stats) {
                Ok(Some(_)) => {}
                Ok(None) => out.push(
                    Diagnostic::error(
                        Code::BodyNotBelowHead,
                        format!(
                            "{}: {} is not obtainable from {} by compatible deletions (search exhausted after {} states)",
                            clause_label(i, c),
                            b.term,
                            c.head.term,
                            stats.states
                        ),
                    )
                    .at(c.span),
                ),
                Err(e) => out.push(search_failure(e, &clause_label(i, c)).at(c.span)),
            }
        }
    }
    if out.iter().any(Diagnostic::is_error) {
        return out;
    }

    if !gc.is_mx_closed() {
        out.push(Diagnostic::error(
            Code::GlobalNotMaximal,
            "global congruence is not closed under maximality",
        ));
    }

    out.extend(pair_conditions(prog, &gc, limits));
    out
}

fn search_failure(e: Error, label: &str) -> Diagnostic {
    match e {
        Error::ResourceExhausted { limit } => Diagnostic::error(
            Code::ResourceExhausted,
            format!("{label}: deletion search exceeded {limit} states"),
        ),
        Error::OutOfUniverse(p) => Diagnostic::error(
            Code::OutOfUniverse,
            format!("{label}: path {p} lies outside the congruence universe"),
        ),
        other => Diagnostic::error(Code::MonitorViolation, format!("{label}: {other}")),
    }
}

/// For every pair of clauses (including a clause with itself, renamed
/// apart): the paired heads respect the lifted global congruence, and for
/// two rules the paired bodies lie below the paired heads.
fn pair_conditions(
    prog: &HornProgram,
    gc: &GlobalCongruence,
    limits: SearchLimits,
) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let lift = PairLift(gc);
    for (i, c1) in prog.clauses.iter().enumerate() {
        for (j, c2) in prog.clauses.iter().enumerate().skip(i) {
            let c2 = c2.rename_apart(&c1.vars());
            let head = Term::pair(c1.head.term.clone(), c2.head.term.clone());
            let label = format!("clauses {} and {}", i + 1, j + 1);
            let eq = repr_of(&head).eq;
            let outside =
                eq.generating_pairs()
                    .find(|(p, r)| match (lift.class_of(p), lift.class_of(r)) {
                        (Ok(a), Ok(b)) => a != b,
                        _ => true,
                    });
            if let Some((p, r)) = outside {
                out.push(Diagnostic::warning(
                    Code::PairCongruenceNotGlobal,
                    format!("{label}: paired heads relate {r} and {p}, which the global congruence does not"),
                ));
                continue;
            }
            let (Some(b1), Some(b2)) = (c1.body_atom(), c2.body_atom()) else {
                continue;
            };
            let body = Term::pair(b1.term.clone(), b2.term.clone());
            let mut stats = SearchStats::default();
            match leq_with(&body, &head, &lift, limits, &mut stats) {
                Ok(Some(_)) => {}
                Ok(None) => out.push(Diagnostic::warning(
                    Code::PairNotBelow,
                    format!(
                        "{label}: {body} is not obtainable from {head} by compatible deletions (search exhausted after {} states)",
                        stats.states
                    ),
                )),
                Err(e) => {
                    let mut d = search_failure(e, &label);
                    d.severity = crate::diag::Severity::Warning;
                    out.push(d);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    const EXAMPLE: &str = "
        constructors 0/0, s/1, :/2.
        congruence :.1 ~ :.2.
        p(s(s(X)):s(Y)) <- p(s(X):Y).
        p(X:0).
        q(s(X):s(X)) <- q(X:X).
        q(0:X).
    ";

    #[test]
    fn example_program_is_valid() {
        let prog = parse_program(EXAMPLE).unwrap();
        let d = validate_program(&prog, SearchLimits::default());
        assert!(d.is_empty(), "{d:?}");
    }

    #[test]
    fn growing_body_is_rejected() {
        let prog = parse_program("constructors s/1. p(X) <- p(s(X)).").unwrap();
        let d = validate_program(&prog, SearchLimits::default());
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].code, Code::BodyNotBelowHead);
    }

    #[test]
    fn two_body_atoms_are_rejected() {
        let prog = parse_program("p(X) <- q(X), r(Y).").unwrap();
        let d = validate_program(&prog, SearchLimits::default());
        assert!(d.iter().any(|d| d.code == Code::MultipleBodyAtoms));
    }

    #[test]
    fn shared_head_needs_congruence_block() {
        let prog = parse_program("q(s(X):s(X)) <- q(X:X). q(0:X).").unwrap();
        let d = validate_program(&prog, SearchLimits::default());
        assert!(d.iter().any(|d| d.code == Code::CongruenceBlockRequired));
    }

    #[test]
    fn head_outside_global_congruence() {
        let prog =
            parse_program("constructors f/2, g/2. congruence f.1 ~ f.2. q(g(X, X)).").unwrap();
        let d = validate_program(&prog, SearchLimits::default());
        assert!(d.iter().any(|d| d.code == Code::HeadCongruenceNotGlobal));
    }

    #[test]
    fn rename_apart_covers_body_only_variables() {
        let c = Clause::rule(
            Atom::new("p", Term::var("X")),
            Atom::new("q", Term::app("f", vec![Term::var("X"), Term::var("Y")])),
        );
        let avoid: BTreeSet<Sym> = [Sym::from("Y")].into();
        let r = c.rename_apart(&avoid);
        assert!(!r.vars().contains("Y"));
        assert!(r.vars().contains("X"));
    }
}
