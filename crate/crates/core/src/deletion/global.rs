use std::collections::BTreeSet;

use crate::diag::{Code, Diagnostic};
use crate::error::{Error, Result};
use crate::path::{paths, Path, Step};
use crate::repr::{arities_of, repr_of, Arities, Closure, Congruence, NullaryRule, Saturate};
use crate::term::{Signature, Sym, Term, PAIR};

use super::PathClasses;

/// A finitely generated congruence on paths, decided over an explicit
/// prefix-closed universe that callers enlarge as needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalCongruence {
    arities: Arities,
    generators: Vec<(Path, Path)>,
    eq: Congruence,
}

impl GlobalCongruence {
    pub fn new(sig: &Signature, generators: Vec<(Path, Path)>) -> Self {
        let mut gc = GlobalCongruence {
            arities: arities_of(sig),
            generators,
            eq: Congruence::default(),
        };
        gc.resaturate(BTreeSet::new());
        gc
    }

    pub fn generators(&self) -> &[(Path, Path)] {
        &self.generators
    }

    pub fn universe(&self) -> impl Iterator<Item = &Path> {
        self.eq.universe()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.eq.contains(p)
    }

    pub fn congruence(&self) -> &Congruence {
        &self.eq
    }

    fn resaturate(&mut self, extra: BTreeSet<Path>) {
        let mut c = Closure::new(self.eq.universe().cloned().chain(extra));
        c.add_path(Path::eps());
        for (a, b) in &self.generators {
            let (i, j) = (c.add_path(a.clone()), c.add_path(b.clone()));
            c.union(i, j);
        }
        c.saturate(
            &self.arities,
            Saturate {
                maximality: Some(NullaryRule::Related),
                grow: false,
            },
            None,
        )
        .expect("no growth, no cycles");
        self.eq = c.into_congruence();
    }

    /// Adds `ps` and their prefixes to the universe and re-saturates.
    pub fn extend<I: IntoIterator<Item = Path>>(&mut self, ps: I) {
        let new: BTreeSet<Path> = ps.into_iter().filter(|p| !self.contains(p)).collect();
        if !new.is_empty() {
            self.resaturate(new);
        }
    }

    pub fn cover(&mut self, t: &Term) {
        self.extend(paths(t));
    }

    pub fn covering<'a>(&self, ts: impl IntoIterator<Item = &'a Term>) -> Self {
        let mut gc = self.clone();
        gc.extend(ts.into_iter().flat_map(paths));
        gc
    }

    pub fn cong_member(&self, a: &Path, b: &Path) -> Result<bool> {
        for p in [a, b] {
            if !self.contains(p) {
                return Err(Error::OutOfUniverse(p.clone()));
            }
        }
        Ok(self.eq.equiv(a, b))
    }

    /// The first pair of `eq` not related here, as `(rep, member)`.
    pub fn first_outside(&self, eq: &Congruence) -> Result<Option<(Path, Path)>> {
        for (p, r) in eq.generating_pairs() {
            if !self.cong_member(p, r)? {
                return Ok(Some((r.clone(), p.clone())));
            }
        }
        Ok(None)
    }

    /// Re-runs the closure and reports whether anything new is derived.
    pub fn is_mx_closed(&self) -> bool {
        let mut c = Closure::from_congruence(&self.eq, []);
        c.saturate(
            &self.arities,
            Saturate {
                maximality: Some(NullaryRule::Related),
                grow: false,
            },
            None,
        )
        .expect("no growth, no cycles");
        c.into_congruence() == self.eq
    }
}

impl PathClasses for GlobalCongruence {
    fn class_of(&self, p: &Path) -> Result<Path> {
        self.eq
            .rep(p)
            .cloned()
            .ok_or_else(|| Error::OutOfUniverse(p.clone()))
    }
}

/// The global congruence lifted to paired terms `<a, b>`: `<>.i.p` and
/// `<>.j.p'` are related iff `p` and `p'` are; the root only to itself.
pub struct PairLift<'a>(pub &'a GlobalCongruence);

impl PathClasses for PairLift<'_> {
    fn class_of(&self, p: &Path) -> Result<Path> {
        let Some((first, rest)) = p.steps().split_first() else {
            return Ok(Path::eps());
        };
        match first {
            Step::Arg(f, _) if &**f == PAIR => {
                let inner = self.0.class_of(&Path::from_steps(rest.to_vec()))?;
                Ok(Path::from_steps(vec![Step::Arg(Sym::from(PAIR), 1)]).concat(&inner))
            }
            _ => Err(Error::OutOfUniverse(p.clone())),
        }
    }
}

/// Checks that each term's congruence lies inside `gc` and that `gc` is
/// closed, over a universe covering all terms.
pub fn check_global(gc: &GlobalCongruence, terms: &[Term]) -> Vec<Diagnostic> {
    let gc = gc.covering(terms);
    let mut out = Vec::new();
    for t in terms {
        if let Ok(Some((a, b))) = gc.first_outside(&repr_of(t).eq) {
            out.push(Diagnostic::error(
                Code::HeadCongruenceNotGlobal,
                format!("{a} and {b} are related in {t} but not by the global congruence"),
            ));
        }
    }
    if !gc.is_mx_closed() {
        out.push(Diagnostic::error(
            Code::GlobalNotMaximal,
            "global congruence is not closed under maximality",
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    fn sig() -> Signature {
        Signature::new().with("0", 0).with("s", 1).with(":", 2)
    }

    fn example() -> GlobalCongruence {
        let gc = GlobalCongruence::new(&sig(), vec![(p(":.1"), p(":.2"))]);
        gc.covering(&[t("s(s(X)):s(Y)"), t("X:0"), t("s(X):s(X)"), t("0:X")])
    }

    #[test]
    fn membership() {
        let gc = example();
        assert!(gc.cong_member(&p(":.1.s.1"), &p(":.1.s.1")).unwrap());
        assert!(gc.cong_member(&p(":.1.s.1"), &p(":.2.s.1")).unwrap());
        assert!(!gc.cong_member(&p(":.1"), &p(":.1.s.1")).unwrap());
        assert!(!gc.cong_member(&p("eps"), &p(":.1")).unwrap());
        assert_eq!(
            gc.cong_member(&p(":.1.s.1.s.1.s.1"), &p("eps")),
            Err(Error::OutOfUniverse(p(":.1.s.1.s.1.s.1")))
        );
    }

    #[test]
    fn related_markers_do_not_collapse() {
        // Both :.1 and :.1.s.1 can hold 0 somewhere in the universe; that
        // alone must not relate them.
        let gc = example().covering(&[t("0:0"), t("s(0):0")]);
        assert!(!gc.cong_member(&p(":.1"), &p(":.1.s.1")).unwrap());
        assert!(gc.cong_member(&p(":.1.0"), &p(":.2.0")).unwrap());
        assert!(gc.is_mx_closed());
    }

    #[test]
    fn check_global_examples() {
        let heads = [t("s(s(X)):s(Y)"), t("X:0"), t("s(X):s(X)"), t("0:X")];
        assert!(check_global(&example(), &heads).is_empty());

        let empty = GlobalCongruence::new(&sig(), vec![]);
        let d = check_global(&empty, &[t("s(X):s(X)")]);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].code, Code::HeadCongruenceNotGlobal);

        assert!(check_global(&example(), &[t("X:Y")]).is_empty());
    }

    #[test]
    fn pair_lift_classes() {
        let gc = example();
        let lift = PairLift(&gc);
        let a = lift.class_of(&p("<>.1.:.2")).unwrap();
        let b = lift.class_of(&p("<>.2.:.1")).unwrap();
        assert_eq!(a, b);
        assert_eq!(lift.class_of(&p("eps")).unwrap(), p("eps"));
        assert_ne!(lift.class_of(&p("<>.1")).unwrap(), p("eps"));
    }
}
