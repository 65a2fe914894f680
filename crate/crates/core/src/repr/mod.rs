//! Terms as path sets with congruences.
//!
//! A [`TermRepr`] pairs the path set of a term with the congruence that
//! relates paths carrying equal subterms. Variable names disappear, so two
//! terms have the same representation iff they are equal up to renaming.

mod congruence;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

pub use congruence::{arities_of, infer_arities, Arities, Congruence, NullaryRule};
pub(crate) use congruence::{Closure, Saturate};

use crate::error::{Error, Result};
use crate::path::{paths, subterm_at, Path, Step};
use crate::term::{Sym, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermRepr {
    pub paths: BTreeSet<Path>,
    pub eq: Congruence,
}

impl TermRepr {
    pub fn new(paths: BTreeSet<Path>, eq: Congruence) -> Self {
        TermRepr { paths, eq }
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_repr(&self.paths, &self.eq)
    }
}

/// A failed validity condition with the paths that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Which condition failed: 1 finite and non-empty, 2 closed under
    /// siblings of prefixes, 3 closed under the congruence, 4 compatible
    /// (equivalent paths continue with the same constructor), 5 suffix
    /// stable, 6 maximal.
    pub condition: u8,
    pub witness: Vec<Path>,
    pub detail: String,
}

impl Violation {
    fn new(condition: u8, witness: Vec<Path>, detail: impl Into<String>) -> Self {
        Violation {
            condition,
            witness,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {}: {}", self.condition, self.detail)?;
        if !self.witness.is_empty() {
            let w: Vec<String> = self.witness.iter().map(Path::to_string).collect();
            write!(f, " (at {})", w.join(", "))?;
        }
        Ok(())
    }
}

pub fn repr_of(t: &Term) -> TermRepr {
    let ps = paths(t);
    let mut groups: HashMap<&Term, Vec<Path>> = HashMap::new();
    for p in &ps {
        let key = if p.is_marker() {
            subterm_at(t, &p.parent().unwrap())
        } else {
            subterm_at(t, p)
        };
        if let Ok(s) = key {
            // Markers form their own class per constant; tag them apart
            // from the node class by keeping separate groups.
            if !p.is_marker() {
                groups.entry(s).or_default().push(p.clone());
            }
        }
    }
    let mut classes: Vec<Vec<Path>> = groups.into_values().collect();
    let mut markers: BTreeMap<&Sym, Vec<Path>> = BTreeMap::new();
    for p in ps.iter().filter(|p| p.is_marker()) {
        if let Some(Step::Marker(c)) = p.last() {
            markers.entry(c).or_default().push(p.clone());
        }
    }
    classes.extend(markers.into_values());
    let eq = Congruence::from_classes(ps.iter().cloned(), &classes);
    TermRepr { paths: ps, eq }
}

fn children_index(ps: &BTreeSet<Path>) -> BTreeMap<Path, Vec<Step>> {
    let mut kids: BTreeMap<Path, Vec<Step>> = BTreeMap::new();
    for p in ps {
        if let Some(q) = p.parent() {
            kids.entry(q).or_default().push(p.last().unwrap().clone());
        }
    }
    kids
}

/// Builds the tree shape of a valid path set; `leaf` names the variable at
/// each endpoint path.
pub(crate) fn build_term(
    ps: &BTreeSet<Path>,
    leaf: &mut impl FnMut(&Path) -> Result<Term>,
) -> Result<Term> {
    let kids = children_index(ps);
    fn go(
        p: &Path,
        kids: &BTreeMap<Path, Vec<Step>>,
        leaf: &mut impl FnMut(&Path) -> Result<Term>,
    ) -> Result<Term> {
        let Some(steps) = kids.get(p) else {
            return leaf(p);
        };
        if let Some(Step::Marker(c)) = steps.iter().find(|s| matches!(s, Step::Marker(_))) {
            return Ok(Term::App(c.clone(), Vec::new()));
        }
        let f = steps[0].constructor().clone();
        let mut idx: Vec<usize> = steps
            .iter()
            .filter_map(|s| match s {
                Step::Arg(_, k) => Some(*k),
                Step::Marker(_) => None,
            })
            .collect();
        idx.sort_unstable();
        let args = idx
            .iter()
            .map(|&k| go(&p.child(&f, k), kids, leaf))
            .collect::<Result<Vec<_>>>()?;
        Ok(Term::App(f, args))
    }
    go(&Path::eps(), &kids, leaf)
}

/// The term with this representation, variables named `X1, X2, ...` by the
/// shortlex order of their classes.
pub fn term_of(r: &TermRepr) -> Result<Term> {
    let violations = r.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidRepr(violations));
    }
    let kids = children_index(&r.paths);
    let mut reps: Vec<Path> = r
        .paths
        .iter()
        .filter(|p| !kids.contains_key(*p) && !p.is_marker())
        .map(|p| r.eq.rep(p).cloned().unwrap_or_else(|| p.clone()))
        .collect();
    reps.sort();
    reps.dedup();
    let names: BTreeMap<Path, Term> = reps
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p, Term::var(&format!("X{}", i + 1))))
        .collect();
    build_term(&r.paths, &mut |p| {
        let rep = r.eq.rep(p).unwrap_or(p);
        Ok(names[rep].clone())
    })
}

/// Checks the six validity conditions in order and reports every violation.
pub fn validate_repr(ps: &BTreeSet<Path>, eq: &Congruence) -> Vec<Violation> {
    let arities = infer_arities(ps.iter().chain(eq.universe()), &Arities::new());
    let mut out = Vec::new();

    if ps.is_empty() {
        out.push(Violation::new(1, vec![], "path set is empty"));
        return out;
    }

    // 2: prefix and sibling closure, markers only at the end.
    let mut missing = BTreeSet::new();
    for p in ps {
        for (i, step) in p.steps().iter().enumerate() {
            let prefix = Path::from_steps(p.steps()[..i].to_vec());
            if !ps.contains(&prefix) {
                missing.insert(prefix.clone());
            }
            match step {
                Step::Marker(_) if i + 1 != p.len() => out.push(Violation::new(
                    2,
                    vec![p.clone()],
                    "marker step before the end of a path",
                )),
                Step::Arg(f, _) => {
                    for k in 1..=arities[f] {
                        let sib = prefix.child(f, k);
                        if !ps.contains(&sib) {
                            missing.insert(sib);
                        }
                    }
                }
                Step::Marker(_) => {}
            }
        }
    }
    for m in missing {
        out.push(Violation::new(
            2,
            vec![m],
            "path missing from prefix/sibling closure",
        ));
    }

    // 3: closure under the congruence.
    for p in eq.universe() {
        if !ps.contains(p) {
            out.push(Violation::new(
                3,
                vec![p.clone()],
                "congruence relates a path outside the set",
            ));
        }
    }
    let classes = eq.classes();
    let class_of: BTreeMap<&Path, usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |p| (p, i)))
        .collect();
    for a in ps {
        for a0 in a.prefixes().take(a.len()) {
            let Some(&ci) = class_of.get(&a0) else {
                continue;
            };
            let x = a.strip_prefix(&a0).unwrap();
            for b0 in &classes[ci] {
                let b = b0.concat(&x);
                if !ps.contains(&b) {
                    out.push(Violation::new(
                        3,
                        vec![a.clone(), b],
                        "equivalent path lacks a continuation present at its class-mate",
                    ));
                }
            }
        }
    }

    // 4: compatibility, equivalent paths continue with the same constructor.
    let mut ctor_at: BTreeMap<usize, BTreeMap<Sym, Path>> = BTreeMap::new();
    let mut singleton: BTreeMap<Path, BTreeMap<Sym, Path>> = BTreeMap::new();
    for a in ps {
        if let Some(parent) = a.parent() {
            let f = a.last().unwrap().constructor().clone();
            let slot = match class_of.get(&parent) {
                Some(&ci) => ctor_at.entry(ci).or_default(),
                None => singleton.entry(parent).or_default(),
            };
            slot.entry(f).or_insert_with(|| a.clone());
        }
    }
    for m in ctor_at.values().chain(singleton.values()) {
        if m.len() > 1 {
            out.push(Violation::new(
                4,
                m.values().cloned().collect(),
                "equivalent paths continue with different constructors",
            ));
        }
    }

    // 5: suffix stability within the universe.
    let mut seen: HashMap<(usize, Step), &Path> = HashMap::new();
    for a in eq.universe() {
        let Some(parent) = a.parent() else { continue };
        let Some(&ci) = class_of.get(&parent) else {
            continue;
        };
        let step = a.last().unwrap().clone();
        match seen.get(&(ci, step.clone())) {
            Some(b) if !eq.equiv(a, b) => out.push(Violation::new(
                5,
                vec![(*b).clone(), a.clone()],
                "extensions of equivalent paths are not equivalent",
            )),
            Some(_) => {}
            None => {
                seen.insert((ci, step), a);
            }
        }
    }

    // 6: maximality.
    let mut c = Closure::from_congruence(eq, ps.iter().cloned());
    let _ = c.saturate(
        &arities,
        Saturate {
            maximality: None,
            grow: false,
        },
        None,
    );
    let before = c.clone().into_congruence();
    let _ = c.saturate(
        &arities,
        Saturate {
            maximality: Some(NullaryRule::Presence),
            grow: false,
        },
        None,
    );
    let after = c.into_congruence();
    for (p, r) in after.generating_pairs() {
        if !before.equiv(p, r) {
            out.push(Violation::new(
                6,
                vec![r.clone(), p.clone()],
                "paths with equivalent children are not equivalent",
            ));
        }
    }
    out
}

/// Least congruence containing `eq` that is suffix stable and maximal on `ps`.
pub fn close_mx(eq: &Congruence, ps: &BTreeSet<Path>) -> Congruence {
    let arities = infer_arities(ps.iter().chain(eq.universe()), &Arities::new());
    let mut c = Closure::from_congruence(eq, ps.iter().cloned());
    c.saturate(
        &arities,
        Saturate {
            maximality: Some(NullaryRule::Presence),
            grow: false,
        },
        None,
    )
    .expect("no growth, no cycles");
    c.into_congruence()
}

/// `ps` extended by every path equivalent to a member, including suffix
/// extensions. Fails if the congruence relates a path to its own extension,
/// which would make the set infinite.
pub fn close_paths(ps: &BTreeSet<Path>, eq: &Congruence) -> Result<BTreeSet<Path>> {
    let mut c = Closure::from_congruence(eq, ps.iter().cloned());
    c.saturate(
        &Arities::new(),
        Saturate {
            maximality: None,
            grow: true,
        },
        None,
    )
    .map_err(|super_cycle| {
        Error::InvalidRepr(vec![Violation::new(
            1,
            vec![super_cycle.0, super_cycle.1],
            "path equivalent to its own extension; closure is infinite",
        )])
    })?;
    Ok(c.paths())
}

/// Least common instance on representations: union, then saturate paths and
/// congruence together. `None` on a constructor clash or a cyclic class.
pub fn lci_repr(rs: &[TermRepr]) -> Option<TermRepr> {
    if rs.is_empty() {
        return None;
    }
    let all = rs
        .iter()
        .flat_map(|r| r.paths.iter().chain(r.eq.universe()));
    let arities = infer_arities(all, &Arities::new());
    let cap: usize = rs.iter().map(|r| r.paths.len()).sum();
    let mut c = Closure::default();
    for r in rs {
        for p in &r.paths {
            c.add_path(p.clone());
        }
        for (p, q) in r.eq.generating_pairs() {
            let (a, b) = (c.add_path(p.clone()), c.add_path(q.clone()));
            c.union(a, b);
        }
    }
    c.saturate(
        &arities,
        Saturate {
            maximality: Some(NullaryRule::Presence),
            grow: true,
        },
        Some(cap),
    )
    .ok()?;
    let r = TermRepr {
        paths: c.paths(),
        eq: c.into_congruence(),
    };
    let violations = r.validate();
    if violations.iter().any(|v| v.condition == 4) {
        return None;
    }
    debug_assert!(violations.is_empty(), "{violations:?}");
    Some(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceCheck {
    pub instance: bool,
    /// Path sets are equal, so the matching substitution only maps
    /// variables to variables.
    pub flat: bool,
    /// The congruences generate the same relation.
    pub linear: bool,
}

/// Whether `t` is an instance of `general`, read off the representations.
pub fn is_instance(general: &Term, t: &Term) -> InstanceCheck {
    let g = repr_of(general);
    let r = repr_of(t);
    let instance = g.paths.is_subset(&r.paths) && g.eq.is_subset_of(&r.eq);
    if !instance {
        return InstanceCheck {
            instance,
            flat: false,
            linear: false,
        };
    }
    let flat = g.paths == r.paths;
    let linear = r.eq.generating_pairs().all(|(p, q)| g.eq.implies(p, q));
    InstanceCheck {
        instance,
        flat,
        linear,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use crate::term::{alpha_eq, lci};

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    fn set(ps: &[&str]) -> BTreeSet<Path> {
        ps.iter().map(|s| p(s)).collect()
    }

    fn classes(r: &TermRepr) -> Vec<Vec<String>> {
        r.eq.nontrivial_classes()
            .into_iter()
            .map(|c| c.iter().map(Path::to_string).collect())
            .collect()
    }

    #[test]
    fn repr_of_examples() {
        assert!(repr_of(&t("X:Y")).eq.is_identity());
        let r = repr_of(&t("s(X):s(X)"));
        assert_eq!(
            classes(&r),
            vec![vec![":.1", ":.2"], vec![":.1.s.1", ":.2.s.1"]]
        );
        let r = repr_of(&t("f(g1(X1), X2, g3(X2))"));
        assert_eq!(classes(&r), vec![vec!["f.2", "f.3.g3.1"]]);
    }

    #[test]
    fn repr_of_relates_constants() {
        let r = repr_of(&t("0:0"));
        assert_eq!(
            classes(&r),
            vec![vec![":.1", ":.2"], vec![":.1.0", ":.2.0"]]
        );
        assert!(r.validate().is_empty());
    }

    #[test]
    fn term_of_examples() {
        let r = TermRepr::new(set(&["eps"]), Congruence::identity(set(&["eps"])));
        assert_eq!(term_of(&r).unwrap(), t("X1"));

        let ps = set(&["eps", ":.1", ":.2"]);
        let eq = Congruence::from_classes(ps.clone(), &[vec![p(":.1"), p(":.2")]]);
        assert_eq!(term_of(&TermRepr::new(ps, eq)).unwrap(), t("X1:X1"));

        let ps = set(&["eps", ":.2"]);
        let err = term_of(&TermRepr::new(ps.clone(), Congruence::identity(ps))).unwrap_err();
        let Error::InvalidRepr(vs) = err else {
            panic!()
        };
        assert!(vs
            .iter()
            .any(|v| v.condition == 2 && v.witness == vec![p(":.1")]));
    }

    #[test]
    fn round_trip_names_canonically() {
        let x = t("f(g1(Z), B, g3(B))");
        assert_eq!(term_of(&repr_of(&x)).unwrap(), t("f(g1(X2), X1, g3(X1))"));
    }

    #[test]
    fn validate_condition_3() {
        let ps = set(&["eps", ":.1", ":.2", ":.1.s.1"]);
        let eq = Congruence::from_classes(ps.clone(), &[vec![p(":.1"), p(":.2")]]);
        let vs = validate_repr(&ps, &eq);
        assert!(vs
            .iter()
            .any(|v| v.condition == 3 && v.witness.contains(&p(":.2.s.1"))));
    }

    #[test]
    fn validate_condition_4() {
        let ps = set(&["eps", ":.1", ":.2", ":.1.s.1", ":.2.0"]);
        let eq = Congruence::from_classes(ps.clone(), &[vec![p(":.1"), p(":.2")]]);
        let vs = validate_repr(&ps, &eq);
        assert!(vs.iter().any(|v| v.condition == 4));
    }

    #[test]
    fn validate_conditions_5_and_6() {
        let ps = paths(&t("s(X):s(X)"));
        let eq = Congruence::from_classes(ps.clone(), &[vec![p(":.1"), p(":.2")]]);
        assert!(validate_repr(&ps, &eq).iter().any(|v| v.condition == 5));
        let eq = Congruence::from_classes(ps.clone(), &[vec![p(":.1.s.1"), p(":.2.s.1")]]);
        assert!(validate_repr(&ps, &eq).iter().any(|v| v.condition == 6));
    }

    #[test]
    fn close_mx_examples() {
        let ps = paths(&t("s(X):s(X)"));
        let eq = Congruence::from_classes(ps.clone(), &[vec![p(":.1.s.1"), p(":.2.s.1")]]);
        let closed = close_mx(&eq, &ps);
        assert!(closed.equiv(&p(":.1"), &p(":.2")));

        let ps = paths(&t("X:Y"));
        assert!(close_mx(&Congruence::identity(ps.clone()), &ps).is_identity());

        let ps = paths(&t("0:0"));
        let eq = Congruence::from_classes(ps.clone(), &[vec![p(":.1.0"), p(":.2.0")]]);
        assert!(close_mx(&eq, &ps).equiv(&p(":.1"), &p(":.2")));
    }

    #[test]
    fn close_paths_examples() {
        let ps = set(&["eps", ":.1", ":.2", ":.1.s.1"]);
        assert_eq!(
            close_paths(&ps, &Congruence::identity(ps.clone())).unwrap(),
            ps
        );
        let eq = Congruence::from_classes(ps.clone(), &[vec![p(":.1"), p(":.2")]]);
        assert!(close_paths(&ps, &eq).unwrap().contains(&p(":.2.s.1")));
    }

    #[test]
    fn close_paths_reaches_deepest_figure_path() {
        let a = repr_of(&t("f(g1(X1), X2, g3(X2))"));
        let b = repr_of(&t("f(X3, g2(X3), X4)"));
        let mut c = Closure::from_congruence(&a.eq, a.paths.iter().cloned());
        for (x, y) in b.eq.generating_pairs() {
            let (i, j) = (c.add_path(x.clone()), c.add_path(y.clone()));
            c.union(i, j);
        }
        for q in &b.paths {
            c.add_path(q.clone());
        }
        let merged = c.into_congruence();
        let ps: BTreeSet<Path> = a.paths.union(&b.paths).cloned().collect();
        let merged = close_mx(&merged, &ps);
        let closed = close_paths(&ps, &merged).unwrap();
        assert!(closed.contains(&p("f.3.g3.1.g2.1.g1.1")));
    }

    #[test]
    fn lci_repr_examples() {
        let x = t("f(g(X), Y)");
        assert_eq!(lci_repr(&[repr_of(&x)]), Some(repr_of(&x)));

        let r = lci_repr(&[
            repr_of(&t("f(g1(X1), X2, g3(X2))")),
            repr_of(&t("f(X3, g2(X3), X4)")),
        ])
        .unwrap();
        assert_eq!(r, repr_of(&t("f(g1(X1), g2(g1(X1)), g3(g2(g1(X1))))")));

        assert_eq!(
            lci_repr(&[repr_of(&t("X:0")), repr_of(&t("s(X1):s(X1)"))]),
            None
        );
    }

    #[test]
    fn lci_repr_detects_occurs_cycles() {
        let a = t("f(X, s(X))");
        let b = t("f(Y, Y)");
        assert_eq!(lci(&[a.clone(), b.clone()]), None);
        assert_eq!(lci_repr(&[repr_of(&a), repr_of(&b)]), None);
    }

    #[test]
    fn lci_repr_matches_unification() {
        let a = t("X:0");
        let b = t("0:Y");
        let r = lci_repr(&[repr_of(&a), repr_of(&b)]).unwrap();
        assert!(alpha_eq(&term_of(&r).unwrap(), &lci(&[a, b]).unwrap()));
    }

    #[test]
    fn is_instance_examples() {
        let x = t("s(X):Y");
        let c = is_instance(&x, &x);
        assert!(c.instance && c.flat && c.linear);
        let c = is_instance(&t("X:Y"), &t("s(0):0"));
        assert!(c.instance && !c.flat);
        assert!(!is_instance(&t("s(X):s(X)"), &t("s(s(X)):s(Y)")).instance);
        let c = is_instance(&t("X:Y"), &t("Z:Z"));
        assert!(c.instance && c.flat && !c.linear);
    }
}
