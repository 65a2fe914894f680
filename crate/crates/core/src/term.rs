//! First-order terms over a fixed-arity constructor signature.
//!
//! Terms are plain trees; variables are identified by name. All operations
//! are pure. Unification keeps substitutions idempotent after every binding
//! and performs the occurs check, so only finite terms are ever produced.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub type Sym = Arc<str>;

/// The right-associative infix tuple constructor used by the concrete syntax.
pub const COLON: &str = ":";

/// Reserved binary constructor used to pair two terms internally. It cannot
/// be written in source programs.
pub const PAIR: &str = "<>";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    constructors: BTreeMap<Sym, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares `name/arity`. Returns the previously declared arity if it
    /// conflicts.
    pub fn declare(&mut self, name: &str, arity: usize) -> Result<(), usize> {
        match self.constructors.get(name) {
            Some(&a) if a != arity => Err(a),
            Some(_) => Ok(()),
            None => {
                self.constructors.insert(Sym::from(name), arity);
                Ok(())
            }
        }
    }

    pub fn with(mut self, name: &str, arity: usize) -> Self {
        self.declare(name, arity)
            .unwrap_or_else(|a| panic!("constructor {name} already declared with arity {a}"));
        self
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.constructors.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.constructors.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Sym, usize)> {
        self.constructors.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.constructors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constructors.is_empty()
    }

    /// The size-least ground term: the first nullary constructor in name order.
    pub fn least_ground_term(&self) -> Option<Term> {
        self.constructors
            .iter()
            .find(|(_, &a)| a == 0)
            .map(|(name, _)| Term::App(name.clone(), Vec::new()))
    }

    /// Checks every application in `t` against the declared arities.
    pub fn check(&self, t: &Term) -> Result<(), SignatureError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                match self.arity(f) {
                    None => return Err(SignatureError::Unknown(f.clone())),
                    Some(a) if a != args.len() => {
                        return Err(SignatureError::Arity {
                            name: f.clone(),
                            declared: a,
                            found: args.len(),
                        })
                    }
                    _ => {}
                }
                args.iter().try_for_each(|a| self.check(a))
            }
        }
    }

    /// Infers a signature from usage. Fails on inconsistent arities.
    pub fn infer<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Result<Self, SignatureError> {
        let mut sig = Signature::new();
        fn walk(sig: &mut Signature, t: &Term) -> Result<(), SignatureError> {
            if let Term::App(f, args) = t {
                sig.declare(f, args.len())
                    .map_err(|a| SignatureError::Arity {
                        name: f.clone(),
                        declared: a,
                        found: args.len(),
                    })?;
                for a in args {
                    walk(sig, a)?;
                }
            }
            Ok(())
        }
        for t in terms {
            walk(&mut sig, t)?;
        }
        Ok(sig)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignatureError {
    Unknown(Sym),
    Arity {
        name: Sym,
        declared: usize,
        found: usize,
    },
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureError::Unknown(name) => write!(f, "undeclared constructor `{name}`"),
            SignatureError::Arity {
                name,
                declared,
                found,
            } => write!(
                f,
                "constructor `{name}` has arity {declared} but is applied to {found} argument(s)"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Sym),
    App(Sym, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Sym::from(name))
    }

    pub fn constant(name: &str) -> Term {
        Term::App(Sym::from(name), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(Sym::from(name), args)
    }

    pub fn pair(left: Term, right: Term) -> Term {
        Term::App(Sym::from(PAIR), vec![left, right])
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Variables in leftmost-outermost first-occurrence order, without repeats.
    pub fn var_order(&self) -> Vec<Sym> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.visit_vars(&mut |v| {
            if seen.insert(v.clone()) {
                out.push(v.clone());
            }
        });
        out
    }

    pub fn vars(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        self.visit_vars(&mut |v| {
            out.insert(v.clone());
        });
        out
    }

    fn visit_vars(&self, f: &mut impl FnMut(&Sym)) {
        match self {
            Term::Var(v) => f(v),
            Term::App(_, args) => args.iter().for_each(|a| a.visit_vars(f)),
        }
    }

    pub fn contains_var(&self, v: &str) -> bool {
        match self {
            Term::Var(w) => &**w == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    /// True if no variable occurs twice.
    pub fn is_linear(&self) -> bool {
        let mut seen = BTreeSet::new();
        let mut linear = true;
        self.visit_vars(&mut |v| linear &= seen.insert(v.clone()));
        linear
    }

    /// Height with variables at 0 and constants at 1.
    pub fn height(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::height).max().unwrap_or(0),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// Replaces every variable for which `f` returns a term.
    pub fn map_vars(&self, f: &mut impl FnMut(&Sym) -> Option<Term>) -> Term {
        match self {
            Term::Var(v) => f(v).unwrap_or_else(|| self.clone()),
            Term::App(g, args) => {
                Term::App(g.clone(), args.iter().map(|a| a.map_vars(f)).collect())
            }
        }
    }

    /// Renames variables to `X1, X2, ...` in first-occurrence order. Two
    /// terms are alpha-equivalent iff their canonical forms are equal.
    pub fn canonical(&self) -> Term {
        let order = self.var_order();
        let names: BTreeMap<Sym, Sym> = order
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, Sym::from(format!("X{}", i + 1))))
            .collect();
        self.map_vars(&mut |v| names.get(v).map(|n| Term::Var(n.clone())))
    }
}

pub fn vars(t: &Term) -> BTreeSet<Sym> {
    t.vars()
}

pub fn alpha_eq(t1: &Term, t2: &Term) -> bool {
    t1.canonical() == t2.canonical()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(g, args) if &**g == COLON && args.len() == 2 => {
                if is_colon(&args[0]) {
                    write!(f, "({}):{}", args[0], args[1])
                } else {
                    write!(f, "{}:{}", args[0], args[1])
                }
            }
            Term::App(g, args) if &**g == PAIR && args.len() == 2 => {
                write!(f, "<{}, {}>", args[0], args[1])
            }
            Term::App(g, args) if args.is_empty() => f.write_str(g),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn is_colon(t: &Term) -> bool {
    matches!(t, Term::App(g, args) if &**g == COLON && args.len() == 2)
}

/// A finite map from variables to terms. Identity bindings are never stored,
/// so the key set is exactly the domain.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Substitution {
    map: BTreeMap<Sym, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a substitution from raw bindings, as given. No normalization
    /// beyond dropping identity bindings.
    pub fn from_bindings<I, S>(bindings: I) -> Self
    where
        I: IntoIterator<Item = (S, Term)>,
        S: AsRef<str>,
    {
        let mut s = Substitution::new();
        for (v, t) in bindings {
            s.insert(Sym::from(v.as_ref()), t);
        }
        s
    }

    fn insert(&mut self, v: Sym, t: Term) {
        if matches!(&t, Term::Var(w) if *w == v) {
            self.map.remove(&v);
        } else {
            self.map.insert(v, t);
        }
    }

    pub fn get(&self, v: &str) -> Option<&Term> {
        self.map.get(v)
    }

    pub fn domain(&self) -> impl Iterator<Item = &Sym> {
        self.map.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Sym, &Term)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Simultaneous replacement; unbound variables map to themselves.
    pub fn apply(&self, t: &Term) -> Term {
        if self.map.is_empty() {
            return t.clone();
        }
        t.map_vars(&mut |v| self.map.get(v).cloned())
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &other.map {
            out.insert(v.clone(), self.apply(t));
        }
        for (v, t) in &self.map {
            if !other.map.contains_key(v) {
                out.insert(v.clone(), t.clone());
            }
        }
        out
    }

    pub fn is_idempotent(&self) -> bool {
        self.map
            .values()
            .all(|t| t.vars().iter().all(|v| !self.map.contains_key(v)))
    }

    /// Binds `v` to `t` and rewrites existing images so the result stays
    /// idempotent. Requires `v ∉ dom`, `vars(t) ∩ dom = ∅` and `v ∉ vars(t)`.
    fn bind(&mut self, v: Sym, t: Term) {
        let single = Substitution::from_bindings([(v.clone(), t.clone())]);
        for image in self.map.values_mut() {
            *image = single.apply(image);
        }
        self.insert(v, t);
    }

    pub fn classify(&self) -> SubstKind {
        let flat = self.map.values().all(Term::is_var);
        let mut seen = BTreeSet::new();
        let mut linear = true;
        for t in self.map.values() {
            t.visit_vars(&mut |v| linear &= seen.insert(v.clone()));
        }
        SubstKind {
            flat,
            linear,
            renaming: flat && linear,
        }
    }

    /// Splits into `(flat, linear)` with `flat ∘ linear = self` on the domain.
    pub fn decompose(&self) -> (Substitution, Substitution) {
        let kind = self.classify();
        if kind.flat {
            return (self.clone(), Substitution::new());
        }
        if kind.linear {
            return (Substitution::new(), self.clone());
        }
        let mut taken: BTreeSet<Sym> = self.map.keys().cloned().collect();
        for t in self.map.values() {
            taken.extend(t.vars());
        }
        let mut counts: BTreeMap<Sym, usize> = BTreeMap::new();
        for t in self.map.values() {
            t.visit_vars(&mut |v| *counts.entry(v.clone()).or_default() += 1);
        }
        let mut flat = Substitution::new();
        let mut linear = Substitution::new();
        for (x, t) in &self.map {
            let image = t.map_vars(&mut |v| {
                if counts[v] < 2 {
                    return None;
                }
                let fresh = fresh_name(v, &taken);
                taken.insert(fresh.clone());
                flat.insert(fresh.clone(), Term::Var(v.clone()));
                Some(Term::Var(fresh))
            });
            linear.insert(x.clone(), image);
        }
        (flat, linear)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} -> {t}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubstKind {
    pub flat: bool,
    pub linear: bool,
    pub renaming: bool,
}

fn fresh_name(base: &str, taken: &BTreeSet<Sym>) -> Sym {
    (1..)
        .map(|k| Sym::from(format!("{base}{k}")))
        .find(|n| !taken.contains(n))
        .expect("unbounded")
}

/// Most general unifier, or `None` on clash or occurs-check failure.
pub fn mgu(t1: &Term, t2: &Term) -> Option<Substitution> {
    let mut s = Substitution::new();
    let mut stack = vec![(t1.clone(), t2.clone())];
    while let Some((a, b)) = stack.pop() {
        let a = s.apply(&a);
        let b = s.apply(&b);
        match (a, b) {
            (Term::Var(v), Term::Var(w)) if v == w => {}
            (Term::Var(v), t) | (t, Term::Var(v)) => {
                if t.contains_var(&v) {
                    return None;
                }
                s.bind(v, t);
            }
            (Term::App(f, xs), Term::App(g, ys)) => {
                if f != g || xs.len() != ys.len() {
                    return None;
                }
                stack.extend(xs.into_iter().zip(ys));
            }
        }
    }
    Some(s)
}

/// One-way matching: a substitution `σ` over `vars(pattern)` with
/// `σ(pattern) = target`.
pub fn match_term(pattern: &Term, target: &Term) -> Option<Substitution> {
    fn go(p: &Term, t: &Term, acc: &mut BTreeMap<Sym, Term>) -> bool {
        match p {
            Term::Var(v) => match acc.get(v) {
                Some(bound) => bound == t,
                None => {
                    acc.insert(v.clone(), t.clone());
                    true
                }
            },
            Term::App(f, ps) => match t {
                Term::App(g, ts) if f == g && ps.len() == ts.len() => {
                    ps.iter().zip(ts).all(|(p, t)| go(p, t, acc))
                }
                _ => false,
            },
        }
    }
    let mut acc = BTreeMap::new();
    go(pattern, target, &mut acc).then(|| Substitution::from_bindings(acc))
}

/// Renames the variables of `t` that occur in `avoid`. Returns the renamed
/// term and the renaming that was applied.
pub fn rename_apart(t: &Term, avoid: &BTreeSet<Sym>) -> (Term, Substitution) {
    let renaming = renaming_apart(&t.var_order(), avoid);
    (renaming.apply(t), renaming)
}

/// Fresh names for the members of `vars` that occur in `avoid`, chosen
/// clear of both sets.
pub fn renaming_apart(vars: &[Sym], avoid: &BTreeSet<Sym>) -> Substitution {
    let mut taken: BTreeSet<Sym> = avoid.iter().chain(vars).cloned().collect();
    let mut renaming = Substitution::new();
    for v in vars {
        if avoid.contains(v) && renaming.get(v).is_none() {
            let fresh = fresh_name(v, &taken);
            taken.insert(fresh.clone());
            renaming.insert(v.clone(), Term::Var(fresh));
        }
    }
    renaming
}

/// Least common instance of a non-empty list, folding pairwise with
/// renaming apart before each unification.
pub fn lci(terms: &[Term]) -> Option<Term> {
    let (first, rest) = terms.split_first()?;
    let mut acc = first.clone();
    for t in rest {
        let (t, _) = rename_apart(t, &acc.vars());
        let beta = mgu(&acc, &t)?;
        acc = beta.apply(&acc);
    }
    Some(acc)
}
