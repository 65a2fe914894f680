//! Marked tree paths.
//!
//! A path is a sequence of `(constructor, argument index)` steps, optionally
//! ended by a single marker step naming a nullary constructor. Paths are
//! flat sequences, so concatenation is associative with `ε` as unit by
//! construction.
//!
//! Paths order shortlex (shorter first, then step by step), which makes the
//! smallest member of a set the natural class representative.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::term::{Signature, Sym, Term};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// Descend into argument `index` (1-based) of an application of the constructor.
    Arg(Sym, usize),
    /// The node holds this nullary constructor.
    Marker(Sym),
}

impl Step {
    pub fn constructor(&self) -> &Sym {
        match self {
            Step::Arg(f, _) | Step::Marker(f) => f,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Path(Vec<Step>);

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn eps() -> Path {
        Path(Vec::new())
    }

    pub fn from_steps(steps: Vec<Step>) -> Path {
        Path(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, f: &Sym, index: usize) -> Path {
        let mut steps = self.0.clone();
        steps.push(Step::Arg(f.clone(), index));
        Path(steps)
    }

    pub fn marker(&self, c: &Sym) -> Path {
        let mut steps = self.0.clone();
        steps.push(Step::Marker(c.clone()));
        Path(steps)
    }

    pub fn extend(&self, step: Step) -> Path {
        let mut steps = self.0.clone();
        steps.push(step);
        Path(steps)
    }

    pub fn is_marker(&self) -> bool {
        matches!(self.0.last(), Some(Step::Marker(_)))
    }

    pub fn last(&self) -> Option<&Step> {
        self.0.last()
    }

    pub fn parent(&self) -> Option<Path> {
        (!self.0.is_empty()).then(|| Path(self.0[..self.0.len() - 1].to_vec()))
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|s| Path(s.to_vec()))
    }

    pub fn concat(&self, suffix: &Path) -> Path {
        let mut steps = self.0.clone();
        steps.extend(suffix.0.iter().cloned());
        Path(steps)
    }

    /// All prefixes, from `ε` up to and including `self`.
    pub fn prefixes(&self) -> impl Iterator<Item = Path> + '_ {
        (0..=self.0.len()).map(|k| Path(self.0[..k].to_vec()))
    }

    pub fn check(&self, sig: &Signature) -> std::result::Result<(), String> {
        for (i, step) in self.0.iter().enumerate() {
            match step {
                Step::Arg(f, k) => match sig.arity(f) {
                    None => return Err(format!("undeclared constructor `{f}`")),
                    Some(a) if *k == 0 || *k > a => {
                        return Err(format!("index {k} out of range for `{f}/{a}`"))
                    }
                    _ => {}
                },
                Step::Marker(c) => {
                    if sig.arity(c) != Some(0) {
                        return Err(format!("marker `{c}` is not a nullary constructor"));
                    }
                    if i + 1 != self.0.len() {
                        return Err("marker step must be last".into());
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("eps");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            match step {
                Step::Arg(g, k) => write!(f, "{g}.{k}")?,
                Step::Marker(c) => f.write_str(c)?,
            }
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = String;

    /// Parses `eps` or dot-separated steps such as `:.1.s.1` and `:.2.0`.
    /// Tokens alternate constructor name and index; a trailing name without
    /// an index is a marker.
    fn from_str(s: &str) -> std::result::Result<Path, String> {
        let s = s.trim();
        if s == "eps" || s == "ε" {
            return Ok(Path::eps());
        }
        if s.is_empty() {
            return Err("empty path literal (write `eps`)".into());
        }
        let tokens: Vec<&str> = s.split('.').collect();
        let mut steps = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            let name = tokens[i];
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(format!("bad constructor name in path `{s}`"));
            }
            match tokens.get(i + 1) {
                Some(idx) => {
                    let k: usize = idx
                        .parse()
                        .map_err(|_| format!("expected argument index after `{name}` in `{s}`"))?;
                    if k == 0 {
                        return Err(format!("argument indices start at 1 in `{s}`"));
                    }
                    steps.push(Step::Arg(Sym::from(name), k));
                    i += 2;
                }
                None => {
                    steps.push(Step::Marker(Sym::from(name)));
                    i += 1;
                }
            }
        }
        Ok(Path(steps))
    }
}

/// The path set of a term; contains `ε` and is prefix- and sibling-closed.
pub fn paths(t: &Term) -> BTreeSet<Path> {
    fn go(t: &Term, at: Path, out: &mut BTreeSet<Path>) {
        match t {
            Term::Var(_) => {}
            Term::App(c, args) if args.is_empty() => {
                out.insert(at.marker(c));
            }
            Term::App(f, args) => {
                for (i, a) in args.iter().enumerate() {
                    go(a, at.child(f, i + 1), out);
                }
            }
        }
        out.insert(at);
    }
    let mut out = BTreeSet::new();
    go(t, Path::eps(), &mut out);
    out
}

/// The subterm at `p`. Marker paths and paths outside the term are errors.
pub fn subterm_at<'a>(t: &'a Term, p: &Path) -> Result<&'a Term> {
    let mut cur = t;
    for step in p.steps() {
        match (step, cur) {
            (Step::Arg(f, k), Term::App(g, args)) if f == g && *k >= 1 && *k <= args.len() => {
                cur = &args[k - 1];
            }
            _ => return Err(Error::UndefinedPath(p.clone())),
        }
    }
    Ok(cur)
}

/// Replaces the subterm at `p` (which must address a subterm).
pub fn replace_at(t: &Term, p: &Path, new: Term) -> Result<Term> {
    fn go(t: &Term, steps: &[Step], new: Term, full: &Path) -> Result<Term> {
        let Some((first, rest)) = steps.split_first() else {
            return Ok(new);
        };
        match (first, t) {
            (Step::Arg(f, k), Term::App(g, args)) if f == g && *k >= 1 && *k <= args.len() => {
                let mut args = args.clone();
                args[k - 1] = go(&args[k - 1], rest, new, full)?;
                Ok(Term::App(g.clone(), args))
            }
            _ => Err(Error::UndefinedPath(full.clone())),
        }
    }
    go(t, p.steps(), new, p)
}
