//! Deletions in paths and the orders they induce.
//!
//! A deletion `q <- q.q'` contracts the segment between `q` and `q.q'`: the
//! subterm at `q` is replaced by its own subterm at `q.q'`. Sequences act on
//! path sets; the result keeps an origin map back to the original paths.

mod global;
mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

pub use global::{check_global, GlobalCongruence, PairLift};
pub use search::{
    leq, leq_star, leq_with, less_plain, less_set, less_with, SearchLimits, SearchStats,
};

use crate::error::{Error, Result};
use crate::path::{paths, subterm_at, Path, Step};
use crate::repr::{
    build_term, close_mx, infer_arities, repr_of, validate_repr, Arities, Congruence, TermRepr,
};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Deletion {
    anchor: Path,
    segment: Path,
}

impl Deletion {
    /// `anchor <- anchor.segment`. The segment must be non-empty.
    pub fn new(anchor: Path, segment: Path) -> Self {
        assert!(!segment.is_empty(), "deletion with empty segment");
        Deletion { anchor, segment }
    }

    /// The deletion from `anchor` to `target`, if `target` strictly extends it.
    pub fn between(anchor: &Path, target: &Path) -> Option<Self> {
        let segment = target.strip_prefix(anchor)?;
        (!segment.is_empty()).then(|| Deletion {
            anchor: anchor.clone(),
            segment,
        })
    }

    pub fn anchor(&self) -> &Path {
        &self.anchor
    }

    pub fn segment(&self) -> &Path {
        &self.segment
    }

    pub fn target(&self) -> Path {
        self.anchor.concat(&self.segment)
    }
}

impl fmt::Display for Deletion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <- {}", self.anchor, self.target())
    }
}

impl FromStr for Deletion {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s
            .split_once("<-")
            .ok_or_else(|| format!("expected `q <- q.q'` in `{s}`"))?;
        let anchor: Path = a.parse()?;
        let target: Path = b.parse()?;
        Deletion::between(&anchor, &target)
            .ok_or_else(|| format!("`{target}` does not strictly extend `{anchor}`"))
    }
}

/// Deletions applied left to right; each addresses the already contracted set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DeletionSeq(pub Vec<Deletion>);

impl DeletionSeq {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Deletion> {
        self.0.iter()
    }
}

impl fmt::Display for DeletionSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DeletionSeq {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.trim().is_empty() {
            return Ok(DeletionSeq::default());
        }
        s.split(',')
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map(DeletionSeq)
    }
}

impl From<Vec<Deletion>> for DeletionSeq {
    fn from(v: Vec<Deletion>) -> Self {
        DeletionSeq(v)
    }
}

/// Where `p` ends up after the deletion, if it survives.
pub fn del_path(d: &Deletion, p: &Path) -> Option<Path> {
    let Some(rest) = p.strip_prefix(&d.anchor) else {
        return Some(p.clone());
    };
    let r = rest.strip_prefix(&d.segment)?;
    Some(d.anchor.concat(&r))
}

/// Applies one deletion to a map from current paths to original paths.
pub(crate) fn step_origin(d: &Deletion, cur: &BTreeMap<Path, Path>) -> BTreeMap<Path, Path> {
    let mut out = BTreeMap::new();
    for (p, orig) in cur {
        if let Some(np) = del_path(d, p) {
            let clash = out.insert(np, orig.clone());
            assert!(clash.is_none(), "deletion merged two paths");
        }
    }
    out
}

/// The contracted path set and, for each surviving path, its original.
pub fn del_seq(s: &DeletionSeq, ps: &BTreeSet<Path>) -> (BTreeSet<Path>, BTreeMap<Path, Path>) {
    let mut cur: BTreeMap<Path, Path> = ps.iter().map(|p| (p.clone(), p.clone())).collect();
    for d in s.iter() {
        cur = step_origin(d, &cur);
    }
    (cur.keys().cloned().collect(), cur)
}

/// A partition of paths into classes, possibly over a bounded universe.
pub trait PathClasses {
    fn class_of(&self, p: &Path) -> Result<Path>;
}

impl PathClasses for Congruence {
    fn class_of(&self, p: &Path) -> Result<Path> {
        Ok(self.rep(p).cloned().unwrap_or_else(|| p.clone()))
    }
}

/// A pair of paths in one class where one survives and the other does not.
pub(crate) fn incompatibility<C: PathClasses + ?Sized>(
    origin: &BTreeMap<Path, Path>,
    ps: &BTreeSet<Path>,
    classes: &C,
) -> Result<Option<(Path, Path)>> {
    let survivors: BTreeSet<&Path> = origin.values().collect();
    let mut seen: BTreeMap<Path, (&Path, bool)> = BTreeMap::new();
    for p in ps {
        let alive = survivors.contains(p);
        match seen.get(&classes.class_of(p)?) {
            Some(&(q, a)) if a != alive => {
                let (kept, gone) = if alive { (p, q) } else { (q, p) };
                return Ok(Some((kept.clone(), gone.clone())));
            }
            Some(_) => {}
            None => {
                seen.insert(classes.class_of(p)?, (p, alive));
            }
        }
    }
    Ok(None)
}

/// Whether survival under `s` is constant on every class of `ps`.
pub fn seq_compatible<C: PathClasses + ?Sized>(
    s: &DeletionSeq,
    classes: &C,
    ps: &BTreeSet<Path>,
) -> Result<bool> {
    let (_, origin) = del_seq(s, ps);
    Ok(incompatibility(&origin, ps, classes)?.is_none())
}

fn transport(eq: &Congruence, origin: &BTreeMap<Path, Path>) -> Congruence {
    let back: BTreeMap<&Path, &Path> = origin.iter().map(|(n, o)| (o, n)).collect();
    let classes: Vec<Vec<Path>> = eq
        .classes()
        .into_iter()
        .map(|c| {
            c.iter()
                .filter_map(|p| back.get(p).map(|n| (*n).clone()))
                .collect()
        })
        .collect();
    let fresh: BTreeSet<Path> = origin.keys().cloned().collect();
    close_mx(
        &Congruence::from_classes(fresh.iter().cloned(), &classes),
        &fresh,
    )
}

/// The congruence carried over to the contracted path set.
pub fn del_cong(s: &DeletionSeq, eq: &Congruence, ps: &BTreeSet<Path>) -> Result<Congruence> {
    let (_, origin) = del_seq(s, ps);
    if let Some((a, b)) = incompatibility(&origin, ps, eq)? {
        return Err(Error::Incompatible(a, b));
    }
    Ok(transport(eq, &origin))
}

/// Rebuilds a term from a contracted state of `t`. Every variable endpoint
/// must come from a variable of `t`.
pub(crate) fn contract(t: &Term, r: &TermRepr, origin: &BTreeMap<Path, Path>) -> Result<Term> {
    let fresh: BTreeSet<Path> = origin.keys().cloned().collect();
    let eq = transport(&r.eq, origin);
    let arities = infer_arities(&r.paths, &Arities::new());
    for p in &fresh {
        if let (Some(parent), Some(Step::Arg(f, _))) = (p.parent(), p.last()) {
            if let Some(k) = (1..=arities[f]).find(|&k| !fresh.contains(&parent.child(f, k))) {
                return Err(Error::InvalidResult(format!(
                    "argument {k} of {f} below {parent} is deleted"
                )));
            }
        }
    }
    if let Some(v) = validate_repr(&fresh, &eq).into_iter().next() {
        return Err(Error::InvalidResult(v.to_string()));
    }
    let term = build_term(&fresh, &mut |p| {
        let orig = &origin[p];
        match subterm_at(t, orig) {
            Ok(v @ Term::Var(_)) => Ok(v.clone()),
            _ => Err(Error::InvalidResult(format!(
                "endpoint {p} comes from the non-variable position {orig}"
            ))),
        }
    })?;
    let got = repr_of(&term);
    if got.paths != fresh || got.eq != eq {
        return Err(Error::InvalidResult(
            "variable sharing is not preserved by the contraction".into(),
        ));
    }
    Ok(term)
}

/// The term obtained from `t` by the deletion sequence.
pub fn del_term(s: &DeletionSeq, t: &Term) -> Result<Term> {
    let r = repr_of(t);
    let (_, origin) = del_seq(s, &r.paths);
    if let Some((a, b)) = incompatibility(&origin, &r.paths, &r.eq)? {
        return Err(Error::Incompatible(a, b));
    }
    contract(t, &r, &origin)
}

/// Whether `d` removes at least one path of `t`.
pub fn is_effective(d: &Deletion, t: &Term) -> bool {
    paths(t).iter().any(|p| del_path(d, p).as_ref() != Some(p))
}
