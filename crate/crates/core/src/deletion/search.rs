//! Exhaustive search over compatible deletion sequences.
//!
//! States are contracted path sets tagged with their origins. Every
//! deletion removes at least one path, so the state graph is finite and
//! acyclic; a visited set keeps each state from being expanded twice.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::path::Path;
use crate::repr::{repr_of, TermRepr};
use crate::term::{alpha_eq, Term};

use super::{contract, step_origin, Deletion, DeletionSeq, GlobalCongruence, PathClasses};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_states: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_states: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub states: usize,
}

type State = BTreeMap<Path, Path>;

struct Explorer<'a> {
    t: &'a Term,
    repr: TermRepr,
    groups: Vec<Vec<Path>>,
    limits: SearchLimits,
    stats: &'a mut SearchStats,
    seen: HashSet<Vec<(Path, Path)>>,
}

impl<'a> Explorer<'a> {
    fn new<C: PathClasses + ?Sized>(
        t: &'a Term,
        classes: &C,
        limits: SearchLimits,
        stats: &'a mut SearchStats,
    ) -> Result<Self> {
        let repr = repr_of(t);
        let mut by_class: BTreeMap<Path, Vec<Path>> = BTreeMap::new();
        for p in &repr.paths {
            by_class
                .entry(classes.class_of(p)?)
                .or_default()
                .push(p.clone());
        }
        Ok(Explorer {
            t,
            repr,
            groups: by_class.into_values().filter(|g| g.len() > 1).collect(),
            limits,
            stats,
            seen: HashSet::new(),
        })
    }

    /// Whether `≡_t` lies inside the classes used for compatibility.
    fn term_congruence_included<C: PathClasses + ?Sized>(&self, classes: &C) -> Result<bool> {
        for (p, r) in self.repr.eq.generating_pairs() {
            if classes.class_of(p)? != classes.class_of(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn compatible(&self, state: &State) -> bool {
        let alive: BTreeSet<&Path> = state.values().collect();
        self.groups.iter().all(|g| {
            let n = g.iter().filter(|p| alive.contains(p)).count();
            n == 0 || n == g.len()
        })
    }

    fn result(&self, state: &State) -> Option<Term> {
        if !self.compatible(state) {
            return None;
        }
        contract(self.t, &self.repr, state).ok()
    }

    /// Depth-first over states no smaller than `min_size`; stops as soon as
    /// `visit` returns true.
    fn dfs(
        &mut self,
        state: &State,
        seq: &mut Vec<Deletion>,
        min_size: usize,
        visit: &mut dyn FnMut(&Self, &State) -> bool,
    ) -> Result<bool> {
        self.stats.states += 1;
        if self.stats.states > self.limits.max_states {
            return Err(Error::ResourceExhausted {
                limit: self.limits.max_states,
            });
        }
        if visit(self, state) {
            return Ok(true);
        }
        let nodes: Vec<&Path> = state.keys().filter(|p| !p.is_marker()).collect();
        for q in &nodes {
            for r in &nodes {
                let Some(d) = Deletion::between(q, r) else {
                    continue;
                };
                let next = step_origin(&d, state);
                if next.len() < min_size {
                    continue;
                }
                if !self
                    .seen
                    .insert(next.iter().map(|(a, b)| (a.clone(), b.clone())).collect())
                {
                    continue;
                }
                seq.push(d);
                if self.dfs(&next, seq, min_size, visit)? {
                    return Ok(true);
                }
                seq.pop();
            }
        }
        Ok(false)
    }

    fn start(&self) -> State {
        self.repr
            .paths
            .iter()
            .map(|p| (p.clone(), p.clone()))
            .collect()
    }
}

/// A compatible deletion sequence turning `t` into `small` (up to
/// renaming), with compatibility judged by `classes`. Without
/// `≡_t ⊆ classes` only the reflexive case holds.
pub fn leq_with<C: PathClasses + ?Sized>(
    small: &Term,
    t: &Term,
    classes: &C,
    limits: SearchLimits,
    stats: &mut SearchStats,
) -> Result<Option<DeletionSeq>> {
    if alpha_eq(small, t) {
        return Ok(Some(DeletionSeq::default()));
    }
    let mut ex = Explorer::new(t, classes, limits, stats)?;
    if !ex.term_congruence_included(classes)? {
        return Ok(None);
    }
    let target = repr_of(small);
    let keys: BTreeSet<Path> = target.paths.clone();
    let start = ex.start();
    let mut seq = Vec::new();
    let mut visit = |ex: &Explorer<'_>, s: &State| {
        s.len() == keys.len()
            && s.keys().eq(keys.iter())
            && ex.result(s).is_some_and(|r| alpha_eq(&r, small))
    };
    let found = ex.dfs(&start, &mut seq, keys.len(), &mut visit)?;
    Ok(found.then_some(DeletionSeq(seq)))
}

/// All terms obtainable from `t` by compatible deletion sequences,
/// including `t`, one representative per renaming class.
pub fn less_with<C: PathClasses + ?Sized>(
    t: &Term,
    classes: &C,
    limits: SearchLimits,
    stats: &mut SearchStats,
) -> Result<Vec<Term>> {
    let mut ex = Explorer::new(t, classes, limits, stats)?;
    if !ex.term_congruence_included(classes)? {
        return Ok(vec![t.clone()]);
    }
    let mut found: BTreeMap<Term, Term> = BTreeMap::new();
    found.insert(t.canonical(), t.clone());
    let start = ex.start();
    let mut seq = Vec::new();
    let mut visit = |ex: &Explorer<'_>, s: &State| {
        if let Some(r) = ex.result(s) {
            found.entry(r.canonical()).or_insert(r);
        }
        false
    };
    ex.dfs(&start, &mut seq, 0, &mut visit)?;
    Ok(found.into_values().collect())
}

/// `small ⪯* t`: deletions compatible with the global congruence.
pub fn leq_star(
    small: &Term,
    t: &Term,
    gc: &GlobalCongruence,
    limits: SearchLimits,
) -> Result<Option<DeletionSeq>> {
    leq_with(small, t, gc, limits, &mut SearchStats::default())
}

/// `small ⪯ t`: deletions compatible with the term's own congruence.
pub fn leq(small: &Term, t: &Term, limits: SearchLimits) -> Result<Option<DeletionSeq>> {
    let eq = repr_of(t).eq;
    leq_with(small, t, &eq, limits, &mut SearchStats::default())
}

pub fn less_set(t: &Term, gc: &GlobalCongruence, limits: SearchLimits) -> Result<Vec<Term>> {
    less_with(t, gc, limits, &mut SearchStats::default())
}

pub fn less_plain(t: &Term, limits: SearchLimits) -> Result<Vec<Term>> {
    let eq = repr_of(t).eq;
    less_with(t, &eq, limits, &mut SearchStats::default())
}
