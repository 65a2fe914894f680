//! Bottom-up least-model enumeration, bounded by term height.
//!
//! Height counts constructor levels: constants have height 1. Facts and
//! rule heads are instantiated only as far as their body match leaves
//! variables open; open variables range over ground terms that keep the
//! head within the bound.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::deletion::SearchLimits;
use crate::error::{Error, Result};
use crate::term::{match_term, Substitution, Sym, Term};

use super::program::HornProgram;

/// Ground terms by maximum height, built on demand.
struct GroundTerms<'a> {
    prog: &'a HornProgram,
    levels: Vec<Vec<Term>>,
    cap: usize,
}

impl GroundTerms<'_> {
    /// All ground terms of height at most `h`.
    fn up_to(&mut self, h: usize) -> Result<&[Term]> {
        if self.levels.is_empty() {
            self.levels.push(Vec::new());
        }
        while self.levels.len() <= h {
            let prev = self.levels.last().unwrap().clone();
            let mut next = Vec::new();
            for (f, n) in self.prog.signature.iter() {
                let mut tuples: Vec<Vec<Term>> = vec![Vec::new()];
                for _ in 0..n {
                    if tuples.len().saturating_mul(prev.len()) > self.cap {
                        return Err(Error::ResourceExhausted { limit: self.cap });
                    }
                    let mut grown = Vec::new();
                    for t in &tuples {
                        for a in &prev {
                            let mut v = t.clone();
                            v.push(a.clone());
                            grown.push(v);
                        }
                    }
                    tuples = grown;
                }
                next.extend(tuples.into_iter().map(|args| Term::App(f.clone(), args)));
                if next.len() > self.cap {
                    return Err(Error::ResourceExhausted { limit: self.cap });
                }
            }
            self.levels.push(next);
        }
        Ok(&self.levels[h])
    }
}

/// Least height budget for each variable: the bound minus the number of
/// constructors above its shallowest occurrence.
fn var_budgets(t: &Term, bound: usize) -> BTreeMap<Sym, usize> {
    fn go(t: &Term, depth: usize, bound: usize, out: &mut BTreeMap<Sym, usize>) {
        match t {
            Term::Var(v) => {
                let b = bound.saturating_sub(depth);
                let e = out.entry(v.clone()).or_insert(b);
                *e = (*e).min(b);
            }
            Term::App(_, args) => args.iter().for_each(|a| go(a, depth + 1, bound, out)),
        }
    }
    let mut out = BTreeMap::new();
    go(t, 0, bound, &mut out);
    out
}

/// Every ground instance of `pattern` under `sigma` extended over its open
/// variables, with height at most `bound`.
fn instances(
    pattern: &Term,
    sigma: &Substitution,
    bound: usize,
    ground: &mut GroundTerms<'_>,
    cap: usize,
) -> Result<Vec<Term>> {
    let partial = sigma.apply(pattern);
    if partial.height() > bound {
        return Ok(Vec::new());
    }
    let open = partial.var_order();
    if open.is_empty() {
        return Ok(vec![partial]);
    }
    let budgets = var_budgets(&partial, bound);
    let mut out: Vec<Substitution> = vec![Substitution::new()];
    for v in &open {
        let choices = ground.up_to(budgets[v])?.to_vec();
        if out.len().saturating_mul(choices.len()) > cap {
            return Err(Error::ResourceExhausted { limit: cap });
        }
        let mut grown = Vec::new();
        for s in &out {
            for g in &choices {
                let mut b: Vec<(Sym, Term)> =
                    s.iter().map(|(k, t)| (k.clone(), t.clone())).collect();
                b.push((v.clone(), g.clone()));
                grown.push(Substitution::from_bindings(b));
            }
        }
        out = grown;
    }
    Ok(out
        .into_iter()
        .map(|s| s.apply(&partial))
        .filter(|t| t.height() <= bound)
        .collect())
}

/// The least model restricted to ground terms of height at most `depth`,
/// for every predicate.
pub fn enumerate_all(
    prog: &HornProgram,
    depth: usize,
    limits: SearchLimits,
) -> Result<BTreeMap<Sym, BTreeSet<Term>>> {
    let cap = limits.max_states;
    let mut ground = GroundTerms {
        prog,
        levels: Vec::new(),
        cap,
    };
    let mut model: BTreeMap<Sym, BTreeSet<Term>> = prog
        .preds()
        .into_iter()
        .map(|p| (p, BTreeSet::new()))
        .collect();
    let mut queue: VecDeque<(Sym, Term)> = VecDeque::new();
    let mut size = 0usize;
    let mut add = |pred: &Sym,
                   t: Term,
                   model: &mut BTreeMap<Sym, BTreeSet<Term>>,
                   queue: &mut VecDeque<(Sym, Term)>|
     -> Result<()> {
        if model.get_mut(pred).unwrap().insert(t.clone()) {
            size += 1;
            if size > cap {
                return Err(Error::ResourceExhausted { limit: cap });
            }
            queue.push_back((pred.clone(), t));
        }
        Ok(())
    };
    for c in prog.clauses.iter().filter(|c| c.is_fact()) {
        for t in instances(&c.head.term, &Substitution::new(), depth, &mut ground, cap)? {
            add(&c.head.pred, t, &mut model, &mut queue)?;
        }
    }
    while let Some((pred, fact)) = queue.pop_front() {
        for c in &prog.clauses {
            let Some(b) = c.body_atom() else { continue };
            if b.pred != pred {
                continue;
            }
            let Some(sigma) = match_term(&b.term, &fact) else {
                continue;
            };
            for t in instances(&c.head.term, &sigma, depth, &mut ground, cap)? {
                add(&c.head.pred, t, &mut model, &mut queue)?;
            }
        }
    }
    Ok(model)
}

/// Ground terms of height at most `depth` in the extension of `pred`.
pub fn enumerate_extension(
    prog: &HornProgram,
    pred: &str,
    depth: usize,
    limits: SearchLimits,
) -> Result<BTreeSet<Term>> {
    let mut all = enumerate_all(prog, depth, limits)?;
    Ok(all.remove(pred).unwrap_or_default())
}
