//! Congruences on finite path universes.
//!
//! A [`Congruence`] is a partition of an explicit finite universe of paths,
//! stored as a map from every path to its class representative (the
//! shortlex-least member). Pairs of paths outside the universe are related
//! only by identity; suffix extensions beyond the universe are implicit.
//!
//! [`Closure`] is the union-find workhorse behind every closure operator:
//! suffix extension, maximality and (optionally) growth of the universe
//! along equivalent paths.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::path::{Path, Step};
use crate::term::{Signature, Sym, PAIR};

/// Constructor arities used by the maximality rule.
pub type Arities = BTreeMap<Sym, usize>;

pub fn arities_of(sig: &Signature) -> Arities {
    let mut a: Arities = sig.iter().map(|(k, v)| (k.clone(), v)).collect();
    a.insert(Sym::from(PAIR), 2);
    a
}

/// Arities implied by a path set (largest index seen per constructor),
/// merged with `known`.
pub fn infer_arities<'a>(paths: impl IntoIterator<Item = &'a Path>, known: &Arities) -> Arities {
    let mut out = known.clone();
    for p in paths {
        for step in p.steps() {
            match step {
                Step::Arg(f, k) => {
                    let e = out.entry(f.clone()).or_insert(0);
                    *e = (*e).max(*k);
                }
                Step::Marker(c) => {
                    out.entry(c.clone()).or_insert(0);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Congruence {
    rep: BTreeMap<Path, Path>,
}

impl Congruence {
    /// Every path in its own class.
    pub fn identity<I: IntoIterator<Item = Path>>(universe: I) -> Self {
        Congruence {
            rep: universe.into_iter().map(|p| (p.clone(), p)).collect(),
        }
    }

    /// The equivalence generated by `classes` over `universe`. Paths named in
    /// a class join the universe; overlapping classes are merged.
    pub fn from_classes<I>(universe: I, classes: &[Vec<Path>]) -> Self
    where
        I: IntoIterator<Item = Path>,
    {
        let mut c = Closure::new(universe);
        for class in classes {
            let ids: Vec<usize> = class.iter().map(|p| c.add_path(p.clone())).collect();
            for w in ids.windows(2) {
                c.union(w[0], w[1]);
            }
        }
        c.into_congruence()
    }

    pub fn universe(&self) -> impl Iterator<Item = &Path> {
        self.rep.keys()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.rep.contains_key(p)
    }

    pub fn rep(&self, p: &Path) -> Option<&Path> {
        self.rep.get(p)
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    /// Membership within the universe; paths outside it are related only to
    /// themselves.
    pub fn equiv(&self, a: &Path, b: &Path) -> bool {
        a == b || matches!((self.rep.get(a), self.rep.get(b)), (Some(x), Some(y)) if x == y)
    }

    /// All classes, each sorted, ordered by representative.
    pub fn classes(&self) -> Vec<Vec<Path>> {
        let mut by_rep: BTreeMap<&Path, Vec<Path>> = BTreeMap::new();
        for (p, r) in &self.rep {
            by_rep.entry(r).or_default().push(p.clone());
        }
        by_rep.into_values().collect()
    }

    pub fn nontrivial_classes(&self) -> Vec<Vec<Path>> {
        self.classes().into_iter().filter(|c| c.len() > 1).collect()
    }

    /// Pairs `(p, rep(p))` with `p` not its own representative. These
    /// generate the congruence.
    pub fn generating_pairs(&self) -> impl Iterator<Item = (&Path, &Path)> {
        self.rep.iter().filter(|(p, r)| p != r)
    }

    pub fn is_identity(&self) -> bool {
        self.generating_pairs().next().is_none()
    }

    /// `self ⊆ other`, as relations on `self`'s universe.
    pub fn is_subset_of(&self, other: &Congruence) -> bool {
        self.first_pair_outside(other).is_none()
    }

    pub fn first_pair_outside(&self, other: &Congruence) -> Option<(Path, Path)> {
        self.generating_pairs()
            .find(|(p, r)| !other.equiv(p, r))
            .map(|(p, r)| (r.clone(), p.clone()))
    }

    /// True if `(a, b)` follows from a related pair of prefixes by suffix
    /// extension: `a = a0.x`, `b = b0.x` with `a0 ≡ b0` in the universe.
    pub fn implies(&self, a: &Path, b: &Path) -> bool {
        if a == b {
            return true;
        }
        let (sa, sb) = (a.steps(), b.steps());
        let common = sa
            .iter()
            .rev()
            .zip(sb.iter().rev())
            .take_while(|(x, y)| x == y)
            .count();
        (0..=common).any(|k| {
            let a0 = Path::from_steps(sa[..sa.len() - k].to_vec());
            let b0 = Path::from_steps(sb[..sb.len() - k].to_vec());
            self.contains(&a0) && self.contains(&b0) && self.equiv(&a0, &b0)
        })
    }

    /// Restricts to the paths in `keep`.
    pub fn restrict(&self, keep: &BTreeSet<Path>) -> Congruence {
        let classes: Vec<Vec<Path>> = self
            .classes()
            .into_iter()
            .map(|c| c.into_iter().filter(|p| keep.contains(p)).collect())
            .collect();
        Congruence::from_classes(
            self.universe().filter(|p| keep.contains(*p)).cloned(),
            &classes,
        )
    }
}

/// How the maximality rule treats nullary constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullaryRule {
    /// Two nodes whose marker paths `p.c` are both present are equivalent.
    /// Right for path sets of actual terms, where presence means the node
    /// holds `c`.
    Presence,
    /// `p1 ≡ p2` only if the marker paths are already equivalent. Used for
    /// universes of potential paths, where presence proves nothing.
    Related,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Saturate {
    pub maximality: Option<NullaryRule>,
    pub grow: bool,
}

/// Growth ran into a class holding a path and one of its proper extensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Cyclic(pub Path, pub Path);

#[derive(Debug, Clone, Default)]
pub(crate) struct Closure {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    parent: Vec<usize>,
    children: Vec<Vec<(Step, usize)>>,
}

impl Closure {
    pub fn new<I: IntoIterator<Item = Path>>(universe: I) -> Self {
        let mut c = Closure::default();
        for p in universe {
            c.add_path(p);
        }
        c
    }

    pub fn from_congruence(eq: &Congruence, extra: impl IntoIterator<Item = Path>) -> Self {
        let mut c = Closure::new(eq.universe().cloned().chain(extra));
        for (p, r) in eq.generating_pairs() {
            let (a, b) = (c.index[p], c.index[r]);
            c.union(a, b);
        }
        c
    }

    /// Inserts `p` together with all of its prefixes.
    pub fn add_path(&mut self, p: Path) -> usize {
        if let Some(&i) = self.index.get(&p) {
            return i;
        }
        let parent = p
            .parent()
            .map(|q| (self.add_path(q), p.last().unwrap().clone()));
        let i = self.paths.len();
        self.paths.push(p.clone());
        self.index.insert(p, i);
        self.parent.push(i);
        self.children.push(Vec::new());
        if let Some((q, step)) = parent {
            self.children[q].push((step, i));
        }
        i
    }

    #[cfg(test)]
    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Keep the shortlex-least path as root so representatives are canonical.
        if self.paths[ra] < self.paths[rb] {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }

    fn class_members(&mut self) -> HashMap<usize, Vec<usize>> {
        let mut out: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..self.paths.len() {
            let r = self.find(i);
            out.entry(r).or_default().push(i);
        }
        out
    }

    /// Adds `q.x` for every `p.x` present and `q ≡ p`. One pass.
    fn grow_once(&mut self) -> Result<bool, Cyclic> {
        let classes = self.class_members();
        for members in classes.values() {
            for &a in members {
                for &b in members {
                    if a != b && self.paths[a].is_prefix_of(&self.paths[b]) {
                        return Err(Cyclic(self.paths[a].clone(), self.paths[b].clone()));
                    }
                }
            }
        }
        let mut added = false;
        let n = self.paths.len();
        for a in 0..n {
            let Some(pa) = self.paths[a].parent() else {
                continue;
            };
            let step = self.paths[a].last().unwrap().clone();
            let ra = self.find(self.index[&pa]);
            for &b in &classes[&ra] {
                let target = self.paths[b].extend(step.clone());
                if !self.index.contains_key(&target) {
                    self.add_path(target);
                    added = true;
                }
            }
        }
        Ok(added)
    }

    /// `p1 ≡ p2 ⟹ p1.s ≡ p2.s` for single steps present in the universe.
    fn suffix_once(&mut self) -> bool {
        let mut seen: HashMap<(usize, Step), usize> = HashMap::new();
        let mut changed = false;
        for i in 0..self.paths.len() {
            let kids = self.children[i].clone();
            let r = self.find(i);
            for (step, c) in kids {
                match seen.get(&(r, step.clone())) {
                    Some(&other) => changed |= self.union(other, c),
                    None => {
                        seen.insert((r, step), c);
                    }
                }
            }
        }
        changed
    }

    fn maximality_once(&mut self, arities: &Arities, rule: NullaryRule) -> bool {
        #[derive(PartialEq, Eq, Hash)]
        enum Key {
            Node(Sym, Vec<usize>),
            Constant(Sym, Option<usize>),
        }
        let mut seen: HashMap<Key, usize> = HashMap::new();
        let mut changed = false;
        for i in 0..self.paths.len() {
            let kids = self.children[i].clone();
            let mut by_ctor: BTreeMap<Sym, BTreeMap<usize, usize>> = BTreeMap::new();
            let mut keys = Vec::new();
            for (step, c) in &kids {
                match step {
                    Step::Arg(f, k) => {
                        by_ctor.entry(f.clone()).or_default().insert(*k, *c);
                    }
                    Step::Marker(m) => {
                        let cls = match rule {
                            NullaryRule::Presence => None,
                            NullaryRule::Related => Some(self.find(*c)),
                        };
                        keys.push(Key::Constant(m.clone(), cls));
                    }
                }
            }
            for (f, args) in by_ctor {
                let n = arities.get(&f).copied().unwrap_or(0);
                if n == 0 || args.len() != n || !(1..=n).all(|k| args.contains_key(&k)) {
                    continue;
                }
                let classes = args.values().map(|&c| self.find(c)).collect();
                keys.push(Key::Node(f, classes));
            }
            for key in keys {
                match seen.get(&key) {
                    Some(&other) => changed |= self.union(other, i),
                    None => {
                        seen.insert(key, i);
                    }
                }
            }
        }
        changed
    }

    /// Runs the selected rules to a joint fixpoint. `depth_cap` bounds path
    /// length during growth.
    pub fn saturate(
        &mut self,
        arities: &Arities,
        opts: Saturate,
        depth_cap: Option<usize>,
    ) -> Result<(), Cyclic> {
        loop {
            let mut changed = false;
            if opts.grow {
                changed |= self.grow_once()?;
                if let Some(cap) = depth_cap {
                    if let Some(p) = self.paths.iter().find(|p| p.len() > cap) {
                        return Err(Cyclic(Path::eps(), p.clone()));
                    }
                }
            }
            while self.suffix_once() {
                changed = true;
            }
            if let Some(rule) = opts.maximality {
                changed |= self.maximality_once(arities, rule);
            }
            if !changed {
                return Ok(());
            }
        }
    }

    pub fn paths(&self) -> BTreeSet<Path> {
        self.paths.iter().cloned().collect()
    }

    pub fn into_congruence(mut self) -> Congruence {
        let mut rep = BTreeMap::new();
        for i in 0..self.paths.len() {
            let r = self.find(i);
            rep.insert(self.paths[i].clone(), self.paths[r].clone());
        }
        Congruence { rep }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    #[test]
    fn representatives_are_shortlex_least() {
        let eq = Congruence::from_classes(
            [p("eps"), p(":.1"), p(":.2")],
            &[vec![p(":.2"), p(":.1.s.1")]],
        );
        assert_eq!(eq.rep(&p(":.1.s.1")), Some(&p(":.2")));
        assert!(!eq.contains(&p(":.1.s")));
        assert!(eq.equiv(&p(":.2"), &p(":.1.s.1")));
        assert!(!eq.equiv(&p(":.1"), &p(":.2")));
    }

    #[test]
    fn implies_follows_suffixes() {
        let eq = Congruence::from_classes([p("eps")], &[vec![p(":.1"), p(":.2")]]);
        assert!(eq.implies(&p(":.1.s.1"), &p(":.2.s.1")));
        assert!(!eq.implies(&p(":.1.s.1"), &p(":.2")));
        assert!(eq.implies(&p("eps"), &p("eps")));
    }

    #[test]
    fn growth_detects_cycles() {
        let mut c = Closure::new([p("f.1"), p("f.2.s.1")]);
        let (a, b) = (
            c.index_of(&p("f.2")).unwrap(),
            c.index_of(&p("f.2.s.1")).unwrap(),
        );
        c.union(a, b);
        let opts = Saturate {
            maximality: None,
            grow: true,
        };
        assert!(c.saturate(&Arities::new(), opts, None).is_err());
    }
}
