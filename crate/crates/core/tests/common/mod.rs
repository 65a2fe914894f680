#![allow(dead_code)]

use hornsat::deletion::{less_set, SearchLimits};
use hornsat::engine::{Atom, Clause, HornProgram, ValidProgram};
use hornsat::path::Path;
use hornsat::term::{Signature, Term};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Constructors of every arity from 0 to 3.
pub fn mixed_signature() -> Signature {
    Signature::new()
        .with("a", 0)
        .with("b", 0)
        .with("g", 1)
        .with("h", 1)
        .with("f", 2)
        .with("k", 3)
}

pub const VARS: [&str; 4] = ["X", "Y", "Z", "W"];

/// A term of height at most `depth` over `sig`, with variables drawn
/// from `vars`.
pub fn random_term(rng: &mut TestRng, sig: &Signature, depth: usize, vars: &[&str]) -> Term {
    let leaf = depth <= 1 || rng.gen_bool(0.25);
    if leaf {
        let consts: Vec<_> = sig.iter().filter(|(_, n)| *n == 0).collect();
        if !vars.is_empty() && (consts.is_empty() || rng.gen_bool(0.5)) {
            return Term::var(vars.choose(rng).unwrap());
        }
        let (c, _) = consts.choose(rng).unwrap();
        return Term::constant(c);
    }
    let funs: Vec<_> = sig.iter().filter(|(_, n)| *n > 0).collect();
    let (f, n) = *funs.choose(rng).unwrap();
    let args = (0..n)
        .map(|_| random_term(rng, sig, depth - 1, vars))
        .collect();
    Term::App(f.clone(), args)
}

/// Up to `max` distinct variable names, at least one.
pub fn random_vars(rng: &mut TestRng, max: usize) -> Vec<&'static str> {
    let n = rng.gen_range(1..=max.min(VARS.len()));
    VARS[..n].to_vec()
}

/// Renames the variables of `t` with a prefix, so two terms share none.
pub fn prefixed(t: &Term, prefix: &str) -> Term {
    t.map_vars(&mut |v| Some(Term::var(&format!("{prefix}{v}"))))
}

pub const PAIRS: &str = include_str!("../../fixtures/pairs.hn");

pub fn pairs_program() -> ValidProgram {
    hornsat::syntax::parse_program(PAIRS)
        .unwrap()
        .validated(SearchLimits::default())
        .unwrap()
}

/// Signature for generated programs: no ternary constructor, so ground
/// enumeration stays small.
pub fn program_signature() -> Signature {
    Signature::new()
        .with("a", 0)
        .with("g", 1)
        .with("h", 1)
        .with("f", 2)
}

/// A random program over `p`, `q`, `r` whose rule bodies are drawn from the
/// terms below their heads. Returns `None` when validation rejects it or
/// the pair conditions fail and `need_pairs` is set.
pub fn random_program(rng: &mut TestRng, need_pairs: bool) -> Option<ValidProgram> {
    let sig = program_signature();
    let generators = if rng.gen_bool(0.3) {
        vec![(
            "f.1".parse::<Path>().unwrap(),
            "f.2".parse::<Path>().unwrap(),
        )]
    } else {
        Vec::new()
    };
    let mut prog = HornProgram::new(sig.clone(), generators, Vec::new());
    prog.congruence_declared = true;
    let gc = prog.global();
    let preds = ["p", "q", "r"];
    let used = &preds[..rng.gen_range(2..=3)];
    for pred in used {
        for _ in 0..rng.gen_range(1..=3) {
            let vars = random_vars(rng, 2);
            if rng.gen_bool(0.4) {
                let head = random_term(rng, &sig, 2, &vars);
                prog.clauses.push(Clause::fact(Atom::new(pred, head)));
            } else {
                let depth = rng.gen_range(2..=3);
                let head = random_term(rng, &sig, depth, &vars);
                let below = less_set(&head, &gc.covering([&head]), SearchLimits::default()).ok()?;
                let body = below.choose(rng)?.clone();
                let bpred = used.choose(rng).unwrap();
                prog.clauses
                    .push(Clause::rule(Atom::new(pred, head), Atom::new(bpred, body)));
            }
        }
    }
    if !prog.clauses.iter().any(Clause::is_fact) {
        return None;
    }
    let v = prog.validated(SearchLimits::default()).ok()?;
    if need_pairs && !v.pair_condition() {
        return None;
    }
    Some(v)
}

/// Draws until `n` programs pass, giving up after `attempts` draws.
pub fn random_programs(
    rng: &mut TestRng,
    n: usize,
    attempts: usize,
    need_pairs: bool,
    mut keep: impl FnMut(&ValidProgram) -> bool,
) -> Vec<ValidProgram> {
    let mut out = Vec::new();
    for _ in 0..attempts {
        if out.len() == n {
            break;
        }
        if let Some(p) = random_program(rng, need_pairs) {
            if keep(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Runs the CLI in-process.
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["hornsat"];
    argv.extend_from_slice(args);
    let code = hornsat::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

/// Value of `key` in machine output.
pub fn field<'a>(kv: &'a [(String, String)], key: &str) -> Option<&'a str> {
    kv.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

pub fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}
