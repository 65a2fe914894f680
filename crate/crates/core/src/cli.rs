//! Command-line front end.
//!
//! Exit codes: 0 success or true, 1 false or empty, 2 diagnostics,
//! 3 search cap reached.

use std::io::Write;

use clap::{Parser, Subcommand};

use crate::deletion::{leq, leq_star, GlobalCongruence, SearchLimits};
use crate::diag::{Code, Diagnostic};
use crate::engine::{bound_set, enumerate_extension, inh, intersect, HornProgram, ValidProgram};
use crate::error::Error;
use crate::repr::repr_of;
use crate::syntax::{
    parse_atom, parse_program, parse_term, render_diagnostics, render_program, Format, Machine,
};
use crate::term::Signature;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_DIAGNOSTICS: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hornsat",
    version,
    about = "Satisfiability and intersection for one-body Horn programs over terms"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Cap on search states; reaching it exits with code 3.
    #[arg(long, global = true, default_value_t = SearchLimits::default().max_states)]
    max_states: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a program and report diagnostics.
    Validate { file: String },
    /// Decide whether a predicate holds for some instance of a term.
    Sat {
        file: String,
        /// Goal atom, e.g. 'p(s(X):Y)'.
        #[arg(long)]
        goal: String,
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        trace: bool,
    },
    /// Build the intersection predicate of two predicates.
    Intersect {
        file: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Write the extended program here.
        #[arg(long)]
        out: Option<String>,
    },
    /// List the terms every exponent of a satisfiability run falls into.
    Bound {
        file: String,
        #[arg(long)]
        goal: String,
    },
    /// Print the paths and classes of a term.
    Repr { term: String },
    /// Decide whether the first term is obtainable from the second by deletions.
    Order {
        small: String,
        large: String,
        /// Program whose congruence block is the global congruence.
        #[arg(long)]
        global: Option<String>,
    },
    /// Enumerate the ground extension of a predicate up to a height.
    Enum {
        file: String,
        #[arg(long)]
        pred: String,
        #[arg(long)]
        depth: usize,
    },
}

struct Failure(i32, Vec<Diagnostic>);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_exhausted() {
            EXIT_EXHAUSTED
        } else {
            EXIT_DIAGNOSTICS
        };
        Failure(code, e.into_diagnostics())
    }
}

impl From<Vec<Diagnostic>> for Failure {
    fn from(d: Vec<Diagnostic>) -> Self {
        let code = if d.iter().any(|d| d.code == Code::ResourceExhausted) {
            EXIT_EXHAUSTED
        } else {
            EXIT_DIAGNOSTICS
        };
        Failure(code, d)
    }
}

impl From<Diagnostic> for Failure {
    fn from(d: Diagnostic) -> Self {
        Failure(EXIT_DIAGNOSTICS, vec![d])
    }
}

type Outcome = Result<(i32, String), Failure>;

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_DIAGNOSTICS
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let limits = SearchLimits {
        max_states: cli.max_states,
    };
    match dispatch(&cli.command, cli.format, limits) {
        Ok((code, text)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(Failure(code, diags)) => {
            let text = render_diagnostics(&diags, cli.format);
            match cli.format {
                Format::Machine => {
                    let _ = out.write_all(format!("result=error\n{text}").as_bytes());
                }
                Format::Pretty => {
                    let _ = err.write_all(text.as_bytes());
                }
            }
            code
        }
    }
}

fn dispatch(cmd: &Command, format: Format, limits: SearchLimits) -> Outcome {
    match cmd {
        Command::Validate { file } => validate(file, format, limits),
        Command::Sat {
            file,
            goal,
            witness,
            trace,
        } => sat(file, goal, *witness, *trace, format, limits),
        Command::Intersect {
            file,
            left,
            right,
            out,
        } => run_intersect(file, left, right, out.as_deref(), format, limits),
        Command::Bound { file, goal } => bound(file, goal, format, limits),
        Command::Repr { term } => repr(term, format),
        Command::Order {
            small,
            large,
            global,
        } => order(small, large, global.as_deref(), format, limits),
        Command::Enum { file, pred, depth } => enumerate(file, pred, *depth, format, limits),
    }
}

fn read_program(file: &str) -> Result<HornProgram, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Diagnostic::error(Code::Io, format!("cannot read {file}: {e}")))?;
    Ok(parse_program(&text)?)
}

fn load(file: &str, limits: SearchLimits) -> Result<ValidProgram, Failure> {
    Ok(read_program(file)?.validated(limits)?)
}

/// The program with `pred` defined. A name `l_r` that the program lacks is
/// built as the intersection of `l` and `r` when both are defined.
fn with_predicate(
    prog: ValidProgram,
    pred: &str,
    limits: SearchLimits,
) -> Result<ValidProgram, Failure> {
    let p = prog.program();
    if p.defines(pred) {
        return Ok(prog);
    }
    let split = pred
        .match_indices('_')
        .map(|(i, _)| (&pred[..i], &pred[i + 1..]))
        .find(|(l, r)| p.defines(l) && p.defines(r));
    let Some((l, r)) = split else {
        return Ok(prog);
    };
    let i = intersect(&prog, l, r)?;
    if &*i.predicate != pred {
        return Ok(prog);
    }
    Ok(i.program.validated(limits)?)
}

fn validate(file: &str, format: Format, limits: SearchLimits) -> Outcome {
    let prog = read_program(file)?;
    let diags = crate::engine::validate_program(&prog, limits);
    let errors = diags.iter().any(Diagnostic::is_error);
    if errors {
        return Err(diags.into());
    }
    let pair = diags.is_empty();
    let text = match format {
        Format::Machine => {
            let mut m = Machine::new();
            m.kv("result", "valid")
                .kv("clauses.n", prog.clauses.len())
                .kv("pair_condition", pair)
                .diagnostics(&diags);
            m.finish()
        }
        Format::Pretty => {
            let mut s = format!("valid: {} clauses\n", prog.clauses.len());
            if !pair {
                s.push_str("pair conditions fail; intersection is unavailable\n");
            }
            s + &render_diagnostics(&diags, format)
        }
    };
    Ok((EXIT_OK, text))
}

fn sat(
    file: &str,
    goal: &str,
    show_witness: bool,
    show_trace: bool,
    format: Format,
    limits: SearchLimits,
) -> Outcome {
    let goal = parse_atom(goal)?;
    let prog = with_predicate(load(file, limits)?, &goal.pred, limits)?;
    let res = inh(&prog, &goal, limits)?;
    let code = if res.satisfiable { EXIT_OK } else { EXIT_FALSE };
    let text = match format {
        Format::Machine => {
            let mut m = Machine::new();
            m.kv("result", res.satisfiable);
            if show_witness {
                if let Some(w) = &res.witness {
                    m.kv("witness", w);
                }
            }
            if show_trace {
                m.kv("trace.n", res.trace.len());
                for (i, e) in res.trace.iter().enumerate() {
                    let k = format!("trace.{}", i + 1);
                    m.kv(&format!("{k}.rule"), e.rule.number())
                        .kv(&format!("{k}.pred"), &e.pred)
                        .kv(&format!("{k}.term"), &e.term)
                        .kv(&format!("{k}.depth"), e.depth);
                }
            }
            m.finish()
        }
        Format::Pretty => {
            let mut s = format!(
                "{}: {goal}\n",
                if res.satisfiable { "true" } else { "false" }
            );
            if show_witness {
                if let Some(w) = &res.witness {
                    s += &format!("witness: {}({w})\n", goal.pred);
                }
            }
            if show_trace {
                for e in &res.trace {
                    s += &format!(
                        "{:indent$}[{} {}] {}({})\n",
                        "",
                        e.rule.number(),
                        e.rule,
                        e.pred,
                        e.term,
                        indent = 2 * e.depth
                    );
                }
            }
            s
        }
    };
    Ok((code, text))
}

fn run_intersect(
    file: &str,
    left: &str,
    right: &str,
    out: Option<&str>,
    format: Format,
    limits: SearchLimits,
) -> Outcome {
    let prog = load(file, limits)?;
    let i = intersect(&prog, left, right)?;
    let mut program = format!("% {} = {left} & {right}\n", i.predicate);
    for (l, r, n) in &i.created {
        if *n != i.predicate {
            program += &format!("% {n} = {l} & {r}\n");
        }
    }
    program += &render_program(&i.program);
    if let Some(path) = out {
        std::fs::write(path, &program)
            .map_err(|e| Diagnostic::error(Code::Io, format!("cannot write {path}: {e}")))?;
    }
    let new: Vec<String> = i.new_clauses().map(|c| c.to_string()).collect();
    let text = match format {
        Format::Machine => {
            let mut m = Machine::new();
            m.kv("result", "ok").kv("predicate", &i.predicate);
            m.kv("clauses.n", new.len());
            for (k, c) in new.iter().enumerate() {
                m.kv(&format!("clause.{}", k + 1), c);
            }
            m.finish()
        }
        Format::Pretty if out.is_some() => new.iter().map(|c| format!("{c}\n")).collect(),
        Format::Pretty => program,
    };
    Ok((EXIT_OK, text))
}

fn bound(file: &str, goal: &str, format: Format, limits: SearchLimits) -> Outcome {
    let goal = parse_atom(goal)?;
    let prog = with_predicate(load(file, limits)?, &goal.pred, limits)?;
    if let Err(e) = prog.program().signature.check(&goal.term) {
        return Err(
            Diagnostic::error(Code::UnknownConstructor, format!("goal {goal}: {e}")).into(),
        );
    }
    let b = bound_set(&prog, &goal.term, limits)?;
    let text = match format {
        Format::Machine => {
            let mut m = Machine::new();
            m.kv("result", "ok").list("bound", b.iter());
            m.finish()
        }
        Format::Pretty => b.iter().map(|t| format!("{t}\n")).collect(),
    };
    Ok((EXIT_OK, text))
}

fn show_class(c: &[crate::path::Path]) -> String {
    let items: Vec<String> = c.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn repr(term: &str, format: Format) -> Outcome {
    let t = parse_term(term)?;
    let r = repr_of(&t);
    let classes: Vec<String> = r.eq.classes().iter().map(|c| show_class(c)).collect();
    let text = match format {
        Format::Machine => {
            let mut m = Machine::new();
            m.kv("result", "ok")
                .list("path", &r.paths)
                .list("class", &classes);
            m.finish()
        }
        Format::Pretty => {
            let paths: Vec<String> = r.paths.iter().map(|p| p.to_string()).collect();
            format!(
                "paths: {}\nclasses:\n{}",
                paths.join(" "),
                classes
                    .iter()
                    .map(|c| format!("  {c}\n"))
                    .collect::<String>()
            )
        }
    };
    Ok((EXIT_OK, text))
}

fn order(
    small: &str,
    large: &str,
    global: Option<&str>,
    format: Format,
    limits: SearchLimits,
) -> Outcome {
    let s = parse_term(small)?;
    let t = parse_term(large)?;
    let gc = match global {
        Some(file) => {
            let prog = read_program(file)?;
            for x in [&s, &t] {
                if let Err(e) = prog.signature.check(x) {
                    return Err(
                        Diagnostic::error(Code::UnknownConstructor, format!("{x}: {e}")).into(),
                    );
                }
            }
            GlobalCongruence::new(&prog.signature, prog.generators.clone())
        }
        None => {
            let sig = Signature::infer([&s, &t])
                .map_err(|e| Diagnostic::error(Code::ArityMismatch, e.to_string()))?;
            GlobalCongruence::new(&sig, Vec::new())
        }
    }
    .covering([&s, &t]);
    let plain = leq(&s, &t, limits)?;
    let star = leq_star(&s, &t, &gc, limits)?;
    let code = if star.is_some() { EXIT_OK } else { EXIT_FALSE };
    let text = match format {
        Format::Machine => {
            let mut m = Machine::new();
            m.kv("result", star.is_some()).kv("leq", plain.is_some());
            if let Some(w) = &plain {
                m.kv("leq.witness", w);
            }
            m.kv("leq_star", star.is_some());
            if let Some(w) = &star {
                m.kv("leq_star.witness", w);
            }
            m.finish()
        }
        Format::Pretty => {
            let line = |name: &str, r: &Option<crate::deletion::DeletionSeq>| match r {
                Some(w) if w.is_empty() => format!("{name}: yes (no deletions)\n"),
                Some(w) => format!("{name}: yes\n  {w}\n"),
                None => format!("{name}: no\n"),
            };
            line("plain", &plain) + &line("global", &star)
        }
    };
    Ok((code, text))
}

fn enumerate(
    file: &str,
    pred: &str,
    depth: usize,
    format: Format,
    limits: SearchLimits,
) -> Outcome {
    let prog = with_predicate(load(file, limits)?, pred, limits)?;
    let ext = enumerate_extension(prog.program(), pred, depth, limits)?;
    let code = if ext.is_empty() { EXIT_FALSE } else { EXIT_OK };
    let text = match format {
        Format::Machine => {
            let mut m = Machine::new();
            m.kv("result", !ext.is_empty()).list("extension", &ext);
            m.finish()
        }
        Format::Pretty => ext.iter().map(|t| format!("{pred}({t})\n")).collect(),
    };
    Ok((code, text))
}
