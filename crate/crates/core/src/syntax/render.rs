//! Output formats.
//!
//! `machine` output is one `key=value` pair per line. Lists are written as
//! `name.n=<count>` followed by `name.<i>=...` or `name.<i>.<field>=...`
//! with `i` starting at 1. Keys and their order are fixed.

use std::fmt::Write;

use crate::diag::Diagnostic;
use crate::engine::HornProgram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Pretty,
    Machine,
}

/// Source text that parses back to the same program.
pub fn render_program(prog: &HornProgram) -> String {
    let mut out = String::new();
    if !prog.signature.is_empty() {
        let decls: Vec<String> = prog
            .signature
            .iter()
            .map(|(f, n)| format!("{f}/{n}"))
            .collect();
        writeln!(out, "constructors {}.", decls.join(", ")).unwrap();
    }
    if prog.congruence_declared || !prog.generators.is_empty() {
        let pairs: Vec<String> = prog
            .generators
            .iter()
            .map(|(a, b)| format!("{a} ~ {b}"))
            .collect();
        if pairs.is_empty() {
            out.push_str("congruence .\n");
        } else {
            writeln!(out, "congruence {}.", pairs.join(", ")).unwrap();
        }
    }
    for c in &prog.clauses {
        writeln!(out, "{c}").unwrap();
    }
    for p in &prog.empty_preds {
        writeln!(out, "% {p} has no clauses").unwrap();
    }
    out
}

/// Line-oriented `key=value` writer.
#[derive(Debug, Default)]
pub struct Machine {
    out: String,
}

impl Machine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn kv(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        let v = value.to_string().replace('\n', " ");
        writeln!(self.out, "{key}={v}").unwrap();
        self
    }

    pub fn list<T: std::fmt::Display>(
        &mut self,
        name: &str,
        items: impl IntoIterator<Item = T>,
    ) -> &mut Self {
        let items: Vec<T> = items.into_iter().collect();
        self.kv(&format!("{name}.n"), items.len());
        for (i, it) in items.iter().enumerate() {
            self.kv(&format!("{name}.{}", i + 1), it);
        }
        self
    }

    pub fn diagnostics(&mut self, diags: &[Diagnostic]) -> &mut Self {
        self.kv("diagnostics.n", diags.len());
        for (i, d) in diags.iter().enumerate() {
            let k = format!("diagnostic.{}", i + 1);
            self.kv(&format!("{k}.code"), d.code);
            self.kv(&format!("{k}.severity"), d.severity.as_str());
            if let Some(span) = d.span {
                self.kv(&format!("{k}.line"), span.line);
                self.kv(&format!("{k}.column"), span.column);
            }
            self.kv(&format!("{k}.message"), &d.message);
        }
        self
    }

    pub fn finish(self) -> String {
        self.out
    }
}

pub fn render_diagnostics(diags: &[Diagnostic], format: Format) -> String {
    match format {
        Format::Pretty => diags.iter().map(|d| format!("{d}\n")).collect(),
        Format::Machine => {
            let mut m = Machine::new();
            m.diagnostics(diags);
            m.finish()
        }
    }
}

/// Parses `machine` output back into ordered pairs.
pub fn parse_machine(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}
