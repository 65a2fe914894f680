//! Recursive-descent parser for `.hn` programs.
//!
//! ```text
//! program      = { item } ;
//! item         = constructors | congruence | clause ;
//! constructors = "constructors" decl { "," decl } "." ;
//! decl         = name "/" digits ;
//! congruence   = "congruence" [ pair { "," pair } ] "." ;
//! pair         = path "~" path ;
//! clause       = atom [ "<-" atom { "," atom } ] "." ;
//! atom         = lower "(" term ")" ;
//! term         = primary [ ":" term ] ;
//! primary      = var | name [ "(" term { "," term } ")" ] | "(" term ")" ;
//! ```
//!
//! Variables start with an uppercase letter or `_`; constructor names are
//! lowercase identifiers or digit strings. `%` starts a line comment.

use crate::diag::{Code, Diagnostic, Span};
use crate::engine::{Atom, Clause, HornProgram};
use crate::path::Path;
use crate::term::{Signature, SignatureError, Sym, Term, COLON};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

type PResult<T> = Result<T, Diagnostic>;

fn is_ident(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn span(&self) -> Span {
        Span {
            line: self.line,
            column: self.col,
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' {
                while !matches!(self.peek(), None | Some('\n')) {
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn error(&self, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::error(Code::Syntax, msg).at(Some(self.span()))
    }

    fn found(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(c) => format!("`{c}`"),
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.found())))
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            for _ in s.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(is_ident) {
            self.bump();
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn peek_word(&self) -> &'a str {
        let r = self.rest();
        let end = r.find(|c: char| !is_ident(c)).unwrap_or(r.len());
        &r[..end]
    }

    /// A block keyword, unless it is used as a predicate name.
    fn at_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.peek_word() != kw {
            return false;
        }
        let after = self.rest()[kw.len()..].trim_start();
        !after.starts_with('(')
    }

    fn constructor_name(&mut self) -> PResult<Sym> {
        self.skip_ws();
        if self.peek() == Some(':') {
            self.bump();
            return Ok(Sym::from(COLON));
        }
        let span = self.span();
        match self.word() {
            Some(w) if w.starts_with(|c: char| c.is_ascii_lowercase() || c.is_ascii_digit()) => {
                Ok(Sym::from(w))
            }
            Some(w) => Err(Diagnostic::error(
                Code::Syntax,
                format!("`{w}` is not a constructor name"),
            )
            .at(Some(span))),
            None => Err(self.error(format!(
                "expected a constructor name, found {}",
                self.found()
            ))),
        }
    }

    fn constructors(&mut self, sig: &mut Signature, diags: &mut Vec<Diagnostic>) -> PResult<()> {
        loop {
            let span = self.span();
            let name = self.constructor_name()?;
            self.expect('/')?;
            self.skip_ws();
            let arity: usize = self
                .word()
                .and_then(|w| w.parse().ok())
                .ok_or_else(|| self.error("expected an arity"))?;
            if &*name == COLON && arity != 2 {
                diags.push(Diagnostic::error(Code::ArityMismatch, "`:` is binary").at(Some(span)));
            }
            if let Err(old) = sig.declare(&name, arity) {
                diags.push(
                    Diagnostic::error(
                        Code::ArityMismatch,
                        format!("`{name}` declared with arities {old} and {arity}"),
                    )
                    .at(Some(span)),
                );
            }
            self.skip_ws();
            match self.bump() {
                Some(',') => continue,
                Some('.') => return Ok(()),
                _ => return Err(self.error("expected `,` or `.` in constructor block")),
            }
        }
    }

    /// A path literal; returns whether it swallowed the block terminator.
    fn path(&mut self) -> PResult<(Path, bool)> {
        self.skip_ws();
        let span = self.span();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| !c.is_whitespace() && !matches!(c, ',' | '~' | '%'))
        {
            self.bump();
        }
        let mut lit = &self.src[start..self.pos];
        let mut ended = false;
        if lit.len() > 1 && lit.ends_with('.') {
            lit = &lit[..lit.len() - 1];
            ended = true;
        }
        if lit.is_empty() {
            return Err(self.error("expected a path"));
        }
        let p = lit
            .parse::<Path>()
            .map_err(|e| Diagnostic::error(Code::Syntax, e).at(Some(span)))?;
        Ok((p, ended))
    }

    fn congruence(&mut self) -> PResult<Vec<(Path, Path)>> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some('.') {
            self.bump();
            return Ok(out);
        }
        loop {
            let (a, ended) = self.path()?;
            if ended {
                return Err(self.error("expected `~` before the end of the congruence block"));
            }
            self.expect('~')?;
            let (b, ended) = self.path()?;
            out.push((a, b));
            if ended {
                return Ok(out);
            }
            self.skip_ws();
            match self.bump() {
                Some(',') => continue,
                Some('.') => return Ok(out),
                _ => return Err(self.error("expected `,` or `.` in congruence block")),
            }
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let left = self.primary()?;
        self.skip_ws();
        if self.peek() == Some(':') {
            self.bump();
            let right = self.term()?;
            return Ok(Term::App(Sym::from(COLON), vec![left, right]));
        }
        Ok(left)
    }

    fn primary(&mut self) -> PResult<Term> {
        self.skip_ws();
        if self.peek() == Some('(') {
            self.bump();
            let t = self.term()?;
            self.expect(')')?;
            return Ok(t);
        }
        let span = self.span();
        let Some(w) = self.word() else {
            return Err(self.error(format!("expected a term, found {}", self.found())));
        };
        if w.starts_with(|c: char| c.is_ascii_uppercase() || c == '_') {
            return Ok(Term::var(w));
        }
        if w.starts_with(|c: char| c.is_ascii_digit()) && !w.chars().all(|c| c.is_ascii_digit()) {
            return Err(Diagnostic::error(Code::Syntax, format!("bad name `{w}`")).at(Some(span)));
        }
        self.skip_ws();
        if self.peek() != Some('(') {
            return Ok(Term::constant(w));
        }
        self.bump();
        let mut args = vec![self.term()?];
        loop {
            self.skip_ws();
            match self.bump() {
                Some(',') => args.push(self.term()?),
                Some(')') => break,
                _ => return Err(self.error("expected `,` or `)` in argument list")),
            }
        }
        Ok(Term::app(w, args))
    }

    fn atom(&mut self) -> PResult<Atom> {
        self.skip_ws();
        let span = self.span();
        let pred = match self.word() {
            Some(w) if w.starts_with(|c: char| c.is_ascii_lowercase()) => w,
            Some(w) => {
                return Err(Diagnostic::error(
                    Code::Syntax,
                    format!("`{w}` is not a predicate name"),
                )
                .at(Some(span)))
            }
            None => return Err(self.error(format!("expected a predicate, found {}", self.found()))),
        };
        self.expect('(')?;
        let term = self.term()?;
        self.expect(')')?;
        Ok(Atom::new(pred, term))
    }

    fn clause(&mut self) -> PResult<Clause> {
        self.skip_ws();
        let span = self.span();
        let head = self.atom()?;
        let mut body = Vec::new();
        if self.eat("<-") {
            body.push(self.atom()?);
            while self.eat(",") {
                body.push(self.atom()?);
            }
        }
        self.expect('.')?;
        Ok(Clause {
            head,
            body,
            span: Some(span),
        })
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }
}

fn signature_diag(e: SignatureError, span: Option<Span>, what: &str) -> Diagnostic {
    let code = match e {
        SignatureError::Unknown(_) => Code::UnknownConstructor,
        SignatureError::Arity { .. } => Code::ArityMismatch,
    };
    Diagnostic::error(code, format!("{what}: {e}")).at(span)
}

/// Parses a program. Without a `constructors` block the signature is
/// inferred from use.
pub fn parse_program(text: &str) -> Result<HornProgram, Vec<Diagnostic>> {
    let mut p = Parser::new(text);
    let mut sig = Signature::new();
    let mut diags = Vec::new();
    let mut prog = HornProgram::default();
    while !p.at_end() {
        let step = if p.at_keyword("constructors") {
            p.word();
            prog.constructors_declared = true;
            p.constructors(&mut sig, &mut diags)
        } else if p.at_keyword("congruence") {
            p.word();
            prog.congruence_declared = true;
            p.congruence().map(|g| prog.generators.extend(g))
        } else {
            p.clause().map(|c| prog.clauses.push(c))
        };
        if let Err(d) = step {
            return Err(vec![d]);
        }
    }
    if prog.clauses.is_empty() && !prog.constructors_declared && !prog.congruence_declared {
        return Err(vec![Diagnostic::error(Code::EmptyProgram, "empty program")]);
    }
    if prog.constructors_declared {
        for c in &prog.clauses {
            for a in std::iter::once(&c.head).chain(&c.body) {
                if let Err(e) = sig.check(&a.term) {
                    diags.push(signature_diag(e, c.span, &a.to_string()));
                }
            }
        }
    } else {
        match Signature::infer(prog.terms()) {
            Ok(s) => sig = s,
            Err(e) => diags.push(signature_diag(e, None, "inferring constructors")),
        }
    }
    for (a, b) in &prog.generators {
        for path in [a, b] {
            if let Err(e) = path.check(&sig) {
                diags.push(Diagnostic::error(
                    Code::UnknownConstructor,
                    format!("congruence path {path}: {e}"),
                ));
            }
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    prog.signature = sig;
    Ok(prog)
}

/// Parses a single term, with no signature check beyond consistent use.
pub fn parse_term(text: &str) -> Result<Term, Diagnostic> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    if !p.at_end() {
        return Err(p.error(format!("unexpected {} after term", p.found())));
    }
    Signature::infer([&t]).map_err(|e| signature_diag(e, None, "term"))?;
    Ok(t)
}

/// Parses `pred(term)`.
pub fn parse_atom(text: &str) -> Result<Atom, Diagnostic> {
    let mut p = Parser::new(text);
    let a = p.atom()?;
    if !p.at_end() {
        return Err(p.error(format!("unexpected {} after atom", p.found())));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "
        % the running example
        constructors 0/0, s/1, :/2.
        congruence :.1 ~ :.2.
        p(s(s(X)):s(Y)) <- p(s(X):Y).
        p(X:0).
        q(s(X):s(X)) <- q(X:X).
        q(0:X).
    ";

    #[test]
    fn parses_example() {
        let prog = parse_program(EXAMPLE).unwrap();
        assert_eq!(prog.clauses.len(), 4);
        assert_eq!(prog.clauses[0].to_string(), "p(s(s(X)):s(Y)) <- p(s(X):Y).");
        assert_eq!(prog.clauses[3].to_string(), "q(0:X).");
        assert_eq!(
            prog.generators,
            vec![(":.1".parse().unwrap(), ":.2".parse().unwrap())]
        );
        assert_eq!(prog.signature.arity(":"), Some(2));
        assert_eq!(prog.clauses[0].span, Some(Span { line: 5, column: 9 }));
    }

    #[test]
    fn empty_program() {
        let d = parse_program("  % nothing\n").unwrap_err();
        assert_eq!(d[0].code, Code::EmptyProgram);
    }

    #[test]
    fn located_syntax_errors() {
        let d = parse_program("p(X).\nq(X <- p(X).").unwrap_err();
        assert_eq!(d[0].code, Code::Syntax);
        assert_eq!(d[0].span, Some(Span { line: 2, column: 5 }));
    }

    #[test]
    fn colon_is_right_associative_and_loosest() {
        let t = parse_term("s(X):Y:0").unwrap();
        assert_eq!(
            t,
            Term::app(
                ":",
                vec![
                    Term::app("s", vec![Term::var("X")]),
                    Term::app(":", vec![Term::var("Y"), Term::constant("0")]),
                ]
            )
        );
    }

    #[test]
    fn signature_violations() {
        let d = parse_program("constructors s/1. p(s(X, Y)).").unwrap_err();
        assert_eq!(d[0].code, Code::ArityMismatch);
        let d = parse_program("constructors s/1. p(f(X)).").unwrap_err();
        assert_eq!(d[0].code, Code::UnknownConstructor);
        let d = parse_program("p(s(X)). p(s(X, Y)).").unwrap_err();
        assert_eq!(d[0].code, Code::ArityMismatch);
    }

    #[test]
    fn congruence_paths_are_checked() {
        let d = parse_program("constructors s/1, :/2. congruence :.3 ~ :.1. p(X).").unwrap_err();
        assert_eq!(d[0].code, Code::UnknownConstructor);
    }

    #[test]
    fn keyword_as_predicate() {
        let prog = parse_program("congruence(X).").unwrap();
        assert_eq!(&*prog.clauses[0].head.pred, "congruence");
    }

    #[test]
    fn lowercase_variables_are_constants() {
        let t = parse_term("s(x)").unwrap();
        assert!(t.is_ground());
    }
}
