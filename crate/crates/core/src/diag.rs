use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }
}

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Machine-readable diagnostic codes. The string forms are part of the
/// frozen machine output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    Syntax,
    EmptyProgram,
    UnknownConstructor,
    ArityMismatch,
    ReservedName,
    UnknownPredicate,
    MultipleBodyAtoms,
    BodyVariablesShared,
    BodyNotBelowHead,
    HeadCongruenceNotGlobal,
    CongruenceBlockRequired,
    GlobalNotMaximal,
    PairNotBelow,
    PairCongruenceNotGlobal,
    GoalCongruenceNotGlobal,
    MonitorViolation,
    OutOfUniverse,
    ResourceExhausted,
    Unsatisfiable,
    NoGroundTerm,
    UndefinedPath,
    InvalidRepr,
    Incompatible,
    InvalidResult,
    Io,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::Syntax => "syntax",
            Code::EmptyProgram => "empty-program",
            Code::UnknownConstructor => "unknown-constructor",
            Code::ArityMismatch => "arity-mismatch",
            Code::ReservedName => "reserved-name",
            Code::UnknownPredicate => "unknown-predicate",
            Code::MultipleBodyAtoms => "multiple-body-atoms",
            Code::BodyVariablesShared => "body-variables-shared",
            Code::BodyNotBelowHead => "body-not-below-head",
            Code::HeadCongruenceNotGlobal => "head-congruence-not-global",
            Code::CongruenceBlockRequired => "congruence-block-required",
            Code::GlobalNotMaximal => "global-not-maximal",
            Code::PairNotBelow => "pair-not-below",
            Code::PairCongruenceNotGlobal => "pair-congruence-not-global",
            Code::GoalCongruenceNotGlobal => "goal-congruence-not-global",
            Code::MonitorViolation => "monitor-violation",
            Code::OutOfUniverse => "out-of-universe",
            Code::ResourceExhausted => "resource-exhausted",
            Code::Unsatisfiable => "unsatisfiable",
            Code::NoGroundTerm => "no-ground-term",
            Code::UndefinedPath => "undefined-path",
            Code::InvalidRepr => "invalid-repr",
            Code::Incompatible => "incompatible",
            Code::InvalidResult => "invalid-result",
            Code::Io => "io",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub span: Option<Span>,
    pub code: Code,
    pub message: String,
}

impl Diagnostic {
    pub fn error(code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            span: None,
            code,
            message: message.into(),
        }
    }

    pub fn warning(code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            span: None,
            code,
            message: message.into(),
        }
    }

    pub fn at(mut self, span: Option<Span>) -> Self {
        self.span = span;
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(span) = self.span {
            write!(f, "{span}: ")?;
        }
        write!(
            f,
            "{} [{}]: {}",
            self.severity.as_str(),
            self.code,
            self.message
        )
    }
}
