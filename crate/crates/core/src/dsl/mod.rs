//! Text format for symbolic diagrams.
//!
//! ```text
//! obj X Y
//! map f : X -> Y
//! P = pushout(f, f)
//! gap1 = gap(P)
//! conn(f) >= 1
//! trunc(f) <= 3
//! noniso(gap1)
//! ```
//!
//! Statements may appear in any order. `#` starts a comment.

mod lexer;
mod parser;
mod pretty;

use std::fmt;

use serde::Serialize;

use crate::conn::{build, BuildErrorKind, Statement, SymDiagram};

pub use lexer::{lex, LexError, Tok, Token};
pub use parser::{parse_tokens, Program, StatementSpans};
pub use pretty::{pretty, pretty_statement};

/// A range of columns on one line. Columns count characters from 1 and the
/// end is exclusive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SourceSpan {
    pub file: String,
    pub line: usize,
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.start)
    }
}

/// A located error from lexing, parsing or building.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub span: SourceSpan,
    /// Short machine-readable category, e.g. `syntax` or `unknown-name`.
    pub code: String,
    pub message: String,
    /// Tokens that would have been accepted, for syntax errors.
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: error[{}]: {}", self.span, self.code, self.message)?;
        if !self.expected.is_empty() {
            write!(f, "; expected {}", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// Lexes and parses, without resolving names.
pub fn parse_program(file: &str, src: &str) -> Result<Program, Vec<ParseError>> {
    let (toks, lex_errors) = lex(file, src);
    let mut errors: Vec<ParseError> = lex_errors
        .into_iter()
        .map(|e| ParseError { span: e.span, code: "lex".into(), message: e.message, expected: Vec::new() })
        .collect();
    let (program, parse_errors) = parse_tokens(&toks);
    errors.extend(parse_errors);
    if errors.is_empty() {
        Ok(program)
    } else {
        errors.sort_by_key(|e| (e.span.line, e.span.start));
        Err(errors)
    }
}

fn code_of(kind: &BuildErrorKind) -> &'static str {
    match kind {
        BuildErrorKind::UnknownName(_) => "unknown-name",
        BuildErrorKind::DuplicateName(_) => "duplicate-name",
        BuildErrorKind::DomainMismatch(_) => "domain-mismatch",
        BuildErrorKind::CyclicConstruction(_) => "cycle",
        BuildErrorKind::BadArgument(_) => "bad-argument",
        BuildErrorKind::Annotation(_) => "annotation",
    }
}

fn build_error_span(
    program: &Program,
    statement: usize,
    reference: Option<usize>,
    kind: &BuildErrorKind,
) -> SourceSpan {
    let spans = &program.spans[statement];
    if let Some(r) = reference.and_then(|r| spans.references.get(r)) {
        return r.clone();
    }
    if let BuildErrorKind::DuplicateName(name) = kind {
        let pos = match &program.statements[statement] {
            Statement::Objects(names) => names.iter().rposition(|n| n == name),
            _ => Some(0),
        };
        if let Some(s) = pos.and_then(|p| spans.defines.get(p)) {
            return s.clone();
        }
    }
    spans.whole.clone()
}

/// Parses and builds a diagram. All errors found are returned, each with its
/// location.
pub fn parse(file: &str, src: &str) -> Result<SymDiagram, Vec<ParseError>> {
    let program = parse_program(file, src)?;
    build(&program.statements).map_err(|errs| {
        let mut out: Vec<ParseError> = errs
            .into_iter()
            .map(|e| ParseError {
                span: build_error_span(&program, e.statement, e.reference, &e.kind),
                code: code_of(&e.kind).into(),
                message: e.kind.to_string(),
                expected: Vec::new(),
            })
            .collect();
        out.sort_by_key(|e| (e.span.line, e.span.start));
        out
    })
}
