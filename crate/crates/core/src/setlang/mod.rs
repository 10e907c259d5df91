//! A small language for declaring a universe, named sets and layer queries.
//!
//! ```text
//! universe plane;
//! set A = disk(1, 0, 1.5);          # open by default
//! set B = disk(-1, 0, 2, closed);
//! query union(A, B);
//! query exactly(2; A, B);
//! query count(A, B);
//! ```
//!
//! Programs are parsed into [`Program`] trees and compiled against either the
//! n-term B-function evaluator or the Whitney expansion oracle.

mod ast;
mod compile;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

pub use ast::{Binding, Program, Query, SetExpr, SliceKind, UniverseKind};
pub use compile::{Backend, CompileError, CompiledProgram, CompiledQuery, Context, Element};
pub use lexer::{tokenize, Keyword, Token, TokenKind};
pub use parser::parse_query;

/// Byte range `[start, end)` into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    /// Smallest span covering both.
    pub fn to(self, other: SourceSpan) -> SourceSpan {
        SourceSpan::new(self.start.min(other.start), self.end.max(other.end))
    }

    /// 1-based line and column of `start`.
    pub fn line_col(&self, source: &str) -> (usize, usize) {
        let before = &source[..self.start.min(source.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rfind('\n').map_or(before.len(), |nl| before.len() - nl - 1) + 1;
        (line, col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    Syntax,
    UnknownName,
    DuplicateName,
    UniverseMismatch,
    MissingUniverse,
    Threshold,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} (bytes {}..{})", span.start, span.end)]
pub struct SetlError {
    pub kind: ErrorKind,
    pub span: SourceSpan,
    pub message: String,
}

impl SetlError {
    pub fn new(kind: ErrorKind, span: SourceSpan, message: String) -> Self {
        SetlError { kind, span, message }
    }

    pub fn syntax(span: SourceSpan, message: String) -> Self {
        Self::new(ErrorKind::Syntax, span, message)
    }

    /// `path:line:col: message` followed by the offending line and a caret.
    pub fn render(&self, source: &str, path: &str) -> String {
        let (line, col) = self.span.line_col(source);
        let text = source.lines().nth(line - 1).unwrap_or("").trim_end_matches('\r');
        let width = (self.span.end - self.span.start).max(1);
        format!(
            "{path}:{line}:{col}: error: {}\n  | {text}\n  | {}{}",
            self.message,
            " ".repeat(col - 1),
            "^".repeat(width.min(text.len().saturating_sub(col - 1).max(1)))
        )
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Tokenizes and parses a whole program.
pub fn parse_program(source: &str) -> Result<Program, SetlError> {
    parser::parse(tokenize(source)?, source.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcore::Border;

    const FIG1: &str = include_str!("../../examples/fig1.setl");

    #[test]
    fn four_disk_program() {
        let p = parse_program(FIG1).unwrap();
        assert_eq!(p.universe, UniverseKind::Plane);
        assert_eq!(p.sets.len(), 4);
        assert_eq!(
            p.sets[0].expr,
            SetExpr::Disk { cx: 1.0, cy: 0.0, radius: 1.5, boundary: Border::Open }
        );
        let union = p
            .queries
            .iter()
            .find(|q| matches!(q, Query::Set(SetExpr::Union(_))))
            .expect("fig1 has a union query");
        match union {
            Query::Set(SetExpr::Union(items)) => assert_eq!(items.len(), 4),
            _ => unreachable!(),
        }
    }

    #[test]
    fn threshold_out_of_range() {
        let src = "universe real; set S1 = interval[0, 1]; set S2 = interval[0, 2];\nquery exactly(5; S1,S2);";
        let err = parse_program(src).unwrap_err();
        assert_eq!(err.kind, ErrorKind::Threshold);
        assert_eq!(&src[err.span.start..err.span.end], "5");
        let err = parse_program("universe real; set A = interval[0,1]; query atmost(0; A);").unwrap_err();
        assert_eq!(err.kind, ErrorKind::Threshold);
    }

    #[test]
    fn universe_mismatch() {
        let src = "universe naturals; set D = disk(0,0,1);";
        let err = parse_program(src).unwrap_err();
        assert_eq!(err.kind, ErrorKind::UniverseMismatch);
        assert_eq!(&src[err.span.start..err.span.end], "disk");
        let err = parse_program("universe plane; set D = divides(3);").unwrap_err();
        assert_eq!(err.kind, ErrorKind::UniverseMismatch);
        let err = parse_program("universe naturals; set D = interval[0.5, 3];").unwrap_err();
        assert_eq!(err.kind, ErrorKind::UniverseMismatch);
        let err = parse_program("universe real; universe plane;").unwrap_err();
        assert_eq!(err.kind, ErrorKind::UniverseMismatch);
    }

    #[test]
    fn names_and_universe_required() {
        let err = parse_program("universe real; query union(A);").unwrap_err();
        assert_eq!(err.kind, ErrorKind::UnknownName);
        let err = parse_program("set A = interval[0, 1];").unwrap_err();
        assert_eq!(err.kind, ErrorKind::MissingUniverse);
        let err = parse_program("").unwrap_err();
        assert_eq!(err.kind, ErrorKind::MissingUniverse);
        let err = parse_program("universe real; set A = interval[0,1]; set A = interval[0,2];").unwrap_err();
        assert_eq!(err.kind, ErrorKind::DuplicateName);
        let err = parse_program("universe torus;").unwrap_err();
        assert_eq!(err.kind, ErrorKind::Syntax);
    }

    #[test]
    fn syntax_errors_carry_spans() {
        for src in [
            "universe real; set A = interval[1, 0];",
            "universe real; set A = interval[0 1];",
            "universe real; set A = interval{0, 1};",
            "universe plane; set A = disk(0, 0, -1);",
            "universe plane; set A = disk(0, 0, 1, ajar);",
            "universe real; query",
            "universe real; set A = ;",
            "universe real; query union();",
            "universe real; 42",
            "universe naturals; set A = divides(0);",
        ] {
            let err = parse_program(src).unwrap_err();
            assert!(err.span.end <= src.len(), "{src}: {err:?}");
            assert!(err.span.start <= err.span.end);
        }
    }

    #[test]
    fn crlf_accepted() {
        let src = "universe real;\r\nset A = interval(0, 1];\r\nquery not(A);\r\n";
        let p = parse_program(src).unwrap();
        assert_eq!(p.queries.len(), 1);
    }

    #[test]
    fn standalone_query() {
        let p = parse_program(FIG1).unwrap();
        let q = parse_query(&p, "morethan(1; S1, S2, S3, S4)").unwrap();
        assert_eq!(q.to_string(), "morethan(1; S1, S2, S3, S4)");
        assert!(parse_query(&p, "union(S1, S9)").is_err());
        assert!(parse_query(&p, "union(S1); extra").is_err());
    }

    #[test]
    fn render_points_at_error() {
        let src = "universe real;\nset A = interval[0, 1] @;";
        let err = parse_program(src).unwrap_err();
        let msg = err.render(src, "x.setl");
        assert!(msg.starts_with("x.setl:2:24: error:"), "{msg}");
    }
}
