//! Recursive-descent parser; one token of lookahead decides every production.
//!
//! ```text
//! program  := stmt*
//! stmt     := "universe" IDENT ";"
//!           | "set" IDENT "=" expr ";"
//!           | "query" query ";"
//! query    := "count" "(" list ")" | expr
//! expr     := IDENT
//!           | "interval" ("[" | "(") NUM "," NUM ("]" | ")")
//!           | "disk" "(" NUM "," NUM "," NUM ["," ("open" | "closed")] ")"
//!           | "divides" "(" NUM ")"
//!           | ("union" | "inter") "(" list ")"
//!           | "not" "(" expr ")"
//!           | ("exactly" | "atmost" | "morethan") "(" NUM ";" list ")"
//! list     := expr ("," expr)*
//! ```

use std::collections::HashSet;

use super::ast::{Binding, Program, Query, SetExpr, SliceKind, UniverseKind};
use super::lexer::{tokenize, Keyword, Token, TokenKind};
use super::{ErrorKind, SetlError, SourceSpan};
use crate::bcore::Border;
use crate::tomography::Slice;

pub fn parse(tokens: Vec<Token>, source_len: usize) -> Result<Program, SetlError> {
    let mut p = Parser::new(tokens, source_len);
    p.program()
}

/// Parses a standalone query against an already-parsed program's bindings.
pub fn parse_query(program: &Program, text: &str) -> Result<Query, SetlError> {
    let mut p = Parser::new(tokenize(text)?, text.len());
    p.universe = Some(program.universe);
    p.names = program.sets.iter().map(|b| b.name.clone()).collect();
    let q = p.query()?;
    if let Some(tok) = p.peek() {
        return Err(SetlError::syntax(tok.span, format!("unexpected {} after query", tok.kind)));
    }
    Ok(q)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    source_len: usize,
    universe: Option<UniverseKind>,
    names: HashSet<String>,
}

impl Parser {
    fn new(tokens: Vec<Token>, source_len: usize) -> Self {
        Parser {
            tokens,
            pos: 0,
            source_len,
            universe: None,
            names: HashSet::new(),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eof_span(&self) -> SourceSpan {
        SourceSpan::new(self.source_len, self.source_len)
    }

    fn next(&mut self, expected: &str) -> Result<Token, SetlError> {
        match self.tokens.get(self.pos) {
            Some(tok) => {
                self.pos += 1;
                Ok(tok.clone())
            }
            None => Err(SetlError::syntax(
                self.eof_span(),
                format!("expected {expected}, found end of input"),
            )),
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<SourceSpan, SetlError> {
        let tok = self.next(expected)?;
        if tok.kind == kind {
            Ok(tok.span)
        } else {
            Err(SetlError::syntax(tok.span, format!("expected {expected}, found {}", tok.kind)))
        }
    }

    fn at(&self, kind: &TokenKind) -> bool {
        self.peek().is_some_and(|t| &t.kind == kind)
    }

    fn number(&mut self) -> Result<(f64, String, SourceSpan), SetlError> {
        let tok = self.next("a number")?;
        match tok.kind {
            TokenKind::Number { text, value } => Ok((value, text, tok.span)),
            other => Err(SetlError::syntax(tok.span, format!("expected a number, found {other}"))),
        }
    }

    fn integer(&mut self) -> Result<(i64, SourceSpan), SetlError> {
        let (value, text, span) = self.number()?;
        if value.fract() != 0.0 || value.abs() > 9.0e15 {
            return Err(SetlError::syntax(span, format!("expected an integer, found `{text}`")));
        }
        Ok((value as i64, span))
    }

    fn ident(&mut self) -> Result<(String, SourceSpan), SetlError> {
        let tok = self.next("an identifier")?;
        match tok.kind {
            TokenKind::Ident(name) => Ok((name, tok.span)),
            other => Err(SetlError::syntax(tok.span, format!("expected an identifier, found {other}"))),
        }
    }

    fn universe(&self, span: SourceSpan) -> Result<UniverseKind, SetlError> {
        self.universe.ok_or_else(|| {
            SetlError::new(
                ErrorKind::MissingUniverse,
                span,
                "a `universe` declaration must come first".to_owned(),
            )
        })
    }

    fn require_universe(&self, kinds: &[UniverseKind], what: &str, span: SourceSpan) -> Result<(), SetlError> {
        let u = self.universe(span)?;
        if kinds.contains(&u) {
            Ok(())
        } else {
            Err(SetlError::new(
                ErrorKind::UniverseMismatch,
                span,
                format!("{what} is not defined over universe `{u}`"),
            ))
        }
    }

    fn program(&mut self) -> Result<Program, SetlError> {
        let mut sets = Vec::new();
        let mut queries = Vec::new();
        while let Some(tok) = self.peek().cloned() {
            match tok.kind {
                TokenKind::Keyword(Keyword::Universe) => {
                    self.pos += 1;
                    let (name, span) = self.ident()?;
                    if self.universe.is_some() {
                        return Err(SetlError::new(
                            ErrorKind::UniverseMismatch,
                            tok.span.to(span),
                            "only one universe declaration is allowed".to_owned(),
                        ));
                    }
                    let kind = UniverseKind::from_name(&name).ok_or_else(|| {
                        SetlError::syntax(span, format!("unknown universe `{name}` (expected real, plane or naturals)"))
                    })?;
                    self.universe = Some(kind);
                    self.expect(TokenKind::Semicolon, "`;`")?;
                }
                TokenKind::Keyword(Keyword::Set) => {
                    self.pos += 1;
                    let (name, span) = self.ident()?;
                    self.universe(span)?;
                    self.expect(TokenKind::Equals, "`=`")?;
                    let (expr, _) = self.expr()?;
                    self.expect(TokenKind::Semicolon, "`;`")?;
                    if !self.names.insert(name.clone()) {
                        return Err(SetlError::new(
                            ErrorKind::DuplicateName,
                            span,
                            format!("set `{name}` is already defined"),
                        ));
                    }
                    sets.push(Binding { name, expr });
                }
                TokenKind::Keyword(Keyword::Query) => {
                    self.pos += 1;
                    self.universe(tok.span)?;
                    queries.push(self.query()?);
                    self.expect(TokenKind::Semicolon, "`;`")?;
                }
                other => {
                    return Err(SetlError::syntax(
                        tok.span,
                        format!("expected `universe`, `set` or `query`, found {other}"),
                    ))
                }
            }
        }
        let universe = self.universe.ok_or_else(|| {
            SetlError::new(
                ErrorKind::MissingUniverse,
                self.eof_span(),
                "program has no `universe` declaration".to_owned(),
            )
        })?;
        Ok(Program { universe, sets, queries })
    }

    fn query(&mut self) -> Result<Query, SetlError> {
        if self.at(&TokenKind::Keyword(Keyword::Count)) {
            self.pos += 1;
            self.expect(TokenKind::LParen, "`(`")?;
            let (items, _) = self.list()?;
            self.expect(TokenKind::RParen, "`)`")?;
            return Ok(Query::Count(items));
        }
        Ok(Query::Set(self.expr()?.0))
    }

    fn list(&mut self) -> Result<(Vec<SetExpr>, SourceSpan), SetlError> {
        let (first, mut span) = self.expr()?;
        let mut items = vec![first];
        while self.at(&TokenKind::Comma) {
            self.pos += 1;
            let (item, s) = self.expr()?;
            span = span.to(s);
            items.push(item);
        }
        Ok((items, span))
    }

    fn expr(&mut self) -> Result<(SetExpr, SourceSpan), SetlError> {
        let tok = self.next("a set expression")?;
        let start = tok.span;
        let expr = match tok.kind {
            TokenKind::Ident(name) => {
                if !self.names.contains(&name) {
                    return Err(SetlError::new(
                        ErrorKind::UnknownName,
                        start,
                        format!("unknown set `{name}`"),
                    ));
                }
                return Ok((SetExpr::Ref(name), start));
            }
            TokenKind::Keyword(Keyword::Interval) => self.interval(start)?,
            TokenKind::Keyword(Keyword::Disk) => self.disk(start)?,
            TokenKind::Keyword(Keyword::Divides) => {
                self.require_universe(&[UniverseKind::Naturals], "`divides`", start)?;
                self.expect(TokenKind::LParen, "`(`")?;
                let (j, span) = self.integer()?;
                if j < 1 {
                    return Err(SetlError::syntax(span, "divisor must be at least 1".to_owned()));
                }
                self.expect(TokenKind::RParen, "`)`")?;
                SetExpr::Divides(j as u64)
            }
            TokenKind::Keyword(kw @ (Keyword::Union | Keyword::Inter)) => {
                self.expect(TokenKind::LParen, "`(`")?;
                let (items, _) = self.list()?;
                self.expect(TokenKind::RParen, "`)`")?;
                if kw == Keyword::Union {
                    SetExpr::Union(items)
                } else {
                    SetExpr::Intersect(items)
                }
            }
            TokenKind::Keyword(Keyword::Not) => {
                self.expect(TokenKind::LParen, "`(`")?;
                let (inner, _) = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                SetExpr::Complement(Box::new(inner))
            }
            TokenKind::Keyword(kw @ (Keyword::Exactly | Keyword::AtMost | Keyword::MoreThan)) => {
                let kind = match kw {
                    Keyword::Exactly => SliceKind::Exactly,
                    Keyword::AtMost => SliceKind::AtMost,
                    _ => SliceKind::MoreThan,
                };
                self.expect(TokenKind::LParen, "`(`")?;
                let (m, m_span) = self.integer()?;
                self.expect(TokenKind::Semicolon, "`;`")?;
                let (members, _) = self.list()?;
                self.expect(TokenKind::RParen, "`)`")?;
                let slice = match kind {
                    SliceKind::Exactly => Slice::Exactly(m),
                    SliceKind::AtMost => Slice::AtMost(m),
                    SliceKind::MoreThan => Slice::MoreThan(m),
                };
                slice
                    .validate(members.len())
                    .map_err(|e| SetlError::new(ErrorKind::Threshold, m_span, e.to_string()))?;
                SetExpr::Slice { kind, m, members }
            }
            other => {
                return Err(SetlError::syntax(start, format!("expected a set expression, found {other}")))
            }
        };
        let end = self.tokens[self.pos - 1].span;
        Ok((expr, start.to(end)))
    }

    fn interval(&mut self, start: SourceSpan) -> Result<SetExpr, SetlError> {
        self.require_universe(&[UniverseKind::RealLine, UniverseKind::Naturals], "`interval`", start)?;
        let open = self.next("`[` or `(`")?;
        let left = match open.kind {
            TokenKind::LBracket => Border::Closed,
            TokenKind::LParen => Border::Open,
            other => return Err(SetlError::syntax(open.span, format!("expected `[` or `(`, found {other}"))),
        };
        let (lower, _, lo_span) = self.number()?;
        self.expect(TokenKind::Comma, "`,`")?;
        let (upper, _, hi_span) = self.number()?;
        let close = self.next("`]` or `)`")?;
        let right = match close.kind {
            TokenKind::RBracket => Border::Closed,
            TokenKind::RParen => Border::Open,
            other => return Err(SetlError::syntax(close.span, format!("expected `]` or `)`, found {other}"))),
        };
        if self.universe == Some(UniverseKind::Naturals) {
            for (v, span) in [(lower, lo_span), (upper, hi_span)] {
                if v.fract() != 0.0 || v < 0.0 {
                    return Err(SetlError::new(
                        ErrorKind::UniverseMismatch,
                        span,
                        format!("interval endpoint {v} is not a natural number"),
                    ));
                }
            }
        }
        if lower >= upper {
            return Err(SetlError::syntax(
                lo_span.to(hi_span),
                format!("interval needs lower < upper (got {lower}, {upper})"),
            ));
        }
        Ok(SetExpr::Interval { lower, upper, left, right })
    }

    fn disk(&mut self, start: SourceSpan) -> Result<SetExpr, SetlError> {
        self.require_universe(&[UniverseKind::Plane], "`disk`", start)?;
        self.expect(TokenKind::LParen, "`(`")?;
        let (cx, _, _) = self.number()?;
        self.expect(TokenKind::Comma, "`,`")?;
        let (cy, _, _) = self.number()?;
        self.expect(TokenKind::Comma, "`,`")?;
        let (radius, _, r_span) = self.number()?;
        if radius <= 0.0 {
            return Err(SetlError::syntax(r_span, "disk radius must be positive".to_owned()));
        }
        let mut boundary = Border::Open;
        if self.at(&TokenKind::Comma) {
            self.pos += 1;
            let tok = self.next("`open` or `closed`")?;
            boundary = match tok.kind {
                TokenKind::Keyword(Keyword::Open) => Border::Open,
                TokenKind::Keyword(Keyword::Closed) => Border::Closed,
                other => {
                    return Err(SetlError::syntax(tok.span, format!("expected `open` or `closed`, found {other}")))
                }
            };
        }
        self.expect(TokenKind::RParen, "`)`")?;
        Ok(SetExpr::Disk { cx, cy, radius, boundary })
    }
}
