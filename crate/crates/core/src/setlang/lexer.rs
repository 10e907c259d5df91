use std::fmt;

use super::{SetlError, SourceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Keyword {
    Universe,
    Set,
    Query,
    Union,
    Inter,
    Not,
    Exactly,
    AtMost,
    MoreThan,
    Count,
    Open,
    Closed,
    Interval,
    Disk,
    Divides,
}

impl Keyword {
    pub fn from_word(word: &str) -> Option<Keyword> {
        use Keyword::*;
        Some(match word {
            "universe" => Universe,
            "set" => Set,
            "query" => Query,
            "union" => Union,
            "inter" => Inter,
            "not" => Not,
            "exactly" => Exactly,
            "atmost" => AtMost,
            "morethan" => MoreThan,
            "count" => Count,
            "open" => Open,
            "closed" => Closed,
            "interval" => Interval,
            "disk" => Disk,
            "divides" => Divides,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        use Keyword::*;
        match self {
            Universe => "universe",
            Set => "set",
            Query => "query",
            Union => "union",
            Inter => "inter",
            Not => "not",
            Exactly => "exactly",
            AtMost => "atmost",
            MoreThan => "morethan",
            Count => "count",
            Open => "open",
            Closed => "closed",
            Interval => "interval",
            Disk => "disk",
            Divides => "divides",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Ident(String),
    /// Numeric literal; the text is kept so integer-only contexts can check it.
    Number { text: String, value: f64 },
    Keyword(Keyword),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semicolon,
    Equals,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(name) => write!(f, "identifier `{name}`"),
            TokenKind::Number { text, .. } => write!(f, "number `{text}`"),
            TokenKind::Keyword(kw) => write!(f, "`{}`", kw.as_str()),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::LBracket => f.write_str("`[`"),
            TokenKind::RBracket => f.write_str("`]`"),
            TokenKind::Comma => f.write_str("`,`"),
            TokenKind::Semicolon => f.write_str("`;`"),
            TokenKind::Equals => f.write_str("`=`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

/// Splits source text into tokens. `#` starts a comment running to the end
/// of the line; LF and CRLF line endings are both accepted.
pub fn tokenize(source: &str) -> Result<Vec<Token>, SetlError> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;

    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let single = match c {
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            b'[' => Some(TokenKind::LBracket),
            b']' => Some(TokenKind::RBracket),
            b',' => Some(TokenKind::Comma),
            b';' => Some(TokenKind::Semicolon),
            b'=' => Some(TokenKind::Equals),
            _ => None,
        };
        if let Some(kind) = single {
            pos += 1;
            tokens.push(Token { kind, span: SourceSpan::new(start, pos) });
            continue;
        }
        if c.is_ascii_whitespace() {
            pos += 1;
        } else if c == b'#' {
            while pos < bytes.len() && bytes[pos] != b'\n' {
                pos += 1;
            }
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            let word = &source[start..pos];
            let kind = match Keyword::from_word(word) {
                Some(kw) => TokenKind::Keyword(kw),
                None => TokenKind::Ident(word.to_owned()),
            };
            tokens.push(Token { kind, span: SourceSpan::new(start, pos) });
        } else if c.is_ascii_digit() || c == b'.' || ((c == b'-' || c == b'+') && starts_number(bytes, pos + 1)) {
            pos = scan_number(bytes, pos);
            let text = &source[start..pos];
            let span = SourceSpan::new(start, pos);
            let value: f64 = text
                .parse()
                .map_err(|_| SetlError::syntax(span, format!("malformed number `{text}`")))?;
            if !value.is_finite() {
                return Err(SetlError::syntax(span, format!("number `{text}` out of range")));
            }
            tokens.push(Token {
                kind: TokenKind::Number { text: text.to_owned(), value },
                span,
            });
        } else {
            let ch = source[start..].chars().next().expect("in bounds");
            let span = SourceSpan::new(start, start + ch.len_utf8());
            return Err(SetlError::syntax(span, format!("unexpected character `{ch}`")));
        }
    }
    Ok(tokens)
}

fn starts_number(bytes: &[u8], pos: usize) -> bool {
    bytes.get(pos).is_some_and(|b| b.is_ascii_digit() || *b == b'.')
}

fn scan_number(bytes: &[u8], mut pos: usize) -> usize {
    if matches!(bytes[pos], b'-' | b'+') {
        pos += 1;
    }
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos < bytes.len() && bytes[pos] == b'.' {
        pos += 1;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
    }
    pos
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    fn num(text: &str, value: f64) -> TokenKind {
        TokenKind::Number { text: text.into(), value }
    }

    #[test]
    fn disk_call() {
        assert_eq!(
            kinds("disk(1, 0, 1.5)"),
            vec![
                TokenKind::Keyword(Keyword::Disk),
                TokenKind::LParen,
                num("1", 1.0),
                TokenKind::Comma,
                num("0", 0.0),
                TokenKind::Comma,
                num("1.5", 1.5),
                TokenKind::RParen,
            ]
        );
    }

    #[test]
    fn empty_and_comments() {
        assert!(tokenize("").unwrap().is_empty());
        assert!(tokenize("  # nothing here\r\n\t").unwrap().is_empty());
    }

    #[test]
    fn illegal_character() {
        let err = tokenize("disk@").unwrap_err();
        assert_eq!(err.span, SourceSpan::new(4, 5));
        let err = tokenize("set é").unwrap_err();
        assert_eq!(err.span, SourceSpan::new(4, 6));
    }

    #[test]
    fn signed_numbers_and_spans() {
        let toks = tokenize("interval[-3.75, +3)").unwrap();
        assert_eq!(toks[2].kind, num("-3.75", -3.75));
        assert_eq!(toks[2].span, SourceSpan::new(9, 14));
        assert_eq!(toks[4].kind, num("+3", 3.0));
        assert!(tokenize("-").is_err());
        assert!(tokenize(".").is_err());
    }

    #[test]
    fn identifiers_vs_keywords() {
        assert_eq!(
            kinds("set S_1 = union"),
            vec![
                TokenKind::Keyword(Keyword::Set),
                TokenKind::Ident("S_1".into()),
                TokenKind::Equals,
                TokenKind::Keyword(Keyword::Union),
            ]
        );
    }
}
