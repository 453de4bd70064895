//! Polynomial expressions.
//!
//! ```text
//! expr   := ('+' | '-')? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := int | var | '(' expr ')'
//! ```
//!
//! Whitespace is ignored between tokens and implicit multiplication is
//! rejected. Integer literals are reduced into the coefficient ring.

use std::fmt;

use bsroots_core::{ChainRing, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source.
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at offset {}: {msg}", self.offset),
            ParseErrorKind::UnknownVariable(name) => {
                write!(f, "unknown variable {name:?} at offset {}", self.offset)
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(u128),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Token) -> String {
    match t {
        Token::Int(n) => format!("integer {n}"),
        Token::Ident(s) => format!("name {s:?}"),
        Token::Plus => "'+'".into(),
        Token::Minus => "'-'".into(),
        Token::Star => "'*'".into(),
        Token::Caret => "'^'".into(),
        Token::LParen => "'('".into(),
        Token::RParen => "')'".into(),
        Token::End => "end of input".into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = src[start..i].parse::<u128>().map_err(|_| ParseError {
                    offset: start,
                    kind: ParseErrorKind::Syntax("integer literal too large".into()),
                })?;
                out.push((start, Token::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap();
                return Err(ParseError {
                    offset: start,
                    kind: ParseErrorKind::Syntax(format!("unexpected character {ch:?}")),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Token::End));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    ring: ChainRing,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].1.clone();
        if t != Token::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError {
            offset: self.offset(),
            kind: ParseErrorKind::Syntax(format!("expected {wanted}, found {}", describe(self.peek()))),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let negate = match self.peek() {
            Token::Minus => {
                self.bump();
                true
            }
            Token::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Token::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.base()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Token::Int(k) => {
                let k = u64::try_from(k).map_err(|_| ParseError {
                    offset: at,
                    kind: ParseErrorKind::Syntax("exponent too large".into()),
                })?;
                Ok(base.pow(k))
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("an exponent"))
            }
        }
    }

    fn base(&mut self) -> Result<Poly, ParseError> {
        let nvars = self.vars.len();
        let at = self.offset();
        match self.peek().clone() {
            Token::Int(n) => {
                self.bump();
                let c = self.ring.from_u64((n % self.ring.modulus() as u128) as u64);
                Ok(Poly::constant(self.ring, nvars, c))
            }
            Token::Ident(name) => {
                self.bump();
                let i = self.vars.iter().position(|v| *v == name).ok_or(ParseError {
                    offset: at,
                    kind: ParseErrorKind::UnknownVariable(name),
                })?;
                Ok(Poly::var(self.ring, nvars, i))
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Token::RParen {
                    return Err(self.unexpected("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, a variable or '('")),
        }
    }
}

/// Parses `src` as a polynomial in `vars` over `ring`.
pub fn parse_poly(src: &str, vars: &[String], ring: ChainRing) -> Result<Poly, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(src)?,
        pos: 0,
        ring,
        vars,
    };
    let poly = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(poly)
}

/// Variable names in order of first appearance.
pub fn infer_variables(src: &str) -> Result<Vec<String>, ParseError> {
    let mut vars: Vec<String> = Vec::new();
    for (_, t) in tokenize(src)? {
        if let Token::Ident(name) = t {
            if !vars.contains(&name) {
                vars.push(name);
            }
        }
    }
    Ok(vars)
}
