//! Recursive-descent parser for potential expressions over `q1`, `q2`.
//!
//! Grammar (whitespace insensitive, one-token lookahead):
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := ("-")? factor ("*" factor)*
//! factor   := atom ("^" uint)?
//! atom     := rational | "q1" | "q2" | "(" expr ")"
//! rational := uint ("/" uint)?
//! ```
//!
//! Division only appears between integer literals, so every expression
//! denotes an exact rational polynomial.

use crate::error::Error;
use crate::poly2::Poly2;
use crate::rat::Rat;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Integer,
    Slash,
    Star,
    Plus,
    Minus,
    Caret,
    LParen,
    RParen,
    VarQ1,
    VarQ2,
    End,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Character offset of the offending token in the input.
    pub position: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at offset {}: expected {}, found `{}`",
            self.position, self.expected, self.found
        )
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        if b.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let (kind, len) = match b {
            b'/' => (TokenKind::Slash, 1),
            b'*' => (TokenKind::Star, 1),
            b'+' => (TokenKind::Plus, 1),
            b'-' => (TokenKind::Minus, 1),
            b'^' => (TokenKind::Caret, 1),
            b'(' => (TokenKind::LParen, 1),
            b')' => (TokenKind::RParen, 1),
            b'0'..=b'9' => {
                let mut end = pos + 1;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                (TokenKind::Integer, end - pos)
            }
            b'q' => {
                let next = bytes.get(pos + 1).copied();
                match next {
                    Some(b'1') => (TokenKind::VarQ1, 2),
                    Some(b'2') => (TokenKind::VarQ2, 2),
                    _ => {
                        return Err(ParseError {
                            position: pos,
                            expected: String::from("variable q1 or q2"),
                            found: text[pos..].chars().take(2).collect(),
                        })
                    }
                }
            }
            _ => {
                return Err(ParseError {
                    position: pos,
                    expected: String::from("a token"),
                    found: text[pos..].chars().take(1).collect(),
                })
            }
        };
        tokens.push(Token {
            kind,
            lexeme: String::from(&text[pos..pos + len]),
            position: pos,
        });
        pos += len;
    }
    tokens.push(Token {
        kind: TokenKind::End,
        lexeme: String::from("end of input"),
        position: text.len(),
    });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.idx]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.idx].clone();
        if self.idx + 1 < self.tokens.len() {
            self.idx += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        let t = self.peek();
        Error::Parse(ParseError {
            position: t.position,
            expected: String::from(expected),
            found: t.lexeme.clone(),
        })
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Token, Error> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.error(what))
        }
    }

    fn uint(&mut self, what: &str) -> Result<i64, Error> {
        let t = self.expect(TokenKind::Integer, what)?;
        t.lexeme.parse::<i64>().map_err(|_| Error::Overflow)
    }

    fn expr(&mut self) -> Result<Poly2, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                TokenKind::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly2, Error> {
        let negate = if self.peek().kind == TokenKind::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.factor()?;
        while self.peek().kind == TokenKind::Star {
            self.bump();
            acc = acc.mul(&self.factor()?)?;
        }
        if negate {
            acc = acc.neg()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly2, Error> {
        let base = self.atom()?;
        if self.peek().kind == TokenKind::Caret {
            self.bump();
            let e = self.uint("an exponent")?;
            let e = u32::try_from(e).map_err(|_| Error::Overflow)?;
            base.pow(e)
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly2, Error> {
        match self.peek().kind {
            TokenKind::Integer => {
                let num = self.uint("an integer")?;
                if self.peek().kind == TokenKind::Slash {
                    self.bump();
                    let den_pos = self.peek().position;
                    let den = self.uint("a denominator")?;
                    if den == 0 {
                        // Report at the literal, like other value errors.
                        let _ = den_pos;
                        return Err(Error::ZeroDenominator);
                    }
                    Ok(Poly2::constant(Rat::new(num, den)?))
                } else {
                    Ok(Poly2::constant(Rat::from_int(num)))
                }
            }
            TokenKind::VarQ1 => {
                self.bump();
                Ok(Poly2::monomial(Rat::ONE, 1, 0))
            }
            TokenKind::VarQ2 => {
                self.bump();
                Ok(Poly2::monomial(Rat::ONE, 0, 1))
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.error("a rational, q1, q2, or `(`")),
        }
    }
}

/// Parses a potential expression into an exact [`Poly2`].
pub fn parse_potential(text: &str) -> Result<Poly2, Error> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, idx: 0 };
    let poly = p.expr()?;
    p.expect(TokenKind::End, "end of input")?;
    Ok(poly)
}

/// Canonical rendering of a potential; `parse_potential` round-trips it exactly.
pub fn print_potential(p: &Poly2) -> String {
    p.to_string_with("q1", "q2")
}

/// Parses a standalone rational literal with optional leading minus,
/// e.g. `-1/3` or `2`. Used by CLI system selectors.
pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let text = text.trim();
    let (neg, rest) = match text.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, text),
    };
    let mut parts = rest.splitn(2, '/');
    let num_s = parts.next().unwrap_or("");
    let bad = |pos: usize, found: &str| {
        Error::Parse(ParseError {
            position: pos,
            expected: String::from("a rational literal"),
            found: String::from(found),
        })
    };
    if num_s.is_empty() || !num_s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad(0, text));
    }
    let num: i64 = num_s.parse().map_err(|_| Error::Overflow)?;
    let den: i64 = match parts.next() {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(num_s.len() + 1, text));
            }
            d.parse().map_err(|_| Error::Overflow)?
        }
        None => 1,
    };
    let r = Rat::new(num, den)?;
    if neg {
        r.checked_neg()
    } else {
        Ok(r)
    }
}
