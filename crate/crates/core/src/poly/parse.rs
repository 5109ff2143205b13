//! Recursive-descent parser for the polynomial text format.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := rational | var | '(' expr ')' | '-' factor
//! rational := int ('/' nat)?
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::{PolyRing, Polynomial, MAX_EXPONENT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown variable {name:?} at position {pos}")]
    UnknownVariable { name: String, pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((Token::Int(s.parse().expect("digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((Token::Ident(s), pos));
        } else if "+-*^/()".contains(c) {
            out.push((Token::Op(c), pos));
            i += 1;
        } else {
            return Err(ParseError::SyntaxError {
                pos,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    at: usize,
    end: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |&(_, p)| p)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = &acc + &self.term()?;
            } else if self.eat_op('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.eat_op('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if self.eat_op('^') {
            let pos = self.pos();
            let e = self.nat()?;
            let e: u32 = match u32::try_from(&e) {
                Ok(e) if (e as u64) <= MAX_EXPONENT => e,
                _ => {
                    return Err(ParseError::SyntaxError {
                        pos,
                        msg: "exponent too large".into(),
                    })
                }
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().cloned() {
            Some(Token::Int(v)) => {
                self.at += 1;
                Ok(v)
            }
            _ => self.error("expected a natural number"),
        }
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Token::Int(num)) => {
                self.at += 1;
                let mut den = BigInt::from(1);
                if self.eat_op('/') {
                    den = self.nat()?;
                    if den.is_zero() {
                        return Err(ParseError::SyntaxError {
                            pos,
                            msg: "zero denominator".into(),
                        });
                    }
                }
                let field = self.ring.field();
                let c = field
                    .from_rational(&BigRational::new(num, den))
                    .map_err(|e| ParseError::SyntaxError {
                        pos,
                        msg: e.to_string(),
                    })?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Token::Ident(name)) => {
                self.at += 1;
                match self.ring.index_of(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(ParseError::UnknownVariable { name, pos }),
                }
            }
            Some(Token::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            Some(Token::Op('-')) => {
                self.at += 1;
                Ok(-&self.factor()?)
            }
            Some(_) => self.error("unexpected token"),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses one polynomial in `ring`.
pub fn parse(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        at: 0,
        end: text.len(),
        ring,
    };
    let out = p.expr()?;
    if p.at != p.tokens.len() {
        return p.error("trailing input");
    }
    Ok(out)
}

/// Parses a `;`-separated list of polynomials. Empty entries are rejected.
pub fn parse_system(text: &str, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(';') {
        if piece.trim().is_empty() {
            // a single trailing separator is tolerated
            if offset + piece.len() == text.len() && !out.is_empty() {
                break;
            }
            return Err(ParseError::SyntaxError {
                pos: offset,
                msg: "empty polynomial".into(),
            });
        }
        let p = parse(piece, ring).map_err(|e| match e {
            ParseError::SyntaxError { pos, msg } => ParseError::SyntaxError {
                pos: pos + offset,
                msg,
            },
            ParseError::UnknownVariable { name, pos } => ParseError::UnknownVariable {
                name,
                pos: pos + offset,
            },
        })?;
        out.push(p);
        offset += piece.len() + 1;
    }
    Ok(out)
}
