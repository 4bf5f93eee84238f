//! Text syntax for rational functions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```

use rug::{Integer, Rational};

use super::poly::MultiPoly;
use super::rat::RatFunc;
use crate::error::{Error, Result};

pub const DEFAULT_EXPONENT_LIMIT: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(Integer),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(s[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    limit: u32,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.offset();
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| Error::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let at = self.offset();
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return self.err("expected an integer exponent");
        };
        self.pos += 1;
        let e = match n.to_u32() {
            Some(e) if e <= self.limit => e as i32,
            _ => {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!("exponent exceeds the limit {}", self.limit),
                })
            }
        };
        base.pow(if neg { -e } else { e }).map_err(|_| Error::Parse {
            pos: at,
            msg: "negative power of zero".into(),
        })
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(RatFunc::constant(Rational::from(n)))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(RatFunc::var(&v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses with a custom bound on integer exponents.
pub fn parse_with_limit(s: &str, limit: u32) -> Result<RatFunc> {
    let toks = lex(s)?;
    let names: std::collections::BTreeSet<&str> = toks
        .iter()
        .filter_map(|(_, t)| match t {
            Tok::Ident(v) => Some(v.as_str()),
            _ => None,
        })
        .collect();
    if names.len() > super::MAX_VARS {
        return Err(Error::Parse { pos: 0, msg: format!("at most {} distinct variables are supported", super::MAX_VARS) });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.len(),
        limit,
    };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

pub fn parse(s: &str) -> Result<RatFunc> {
    parse_with_limit(s, DEFAULT_EXPONENT_LIMIT)
}

/// Parses an expression that must be a polynomial.
pub fn parse_poly(s: &str) -> Result<MultiPoly> {
    let f = parse(s)?;
    match f.den().constant_value() {
        Some(c) => Ok(f.num().scale(&Rational::from(c.recip_ref()))),
        None => Err(Error::Parse {
            pos: 0,
            msg: "expected a polynomial".into(),
        }),
    }
}

impl std::str::FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}
