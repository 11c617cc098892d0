use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UndeclaredVariable(String),
    NegativeExponent,
    DivisionByZero,
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} at byte {position}", describe(.kind))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::UndeclaredVariable(name) => format!("undeclared variable `{name}`"),
        ParseErrorKind::NegativeExponent => "negative exponent".to_string(),
        ParseErrorKind::DivisionByZero => "division by zero".to_string(),
        ParseErrorKind::Syntax(msg) => format!("syntax error: {msg}"),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Num(n), start));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(ParseError {
                    kind: ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                    position: start,
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a, S> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [S],
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError {
            kind: ParseErrorKind::Syntax(msg.to_string()),
            position: self.at(),
        })
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc += &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary (('*' unary) | ('/' number))*
    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.at();
                    match self.bump() {
                        Tok::Num(n) => {
                            if n.is_zero() {
                                return Err(ParseError {
                                    kind: ParseErrorKind::DivisionByZero,
                                    position: at,
                                });
                            }
                            acc = acc.scale(&Rational::new(1.into(), n));
                        }
                        _ => {
                            return Err(ParseError {
                                kind: ParseErrorKind::Syntax(
                                    "only division by an integer literal is supported".into(),
                                ),
                                position: at,
                            })
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    // unary := ('-' | '+') unary | power
    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    // power := atom ('^' number)?
    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.at();
        match self.bump() {
            Tok::Num(n) => {
                let e: u32 = n.try_into().map_err(|_| ParseError {
                    kind: ParseErrorKind::Syntax("exponent too large".into()),
                    position: at,
                })?;
                Ok(base.pow(e))
            }
            Tok::Minus => Err(ParseError {
                kind: ParseErrorKind::NegativeExponent,
                position: at,
            }),
            _ => Err(ParseError {
                kind: ParseErrorKind::Syntax("expected a non-negative integer exponent".into()),
                position: at,
            }),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.at();
        match self.bump() {
            Tok::Num(n) => Ok(Polynomial::constant(self.nvars(), Rational::from_integer(n))),
            Tok::Ident(name) => match self.vars.iter().position(|v| v.as_ref() == name) {
                Some(i) => Ok(Polynomial::var(self.nvars(), i)),
                None => Err(ParseError {
                    kind: ParseErrorKind::UndeclaredVariable(name),
                    position: at,
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(ParseError {
                kind: ParseErrorKind::Syntax("unexpected end of input".into()),
                position: at,
            }),
            _ => Err(ParseError {
                kind: ParseErrorKind::Syntax("expected a number, variable or `(`".into()),
                position: at,
            }),
        }
    }
}

/// Parses a polynomial over the declared variables.
///
/// Grammar: sums and differences of products of powers, with integer
/// literals, `p/q` rational literals (division by an integer literal),
/// `^` followed by a non-negative integer, and parentheses.
pub fn parse<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(out)
}
