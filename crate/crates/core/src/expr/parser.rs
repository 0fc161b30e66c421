//! Lexer and recursive-descent parser.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" unary)?            right-associative
//! atom  := NUMBER | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")"
//!        | "sum" "(" IDENT "=" expr ".." expr "," expr ")"
//! ```
//!
//! Unary minus sits below `^`, so `-2^2` is `-(2^2)`. A literal `p/q` with no
//! whitespace around the slash lexes as one rational NUMBER; every other `/`
//! is division.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use super::ast::{BinOp, Expr, ExprKind, Pos, SeqName};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {message} (found {found})")]
pub struct ParseError {
    pub pos: Pos,
    pub found: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eq,
    DotDot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number(v) => write!(f, "`{v}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::DotDot => write!(f, "`..`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn lex(source: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut column) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let pos = Pos { line, column };
        let ch = chars[i];
        let start = i;
        let tok = match ch {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
                continue;
            }
            '0'..='9' => {
                let digits = |i: &mut usize| {
                    let s = *i;
                    while *i < chars.len() && chars[*i].is_ascii_digit() {
                        *i += 1;
                    }
                    chars[s..*i].iter().collect::<String>()
                };
                let num = digits(&mut i);
                let num: BigInt = num.parse().expect("ascii digits");
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    let den: BigInt = digits(&mut i).parse().expect("ascii digits");
                    let value = Rational::new(num, den).map_err(|_| ParseError {
                        pos,
                        found: format!("`{}`", chars[start..i].iter().collect::<String>()),
                        message: "rational literal has a zero denominator".into(),
                    })?;
                    Tok::Number(value)
                } else {
                    Tok::Number(Rational::from_integer(num))
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..i].iter().collect())
            }
            '.' if chars.get(i + 1) == Some(&'.') => {
                i += 2;
                Tok::DotDot
            }
            _ => {
                i += 1;
                match ch {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    '=' => Tok::Eq,
                    _ => {
                        return Err(ParseError {
                            pos,
                            found: format!("`{ch}`"),
                            message: "unexpected character".into(),
                        })
                    }
                }
            }
        };
        column += i - start;
        tokens.push((tok, pos));
    }
    tokens.push((Tok::Eof, Pos { line, column }));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos(), found: self.peek().to_string(), message: message.into() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Pos, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let pos = self.bump().1;
            let rhs = self.term()?;
            lhs = Expr::at(ExprKind::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }, pos);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            let pos = self.bump().1;
            let rhs = self.unary()?;
            lhs = Expr::at(ExprKind::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }, pos);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            let pos = self.bump().1;
            let child = self.unary()?;
            return Ok(Expr::at(ExprKind::Neg(Box::new(child)), pos));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            let pos = self.bump().1;
            let exponent = self.unary()?;
            return Ok(Expr::at(
                ExprKind::Binary { op: BinOp::Pow, lhs: Box::new(base), rhs: Box::new(exponent) },
                pos,
            ));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Number(v) => {
                self.bump();
                Ok(Expr::at(ExprKind::Number(v), pos))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) if name == "sum" => {
                self.bump();
                self.expect(Tok::LParen, "`(` after `sum`")?;
                let var = match self.peek().clone() {
                    Tok::Ident(v) if v != "sum" => {
                        self.bump();
                        v
                    }
                    _ => return Err(self.error("expected summation index name")),
                };
                self.expect(Tok::Eq, "`=`")?;
                let lower = self.expr()?;
                self.expect(Tok::DotDot, "`..`")?;
                let upper = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let body = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::at(
                    ExprKind::Sum { var, lower: Box::new(lower), upper: Box::new(upper), body: Box::new(body) },
                    pos,
                ))
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Ok(Expr::at(ExprKind::Var(name), pos));
                }
                let Some(seq) = SeqName::from_ident(&name) else {
                    return Err(ParseError {
                        pos,
                        found: format!("`{name}`"),
                        message: "unknown function (expected F, L, P, Q, U or sum)".into(),
                    });
                };
                self.bump();
                let mut args = vec![self.expr()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.expr()?);
                }
                self.expect(Tok::RParen, "`,` or `)`")?;
                if args.len() != seq.arity() {
                    return Err(ParseError {
                        pos,
                        found: format!("{} argument(s)", args.len()),
                        message: format!("{} takes exactly {} argument(s)", seq.as_str(), seq.arity()),
                    });
                }
                Ok(Expr::at(ExprKind::Seq { name: seq, args }, pos))
            }
            _ => Err(self.error("expected a number, name, `(` or `-`")),
        }
    }
}

pub fn parse(source: &str) -> Result<Expr, ParseError> {
    let mut parser = Parser { tokens: lex(source)?, at: 0 };
    let expr = parser.expr()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}
