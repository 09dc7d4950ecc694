//! Small expression language shared by polynomial, form and section literals.
//!
//! Grammar: sums and differences of products; `*` multiplies, `^` followed by
//! an integer literal is a power, any other `^` is a product (so `dx^dy` reads
//! as a wedge). `/` divides by a numeric literal. `⊕` is accepted as `+`.

use super::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rational),
    Atom(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '∂'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '∂' || c == '\''
}

fn tokenize(src: &str) -> std::result::Result<Vec<Tok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' | '⊕' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' | '∧' => {
                out.push(Tok::Caret);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(chars[start..i].iter().collect()));
            }
            _ if is_ident_start(c) => {
                let start = i;
                i += 1;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(format!("unexpected character {c:?}")),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> std::result::Result<Expr, String> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let r = self.product()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(r));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let r = self.product()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(r));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> std::result::Result<Expr, String> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) | Some(Tok::Caret) => {
                    self.bump();
                    let r = self.unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(r));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Num(n)) => {
                            let d: Rational = n.parse().map_err(|_| format!("bad number {n}"))?;
                            if d.is_zero() {
                                return Err("division by zero".into());
                            }
                            lhs = Expr::Mul(Box::new(lhs), Box::new(Expr::Num(d.recip().unwrap())));
                        }
                        _ => return Err("only numeric literals may follow '/'".into()),
                    }
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<Expr, String> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> std::result::Result<Expr, String> {
        let mut base = self.primary()?;
        while let (Some(Tok::Caret), Some(Tok::Num(n))) = (self.peek(), self.peek2()) {
            let e: u32 = n.parse().map_err(|_| format!("bad exponent {n}"))?;
            self.bump();
            self.bump();
            base = Expr::Pow(Box::new(base), e);
        }
        Ok(base)
    }

    fn primary(&mut self) -> std::result::Result<Expr, String> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Expr::Num(n.parse().map_err(|_| format!("bad number {n}"))?)),
            Some(Tok::Ident(s)) => Ok(Expr::Atom(s)),
            Some(Tok::LParen) => {
                let e = self.sum()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err("missing ')'".into()),
                }
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let toks = tokenize(src).map_err(|m| Error::Parse { input: src.to_string(), message: m })?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum().map_err(|m| Error::Parse { input: src.to_string(), message: m })?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse { input: src.to_string(), message: "trailing input".into() });
    }
    Ok(e)
}

/// Target of expression evaluation.
pub trait ExprAlgebra: Sized + Clone {
    fn num(&self, q: &Rational) -> Self;
    fn atom(&self, name: &str) -> std::result::Result<Self, String>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

/// Evaluate `e` using `ctx` as the source of constants and atoms.
pub fn eval_expr<A: ExprAlgebra>(ctx: &A, e: &Expr) -> std::result::Result<A, String> {
    Ok(match e {
        Expr::Num(q) => ctx.num(q),
        Expr::Atom(s) => ctx.atom(s)?,
        Expr::Neg(a) => eval_expr(ctx, a)?.neg(),
        Expr::Add(a, b) => eval_expr(ctx, a)?.add(&eval_expr(ctx, b)?),
        Expr::Sub(a, b) => eval_expr(ctx, a)?.sub(&eval_expr(ctx, b)?),
        Expr::Mul(a, b) => eval_expr(ctx, a)?.mul(&eval_expr(ctx, b)?),
        Expr::Pow(a, k) => {
            let base = eval_expr(ctx, a)?;
            let mut acc = ctx.num(&Rational::one());
            for _ in 0..*k {
                acc = acc.mul(&base);
            }
            acc
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("1 + 2*x^2").unwrap();
        match e {
            Expr::Add(_, r) => assert!(matches!(*r, Expr::Mul(_, ref p) if matches!(**p, Expr::Pow(_, 2)))),
            _ => panic!("{e:?}"),
        }
    }

    #[test]
    fn wedge_caret_is_product() {
        let e = parse_expr("dx^dy").unwrap();
        assert!(matches!(e, Expr::Mul(..)));
    }

    #[test]
    fn errors() {
        assert!(parse_expr("x +").is_err());
        assert!(parse_expr("(x").is_err());
        assert!(parse_expr("x / y").is_err());
        assert!(parse_expr("x $ y").is_err());
    }
}
