//! Exact scalars: rationals, para-complex numbers and multivariate polynomials.

mod paracomplex;
pub mod parse;
mod polynomial;
pub mod random;
mod rational;

pub use paracomplex::{pc_mul, ParaComplexScalar};
pub use polynomial::{default_names, Monomial, Polynomial, MAX_VARS};
pub use rational::{ParseRationalError, Rational};

use crate::error::{Error, Result};
use parse::{eval_expr, parse_expr, ExprAlgebra};

#[derive(Clone)]
struct NamedPoly<'a> {
    names: &'a [String],
    p: Polynomial,
}

impl<'a> NamedPoly<'a> {
    fn wrap(&self, p: Polynomial) -> Self {
        NamedPoly { names: self.names, p }
    }
}

impl ExprAlgebra for NamedPoly<'_> {
    fn num(&self, q: &Rational) -> Self {
        self.wrap(Polynomial::constant(self.names.len(), q.clone()))
    }
    fn atom(&self, name: &str) -> std::result::Result<Self, String> {
        match self.names.iter().position(|n| n == name) {
            Some(i) => Ok(self.wrap(Polynomial::var(self.names.len(), i))),
            None => Err(format!("unknown variable {name:?}")),
        }
    }
    fn add(&self, o: &Self) -> Self {
        self.wrap(&self.p + &o.p)
    }
    fn sub(&self, o: &Self) -> Self {
        self.wrap(&self.p - &o.p)
    }
    fn neg(&self) -> Self {
        self.wrap(-&self.p)
    }
    fn mul(&self, o: &Self) -> Self {
        self.wrap(&self.p * &o.p)
    }
}

/// Parse a polynomial such as `x^2*y - 1/2*z + 3` over the named variables.
pub fn parse_polynomial(src: &str, names: &[String]) -> Result<Polynomial> {
    let e = parse_expr(src)?;
    let ctx = NamedPoly { names, p: Polynomial::zero(names.len()) };
    eval_expr(&ctx, &e).map(|n| n.p).map_err(|message| Error::Parse { input: src.to_string(), message })
}
