use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Rational;

/// Para-complex number `re + j·im` with `j² = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct ParaComplexScalar {
    pub re: Rational,
    pub im: Rational,
}

impl ParaComplexScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        ParaComplexScalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        ParaComplexScalar { re, im: Rational::zero() }
    }

    pub fn j() -> Self {
        ParaComplexScalar { re: Rational::zero(), im: Rational::one() }
    }

    /// `(1 + j)/2`
    pub fn p_plus() -> Self {
        let h = Rational::new(1, 2);
        ParaComplexScalar { re: h.clone(), im: h }
    }

    /// `(1 − j)/2`
    pub fn p_minus() -> Self {
        ParaComplexScalar { re: Rational::new(1, 2), im: Rational::new(-1, 2) }
    }

    /// Conjugation `a + jb ↦ a − jb`.
    pub fn conj(&self) -> Self {
        ParaComplexScalar { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Ring isomorphism onto ℚ × ℚ: `a + jb ↦ (a + b, a − b)`.
    pub fn lightcone(&self) -> (Rational, Rational) {
        (&self.re + &self.im, &self.re - &self.im)
    }

    pub fn from_lightcone(u: &Rational, v: &Rational) -> Self {
        let h = Rational::new(1, 2);
        ParaComplexScalar { re: &(u + v) * &h, im: &(u - v) * &h }
    }
}

/// `(a₁+jb₁)(a₂+jb₂) = (a₁a₂+b₁b₂) + j(a₁b₂+a₂b₁)`
pub fn pc_mul(a: &ParaComplexScalar, b: &ParaComplexScalar) -> ParaComplexScalar {
    ParaComplexScalar { re: &(&a.re * &b.re) + &(&a.im * &b.im), im: &(&a.re * &b.im) + &(&a.im * &b.re) }
}

impl<'a> Mul<&'a ParaComplexScalar> for &'a ParaComplexScalar {
    type Output = ParaComplexScalar;
    fn mul(self, rhs: &ParaComplexScalar) -> ParaComplexScalar {
        pc_mul(self, rhs)
    }
}

impl<'a> Add<&'a ParaComplexScalar> for &'a ParaComplexScalar {
    type Output = ParaComplexScalar;
    fn add(self, rhs: &ParaComplexScalar) -> ParaComplexScalar {
        ParaComplexScalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a ParaComplexScalar> for &'a ParaComplexScalar {
    type Output = ParaComplexScalar;
    fn sub(self, rhs: &ParaComplexScalar) -> ParaComplexScalar {
        ParaComplexScalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Neg for &ParaComplexScalar {
    type Output = ParaComplexScalar;
    fn neg(self) -> ParaComplexScalar {
        ParaComplexScalar { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for ParaComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}j", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{} - {}j", self.re, -&self.im),
            (false, false) => write!(f, "{} + {}j", self.re, self.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(a: i64, b: i64) -> ParaComplexScalar {
        ParaComplexScalar::new(a.into(), b.into())
    }

    #[test]
    fn j_squares_to_one() {
        let j = ParaComplexScalar::j();
        assert_eq!(pc_mul(&j, &j), pc(1, 0));
    }

    #[test]
    fn idempotents() {
        let (p, m) = (ParaComplexScalar::p_plus(), ParaComplexScalar::p_minus());
        assert!(pc_mul(&p, &m).is_zero());
        assert_eq!(pc_mul(&p, &p), p);
        assert_eq!(pc_mul(&m, &m), m);
        assert_eq!(&p + &m, pc(1, 0));
    }

    #[test]
    fn product_via_lightcone() {
        let (a, b) = (pc(2, 1), pc(1, -1));
        let (a1, a2) = a.lightcone();
        let (b1, b2) = b.lightcone();
        let oracle = ParaComplexScalar::from_lightcone(&(&a1 * &b1), &(&a2 * &b2));
        assert_eq!(pc_mul(&a, &b), oracle);
        assert_eq!(pc_mul(&a, &b), pc(1, -1));
    }
}
