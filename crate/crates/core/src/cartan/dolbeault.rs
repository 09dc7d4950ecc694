use super::{EigenFrame, PolyForm};
use crate::error::{Error, Result};
use crate::scalar::{Polynomial, Rational};

/// The operators `∂₊`, `∂₋` applied to a form, plus the part of `dα` that
/// falls outside the `(p+1,q)` and `(p,q+1)` types. The leak vanishes when
/// both eigendistributions are involutive.
#[derive(Clone, Debug, PartialEq)]
pub struct DelPlusMinus {
    pub plus: PolyForm,
    pub minus: PolyForm,
    pub leak: PolyForm,
}

/// `∂±` computed per type component: `∂₊` is the `(p+1,q)` projection of `d`,
/// `∂₋` the `(p,q+1)` projection.
pub fn del_plus_minus(alpha: &PolyForm, j: &EigenFrame) -> Result<DelPlusMinus> {
    let n = alpha.dim();
    let k = alpha.degree();
    let mut plus = PolyForm::zero(n, k + 1);
    let mut minus = PolyForm::zero(n, k + 1);
    let mut leak = PolyForm::zero(n, k + 1);
    for ((p, q), comp) in j.type_decompose(alpha)?.components {
        for ((p2, q2), piece) in j.type_decompose(&comp.d())?.components {
            if (p2, q2) == (p + 1, q) {
                plus = plus.add(&piece)?;
            } else if (p2, q2) == (p, q + 1) {
                minus = minus.add(&piece)?;
            } else {
                leak = leak.add(&piece)?;
            }
        }
    }
    Ok(DelPlusMinus { plus, minus, leak })
}

/// Para-Cauchy–Riemann test for `f = p₊f₁ + p₋f₂`: `∂₋f₁ = 0` and `∂₊f₂ = 0`.
pub fn para_holomorphic_check(f1: &Polynomial, f2: &Polynomial, j: &EigenFrame) -> Result<bool> {
    let a = del_plus_minus(&PolyForm::function(f1.clone()), j)?;
    let b = del_plus_minus(&PolyForm::function(f2.clone()), j)?;
    Ok(a.minus.is_zero() && b.plus.is_zero())
}

/// Form with para-complex coefficients, stored as `re + j·im`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParaComplexForm {
    pub re: PolyForm,
    pub im: PolyForm,
}

impl ParaComplexForm {
    pub fn real(re: PolyForm) -> Self {
        let im = PolyForm::zero(re.dim(), re.degree());
        ParaComplexForm { re, im }
    }

    pub fn add(&self, o: &ParaComplexForm) -> Result<ParaComplexForm> {
        Ok(ParaComplexForm { re: self.re.add(&o.re)?, im: self.im.add(&o.im)? })
    }

    /// Multiply by `p₊ = (1+j)/2`.
    pub fn times_p_plus(&self) -> Result<ParaComplexForm> {
        let s = self.re.add(&self.im)?.scale(&half(self.re.dim()));
        Ok(ParaComplexForm { re: s.clone(), im: s })
    }

    /// Multiply by `p₋ = (1−j)/2`.
    pub fn times_p_minus(&self) -> Result<ParaComplexForm> {
        let s = self.re.sub(&self.im)?.scale(&half(self.re.dim()));
        Ok(ParaComplexForm { re: s.clone(), im: s.neg() })
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

fn half(n: usize) -> Polynomial {
    Polynomial::constant(n, Rational::new(1, 2))
}

/// The raw combination `p₊η + p₋η′` without any type requirement.
pub fn phi_combine(eta: &PolyForm, eta2: &PolyForm) -> Result<ParaComplexForm> {
    let h = half(eta.dim());
    Ok(ParaComplexForm { re: eta.add(eta2)?.scale(&h), im: eta.sub(eta2)?.scale(&h) })
}

/// `φ(η, η′) = p₊η + p₋η′` for `η` of type `(p,q)` and `η′` of type `(q,p)`.
/// Zero forms are accepted in any slot.
pub fn phi_isomorphism(eta: &PolyForm, eta2: &PolyForm, j: &EigenFrame) -> Result<ParaComplexForm> {
    let t1 = j.type_decompose(eta)?;
    let t2 = j.type_decompose(eta2)?;
    let ty1 = if eta.is_zero() { None } else { Some(t1.pure_type().ok_or_else(|| mixed("first"))?) };
    let ty2 = if eta2.is_zero() { None } else { Some(t2.pure_type().ok_or_else(|| mixed("second"))?) };
    if let (Some((p, q)), Some((p2, q2))) = (ty1, ty2) {
        if (p2, q2) != (q, p) {
            return Err(Error::TypeMismatch(format!(
                "arguments have types ({p},{q}) and ({p2},{q2}); expected ({p},{q}) and ({q},{p})"
            )));
        }
    }
    phi_combine(eta, eta2)
}

fn mixed(which: &str) -> Error {
    Error::TypeMismatch(format!("{which} argument is not of homogeneous type"))
}

/// `φ⁻¹(ω) = (Re ω + Im ω, Re ω − Im ω)`.
pub fn phi_inverse(w: &ParaComplexForm) -> Result<(PolyForm, PolyForm)> {
    Ok((w.re.add(&w.im)?, w.re.sub(&w.im)?))
}

/// `∂̄ω = p₊∂₋ω + p₋∂₊ω`; `∂±` act on real and imaginary parts separately.
pub fn dolbeault_bar(w: &ParaComplexForm, j: &EigenFrame) -> Result<ParaComplexForm> {
    let re = del_plus_minus(&w.re, j)?;
    let im = del_plus_minus(&w.im, j)?;
    let dm = ParaComplexForm { re: re.minus, im: im.minus };
    let dp = ParaComplexForm { re: re.plus, im: im.plus };
    dm.times_p_plus()?.add(&dp.times_p_minus()?)
}
