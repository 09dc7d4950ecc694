use serde::{Deserialize, Serialize};

use super::{unit, zeros, BilinearFormData, JacobiWitness, LieAlgebraData, QuadraticLieAlgebra, Vector};
use crate::cartan::AltTensor;
use crate::error::{Error, Result};
use crate::linalg::{inverse, Matrix};
use crate::scalar::{Polynomial, Rational};

/// A Lie algebra `𝔨` with a bracket on `𝔨*` (the transposed cobracket).
///
/// Elements of the double `𝔡 = 𝔨 ⊕ 𝔨*` are coordinate vectors of length
/// `2n`: first the `eᵢ`, then the dual basis `εⁱ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieBialgebraData {
    pub k: LieAlgebraData,
    pub dual: LieAlgebraData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BialgebraReport {
    pub k: Option<JacobiWitness>,
    pub dual: Option<JacobiWitness>,
    pub double: Option<JacobiWitness>,
}

impl BialgebraReport {
    pub fn holds(&self) -> bool {
        self.k.is_none() && self.dual.is_none() && self.double.is_none()
    }
}

/// `ad*_X η` with `⟨ad*_X η, Z⟩ = −η([X,Z])`.
fn coad(alg: &LieAlgebraData, x: &[Rational], eta: &[Rational]) -> Vector {
    let n = alg.dim();
    let mut out = zeros(n);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (m, o) in out.iter_mut().enumerate() {
            let c = &alg.constants()[i][m];
            for (k, ek) in eta.iter().enumerate() {
                if !ek.is_zero() && !c[k].is_zero() {
                    *o -= &(&(xi * ek) * &c[k]);
                }
            }
        }
    }
    out
}

impl LieBialgebraData {
    pub fn new(k: LieAlgebraData, dual: LieAlgebraData) -> Result<Self> {
        if k.dim() != dual.dim() {
            return Err(Error::Shape(format!("dim 𝔨 = {} but dim 𝔨* = {}", k.dim(), dual.dim())));
        }
        Ok(LieBialgebraData { k, dual })
    }

    /// `𝔨` with the zero cobracket.
    pub fn trivial(k: LieAlgebraData) -> Self {
        let n = k.dim();
        LieBialgebraData { k, dual: LieAlgebraData::abelian(n) }
    }

    pub fn dim(&self) -> usize {
        self.k.dim()
    }

    /// `[X⊕ξ, Y⊕η] = ([X,Y] + ad*_ξY − ad*_ηX) ⊕ ([ξ,η] + ad*_Xη − ad*_Yξ)`.
    pub fn double_bracket(&self, a: &[Rational], b: &[Rational]) -> Vector {
        let n = self.dim();
        let (x, xi) = a.split_at(n);
        let (y, eta) = b.split_at(n);
        let mut lo = self.k.bracket(x, y);
        for (s, (p, q)) in lo.iter_mut().zip(coad(&self.dual, xi, y).iter().zip(coad(&self.dual, eta, x))) {
            *s += p;
            *s -= &q;
        }
        let mut hi = self.dual.bracket(xi, eta);
        for (s, (p, q)) in hi.iter_mut().zip(coad(&self.k, x, eta).iter().zip(coad(&self.k, y, xi))) {
            *s += p;
            *s -= &q;
        }
        lo.extend(hi);
        lo
    }

    pub fn double_algebra(&self) -> LieAlgebraData {
        let m = 2 * self.dim();
        let c = (0..m).map(|i| (0..m).map(|j| self.double_bracket(&unit(m, i), &unit(m, j))).collect()).collect();
        LieAlgebraData::new(c).expect("double bracket is antisymmetric")
    }

    /// `⟨X⊕ξ, Y⊕η⟩ = ξ(Y) + η(X)`.
    pub fn canonical_pairing(&self) -> BilinearFormData {
        let n = self.dim();
        let mut m = vec![zeros(2 * n); 2 * n];
        for i in 0..n {
            m[i][n + i] = Rational::one();
            m[n + i][i] = Rational::one();
        }
        BilinearFormData { m }
    }

    pub fn double(&self) -> QuadraticLieAlgebra {
        QuadraticLieAlgebra { algebra: self.double_algebra(), pairing: self.canonical_pairing() }
    }

    pub fn bialgebra_check(&self) -> BialgebraReport {
        BialgebraReport {
            k: self.k.jacobi_check(),
            dual: self.dual.jacobi_check(),
            double: self.double_algebra().jacobi_check(),
        }
    }

    /// `Λ = ½ Σ eᵢ∧εⁱ`.
    pub fn r_matrix(&self) -> RMatrix {
        let n = self.dim();
        let id: Matrix<Rational> = (0..n).map(|i| unit(n, i)).collect();
        self.r_matrix_in_basis(&id).unwrap()
    }

    /// `Λ` built from the basis `e′ᵢ = Σⱼ pⱼᵢ eⱼ` and its dual basis,
    /// expressed in the original coordinates.
    pub fn r_matrix_in_basis(&self, p: &Matrix<Rational>) -> Result<RMatrix> {
        let n = self.dim();
        if p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("basis change must be {n}×{n}")));
        }
        let pinv = inverse(p).ok_or_else(|| Error::Shape("basis change is singular".into()))?;
        let c = |q: Rational| Polynomial::constant(0, q);
        let mut t = AltTensor::zero(2 * n, 2, 0);
        let half = Rational::new(1, 2);
        for i in 0..n {
            let mut e = AltTensor::zero(2 * n, 1, 0);
            let mut eps = AltTensor::zero(2 * n, 1, 0);
            for j in 0..n {
                e.add_term(1 << j, &c(p[j][i].clone()));
                eps.add_term(1 << (n + j), &c(pinv[i][j].clone()));
            }
            t = t.add(&e.wedge(&eps));
        }
        Ok(RMatrix { tensor: t.scale(&c(half)) })
    }
}

/// Constant bivector on `𝔡`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    tensor: AltTensor,
}

impl RMatrix {
    pub fn tensor(&self) -> &AltTensor {
        &self.tensor
    }

    /// Coefficient of `b_a ∧ b_b` for `a < b`.
    pub fn component(&self, a: usize, b: usize) -> Rational {
        self.tensor.component(&[a, b]).constant_value().unwrap_or_else(Rational::zero)
    }

    /// `ι_μ Λ` for a covector `μ` given in the coordinates dual to the basis
    /// of `𝔡`, using `ι_μ(u∧v) = μ(u)v − μ(v)u`.
    pub fn contract(&self, mu: &[Rational]) -> Vector {
        let v: Vec<Polynomial> = mu.iter().map(|q| Polynomial::constant(0, q.clone())).collect();
        let r = self.tensor.contract(&v);
        (0..mu.len()).map(|a| r.get(1 << a).constant_value().unwrap_or_else(Rational::zero)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn abelian_double_is_abelian() {
        let bi = LieBialgebraData::trivial(LieAlgebraData::abelian(2));
        for i in 0..4 {
            for j in 0..4 {
                assert!(bi.double_bracket(&unit(4, i), &unit(4, j)).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn b2_double_values() {
        let bi = LieBialgebraData::trivial(LieAlgebraData::b2());
        // basis order e1, e2, ε¹, ε²
        assert_eq!(bi.double_bracket(&unit(4, 0), &unit(4, 3)), vec![q(0), q(0), q(0), q(-1)]);
        assert_eq!(bi.double_bracket(&unit(4, 1), &unit(4, 3)), vec![q(0), q(0), q(1), q(0)]);
        assert!(bi.bialgebra_check().holds());
        assert!(bi.double().ad_invariance_check().is_none());
    }

    #[test]
    fn su2_double_and_failing_cobracket() {
        let bi = LieBialgebraData::trivial(LieAlgebraData::su2());
        assert!(bi.bialgebra_check().holds());
        assert!(bi.double().ad_invariance_check().is_none());
        let dual = LieAlgebraData::from_brackets(3, &[(0, 1, vec![q(1), q(0), q(0)])]).unwrap();
        let r = LieBialgebraData::new(LieAlgebraData::su2(), dual).unwrap().bialgebra_check();
        assert!(r.k.is_none() && r.dual.is_none());
        assert!(r.double.is_some());
    }

    #[test]
    fn every_b2_cobracket_is_compatible() {
        for (a, b) in [(1, 0), (0, 1), (2, -3)] {
            let dual = LieAlgebraData::from_brackets(2, &[(0, 1, vec![q(a), q(b)])]).unwrap();
            let bi = LieBialgebraData::new(LieAlgebraData::b2(), dual).unwrap();
            assert!(bi.bialgebra_check().holds());
            assert!(bi.double().ad_invariance_check().is_none());
        }
    }

    #[test]
    fn r_matrix_examples() {
        let bi = LieBialgebraData::trivial(LieAlgebraData::abelian(1));
        let r = bi.r_matrix();
        assert_eq!(r.component(0, 1), Rational::new(1, 2));
        // covector dual to ε¹
        assert_eq!(r.contract(&[q(0), q(1)]), vec![Rational::new(-1, 2), q(0)]);
        assert_eq!(r.contract(&[q(1), q(0)]), vec![q(0), Rational::new(1, 2)]);

        let bi = LieBialgebraData::trivial(LieAlgebraData::b2());
        let p = vec![vec![q(2), q(0)], vec![q(0), q(1)]];
        assert_eq!(bi.r_matrix_in_basis(&p).unwrap(), bi.r_matrix());
        let p = vec![vec![q(1), q(3)], vec![q(-1), q(2)]];
        assert_eq!(bi.r_matrix_in_basis(&p).unwrap(), bi.r_matrix());
    }
}
