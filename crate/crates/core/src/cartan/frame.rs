use std::collections::BTreeMap;

use super::tensor::{indices, AltTensor};
use super::{same_dim, PolyForm, PolyVectorField};
use crate::error::{Error, Result};
use crate::linalg::{determinant, inverse, Matrix};
use crate::scalar::Polynomial;

/// Frame of `TM` adapted to a para-complex structure: the first half spans
/// `T⁺M`, the second half spans `T⁻M`. The frame matrix must have a nonzero
/// constant determinant so that the dual coframe is polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenFrame {
    frame: Vec<PolyVectorField>,
    /// Row `a` holds the coordinate components of the coframe `θᵃ`.
    coframe: Matrix<Polynomial>,
}

/// Result of an involutivity check for one eigendistribution.
#[derive(Clone, Debug, PartialEq)]
pub struct Involutivity {
    pub holds: bool,
    /// First frame pair whose bracket leaves the distribution, with the bracket.
    pub witness: Option<(usize, usize, PolyVectorField)>,
}

/// Type components of a form, keyed by `(p, q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeDecomposition {
    pub components: BTreeMap<(usize, usize), PolyForm>,
}

impl TypeDecomposition {
    pub fn get(&self, p: usize, q: usize) -> Option<&PolyForm> {
        self.components.get(&(p, q))
    }

    /// The single type if the form is homogeneous, `None` for zero or mixed.
    pub fn pure_type(&self) -> Option<(usize, usize)> {
        if self.components.len() == 1 {
            self.components.keys().next().copied()
        } else {
            None
        }
    }
}

impl EigenFrame {
    /// `vectors[..n/2]` span `T⁺`, `vectors[n/2..]` span `T⁻`.
    pub fn new(vectors: Vec<PolyVectorField>) -> Result<Self> {
        let n = vectors.len();
        if n == 0 || n % 2 != 0 {
            return Err(Error::InvalidFrame(format!("need an even number of vectors, got {n}")));
        }
        for v in &vectors {
            same_dim(n, v.dim())?;
        }
        // Column a of the frame matrix is the vector F_a.
        let m: Matrix<Polynomial> = (0..n).map(|i| (0..n).map(|a| vectors[a].component(i).clone()).collect()).collect();
        let det = determinant(&m).expect("square");
        if det.is_zero() || !det.is_constant() {
            return Err(Error::FrameNotUnimodular(det.to_string()));
        }
        let coframe = inverse(&m).ok_or_else(|| Error::FrameNotUnimodular(det.to_string()))?;
        Ok(EigenFrame { frame: vectors, coframe })
    }

    pub fn from_split(plus: Vec<PolyVectorField>, minus: Vec<PolyVectorField>) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(Error::InvalidFrame(format!(
                "eigenframe blocks have sizes {} and {}",
                plus.len(),
                minus.len()
            )));
        }
        let mut v = plus;
        v.extend(minus);
        Self::new(v)
    }

    /// Coordinate split: `T⁺ = span{∂₁..∂_{n/2}}`, `T⁻ = span{∂_{n/2+1}..∂ₙ}`.
    pub fn coordinate(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| PolyVectorField::coordinate(n, i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    pub fn half(&self) -> usize {
        self.frame.len() / 2
    }

    pub fn vectors(&self) -> &[PolyVectorField] {
        &self.frame
    }

    pub fn plus(&self) -> &[PolyVectorField] {
        &self.frame[..self.half()]
    }

    pub fn minus(&self) -> &[PolyVectorField] {
        &self.frame[self.half()..]
    }

    pub fn is_plus_index(&self, a: usize) -> bool {
        a < self.half()
    }

    /// Dual coframe element `θᵃ`.
    pub fn coframe(&self, a: usize) -> PolyForm {
        PolyForm::one_form(&self.coframe[a])
    }

    /// Frame coefficients `θᵃ(X)`.
    pub fn coefficients(&self, x: &PolyVectorField) -> Vec<Polynomial> {
        let n = self.dim();
        (0..n)
            .map(|a| {
                let mut acc = Polynomial::zero(n);
                for i in 0..n {
                    if !self.coframe[a][i].is_zero() && !x.component(i).is_zero() {
                        acc.add_mul(&self.coframe[a][i], x.component(i));
                    }
                }
                acc
            })
            .collect()
    }

    fn combine(&self, coeffs: &[Polynomial], keep: impl Fn(usize) -> Option<i64>) -> PolyVectorField {
        let n = self.dim();
        let mut out = PolyVectorField::zero(n);
        for (a, c) in coeffs.iter().enumerate() {
            if let Some(s) = keep(a) {
                if !c.is_zero() {
                    out = out.add(&self.frame[a].scale(&c.scale(&s.into())));
                }
            }
        }
        out
    }

    /// `J X`: `+1` on `T⁺`, `−1` on `T⁻`.
    pub fn apply_j(&self, x: &PolyVectorField) -> PolyVectorField {
        let c = self.coefficients(x);
        let h = self.half();
        self.combine(&c, |a| Some(if a < h { 1 } else { -1 }))
    }

    pub fn project_plus(&self, x: &PolyVectorField) -> PolyVectorField {
        let c = self.coefficients(x);
        let h = self.half();
        self.combine(&c, |a| (a < h).then_some(1))
    }

    pub fn project_minus(&self, x: &PolyVectorField) -> PolyVectorField {
        let c = self.coefficients(x);
        let h = self.half();
        self.combine(&c, |a| (a >= h).then_some(1))
    }

    fn involutive(&self, range: std::ops::Range<usize>) -> Result<Involutivity> {
        for a in range.clone() {
            for b in a + 1..range.end {
                let br = self.frame[a].bracket(&self.frame[b])?;
                let c = self.coefficients(&br);
                if (0..self.dim()).any(|k| !range.contains(&k) && !c[k].is_zero()) {
                    return Ok(Involutivity { holds: false, witness: Some((a, b, br)) });
                }
            }
        }
        Ok(Involutivity { holds: true, witness: None })
    }

    pub fn plus_involutive(&self) -> Result<Involutivity> {
        self.involutive(0..self.half())
    }

    pub fn minus_involutive(&self) -> Result<Involutivity> {
        self.involutive(self.half()..self.dim())
    }

    /// Nijenhuis tensor `N(X,Y) = ¼([X,Y] − J[X,JY] − J[JX,Y] + [JX,JY])`.
    pub fn nijenhuis(&self, x: &PolyVectorField, y: &PolyVectorField) -> Result<PolyVectorField> {
        let (jx, jy) = (self.apply_j(x), self.apply_j(y));
        let t1 = x.bracket(y)?;
        let t2 = self.apply_j(&x.bracket(&jy)?);
        let t3 = self.apply_j(&jx.bracket(y)?);
        let t4 = jx.bracket(&jy)?;
        let quarter = Polynomial::constant(self.dim(), crate::scalar::Rational::new(1, 4));
        Ok(t1.sub(&t2).sub(&t3).add(&t4).scale(&quarter))
    }

    /// `α = Σ_A α(F_A) θ^A`, grouped by the type `(#plus, #minus)` of `A`.
    pub fn type_decompose(&self, alpha: &PolyForm) -> Result<TypeDecomposition> {
        same_dim(self.dim(), alpha.dim())?;
        let n = self.dim();
        let k = alpha.degree();
        let mut components: BTreeMap<(usize, usize), PolyForm> = BTreeMap::new();
        if alpha.is_zero() {
            return Ok(TypeDecomposition { components });
        }
        let plus_mask: u32 = (1u32 << self.half()) - 1;
        for mask in 0u32..(1u32 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let args: Vec<PolyVectorField> = indices(mask).map(|a| self.frame[a].clone()).collect();
            let coef = alpha.evaluate(&args)?;
            if coef.is_zero() {
                continue;
            }
            let mut basis = PolyForm::function(Polynomial::one(n));
            for a in indices(mask) {
                basis = basis.wedge(&self.coframe(a))?;
            }
            let p = (mask & plus_mask).count_ones() as usize;
            let entry = components.entry((p, k - p)).or_insert_with(|| PolyForm::zero(n, k));
            *entry = entry.add(&basis.scale(&coef))?;
        }
        components.retain(|_, v| !v.is_zero());
        Ok(TypeDecomposition { components })
    }

    /// Frame components `α(F_A)` on sorted index sets.
    pub fn frame_components(&self, alpha: &PolyForm) -> Result<AltTensor> {
        let n = self.dim();
        let k = alpha.degree();
        let mut t = AltTensor::zero(n, k, n);
        for mask in 0u32..(1u32 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let args: Vec<PolyVectorField> = indices(mask).map(|a| self.frame[a].clone()).collect();
            t.add_term(mask, &alpha.evaluate(&args)?);
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::super::Patch;
    use super::*;

    #[test]
    fn rejects_non_unit_determinant() {
        let p = Patch::standard(2);
        let v = vec![p.parse_vector_field("x*∂x").unwrap(), p.parse_vector_field("∂y").unwrap()];
        assert!(matches!(EigenFrame::new(v), Err(Error::FrameNotUnimodular(_))));
        let v = vec![p.parse_vector_field("∂x").unwrap(), p.parse_vector_field("∂x").unwrap()];
        assert!(matches!(EigenFrame::new(v), Err(Error::FrameNotUnimodular(_))));
    }

    #[test]
    fn coordinate_types() {
        let p = Patch::standard(2);
        let j = EigenFrame::coordinate(2).unwrap();
        let dx = p.parse_form("dx").unwrap();
        assert_eq!(j.type_decompose(&dx).unwrap().pure_type(), Some((1, 0)));
        let dxdy = p.parse_form("dx^dy").unwrap();
        assert_eq!(j.type_decompose(&dxdy).unwrap().pure_type(), Some((1, 1)));
    }

    #[test]
    fn contraction_drops_a_plus_leg() {
        let p = Patch::standard(4);
        let j = EigenFrame::coordinate(4).unwrap();
        let w = p.parse_form("dx1^dx3 + x2*dx2^dx4 - dx1^dx4").unwrap();
        assert_eq!(j.type_decompose(&w).unwrap().pure_type(), Some((1, 1)));
        let x = p.parse_vector_field("∂x1 + x3*∂x2").unwrap();
        let c = w.interior(&x).unwrap();
        assert_eq!(j.type_decompose(&c).unwrap().pure_type(), Some((0, 1)));
    }

    #[test]
    fn reexpansion_reproduces_form() {
        let p = Patch::standard(4);
        let j = EigenFrame::from_split(
            vec![p.parse_vector_field("∂x1").unwrap(), p.parse_vector_field("∂x2 + x1*∂x3").unwrap()],
            vec![p.parse_vector_field("∂x3").unwrap(), p.parse_vector_field("∂x4").unwrap()],
        )
        .unwrap();
        let a = p.parse_form("x1*dx2^dx3 + dx1^dx4 - x2^2*dx3^dx4").unwrap();
        let dec = j.type_decompose(&a).unwrap();
        let mut sum = PolyForm::zero(4, 2);
        for f in dec.components.values() {
            sum = sum.add(f).unwrap();
        }
        assert_eq!(sum, a);
    }

    #[test]
    fn nijenhuis_witness() {
        let p = Patch::standard(4);
        let e1 = p.parse_vector_field("∂x1").unwrap();
        let e2 = p.parse_vector_field("∂x2 + x1*∂x3").unwrap();
        let j = EigenFrame::from_split(
            vec![e1.clone(), e2.clone()],
            vec![p.parse_vector_field("∂x3").unwrap(), p.parse_vector_field("∂x4").unwrap()],
        )
        .unwrap();
        assert_eq!(j.nijenhuis(&e1, &e2).unwrap(), p.parse_vector_field("∂x3").unwrap());
        let inv = j.plus_involutive().unwrap();
        assert!(!inv.holds);
        assert!(j.minus_involutive().unwrap().holds);
        let flat = EigenFrame::coordinate(2).unwrap();
        let q = Patch::standard(2);
        let (a, b) = (q.parse_vector_field("x*∂y").unwrap(), q.parse_vector_field("y^2*∂x").unwrap());
        assert!(flat.nijenhuis(&a, &b).unwrap().is_zero());
    }
}
