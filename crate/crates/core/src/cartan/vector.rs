use super::{same_dim, AltTensor, PolyMultivector};
use crate::error::Result;
use crate::scalar::Polynomial;

/// Vector field `Σ Xⁱ ∂ᵢ` with polynomial components.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyVectorField {
    comps: Vec<Polynomial>,
}

impl PolyVectorField {
    pub fn new(comps: Vec<Polynomial>) -> Result<Self> {
        let n = comps.len();
        for c in &comps {
            same_dim(n, c.nvars())?;
        }
        Ok(PolyVectorField { comps })
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField { comps: vec![Polynomial::zero(n); n] }
    }

    /// Coordinate field `∂ᵢ`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.comps[i] = Polynomial::one(n);
        v
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.dim());
        for (i, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                let df = f.d(i);
                if !df.is_zero() {
                    out.add_mul(c, &df);
                }
            }
        }
        out
    }

    /// Lie bracket `[X, Y]ʲ = X(Yʲ) − Y(Xʲ)`.
    pub fn bracket(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        same_dim(self.dim(), other.dim())?;
        Ok(PolyVectorField {
            comps: (0..self.dim()).map(|j| &self.apply(&other.comps[j]) - &other.apply(&self.comps[j])).collect(),
        })
    }

    pub fn add(&self, o: &PolyVectorField) -> PolyVectorField {
        PolyVectorField { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &PolyVectorField) -> PolyVectorField {
        PolyVectorField { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> PolyVectorField {
        PolyVectorField { comps: self.comps.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, f: &Polynomial) -> PolyVectorField {
        PolyVectorField { comps: self.comps.iter().map(|a| a * f).collect() }
    }

    pub fn to_multivector(&self) -> PolyMultivector {
        let n = self.dim();
        let mut t = AltTensor::zero(n, 1, n);
        for (i, c) in self.comps.iter().enumerate() {
            t.add_term(1 << i, c);
        }
        PolyMultivector::from_tensor(t)
    }

    pub fn from_multivector(m: &PolyMultivector) -> PolyVectorField {
        assert_eq!(m.degree(), 1);
        let n = m.dim();
        PolyVectorField { comps: (0..n).map(|i| m.tensor().get(1 << i)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::super::Patch;

    #[test]
    fn brackets() {
        let p = Patch::standard(2);
        let dx = p.parse_vector_field("∂x").unwrap();
        let xdy = p.parse_vector_field("x*∂y").unwrap();
        assert_eq!(dx.bracket(&xdy).unwrap(), p.parse_vector_field("∂y").unwrap());
        let dy = p.parse_vector_field("∂y").unwrap();
        assert!(dx.bracket(&dy).unwrap().is_zero());

        let q = Patch::standard(4);
        let a = q.parse_vector_field("∂x1").unwrap();
        let b = q.parse_vector_field("∂x2 + x1*∂x3").unwrap();
        assert_eq!(a.bracket(&b).unwrap(), q.parse_vector_field("∂x3").unwrap());
    }
}
