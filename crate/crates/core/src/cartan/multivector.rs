use super::{same_dim, AltTensor, PolyForm};
use crate::error::{Error, Result};
use crate::scalar::Polynomial;

/// Multivector field of fixed degree with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMultivector(AltTensor);

impl PolyMultivector {
    pub fn from_tensor(t: AltTensor) -> Self {
        assert_eq!(t.rank(), t.nvars(), "multivector slots must match patch dimension");
        PolyMultivector(t)
    }

    pub fn zero(n: usize, degree: usize) -> Self {
        PolyMultivector(AltTensor::zero(n, degree, n))
    }

    pub fn monomial(idx: &[usize], f: Polynomial) -> Self {
        let n = f.nvars();
        PolyMultivector(AltTensor::monomial(n, idx, f))
    }

    pub fn tensor(&self) -> &AltTensor {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rank()
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, o: &PolyMultivector) -> Result<PolyMultivector> {
        same_dim(self.dim(), o.dim())?;
        if self.degree() != o.degree() {
            return Err(Error::TypeMismatch("multivector degrees differ".into()));
        }
        Ok(PolyMultivector(self.0.add(&o.0)))
    }

    pub fn sub(&self, o: &PolyMultivector) -> Result<PolyMultivector> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> PolyMultivector {
        PolyMultivector(self.0.neg())
    }

    pub fn scale(&self, f: &Polynomial) -> PolyMultivector {
        PolyMultivector(self.0.scale(f))
    }

    pub fn wedge(&self, o: &PolyMultivector) -> Result<PolyMultivector> {
        same_dim(self.dim(), o.dim())?;
        Ok(PolyMultivector(self.0.wedge(&o.0)))
    }

    /// Left contraction with a one-form `μ`: `ι_μ(∂ᵢ∧P) = μᵢP − ∂ᵢ∧ι_μP`.
    pub fn contract(&self, mu: &PolyForm) -> Result<PolyMultivector> {
        same_dim(self.dim(), mu.dim())?;
        if mu.degree() != 1 {
            return Err(Error::TypeMismatch("contraction needs a one-form".into()));
        }
        if self.degree() == 0 {
            return Err(Error::DegreeZero);
        }
        Ok(PolyMultivector(self.0.contract(&mu.one_form_components())))
    }

    /// `P(μ₁,…,μ_k) = ι_{μ_k}⋯ι_{μ₁}P`.
    pub fn evaluate(&self, args: &[PolyForm]) -> Result<Polynomial> {
        if args.len() != self.degree() {
            return Err(Error::Shape(format!("{} arguments for a degree-{} multivector", args.len(), self.degree())));
        }
        let mut cur = self.clone();
        for mu in args {
            cur = cur.contract(mu)?;
        }
        Ok(cur.0.scalar_value())
    }

    fn partial(&self, k: usize) -> AltTensor {
        self.0.map_coeffs(|c| c.d(k))
    }

    /// Schouten bracket
    /// `[P,Q] = Σₖ ι_{dxᵏ}P ∧ ∂ₖQ − (−1)^{(p−1)(q−1)} ι_{dxᵏ}Q ∧ ∂ₖP`.
    ///
    /// With this sign, `[X,Y]` is the Lie bracket, `[X,f] = X(f)`, and for a
    /// bivector `[π,π](df,dg,dh) = 2({{f,g},h} + c.p.)` where `{f,g} = π(df,dg)`.
    pub fn schouten(&self, o: &PolyMultivector) -> Result<PolyMultivector> {
        same_dim(self.dim(), o.dim())?;
        let n = self.dim();
        let (p, q) = (self.degree(), o.degree());
        if p + q == 0 {
            return Ok(PolyMultivector::zero(n, 0));
        }
        let mut out = AltTensor::zero(n, p + q - 1, n);
        let sign_neg = ((p as i64 - 1) * (q as i64 - 1)) % 2 == 0;
        for k in 0..n {
            if p > 0 {
                let ip = self.0.contract_basis(k);
                if !ip.is_zero() {
                    let dq = o.partial(k);
                    if !dq.is_zero() {
                        out = out.add(&ip.wedge(&dq));
                    }
                }
            }
            if q > 0 {
                let iq = o.0.contract_basis(k);
                if !iq.is_zero() {
                    let dp = self.partial(k);
                    if !dp.is_zero() {
                        let t = iq.wedge(&dp);
                        out = if sign_neg { out.sub(&t) } else { out.add(&t) };
                    }
                }
            }
        }
        Ok(PolyMultivector(out))
    }
}

#[cfg(test)]
mod tests {
    use super::super::Patch;
    use super::*;

    #[test]
    fn schouten_examples() {
        let p = Patch::standard(3);
        let c = p.parse_multivector("∂x^∂y").unwrap();
        assert!(c.schouten(&c).unwrap().is_zero());
        let lin = p.parse_multivector("x*∂y^∂z").unwrap();
        assert!(lin.schouten(&lin).unwrap().is_zero());
        let pi = p.parse_multivector("∂x^∂y + x*∂x^∂z").unwrap();
        assert_eq!(pi.schouten(&pi).unwrap(), p.parse_multivector("-2*∂x^∂y^∂z").unwrap());
    }

    #[test]
    fn vector_field_rules() {
        let p = Patch::standard(2);
        let x = p.parse_multivector("y*∂x").unwrap();
        let y = p.parse_multivector("x^2*∂y").unwrap();
        let lie = p.parse_vector_field("y*∂x").unwrap().bracket(&p.parse_vector_field("x^2*∂y").unwrap()).unwrap();
        assert_eq!(x.schouten(&y).unwrap(), lie.to_multivector());
        let f = PolyMultivector::from_tensor(AltTensor::scalar(2, p.parse_polynomial("x*y").unwrap()));
        let xf = x.schouten(&f).unwrap();
        assert_eq!(xf.tensor().scalar_value(), p.parse_polynomial("y^2").unwrap());
    }
}
