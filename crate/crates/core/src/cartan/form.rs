use super::tensor::{indices, rank_below};
use super::{same_dim, AltTensor, PolyVectorField};
use crate::error::{Error, Result};
use crate::scalar::Polynomial;

/// Differential form of fixed degree with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyForm(AltTensor);

impl PolyForm {
    pub fn from_tensor(t: AltTensor) -> Self {
        assert_eq!(t.rank(), t.nvars(), "form slots must match patch dimension");
        PolyForm(t)
    }

    pub fn zero(n: usize, degree: usize) -> Self {
        PolyForm(AltTensor::zero(n, degree, n))
    }

    pub fn function(f: Polynomial) -> Self {
        let n = f.nvars();
        PolyForm(AltTensor::scalar(n, f))
    }

    /// `dxᵢ`.
    pub fn dx(n: usize, i: usize) -> Self {
        PolyForm(AltTensor::monomial(n, &[i], Polynomial::one(n)))
    }

    /// `f dx_{i1} ∧ … ∧ dx_{ik}`.
    pub fn monomial(idx: &[usize], f: Polynomial) -> Self {
        let n = f.nvars();
        PolyForm(AltTensor::monomial(n, idx, f))
    }

    /// One-form `Σ ξᵢ dxᵢ`.
    pub fn one_form(comps: &[Polynomial]) -> Self {
        let n = comps.len();
        let mut t = AltTensor::zero(n, 1, n);
        for (i, c) in comps.iter().enumerate() {
            t.add_term(1 << i, c);
        }
        PolyForm(t)
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

    /// Components `ξᵢ` of a one-form.
    pub fn one_form_components(&self) -> Vec<Polynomial> {
        assert_eq!(self.degree(), 1);
        (0..self.dim()).map(|i| self.0.get(1 << i)).collect()
    }

    pub fn scalar_value(&self) -> Polynomial {
        self.0.scalar_value()
    }

    pub fn add(&self, o: &PolyForm) -> Result<PolyForm> {
        self.compatible(o)?;
        Ok(PolyForm(self.0.add(&o.0)))
    }

    pub fn sub(&self, o: &PolyForm) -> Result<PolyForm> {
        self.compatible(o)?;
        Ok(PolyForm(self.0.sub(&o.0)))
    }

    pub fn neg(&self) -> PolyForm {
        PolyForm(self.0.neg())
    }

    pub fn scale(&self, f: &Polynomial) -> PolyForm {
        PolyForm(self.0.scale(f))
    }

    fn compatible(&self, o: &PolyForm) -> Result<()> {
        same_dim(self.dim(), o.dim())?;
        if self.degree() != o.degree() {
            return Err(Error::TypeMismatch(format!("degree {} vs {}", self.degree(), o.degree())));
        }
        Ok(())
    }

    pub fn wedge(&self, o: &PolyForm) -> Result<PolyForm> {
        same_dim(self.dim(), o.dim())?;
        Ok(PolyForm(self.0.wedge(&o.0)))
    }

    /// Exterior derivative.
    pub fn d(&self) -> PolyForm {
        let n = self.dim();
        let mut out = AltTensor::zero(n, self.degree() + 1, n);
        if self.degree() >= n {
            return PolyForm(out);
        }
        for (m, c) in self.0.terms() {
            for j in 0..n {
                if m & (1 << j) != 0 {
                    continue;
                }
                let dc = c.d(j);
                if dc.is_zero() {
                    continue;
                }
                let sign = if rank_below(*m, j) % 2 == 0 { 1 } else { -1 };
                out.add_term_signed(m | (1 << j), sign, &dc);
            }
        }
        PolyForm(out)
    }

    /// Interior product in the first slot.
    pub fn interior(&self, x: &PolyVectorField) -> Result<PolyForm> {
        same_dim(self.dim(), x.dim())?;
        if self.degree() == 0 {
            return Err(Error::DegreeZero);
        }
        Ok(PolyForm(self.0.contract(x.components())))
    }

    /// `L_X α = ι_X dα + d ι_X α`.
    pub fn lie_derivative(&self, x: &PolyVectorField) -> Result<PolyForm> {
        same_dim(self.dim(), x.dim())?;
        let a = self.d().interior(x)?;
        if self.degree() == 0 {
            return Ok(a);
        }
        let b = self.interior(x)?.d();
        a.add(&b)
    }

    /// `α(Y₁,…,Y_k) = ι_{Y_k}⋯ι_{Y₁}α`.
    pub fn evaluate(&self, args: &[PolyVectorField]) -> Result<Polynomial> {
        if args.len() != self.degree() {
            return Err(Error::Shape(format!("{} arguments for a {}-form", args.len(), self.degree())));
        }
        let mut cur = self.clone();
        for y in args {
            cur = cur.interior(y)?;
        }
        Ok(cur.scalar_value())
    }

    /// Terms as (sorted indices, coefficient).
    pub fn components(&self) -> Vec<(Vec<usize>, Polynomial)> {
        self.0.terms().map(|(m, c)| (indices(*m).collect(), c.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::Patch;
    use super::*;

    fn r3() -> Patch {
        Patch::standard(3)
    }

    #[test]
    fn wedge_examples() {
        let p = r3();
        let dx = p.parse_form("dx").unwrap();
        let dy = p.parse_form("dy").unwrap();
        assert!(dx.wedge(&dx).unwrap().is_zero());
        assert_eq!(dx.wedge(&dy).unwrap(), dy.wedge(&dx).unwrap().neg());
        let xdy = p.parse_form("x*dy").unwrap();
        let dz = p.parse_form("dz").unwrap();
        assert_eq!(xdy.wedge(&dz).unwrap(), p.parse_form("x*dy^dz").unwrap());
    }

    #[test]
    fn derivative_examples() {
        let p = r3();
        assert_eq!(p.parse_form("x*dy").unwrap().d(), p.parse_form("dx^dy").unwrap());
        assert!(p.parse_form("3*dx - dz").unwrap().d().is_zero());
        // (y dx + x dy)∧dx∧dz = x dy∧dx∧dz
        assert_eq!(p.parse_form("x*y*dx^dz").unwrap().d(), p.parse_form("-x*dx^dy^dz").unwrap());
    }

    #[test]
    fn interior_examples() {
        let p = r3();
        let dxdy = p.parse_form("dx^dy").unwrap();
        let ex = p.parse_vector_field("∂x").unwrap();
        let ey = p.parse_vector_field("∂y").unwrap();
        let ez = p.parse_vector_field("∂z").unwrap();
        assert_eq!(dxdy.interior(&ex).unwrap(), p.parse_form("dy").unwrap());
        assert_eq!(dxdy.interior(&ey).unwrap(), p.parse_form("-dx").unwrap());
        let w = p.parse_form("x*dy^dz").unwrap();
        assert_eq!(w.interior(&ez).unwrap(), p.parse_form("-x*dy").unwrap());
        let f = PolyForm::function(p.var(0));
        assert_eq!(f.interior(&ex), Err(Error::DegreeZero));
    }

    #[test]
    fn lie_derivative_examples() {
        let p = r3();
        let ex = p.parse_vector_field("∂x").unwrap();
        let ey = p.parse_vector_field("∂y").unwrap();
        assert_eq!(p.parse_form("x*dy").unwrap().lie_derivative(&ex).unwrap(), p.parse_form("dy").unwrap());
        assert!(p.parse_form("-x*dy").unwrap().lie_derivative(&ey).unwrap().is_zero());
        let c = p.parse_form("2*dx^dz + dy^dx").unwrap();
        let xc = p.parse_vector_field("∂x - 3*∂z").unwrap();
        assert!(c.lie_derivative(&xc).unwrap().is_zero());
    }

    #[test]
    fn patch_mismatch() {
        let a = Patch::standard(2).parse_form("dx").unwrap();
        let b = r3().parse_form("dx").unwrap();
        assert_eq!(a.wedge(&b), Err(Error::PatchMismatch { left: 2, right: 3 }));
    }
}
