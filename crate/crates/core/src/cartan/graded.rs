use std::collections::BTreeMap;

use super::tensor::{wedge_sign, AltTensor, IndexSet};
use super::{Patch, PolyForm, PolyMultivector};
use crate::error::{Error, Result};
use crate::scalar::parse::{eval_expr, parse_expr, ExprAlgebra};
use crate::scalar::{Polynomial, Rational};

/// Mixed-degree element of the exterior algebra on `tangent ⊕ cotangent`
/// slots, used as the intermediate value when parsing literals.
///
/// Slot `i < half` is the tangent basis vector `i`, slot `half + i` is the
/// dual basis covector `i`.
#[derive(Clone, Debug)]
pub struct GradedElement {
    half: usize,
    nvars: usize,
    terms: BTreeMap<IndexSet, Polynomial>,
}

#[derive(Clone)]
struct Ctx<'a> {
    vars: &'a [String],
    tangent: &'a [String],
    cotangent: &'a [String],
    value: GradedElement,
}

impl GradedElement {
    fn zero(half: usize, nvars: usize) -> Self {
        GradedElement { half, nvars, terms: BTreeMap::new() }
    }

    fn add_term(&mut self, m: IndexSet, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(|| Polynomial::zero(c.nvars()));
        e.add_assign_ref(c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Parse over explicit atom names: variables, tangent basis and cotangent basis.
    pub fn parse(src: &str, vars: &[String], tangent: &[String], cotangent: &[String]) -> Result<Self> {
        assert_eq!(tangent.len(), cotangent.len());
        let e = parse_expr(src)?;
        let ctx = Ctx { vars, tangent, cotangent, value: GradedElement::zero(tangent.len(), vars.len()) };
        eval_expr(&ctx, &e).map(|c| c.value).map_err(|message| Error::Parse { input: src.to_string(), message })
    }

    /// Parse with atoms `x`, `∂x` (or `Dx`) and `dx` for each patch variable.
    pub fn parse_on_patch(p: &Patch, src: &str) -> Result<Self> {
        let d: Vec<String> = p.names().iter().map(|n| format!("d{n}")).collect();
        let t: Vec<String> = p.names().iter().map(|n| format!("∂{n}")).collect();
        Self::parse(src, p.names(), &t, &d)
    }

    pub fn half(&self) -> usize {
        self.half
    }

    fn only_slots(&self, src: &str, lo: usize, hi: usize, what: &str) -> Result<Option<usize>> {
        let mut degree = None;
        for m in self.terms.keys() {
            let ok = (0..32).all(|i| m & (1 << i) == 0 || (lo..hi).contains(&i));
            if !ok {
                return Err(Error::Parse { input: src.into(), message: format!("expected a {what}") });
            }
            let k = m.count_ones() as usize;
            match degree {
                None => degree = Some(k),
                Some(d) if d != k => return Err(Error::Parse { input: src.into(), message: "mixed degrees".into() }),
                _ => {}
            }
        }
        Ok(degree)
    }

    pub fn into_form(self, src: &str) -> Result<PolyForm> {
        let n = self.half;
        let deg = self.only_slots(src, n, 2 * n, "differential form")?.unwrap_or(0);
        let mut t = AltTensor::zero(n, deg, self.nvars);
        for (m, c) in &self.terms {
            t.add_term(m >> n, c);
        }
        Ok(PolyForm::from_tensor(t))
    }

    pub fn into_multivector(self, src: &str) -> Result<PolyMultivector> {
        let n = self.half;
        let deg = self.only_slots(src, 0, n, "multivector")?.unwrap_or(0);
        let mut t = AltTensor::zero(n, deg, self.nvars);
        for (m, c) in &self.terms {
            t.add_term(*m, c);
        }
        Ok(PolyMultivector::from_tensor(t))
    }

    /// Degree-one element as (tangent components, cotangent components).
    pub fn into_section_parts(self, src: &str) -> Result<(Vec<Polynomial>, Vec<Polynomial>)> {
        let n = self.half;
        let deg = self.only_slots(src, 0, 2 * n, "section")?;
        if !matches!(deg, None | Some(1)) {
            return Err(Error::Parse {
                input: src.into(),
                message: "expected a linear expression in basis sections".into(),
            });
        }
        let mut tan = vec![Polynomial::zero(self.nvars); n];
        let mut cot = vec![Polynomial::zero(self.nvars); n];
        for (m, c) in &self.terms {
            let i = m.trailing_zeros() as usize;
            if i < n {
                tan[i] = c.clone();
            } else {
                cot[i - n] = c.clone();
            }
        }
        Ok((tan, cot))
    }
}

impl Ctx<'_> {
    fn with(&self, value: GradedElement) -> Self {
        Ctx { vars: self.vars, tangent: self.tangent, cotangent: self.cotangent, value }
    }

    fn fresh(&self) -> GradedElement {
        GradedElement::zero(self.tangent.len(), self.vars.len())
    }
}

impl ExprAlgebra for Ctx<'_> {
    fn num(&self, q: &Rational) -> Self {
        let mut g = self.fresh();
        g.add_term(0, &Polynomial::constant(self.vars.len(), q.clone()));
        self.with(g)
    }

    fn atom(&self, name: &str) -> std::result::Result<Self, String> {
        let n = self.vars.len();
        let mut g = self.fresh();
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            g.add_term(0, &Polynomial::var(n, i));
        } else if let Some(i) = self
            .tangent
            .iter()
            .position(|v| v == name || (name.starts_with('D') && v.strip_prefix('∂') == Some(&name[1..])))
        {
            g.add_term(1 << i, &Polynomial::one(n));
        } else if let Some(i) = self.cotangent.iter().position(|v| v == name) {
            g.add_term(1 << (self.tangent.len() + i), &Polynomial::one(n));
        } else {
            return Err(format!("unknown symbol {name:?}"));
        }
        Ok(self.with(g))
    }

    fn add(&self, o: &Self) -> Self {
        let mut g = self.value.clone();
        for (m, c) in &o.value.terms {
            g.add_term(*m, c);
        }
        self.with(g)
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn neg(&self) -> Self {
        let mut g = self.fresh();
        for (m, c) in &self.value.terms {
            g.add_term(*m, &-c);
        }
        self.with(g)
    }

    fn mul(&self, o: &Self) -> Self {
        let mut g = self.fresh();
        for (a, ca) in &self.value.terms {
            for (b, cb) in &o.value.terms {
                if a & b != 0 {
                    continue;
                }
                let prod = ca * cb;
                if wedge_sign(*a, *b) > 0 {
                    g.add_term(a | b, &prod);
                } else {
                    g.add_term(a | b, &-prod);
                }
            }
        }
        self.with(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms_and_display() {
        let p = Patch::standard(3);
        let f = p.parse_form("x*dy^dz - dz^dy + 1/2*dx^dz").unwrap();
        assert_eq!(p.fmt_form(&f), "1/2*dx^dz + (x + 1)*dy^dz");
        let again = p.parse_form(&p.fmt_form(&f)).unwrap();
        assert_eq!(again, f);
        assert!(p.parse_form("∂x + dx").is_err());
        assert!(p.parse_form("dx + dx^dy").is_err());
        let v = p.parse_vector_field("Dx + x*∂z").unwrap();
        assert_eq!(p.fmt_vector_field(&v), "∂x + x*∂z");
    }
}
