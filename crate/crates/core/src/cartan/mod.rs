//! Polynomial-coefficient exterior calculus on a single coordinate patch.

mod dolbeault;
mod form;
mod frame;
mod graded;
mod multivector;
pub mod tensor;
mod vector;

pub use dolbeault::{
    del_plus_minus, dolbeault_bar, para_holomorphic_check, phi_combine, phi_inverse, phi_isomorphism, DelPlusMinus,
    ParaComplexForm,
};
pub use form::PolyForm;
pub use frame::{EigenFrame, Involutivity, TypeDecomposition};
pub use graded::GradedElement;
pub use multivector::PolyMultivector;
pub use tensor::AltTensor;
pub use vector::PolyVectorField;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{default_names, parse_polynomial, Polynomial, MAX_VARS};

/// A coordinate chart: an ordered list of variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Patch {
    names: Vec<String>,
}

impl Patch {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_alphabetic())
                && n.chars().all(|c| c.is_alphanumeric() || c == '_')
                && !n.starts_with('d');
            if !ok {
                return Err(Error::InvalidField {
                    field: "patch.variables".into(),
                    message: format!("invalid variable name {n:?} (names may not start with 'd')"),
                });
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidField {
                    field: "patch.variables".into(),
                    message: format!("duplicate variable {n:?}"),
                });
            }
        }
        Ok(Patch { names })
    }

    /// `x, y, z` for n ≤ 3, else `x1..xn`.
    pub fn standard(n: usize) -> Self {
        Patch { names: default_names(n) }
    }

    /// The zero-dimensional patch used by constant-section models.
    pub fn point() -> Self {
        Patch { names: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.dim(), i)
    }

    pub fn parse_polynomial(&self, src: &str) -> Result<Polynomial> {
        parse_polynomial(src, &self.names)
    }

    pub fn parse_form(&self, src: &str) -> Result<PolyForm> {
        GradedElement::parse_on_patch(self, src)?.into_form(src)
    }

    pub fn parse_multivector(&self, src: &str) -> Result<PolyMultivector> {
        GradedElement::parse_on_patch(self, src)?.into_multivector(src)
    }

    pub fn parse_vector_field(&self, src: &str) -> Result<PolyVectorField> {
        let m = self.parse_multivector(src)?;
        if m.degree() != 1 {
            return Err(Error::Parse { input: src.into(), message: "expected a vector field".into() });
        }
        Ok(PolyVectorField::from_multivector(&m))
    }

    pub fn form_slot_names(&self) -> Vec<String> {
        self.names.iter().map(|n| format!("d{n}")).collect()
    }

    pub fn vector_slot_names(&self) -> Vec<String> {
        self.names.iter().map(|n| format!("∂{n}")).collect()
    }

    pub fn fmt_poly(&self, p: &Polynomial) -> String {
        p.fmt_with(&self.names)
    }

    pub fn fmt_form(&self, f: &PolyForm) -> String {
        f.tensor().fmt_with(&self.form_slot_names(), &self.names, "^")
    }

    pub fn fmt_multivector(&self, m: &PolyMultivector) -> String {
        m.tensor().fmt_with(&self.vector_slot_names(), &self.names, "^")
    }

    pub fn fmt_vector_field(&self, v: &PolyVectorField) -> String {
        self.fmt_multivector(&v.to_multivector())
    }
}

pub(crate) fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::PatchMismatch { left: a, right: b });
    }
    Ok(())
}
