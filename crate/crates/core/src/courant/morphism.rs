use super::{CourantPatchModel, GeneralizedSection};
use crate::cartan::{PolyForm, PolyVectorField};
use crate::error::{Error, Result};
use crate::scalar::random::monomials_up_to;
use crate::scalar::{Polynomial, Rational};

/// A bundle map `E → F` over the identity, linear over functions, given by
/// the images of the basis sections `(tangent…, cotangent…)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleMap {
    images: Vec<GeneralizedSection>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Deviation {
    /// Basis indices of the pair.
    pub pair: (usize, usize),
    /// `Ψ[e₁,e₂] − [Ψe₁,Ψe₂]`.
    pub value: GeneralizedSection,
    pub in_rho_star: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MorphismReport {
    pub isometry: bool,
    pub anchor: bool,
    /// `Ψ∘β⁻¹d_E = β⁻¹d_F` on monomials of degree ≤ 2.
    pub d_compatible: bool,
    /// Nonzero deviations on basis pairs.
    pub deviations: Vec<Deviation>,
    /// Deviation is `C^∞`-linear in both slots on the tested scalings.
    pub tensorial: bool,
    pub deviation_in_rho_star: bool,
}

impl MorphismReport {
    pub fn bracket_preserved(&self) -> bool {
        self.deviations.is_empty()
    }

    pub fn holds(&self) -> bool {
        self.isometry && self.anchor && self.d_compatible && self.bracket_preserved()
    }
}

impl BundleMap {
    pub fn new(images: Vec<GeneralizedSection>) -> Self {
        BundleMap { images }
    }

    pub fn identity(model: &CourantPatchModel) -> Self {
        BundleMap { images: model.basis_sections() }
    }

    /// `e^ω: X⊕ξ ↦ X⊕(ξ + ι_Xω)`.
    pub fn b_transform(model: &CourantPatchModel, omega: &PolyForm) -> Result<Self> {
        if omega.degree() != 2 {
            return Err(Error::TypeMismatch(format!("B-field must be a 2-form, got degree {}", omega.degree())));
        }
        let n = model.nvars();
        let mut images = Vec::new();
        for i in 0..n {
            let x = PolyVectorField::coordinate(n, i);
            images.push(GeneralizedSection::new(&x, &omega.interior(&x)?)?);
        }
        images.extend((0..n).map(|i| model.basis_section(n + i)));
        Ok(BundleMap { images })
    }

    pub fn images(&self) -> &[GeneralizedSection] {
        &self.images
    }

    pub fn apply(&self, s: &GeneralizedSection) -> GeneralizedSection {
        let mut out = GeneralizedSection::zero(self.images[0].rank(), s.nvars());
        for (c, im) in s.coefficients().iter().zip(&self.images) {
            if !c.is_zero() {
                out = out.add(&im.scale(c));
            }
        }
        out
    }
}

fn deviation(
    psi: &BundleMap,
    e: &CourantPatchModel,
    f: &CourantPatchModel,
    a: &GeneralizedSection,
    b: &GeneralizedSection,
) -> Result<GeneralizedSection> {
    Ok(psi.apply(&e.bracket(a, b)?).sub(&f.bracket(&psi.apply(a), &psi.apply(b))?))
}

pub fn morphism_check(psi: &BundleMap, e: &CourantPatchModel, f: &CourantPatchModel) -> Result<MorphismReport> {
    if e.nvars() != f.nvars() || e.rank() != f.rank() {
        return Err(Error::PatchMismatch { left: e.nvars(), right: f.nvars() });
    }
    if psi.images.len() != 2 * e.rank() {
        return Err(Error::Shape(format!("bundle map needs {} images", 2 * e.rank())));
    }
    let basis = e.basis_sections();
    let images: Vec<_> = basis.iter().map(|s| psi.apply(s)).collect();
    let isometry = (0..basis.len())
        .all(|a| (a..basis.len()).all(|b| f.pairing(&images[a], &images[b]) == e.pairing(&basis[a], &basis[b])));
    let anchor = basis.iter().zip(&images).all(|(s, t)| f.anchor(t) == e.anchor(s));
    let m = e.nvars();
    let d_compatible = monomials_up_to(m, 2).into_iter().all(|mo| {
        let g = Polynomial::term(m, mo, Rational::one());
        psi.apply(&e.d_section(&g)) == f.d_section(&g)
    });
    let mut deviations = Vec::new();
    let mut tensorial = true;
    let vars: Vec<Polynomial> = (0..m).map(|i| Polynomial::var(m, i)).collect();
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            let d = deviation(psi, e, f, &basis[a], &basis[b])?;
            for x in &vars {
                let want = d.scale(x);
                if deviation(psi, e, f, &basis[a].scale(x), &basis[b])? != want
                    || deviation(psi, e, f, &basis[a], &basis[b].scale(x))? != want
                {
                    tensorial = false;
                }
            }
            if !d.is_zero() {
                deviations.push(Deviation { pair: (a, b), in_rho_star: d.is_tangent_free(), value: d });
            }
        }
    }
    let deviation_in_rho_star = deviations.iter().all(|d| d.in_rho_star);
    Ok(MorphismReport { isometry, anchor, d_compatible, deviations, tensorial, deviation_in_rho_star })
}
