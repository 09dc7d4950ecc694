//! Courant algebroids on a polynomial patch (`𝕋M = TM ⊕ T*M`) and at
//! constant sections of a Drinfeld double.

mod algebroid;
mod axioms;
mod dirac;
mod morphism;
mod para;

pub use algebroid::{
    anchor_pullback, d_plus_minus_local, para_kahler_pde_check, type_part, AlgebroidData, LocalBialgebroidData,
    LocalDPlusMinus, PdeResidual,
};
pub use axioms::{axiom_check, AxiomOutcome, AxiomReport, AxiomWitness, SectionFamily};
pub use dirac::{
    connection_check, curvature, curvature_on_frame, dirac_check, ConnectionMap, ConnectionReport, DiracReport,
};
pub use morphism::{morphism_check, BundleMap, Deviation, MorphismReport};
pub use para::{
    bivector_pi, decomposition_check, kernel_check, obstruction_cyclic_check, obstruction_forms,
    para_complex_connection_check, para_holomorphic_anchor_check, split_check, standard_k, AnchorReport, ClosureReport,
    CyclicReport, DecompositionReport, KernelReport, ObstructionForms, ParaComplexConnectionReport, ParaStructure,
    PiReport, SplitReport,
};

use crate::cartan::tensor::AltTensor;
use crate::cartan::{GradedElement, Patch, PolyForm, PolyVectorField};
use crate::error::{Error, Result};
use crate::lie::LieBialgebraData;
use crate::scalar::{Polynomial, Rational};

/// `X ⊕ ξ`, stored as the coefficient lists of `X` on the tangent basis and
/// of `ξ` on the cotangent basis. For constant-section models the bases are
/// `eᵢ` and `εⁱ` and coefficients are constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralizedSection {
    nvars: usize,
    x: Vec<Polynomial>,
    xi: Vec<Polynomial>,
}

impl GeneralizedSection {
    pub fn new(vf: &PolyVectorField, form: &PolyForm) -> Result<Self> {
        if form.degree() != 1 {
            return Err(Error::TypeMismatch(format!("expected a one-form, got degree {}", form.degree())));
        }
        crate::cartan::same_dim(vf.dim(), form.dim())?;
        Ok(GeneralizedSection { nvars: vf.dim(), x: vf.components().to_vec(), xi: form.one_form_components() })
    }

    pub fn from_parts(nvars: usize, x: Vec<Polynomial>, xi: Vec<Polynomial>) -> Self {
        assert_eq!(x.len(), xi.len());
        debug_assert!(x.iter().chain(&xi).all(|p| p.nvars() == nvars));
        GeneralizedSection { nvars, x, xi }
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        GeneralizedSection { nvars, x: vec![Polynomial::zero(nvars); rank], xi: vec![Polynomial::zero(nvars); rank] }
    }

    pub fn tangent_basis(rank: usize, nvars: usize, i: usize) -> Self {
        let mut s = Self::zero(rank, nvars);
        s.x[i] = Polynomial::one(nvars);
        s
    }

    pub fn cotangent_basis(rank: usize, nvars: usize, i: usize) -> Self {
        let mut s = Self::zero(rank, nvars);
        s.xi[i] = Polynomial::one(nvars);
        s
    }

    /// Basis section `b` of the combined list `(tangent…, cotangent…)`.
    pub fn basis(rank: usize, nvars: usize, b: usize) -> Self {
        if b < rank {
            Self::tangent_basis(rank, nvars, b)
        } else {
            Self::cotangent_basis(rank, nvars, b - rank)
        }
    }

    pub fn vector(x: &PolyVectorField) -> Self {
        let n = x.dim();
        GeneralizedSection { nvars: n, x: x.components().to_vec(), xi: vec![Polynomial::zero(n); n] }
    }

    pub fn covector(xi: &PolyForm) -> Self {
        let n = xi.dim();
        GeneralizedSection { nvars: n, x: vec![Polynomial::zero(n); n], xi: xi.one_form_components() }
    }

    /// Half rank: number of tangent (equivalently cotangent) slots.
    pub fn rank(&self) -> usize {
        self.x.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn x(&self) -> &[Polynomial] {
        &self.x
    }

    pub fn xi(&self) -> &[Polynomial] {
        &self.xi
    }

    pub fn vf(&self) -> PolyVectorField {
        PolyVectorField::new(self.x.clone()).expect("patch section")
    }

    pub fn form(&self) -> PolyForm {
        PolyForm::one_form(&self.xi)
    }

    /// Coefficients on `(tangent…, cotangent…)`.
    pub fn coefficients(&self) -> Vec<Polynomial> {
        self.x.iter().chain(&self.xi).cloned().collect()
    }

    pub fn from_coefficients(nvars: usize, c: &[Polynomial]) -> Self {
        let n = c.len() / 2;
        GeneralizedSection { nvars, x: c[..n].to_vec(), xi: c[n..].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.xi).all(|p| p.is_zero())
    }

    pub fn is_tangent_free(&self) -> bool {
        self.x.iter().all(|p| p.is_zero())
    }

    fn zip(&self, o: &Self, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Self {
        assert_eq!(self.rank(), o.rank(), "section rank mismatch");
        GeneralizedSection {
            nvars: self.nvars,
            x: self.x.iter().zip(&o.x).map(|(a, b)| f(a, b)).collect(),
            xi: self.xi.iter().zip(&o.xi).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        GeneralizedSection {
            nvars: self.nvars,
            x: self.x.iter().map(|p| -p).collect(),
            xi: self.xi.iter().map(|p| -p).collect(),
        }
    }

    pub fn scale(&self, f: &Polynomial) -> Self {
        GeneralizedSection {
            nvars: self.nvars,
            x: self.x.iter().map(|p| p * f).collect(),
            xi: self.xi.iter().map(|p| p * f).collect(),
        }
    }

    pub fn scale_q(&self, q: &Rational) -> Self {
        GeneralizedSection {
            nvars: self.nvars,
            x: self.x.iter().map(|p| p.scale(q)).collect(),
            xi: self.xi.iter().map(|p| p.scale(q)).collect(),
        }
    }

    /// `ρ(X⊕ξ) f = X(f)`.
    fn apply_x(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        if self.nvars == 0 {
            return out;
        }
        for (i, c) in self.x.iter().enumerate() {
            if !c.is_zero() {
                let df = f.d(i);
                if !df.is_zero() {
                    out.add_mul(c, &df);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BracketMode {
    /// The standard bracket on `𝕋M`.
    Standard,
    /// Standard bracket plus `ι_{e₁}ι_{e₂}ρ*η`.
    Twisted(PolyForm),
    /// Standard bracket without the `−½d(ι_Xη − ι_Yξ)` term; not a Courant
    /// algebroid, kept as a negative control.
    NoExactTerm,
    /// Induced bracket of a Lie bialgebra on constant sections of `𝔨 ⊕ 𝔨*`.
    Bialgebroid(LieBialgebraData),
}

/// Anchored bundle with split pairing `⟨X⊕ξ, Y⊕η⟩ = ξ(Y) + η(X)` and one
/// of the bracket modes above.
#[derive(Clone, Debug, PartialEq)]
pub struct CourantPatchModel {
    patch: Patch,
    mode: BracketMode,
}

impl CourantPatchModel {
    pub fn standard(patch: Patch) -> Self {
        CourantPatchModel { patch, mode: BracketMode::Standard }
    }

    /// Rejects `η` unless `dη = 0`, then unless it has degree 3.
    pub fn twisted(patch: Patch, eta: PolyForm) -> Result<Self> {
        crate::cartan::same_dim(patch.dim(), eta.dim())?;
        let d = eta.d();
        if !d.is_zero() {
            return Err(Error::TwistNotClosed(patch.fmt_form(&d)));
        }
        Self::twisted_unchecked(patch, eta)
    }

    /// Twisted model without the closedness test.
    pub fn twisted_unchecked(patch: Patch, eta: PolyForm) -> Result<Self> {
        crate::cartan::same_dim(patch.dim(), eta.dim())?;
        if eta.degree() != 3 {
            return Err(Error::TypeMismatch(format!("twist must be a 3-form, got degree {}", eta.degree())));
        }
        Ok(CourantPatchModel { patch, mode: BracketMode::Twisted(eta) })
    }

    pub fn no_exact_term(patch: Patch) -> Self {
        CourantPatchModel { patch, mode: BracketMode::NoExactTerm }
    }

    /// Constant-section model of `𝔨 ⊕ 𝔨*`; the bialgebra must be valid.
    pub fn bialgebroid(bi: LieBialgebraData) -> Result<Self> {
        let r = bi.bialgebra_check();
        if let Some(w) = r.k.or(r.dual).or(r.double) {
            return Err(Error::JacobiFailure {
                witness: format!("{:?}", w.triple),
                jacobiator: format!("{:?}", w.jacobiator.iter().map(|q| q.to_string()).collect::<Vec<_>>()),
            });
        }
        Ok(CourantPatchModel { patch: Patch::point(), mode: BracketMode::Bialgebroid(bi) })
    }

    pub fn patch(&self) -> &Patch {
        &self.patch
    }

    pub fn mode(&self) -> &BracketMode {
        &self.mode
    }

    /// Half rank of `E`.
    pub fn rank(&self) -> usize {
        match &self.mode {
            BracketMode::Bialgebroid(bi) => bi.dim(),
            _ => self.patch.dim(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.patch.dim()
    }

    /// Patch models are exact: `ker ρ = Im ρ*`.
    pub fn is_exact(&self) -> bool {
        !matches!(self.mode, BracketMode::Bialgebroid(_))
    }

    pub fn basis_section(&self, b: usize) -> GeneralizedSection {
        GeneralizedSection::basis(self.rank(), self.nvars(), b)
    }

    pub fn basis_sections(&self) -> Vec<GeneralizedSection> {
        (0..2 * self.rank()).map(|b| self.basis_section(b)).collect()
    }

    pub fn zero_section(&self) -> GeneralizedSection {
        GeneralizedSection::zero(self.rank(), self.nvars())
    }

    /// Names of the tangent and cotangent basis sections.
    pub fn section_names(&self) -> (Vec<String>, Vec<String>) {
        match &self.mode {
            BracketMode::Bialgebroid(bi) => {
                ((1..=bi.dim()).map(|i| format!("e{i}")).collect(), (1..=bi.dim()).map(|i| format!("eps{i}")).collect())
            }
            _ => (self.patch.vector_slot_names(), self.patch.form_slot_names()),
        }
    }

    pub fn parse_section(&self, src: &str) -> Result<GeneralizedSection> {
        let (t, c) = self.section_names();
        let g = GradedElement::parse(src, self.patch.names(), &t, &c)?;
        let (x, xi) = g.into_section_parts(src)?;
        Ok(GeneralizedSection::from_parts(self.nvars(), x, xi))
    }

    pub fn fmt_section(&self, s: &GeneralizedSection) -> String {
        let (t, c) = self.section_names();
        let names: Vec<String> = t.into_iter().chain(c).collect();
        let n = self.rank();
        let mut a = AltTensor::zero(2 * n, 1, self.nvars());
        for (b, p) in s.coefficients().iter().enumerate() {
            a.add_term(1 << b, p);
        }
        a.fmt_with(&names, self.patch.names(), "^")
    }

    pub fn fmt_poly(&self, p: &Polynomial) -> String {
        self.patch.fmt_poly(p)
    }

    fn check_section(&self, s: &GeneralizedSection) -> Result<()> {
        if s.rank() != self.rank() || s.nvars() != self.nvars() {
            return Err(Error::PatchMismatch { left: self.rank(), right: s.rank() });
        }
        Ok(())
    }

    /// `ρ(X⊕ξ) = X`; zero for constant-section models.
    pub fn anchor(&self, s: &GeneralizedSection) -> PolyVectorField {
        match self.mode {
            BracketMode::Bialgebroid(_) => PolyVectorField::zero(0),
            _ => s.vf(),
        }
    }

    /// `ρ(e) f`.
    pub fn anchor_apply(&self, s: &GeneralizedSection, f: &Polynomial) -> Polynomial {
        match self.mode {
            BracketMode::Bialgebroid(_) => Polynomial::zero(self.nvars()),
            _ => s.apply_x(f),
        }
    }

    /// `ρ*ξ = 0 ⊕ ξ`.
    pub fn anchor_dual(&self, xi: &PolyForm) -> GeneralizedSection {
        GeneralizedSection::covector(xi)
    }

    pub fn pairing(&self, a: &GeneralizedSection, b: &GeneralizedSection) -> Polynomial {
        let mut s = Polynomial::zero(self.nvars());
        for i in 0..a.rank() {
            if !a.xi[i].is_zero() && !b.x[i].is_zero() {
                s.add_mul(&a.xi[i], &b.x[i]);
            }
            if !b.xi[i].is_zero() && !a.x[i].is_zero() {
                s.add_mul(&b.xi[i], &a.x[i]);
            }
        }
        s
    }

    /// `β(e) = ⟨e, ·⟩` on the dual basis of `(tangent…, cotangent…)`: a swap.
    pub fn beta(&self, s: &GeneralizedSection) -> Vec<Polynomial> {
        s.xi.iter().chain(&s.x).cloned().collect()
    }

    pub fn beta_inv(&self, c: &[Polynomial]) -> GeneralizedSection {
        let n = self.rank();
        GeneralizedSection::from_parts(self.nvars(), c[n..].to_vec(), c[..n].to_vec())
    }

    /// `d_E f = ρ*df ∈ Γ(E*)`, on the dual basis.
    pub fn d_e(&self, f: &Polynomial) -> Vec<Polynomial> {
        let n = self.rank();
        let m = self.nvars();
        let mut c = vec![Polynomial::zero(m); 2 * n];
        if self.is_exact() {
            for (i, ci) in c.iter_mut().enumerate().take(n) {
                *ci = f.d(i);
            }
        }
        c
    }

    /// `β⁻¹ d_E f`.
    pub fn d_section(&self, f: &Polynomial) -> GeneralizedSection {
        self.beta_inv(&self.d_e(f))
    }

    pub fn bracket(&self, a: &GeneralizedSection, b: &GeneralizedSection) -> Result<GeneralizedSection> {
        self.check_section(a)?;
        self.check_section(b)?;
        Ok(match &self.mode {
            BracketMode::Standard => standard_bracket(a, b, true),
            BracketMode::NoExactTerm => standard_bracket(a, b, false),
            BracketMode::Twisted(eta) => {
                let mut s = standard_bracket(a, b, true);
                if !a.is_tangent_free() && !b.is_tangent_free() {
                    let t = eta.interior(&b.vf())?.interior(&a.vf())?;
                    for (c, v) in s.xi.iter_mut().zip(t.one_form_components()) {
                        c.add_assign_ref(&v);
                    }
                }
                s
            }
            BracketMode::Bialgebroid(bi) => algebroid::induced_bracket(bi, a, b),
        })
    }

    /// `T(e₁,e₂,e₃) = ⅙(⟨[e₁,e₂],e₃⟩ + c.p.)`.
    pub fn t_function(&self, e: [&GeneralizedSection; 3], brackets: [&GeneralizedSection; 3]) -> Polynomial {
        let mut s = self.pairing(brackets[0], e[2]);
        s.add_assign_ref(&self.pairing(brackets[1], e[0]));
        s.add_assign_ref(&self.pairing(brackets[2], e[1]));
        s.scale(&Rational::new(1, 6))
    }
}

/// `[X⊕ξ, Y⊕η] = [X,Y] ⊕ (L_Xη − L_Yξ − ½d(ι_Xη − ι_Yξ))`, the last term
/// optional. Component form:
/// `(L_Xη)ᵢ = Xʲ∂ⱼηᵢ + ηⱼ∂ᵢXʲ`.
fn standard_bracket(a: &GeneralizedSection, b: &GeneralizedSection, exact_term: bool) -> GeneralizedSection {
    let n = a.rank();
    let m = a.nvars;
    let nz = |p: &Polynomial| !p.is_zero();
    let mut x = vec![Polynomial::zero(m); n];
    let mut xi = vec![Polynomial::zero(m); n];
    // Only derivatives in the patch directions exist; rank == nvars here.
    let da: Vec<Vec<Polynomial>> = a.x.iter().map(|c| (0..m).map(|j| c.d(j)).collect()).collect();
    let db: Vec<Vec<Polynomial>> = b.x.iter().map(|c| (0..m).map(|j| c.d(j)).collect()).collect();
    for i in 0..n {
        for j in 0..n {
            if nz(&a.x[j]) && nz(&db[i][j]) {
                x[i].add_mul(&a.x[j], &db[i][j]);
            }
            if nz(&b.x[j]) && nz(&da[i][j]) {
                x[i].sub_assign_ref(&(&b.x[j] * &da[i][j]));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if nz(&a.x[j]) && nz(&b.xi[i]) {
                let d = b.xi[i].d(j);
                if nz(&d) {
                    xi[i].add_mul(&a.x[j], &d);
                }
            }
            if nz(&b.xi[j]) && nz(&da[j][i]) {
                xi[i].add_mul(&b.xi[j], &da[j][i]);
            }
            if nz(&b.x[j]) && nz(&a.xi[i]) {
                let d = a.xi[i].d(j);
                if nz(&d) {
                    xi[i].sub_assign_ref(&(&b.x[j] * &d));
                }
            }
            if nz(&a.xi[j]) && nz(&db[j][i]) {
                xi[i].sub_assign_ref(&(&a.xi[j] * &db[j][i]));
            }
        }
    }
    if exact_term {
        // h = ι_Xη − ι_Yξ; subtract ½ dh
        let mut h = Polynomial::zero(m);
        for j in 0..n {
            if nz(&a.x[j]) && nz(&b.xi[j]) {
                h.add_mul(&a.x[j], &b.xi[j]);
            }
            if nz(&b.x[j]) && nz(&a.xi[j]) {
                h.sub_assign_ref(&(&b.x[j] * &a.xi[j]));
            }
        }
        if !h.is_zero() {
            let half = Rational::new(1, 2);
            for (i, c) in xi.iter_mut().enumerate() {
                let d = h.d(i);
                if nz(&d) {
                    c.sub_assign_ref(&d.scale(&half));
                }
            }
        }
    }
    GeneralizedSection { nvars: m, x, xi }
}
