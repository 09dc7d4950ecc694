use super::dirac::{connection_check, ConnectionMap};
use super::{AlgebroidData, CourantPatchModel, GeneralizedSection};
use crate::cartan::tensor::AltTensor;
use crate::cartan::{EigenFrame, PolyMultivector, PolyVectorField};
use crate::error::{Error, Result};
use crate::linalg::{determinant, inverse, rank, Matrix};
use crate::scalar::{Polynomial, Rational};

/// A para-complex structure on `E` given by eigenframes: `J = +1` on the
/// span of `plus`, `−1` on the span of `minus`. The combined frame must have
/// a nonzero constant determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct ParaStructure {
    frame: Vec<GeneralizedSection>,
    /// Row `a` gives the frame coordinate `a` as a functional on
    /// `(tangent…, cotangent…)` coefficients.
    coframe: Matrix<Polynomial>,
    half: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosureReport {
    pub plus_closed: bool,
    pub minus_closed: bool,
    pub plus_witness: Option<(usize, usize)>,
    pub minus_witness: Option<(usize, usize)>,
}

impl ClosureReport {
    pub fn integrable(&self) -> bool {
        self.plus_closed && self.minus_closed
    }
}

impl ParaStructure {
    pub fn explicit(
        model: &CourantPatchModel,
        plus: Vec<GeneralizedSection>,
        minus: Vec<GeneralizedSection>,
    ) -> Result<Self> {
        let n = model.rank();
        if plus.len() != n || minus.len() != n {
            return Err(Error::InvalidFrame(format!(
                "eigenframes of sizes {} and {} for half rank {n}",
                plus.len(),
                minus.len()
            )));
        }
        let mut frame = plus;
        frame.extend(minus);
        for s in &frame {
            if s.rank() != n || s.nvars() != model.nvars() {
                return Err(Error::PatchMismatch { left: n, right: s.rank() });
            }
        }
        // Column a is the coefficient vector of frame[a].
        let cols: Vec<Vec<Polynomial>> = frame.iter().map(|s| s.coefficients()).collect();
        let m: Matrix<Polynomial> = (0..2 * n).map(|i| (0..2 * n).map(|a| cols[a][i].clone()).collect()).collect();
        let det = determinant(&m).expect("square");
        if det.is_zero() {
            return Err(Error::NonTransverse);
        }
        if !det.is_constant() {
            return Err(Error::FrameNotUnimodular(model.fmt_poly(&det)));
        }
        let coframe = inverse(&m).ok_or_else(|| Error::FrameNotUnimodular(model.fmt_poly(&det)))?;
        Ok(ParaStructure { frame, coframe, half: n })
    }

    /// `J̃` from a para-complex `J` on `TM`: `E₊ = T⁺ ⊕ ann(T⁺)`,
    /// `E₋ = ann(T⁻) ⊕ T⁻`, ordered as `(F₊, θ₋)` and `(θ₊, F₋)`.
    pub fn lifted(model: &CourantPatchModel, j: &EigenFrame) -> Result<Self> {
        Self::lift(model, j, false)
    }

    /// `E₊ = T⁺ ⊕ ann(T⁻)`: the plus eigenbundle pairs with itself.
    pub fn type_swapped(model: &CourantPatchModel, j: &EigenFrame) -> Result<Self> {
        Self::lift(model, j, true)
    }

    fn lift(model: &CourantPatchModel, j: &EigenFrame, swap: bool) -> Result<Self> {
        if !model.is_exact() {
            return Err(Error::Unsupported("a patch model".into()));
        }
        crate::cartan::same_dim(model.nvars(), j.dim())?;
        let h = j.half();
        let vec_part = |a: usize| GeneralizedSection::vector(&j.vectors()[a]);
        let form_part = |a: usize| GeneralizedSection::covector(&j.coframe(a));
        let (pf, mf): (Vec<usize>, Vec<usize>) =
            if swap { ((0..h).collect(), (h..2 * h).collect()) } else { ((h..2 * h).collect(), (0..h).collect()) };
        let plus = (0..h).map(vec_part).chain(pf.into_iter().map(form_part)).collect();
        // Forms first so that the lifted frames are dual under the pairing.
        let minus = mf.into_iter().map(form_part).chain((h..2 * h).map(vec_part)).collect();
        Self::explicit(model, plus, minus)
    }

    pub fn rank(&self) -> usize {
        self.half
    }

    pub fn frame(&self) -> &[GeneralizedSection] {
        &self.frame
    }

    pub fn plus(&self) -> &[GeneralizedSection] {
        &self.frame[..self.half]
    }

    pub fn minus(&self) -> &[GeneralizedSection] {
        &self.frame[self.half..]
    }

    /// Frame coordinates of `s`.
    pub fn coefficients(&self, s: &GeneralizedSection) -> Vec<Polynomial> {
        let c = s.coefficients();
        self.coframe
            .iter()
            .map(|row| {
                let mut acc = Polynomial::zero(s.nvars());
                for (r, v) in row.iter().zip(&c) {
                    if !r.is_zero() && !v.is_zero() {
                        acc.add_mul(r, v);
                    }
                }
                acc
            })
            .collect()
    }

    fn combine(&self, c: &[Polynomial], weight: impl Fn(usize) -> i64, nvars: usize) -> GeneralizedSection {
        let mut out = GeneralizedSection::zero(self.half, nvars);
        for (a, ca) in c.iter().enumerate() {
            let w = weight(a);
            if w != 0 && !ca.is_zero() {
                out = out.add(&self.frame[a].scale(&ca.scale(&Rational::from_int(w))));
            }
        }
        out
    }

    pub fn apply_j(&self, s: &GeneralizedSection) -> GeneralizedSection {
        let h = self.half;
        self.combine(&self.coefficients(s), |a| if a < h { 1 } else { -1 }, s.nvars())
    }

    pub fn project_plus(&self, s: &GeneralizedSection) -> GeneralizedSection {
        let h = self.half;
        self.combine(&self.coefficients(s), |a| (a < h) as i64, s.nvars())
    }

    pub fn project_minus(&self, s: &GeneralizedSection) -> GeneralizedSection {
        let h = self.half;
        self.combine(&self.coefficients(s), |a| (a >= h) as i64, s.nvars())
    }

    /// `⟨J·,J·⟩ = −⟨·,·⟩`, equivalently both eigenbundles isotropic.
    pub fn compatible(&self, model: &CourantPatchModel) -> bool {
        let iso = |f: &[GeneralizedSection]| {
            (0..f.len()).all(|a| (a..f.len()).all(|b| model.pairing(&f[a], &f[b]).is_zero()))
        };
        iso(self.plus()) && iso(self.minus())
    }

    pub fn closure(&self, model: &CourantPatchModel) -> Result<ClosureReport> {
        let h = self.half;
        let check = |range: std::ops::Range<usize>| -> Result<Option<(usize, usize)>> {
            for a in range.clone() {
                for b in a + 1..range.end {
                    let c = self.coefficients(&model.bracket(&self.frame[a], &self.frame[b])?);
                    if (0..2 * h).any(|k| !range.contains(&k) && !c[k].is_zero()) {
                        return Ok(Some((a, b)));
                    }
                }
            }
            Ok(None)
        };
        let pw = check(0..h)?;
        let mw = check(h..2 * h)?;
        Ok(ClosureReport { plus_closed: pw.is_none(), minus_closed: mw.is_none(), plus_witness: pw, minus_witness: mw })
    }

    /// `N(a,b) = ¼([a,b] − J[a,Jb] − J[Ja,b] + [Ja,Jb])` with the bracket of `E`.
    pub fn nijenhuis(
        &self,
        model: &CourantPatchModel,
        a: &GeneralizedSection,
        b: &GeneralizedSection,
    ) -> Result<GeneralizedSection> {
        let (ja, jb) = (self.apply_j(a), self.apply_j(b));
        let t = model
            .bracket(a, b)?
            .sub(&self.apply_j(&model.bracket(a, &jb)?))
            .sub(&self.apply_j(&model.bracket(&ja, b)?))
            .add(&model.bracket(&ja, &jb)?);
        Ok(t.scale_q(&Rational::new(1, 4)))
    }

    /// `ω(a,b) = ⟨a, Jb⟩`.
    pub fn fundamental_form(
        &self,
        model: &CourantPatchModel,
        a: &GeneralizedSection,
        b: &GeneralizedSection,
    ) -> Result<Polynomial> {
        if !self.compatible(model) {
            return Err(Error::IncompatibleStructure("J is not compatible with the pairing".into()));
        }
        Ok(model.pairing(a, &self.apply_j(b)))
    }
}

/// `K = +1` on `A(TM)`, `−1` on `ρ*(T*M)`.
pub fn standard_k(model: &CourantPatchModel, a: &ConnectionMap) -> Result<ParaStructure> {
    if !model.is_exact() {
        return Err(Error::Unsupported("a patch model".into()));
    }
    let r = connection_check(model, a)?;
    if !r.holds() {
        return Err(Error::InvalidConnection(r.reason.unwrap_or_default()));
    }
    let n = model.nvars();
    let plus = (0..n).map(|i| a.apply(model, &PolyVectorField::coordinate(n, i))).collect::<Result<Vec<_>>>()?;
    let minus = (0..n).map(|i| model.basis_section(n + i)).collect();
    ParaStructure::explicit(model, plus, minus)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnchorReport {
    /// `ρ∘J_E = J_TM∘ρ` on the frame of `E`.
    pub anchor_intertwines: bool,
    /// `J_E` is compatible with the pairing.
    pub compatible: bool,
    /// Both eigenbundles of `J_E` are bracket-closed.
    pub integrable: bool,
    pub witness: Option<String>,
}

impl AnchorReport {
    pub fn holds(&self) -> bool {
        self.anchor_intertwines && self.compatible
    }
}

pub fn para_holomorphic_anchor_check(
    model: &CourantPatchModel,
    je: &ParaStructure,
    jtm: &EigenFrame,
) -> Result<AnchorReport> {
    crate::cartan::same_dim(model.nvars(), jtm.dim())?;
    let mut witness = None;
    for e in je.frame() {
        let lhs = model.anchor(&je.apply_j(e));
        let rhs = jtm.apply_j(&model.anchor(e));
        if lhs != rhs {
            witness = Some(model.fmt_section(e));
            break;
        }
    }
    Ok(AnchorReport {
        anchor_intertwines: witness.is_none(),
        compatible: je.compatible(model),
        integrable: je.closure(model)?.integrable(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParaComplexConnectionReport {
    /// `J_E∘A = A∘J_TM` on the frame of `TM`.
    pub intertwines: bool,
    /// For graph connections, whether `σ(J·,J·) = −σ`.
    pub graph_condition: Option<bool>,
}

impl ParaComplexConnectionReport {
    pub fn holds(&self) -> bool {
        self.intertwines
    }
}

pub fn para_complex_connection_check(
    model: &CourantPatchModel,
    a: &ConnectionMap,
    je: &ParaStructure,
    jtm: &EigenFrame,
) -> Result<ParaComplexConnectionReport> {
    let mut intertwines = true;
    for f in jtm.vectors() {
        let af = a.apply(model, f)?;
        if je.apply_j(&af) != a.apply(model, &jtm.apply_j(f))? {
            intertwines = false;
            break;
        }
    }
    let graph_condition = match a {
        ConnectionMap::Graph(s) => {
            let v = jtm.vectors();
            let mut ok = true;
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    let lhs = s.evaluate(&[jtm.apply_j(&v[i]), jtm.apply_j(&v[j])])?;
                    if !(&lhs + &s.evaluate(&[v[i].clone(), v[j].clone()])?).is_zero() {
                        ok = false;
                    }
                }
            }
            Some(ok)
        }
        ConnectionMap::Explicit(_) => None,
    };
    Ok(ParaComplexConnectionReport { intertwines, graph_condition })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitReport {
    pub commute: bool,
    pub l_squared_identity: bool,
    pub l_isometry: bool,
    pub j_integrable: bool,
    pub k_integrable: bool,
}

impl SplitReport {
    pub fn holds(&self) -> bool {
        self.commute && self.l_squared_identity && self.l_isometry && self.j_integrable && self.k_integrable
    }
}

/// `JK = KJ`, `L = JK` with `L² = Id` and `⟨L·,L·⟩ = ⟨·,·⟩`, and
/// integrability of both structures.
pub fn split_check(model: &CourantPatchModel, j: &ParaStructure, k: &ParaStructure) -> Result<SplitReport> {
    if !j.compatible(model) || !k.compatible(model) {
        return Err(Error::IncompatibleStructure("split check needs structures compatible with the pairing".into()));
    }
    let basis = model.basis_sections();
    let l = |s: &GeneralizedSection| j.apply_j(&k.apply_j(s));
    let commute = basis.iter().all(|e| l(e) == k.apply_j(&j.apply_j(e)));
    let l_squared_identity = basis.iter().all(|e| l(&l(e)) == *e);
    let images: Vec<_> = basis.iter().map(l).collect();
    let l_isometry = (0..basis.len()).all(|a| {
        (a..basis.len()).all(|b| model.pairing(&images[a], &images[b]) == model.pairing(&basis[a], &basis[b]))
    });
    Ok(SplitReport {
        commute,
        l_squared_identity,
        l_isometry,
        j_integrable: j.closure(model)?.integrable(),
        k_integrable: k.closure(model)?.integrable(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionReport {
    /// Rank over the fraction field of `a₋*(T*M) ∪ A(T⁺)`.
    pub plus_rank: usize,
    /// Rank of `a₊*(T*M) ∪ A(T⁻)`.
    pub minus_rank: usize,
    pub plus_contained: bool,
    pub minus_contained: bool,
    pub half_rank: usize,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.plus_contained
            && self.minus_contained
            && self.plus_rank == self.half_rank
            && self.minus_rank == self.half_rank
    }
}

/// `E₊ = a₋*(T*M) ⊕ A(T⁺M)` and `E₋ = a₊*(T*M) ⊕ A(T⁻M)` with
/// `a₋* = pr₊∘ρ*`, `a₊* = pr₋∘ρ*`, checked on frames.
pub fn decomposition_check(
    model: &CourantPatchModel,
    j: &ParaStructure,
    jtm: &EigenFrame,
    a: &ConnectionMap,
) -> Result<DecompositionReport> {
    let h = j.rank();
    let cot: Vec<GeneralizedSection> = (0..jtm.dim()).map(|b| GeneralizedSection::covector(&jtm.coframe(b))).collect();
    let side = |plus: bool| -> Result<(usize, bool)> {
        let mut gens: Vec<GeneralizedSection> =
            cot.iter().map(|c| if plus { j.project_plus(c) } else { j.project_minus(c) }).collect();
        let vs = if plus { jtm.plus() } else { jtm.minus() };
        for v in vs {
            gens.push(a.apply(model, v)?);
        }
        let contained = gens.iter().all(|g| {
            let c = j.coefficients(g);
            (0..2 * h).all(|k| (k < h) == plus || c[k].is_zero())
        });
        let rows: Matrix<Polynomial> = gens.iter().map(|g| g.coefficients()).collect();
        Ok((rank(&rows), contained))
    };
    let (plus_rank, plus_contained) = side(true)?;
    let (minus_rank, minus_contained) = side(false)?;
    Ok(DecompositionReport { plus_rank, minus_rank, plus_contained, minus_contained, half_rank: h })
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelReport {
    /// `ρ(a₋* μ) = 0` for coordinate covectors.
    pub plus_image_in_kernel: bool,
    pub minus_image_in_kernel: bool,
    /// `dim ker a₊` and `dim Im a₋*` over the fraction field.
    pub plus_kernel_dim: usize,
    pub plus_image_dim: usize,
    pub minus_kernel_dim: usize,
    pub minus_image_dim: usize,
}

impl KernelReport {
    pub fn holds(&self) -> bool {
        self.plus_image_in_kernel
            && self.minus_image_in_kernel
            && self.plus_kernel_dim == self.plus_image_dim
            && self.minus_kernel_dim == self.minus_image_dim
    }
}

/// `ker a± = Im a∓*` with `a± = ρ|_{E±}`.
pub fn kernel_check(model: &CourantPatchModel, j: &ParaStructure) -> Result<KernelReport> {
    if !model.is_exact() {
        return Err(Error::Unsupported("a patch model".into()));
    }
    let m = model.nvars();
    let h = j.rank();
    let anchor_rank =
        |f: &[GeneralizedSection]| rank(&f.iter().map(|s| s.x().to_vec()).collect::<Matrix<Polynomial>>());
    let dx: Vec<GeneralizedSection> = (0..m).map(|i| model.basis_section(m + i)).collect();
    let side = |plus: bool| {
        let imgs: Vec<GeneralizedSection> =
            dx.iter().map(|c| if plus { j.project_plus(c) } else { j.project_minus(c) }).collect();
        let in_kernel = imgs.iter().all(|s| s.is_tangent_free());
        let image_dim = rank(&imgs.iter().map(|s| s.coefficients()).collect::<Matrix<Polynomial>>());
        let kernel_dim = h - anchor_rank(if plus { j.plus() } else { j.minus() });
        (in_kernel, kernel_dim, image_dim)
    };
    let (pk, pkd, pid) = side(true);
    let (mk, mkd, mid) = side(false);
    Ok(KernelReport {
        plus_image_in_kernel: pk,
        minus_image_in_kernel: mk,
        plus_kernel_dim: pkd,
        plus_image_dim: pid,
        minus_kernel_dim: mkd,
        minus_image_dim: mid,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiReport {
    pub pi: PolyMultivector,
    /// `½[π,π]`.
    pub schouten_half: PolyMultivector,
    /// `ρ pr₋ ρ* = −ρ pr₊ ρ*` on coordinate covectors.
    pub consistent: bool,
    pub antisymmetric: bool,
    pub rank: usize,
    pub anchor_plus_rank: usize,
    pub anchor_minus_rank: usize,
    /// `dim(ρE₊ ∩ ρE₋)`.
    pub intersection_dim: usize,
}

impl PiReport {
    pub fn rank_law_holds(&self) -> bool {
        self.rank == self.intersection_dim
    }
}

/// `ι_μπ = ρ(pr₋(ρ*μ))`.
pub fn bivector_pi(model: &CourantPatchModel, j: &ParaStructure) -> Result<PiReport> {
    if !model.is_exact() {
        return Err(Error::Unsupported("a patch model".into()));
    }
    let m = model.nvars();
    let mut rows: Matrix<Polynomial> = Vec::new();
    let mut consistent = true;
    for i in 0..m {
        let c = model.basis_section(m + i);
        let minus = j.project_minus(&c).x().to_vec();
        let plus = j.project_plus(&c).x().to_vec();
        if minus.iter().zip(&plus).any(|(a, b)| !(a + b).is_zero()) {
            consistent = false;
        }
        rows.push(minus);
    }
    let antisymmetric = (0..m).all(|i| (0..m).all(|k| (&rows[i][k] + &rows[k][i]).is_zero()));
    let mut t = AltTensor::zero(m, 2, m);
    for i in 0..m {
        for k in i + 1..m {
            t.add_term((1 << i) | (1 << k), &rows[i][k]);
        }
    }
    let pi = PolyMultivector::from_tensor(t);
    let schouten_half = pi.schouten(&pi)?.scale(&Polynomial::constant(m, Rational::new(1, 2)));
    let anchors = |f: &[GeneralizedSection]| f.iter().map(|s| s.x().to_vec()).collect::<Matrix<Polynomial>>();
    let (ap, am) = (anchors(j.plus()), anchors(j.minus()));
    let (rp, rm) = (rank(&ap), rank(&am));
    let mut all = ap;
    all.extend(am);
    let union = rank(&all);
    Ok(PiReport {
        rank: rank(&rows),
        pi,
        schouten_half,
        consistent,
        antisymmetric,
        anchor_plus_rank: rp,
        anchor_minus_rank: rm,
        intersection_dim: rp + rm - union,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionForms {
    /// `φ(a,b,c) = ⟨[e_a,e_b],e_c⟩` on the `E₊` frame.
    pub phi: AltTensor,
    /// `ψ(a,b,c) = ⟨[f_a,f_b],f_c⟩` on the `E₋` frame.
    pub psi: AltTensor,
    /// `d₊φ` for the projected bracket `pr₊[·,·]` on `E₊`.
    pub d_plus_phi: AltTensor,
    pub d_minus_psi: AltTensor,
    /// `⟨[e_a,e_b],e_c⟩` is alternating on the evaluated triples.
    pub alternating: bool,
}

fn obstruction(model: &CourantPatchModel, f: &[GeneralizedSection]) -> Result<(AltTensor, bool)> {
    let h = f.len();
    let mut t = AltTensor::zero(h, 3, model.nvars());
    let mut alternating = true;
    for a in 0..h {
        for b in a + 1..h {
            let br = model.bracket(&f[a], &f[b])?;
            for c in 0..h {
                let v = model.pairing(&br, &f[c]);
                if c == a || c == b {
                    alternating &= v.is_zero();
                } else if c > b {
                    t.add_term((1 << a) | (1 << b) | (1 << c), &v);
                } else if t.component(&[a, b, c]) != v {
                    alternating = false;
                }
            }
        }
    }
    Ok((t, alternating))
}

pub fn obstruction_forms(model: &CourantPatchModel, j: &ParaStructure) -> Result<ObstructionForms> {
    if !j.compatible(model) {
        return Err(Error::IncompatibleStructure("eigenbundles are not isotropic".into()));
    }
    let h = j.rank();
    let (phi, a1) = obstruction(model, j.plus())?;
    let (psi, a2) = obstruction(model, j.minus())?;
    let ep = AlgebroidData::from_sections(model, j.plus(), |s| j.coefficients(s)[..h].to_vec())?;
    let em = AlgebroidData::from_sections(model, j.minus(), |s| j.coefficients(s)[h..].to_vec())?;
    Ok(ObstructionForms { d_plus_phi: ep.d(&phi), d_minus_psi: em.d(&psi), phi, psi, alternating: a1 && a2 })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CyclicReport {
    pub holds: bool,
    pub cases: usize,
    /// First failing triple of `E₊` frame indices.
    pub witness: Option<[usize; 3]>,
}

/// `Σ_cyc ⟨e_k, N(e_i,e_j)⟩ = 3 φ(e_i,e_j,e_k)` on all `E₊` frame triples,
/// and the same for `ψ` on `E₋`. On an eigenbundle `N = pr∓[·,·]`, so each
/// cyclic term equals `φ`.
pub fn obstruction_cyclic_check(model: &CourantPatchModel, j: &ParaStructure) -> Result<CyclicReport> {
    let forms = obstruction_forms(model, j)?;
    let h = j.rank();
    let three = Polynomial::constant(model.nvars(), Rational::from_int(3));
    let mut cases = 0;
    for (f, form) in [(j.plus(), &forms.phi), (j.minus(), &forms.psi)] {
        for i in 0..h {
            for k in 0..h {
                for l in 0..h {
                    if i == k || k == l || i == l {
                        continue;
                    }
                    cases += 1;
                    let idx = [i, k, l];
                    let mut s = Polynomial::zero(model.nvars());
                    for r in 0..3 {
                        let (a, b, c) = (idx[r], idx[(r + 1) % 3], idx[(r + 2) % 3]);
                        s.add_assign_ref(&model.pairing(&f[c], &j.nijenhuis(model, &f[a], &f[b])?));
                    }
                    if s != &three * &form.component(&idx) {
                        return Ok(CyclicReport { holds: false, cases, witness: Some(idx) });
                    }
                }
            }
        }
    }
    Ok(CyclicReport { holds: true, cases, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Patch;

    fn model(n: usize) -> CourantPatchModel {
        CourantPatchModel::standard(Patch::standard(n))
    }

    fn rotated(m: &CourantPatchModel) -> ParaStructure {
        let s = |src: &str| m.parse_section(src).unwrap();
        ParaStructure::explicit(m, vec![s("∂x + dy"), s("∂y - dx")], vec![s("∂x - dy"), s("∂y + dx")]).unwrap()
    }

    fn nonintegrable(m: &CourantPatchModel) -> EigenFrame {
        let p = m.patch();
        let v = |s: &str| p.parse_vector_field(s).unwrap();
        EigenFrame::from_split(vec![v("∂x1"), v("∂x2 + x1*∂x3")], vec![v("∂x3"), v("∂x4")]).unwrap()
    }

    #[test]
    fn lifted_structure_on_r2() {
        let m = model(2);
        let jtm = EigenFrame::coordinate(2).unwrap();
        let j = ParaStructure::lifted(&m, &jtm).unwrap();
        assert!(j.compatible(&m) && j.closure(&m).unwrap().integrable());
        let (ex, dx) = (m.parse_section("∂x").unwrap(), m.parse_section("dx").unwrap());
        assert_eq!(j.fundamental_form(&m, &ex, &dx).unwrap(), Polynomial::from_int(2, -1));
        for a in j.frame() {
            for b in j.frame() {
                assert!(j.nijenhuis(&m, a, b).unwrap().is_zero());
            }
        }
        let r = para_holomorphic_anchor_check(&m, &j, &jtm).unwrap();
        assert!(r.holds() && r.integrable);
        let pi = bivector_pi(&m, &j).unwrap();
        assert!(pi.pi.is_zero() && pi.rank_law_holds() && pi.consistent);
        assert!(kernel_check(&m, &j).unwrap().holds());

        let swapped = ParaStructure::type_swapped(&m, &jtm).unwrap();
        assert!(!para_holomorphic_anchor_check(&m, &swapped, &jtm).unwrap().holds());
        assert!(swapped.fundamental_form(&m, &ex, &dx).is_err());
    }

    #[test]
    fn rotated_structure() {
        let m = model(2);
        let j = rotated(&m);
        assert!(j.compatible(&m));
        let r = bivector_pi(&m, &j).unwrap();
        assert_eq!(r.pi, m.patch().parse_multivector("1/2*∂x^∂y").unwrap());
        assert!(r.schouten_half.is_zero() && r.consistent && r.antisymmetric);
        assert_eq!((r.rank, r.intersection_dim), (2, 2));
        let jtm = EigenFrame::coordinate(2).unwrap();
        assert!(!para_holomorphic_anchor_check(&m, &j, &jtm).unwrap().anchor_intertwines);
        let k = kernel_check(&m, &j).unwrap();
        assert!(!k.plus_image_in_kernel && !k.holds());
    }

    #[test]
    fn nonintegrable_obstruction() {
        let m = model(4);
        let jtm = nonintegrable(&m);
        let j = ParaStructure::lifted(&m, &jtm).unwrap();
        let e = j.plus();
        assert_eq!(e[2], m.parse_section("dx3 - x1*dx2").unwrap());
        let f = obstruction_forms(&m, &j).unwrap();
        assert_eq!(f.phi.component(&[0, 1, 2]), Polynomial::one(4));
        assert!(f.alternating);
        assert!(f.d_plus_phi.is_zero() && f.d_minus_psi.is_zero());
        assert!(obstruction_cyclic_check(&m, &j).unwrap().holds);
        let n = j.nijenhuis(&m, &e[0], &e[1]).unwrap();
        assert_eq!(n, m.parse_section("∂x3").unwrap());
        assert!(!j.closure(&m).unwrap().plus_closed);
    }

    #[test]
    fn standard_k_and_split() {
        let m = model(4);
        let p = m.patch().clone();
        let jtm = EigenFrame::coordinate(4).unwrap();
        let j = ParaStructure::lifted(&m, &jtm).unwrap();
        let closed = ConnectionMap::Graph(p.parse_form("dx1^dx3 + dx2^dx4").unwrap());
        let k = standard_k(&m, &closed).unwrap();
        assert!(k.compatible(&m) && k.closure(&m).unwrap().integrable());
        assert!(para_complex_connection_check(&m, &closed, &j, &jtm).unwrap().holds());
        assert!(split_check(&m, &j, &k).unwrap().holds());
        assert!(split_check(&m, &j, &j).unwrap().holds());
        assert!(decomposition_check(&m, &j, &jtm, &closed).unwrap().holds());

        let bad = ConnectionMap::Graph(p.parse_form("dx1^dx2").unwrap());
        let r = para_complex_connection_check(&m, &bad, &j, &jtm).unwrap();
        assert!(!r.intertwines && r.graph_condition == Some(false));
        let kb = standard_k(&m, &bad).unwrap();
        assert!(!split_check(&m, &j, &kb).unwrap().commute);

        let curved = ConnectionMap::Graph(p.parse_form("x1*dx2^dx3").unwrap());
        let kc = standard_k(&m, &curved).unwrap();
        let c = kc.closure(&m).unwrap();
        assert!(!c.plus_closed && c.minus_closed);
    }
}
