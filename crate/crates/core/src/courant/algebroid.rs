use rand::Rng;

use super::{CourantPatchModel, GeneralizedSection, ParaStructure};
use crate::cartan::tensor::{indices, AltTensor, IndexSet};
use crate::cartan::PolyForm;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebraData, LieBialgebraData};
use crate::linalg::Matrix;
use crate::scalar::random::random_polynomial;
use crate::scalar::{Polynomial, Rational};

/// Anchor and structure functions of a local frame `{e_a}`:
/// `ρ(e_a) = Σ anchor[a][l] ∂_l` and `[e_a,e_b] = Σ c[a][b][m] e_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebroidData {
    rank: usize,
    nvars: usize,
    anchor: Matrix<Polynomial>,
    c: Vec<Vec<Vec<Polynomial>>>,
}

impl AlgebroidData {
    pub fn new(nvars: usize, anchor: Matrix<Polynomial>, c: Vec<Vec<Vec<Polynomial>>>) -> Result<Self> {
        let rank = anchor.len();
        if anchor.iter().any(|r| r.len() != nvars)
            || c.len() != rank
            || c.iter().any(|r| r.len() != rank || r.iter().any(|v| v.len() != rank))
        {
            return Err(Error::Shape("algebroid data has inconsistent shape".into()));
        }
        Ok(AlgebroidData { rank, nvars, anchor, c })
    }

    /// `TM` with the coordinate frame.
    pub fn tangent(n: usize) -> Self {
        let anchor = (0..n).map(|a| (0..n).map(|l| Polynomial::from_int(n, (a == l) as i64)).collect()).collect();
        AlgebroidData { rank: n, nvars: n, anchor, c: vec![vec![vec![Polynomial::zero(n); n]; n]; n] }
    }

    /// A Lie algebra acting trivially, at constant sections.
    pub fn from_lie(g: &LieAlgebraData) -> Self {
        let n = g.dim();
        let c = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| g.basis_bracket(a, b).iter().map(|q| Polynomial::constant(0, q.clone())).collect())
                    .collect()
            })
            .collect();
        AlgebroidData { rank: n, nvars: 0, anchor: vec![Vec::new(); n], c }
    }

    /// Frame `sections` of a subbundle of `E` with bracket coefficients read
    /// off by `coeffs` (e.g. a projection followed by frame coordinates).
    pub fn from_sections(
        model: &CourantPatchModel,
        sections: &[GeneralizedSection],
        coeffs: impl Fn(&GeneralizedSection) -> Vec<Polynomial>,
    ) -> Result<Self> {
        let r = sections.len();
        let m = model.nvars();
        let anchor: Matrix<Polynomial> =
            sections.iter().map(|s| if model.is_exact() { s.x().to_vec() } else { Vec::new() }).collect();
        let mut c = vec![vec![vec![Polynomial::zero(m); r]; r]; r];
        for a in 0..r {
            for b in a + 1..r {
                let v = coeffs(&model.bracket(&sections[a], &sections[b])?);
                c[b][a] = v.iter().map(|p| -p).collect();
                c[a][b] = v;
            }
        }
        AlgebroidData::new(m, anchor, c)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn anchor_apply(&self, a: usize, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (l, c) in self.anchor[a].iter().enumerate() {
            if !c.is_zero() {
                let d = f.d(l);
                if !d.is_zero() {
                    out.add_mul(c, &d);
                }
            }
        }
        out
    }

    pub fn zero_form(&self, degree: usize) -> AltTensor {
        AltTensor::zero(self.rank, degree, self.nvars)
    }

    /// `(dσ)(e₀,…,e_k) = Σ (−1)^s ρ(e_s)σ(…ê_s…) + Σ_{s<t} (−1)^{s+t} σ([e_s,e_t],…ê_s…ê_t…)`.
    pub fn d(&self, sigma: &AltTensor) -> AltTensor {
        assert_eq!(sigma.rank(), self.rank);
        let k = sigma.degree();
        let mut out = self.zero_form(k + 1);
        if k + 1 > self.rank {
            return out;
        }
        for mask in 0u32..(1u32 << self.rank) {
            if mask.count_ones() as usize != k + 1 {
                continue;
            }
            let idx: Vec<usize> = indices(mask).collect();
            let mut v = Polynomial::zero(self.nvars);
            for (s, &i) in idx.iter().enumerate() {
                let rest = sigma.get(mask & !(1 << i));
                if rest.is_zero() {
                    continue;
                }
                let t = self.anchor_apply(i, &rest);
                if s % 2 == 0 {
                    v.add_assign_ref(&t);
                } else {
                    v.sub_assign_ref(&t);
                }
            }
            for s in 0..idx.len() {
                for t in s + 1..idx.len() {
                    let (i, j) = (idx[s], idx[t]);
                    let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != i && x != j).collect();
                    let mut acc = Polynomial::zero(self.nvars);
                    for (m, cm) in self.c[i][j].iter().enumerate() {
                        if cm.is_zero() {
                            continue;
                        }
                        let mut args = vec![m];
                        args.extend(&rest);
                        let sc = sigma.component(&args);
                        if !sc.is_zero() {
                            acc.add_mul(cm, &sc);
                        }
                    }
                    if (s + t) % 2 == 0 {
                        v.add_assign_ref(&acc);
                    } else {
                        v.sub_assign_ref(&acc);
                    }
                }
            }
            out.add_term(mask, &v);
        }
        out
    }
}

fn constant_vector(v: &[Polynomial]) -> Vec<Rational> {
    v.iter().map(|p| p.constant_value().unwrap_or_else(Rational::zero)).collect()
}

fn one_form(v: &[Rational]) -> AltTensor {
    let mut t = AltTensor::zero(v.len(), 1, 0);
    for (i, q) in v.iter().enumerate() {
        t.add_term(1 << i, &Polynomial::constant(0, q.clone()));
    }
    t
}

fn contract_const(t: &AltTensor, x: &[Rational]) -> Vec<Polynomial> {
    let v: Vec<Polynomial> = x.iter().map(|q| Polynomial::constant(0, q.clone())).collect();
    let r = t.contract(&v);
    (0..x.len()).map(|i| r.get(1 << i)).collect()
}

/// Induced bracket on constant sections of `A ⊕ A*` with zero anchor:
/// `([X,Y] + ι_ξ d_{A*}Y − ι_η d_{A*}X) ⊕ ([ξ,η] + ι_X d_A η − ι_Y d_A ξ)`.
/// The `⟨·,·⟩₋` terms vanish because `d` kills constants.
pub(super) fn induced_bracket(
    bi: &LieBialgebraData,
    a: &GeneralizedSection,
    b: &GeneralizedSection,
) -> GeneralizedSection {
    let da = AlgebroidData::from_lie(&bi.k);
    let dd = AlgebroidData::from_lie(&bi.dual);
    let (x, xi) = (constant_vector(a.x()), constant_vector(a.xi()));
    let (y, eta) = (constant_vector(b.x()), constant_vector(b.xi()));
    let lie = |v: Vec<Rational>| v.into_iter().map(|q| Polynomial::constant(0, q)).collect::<Vec<_>>();
    let mut lo = lie(bi.k.bracket(&x, &y));
    let t1 = contract_const(&dd.d(&one_form(&y)), &xi);
    let t2 = contract_const(&dd.d(&one_form(&x)), &eta);
    for i in 0..lo.len() {
        lo[i] = &(&lo[i] + &t1[i]) - &t2[i];
    }
    let mut hi = lie(bi.dual.bracket(&xi, &eta));
    let s1 = contract_const(&da.d(&one_form(&eta)), &x);
    let s2 = contract_const(&da.d(&one_form(&xi)), &y);
    for i in 0..hi.len() {
        hi[i] = &(&hi[i] + &s1[i]) - &s2[i];
    }
    GeneralizedSection::from_parts(0, lo, hi)
}

/// Local data of `E = E₊ ⊕ E₋` in frames `{eᵢ⁺}`, `{eᵢ⁻}` dual under the
/// pairing (`⟨eᵢ⁺, eⱼ⁻⟩ = δᵢⱼ`), with both eigenbundles bracket-closed.
///
/// Index convention on structure functions:
/// * `c_pp[i][j][k] = C_{ij}^k`: `[eᵢ⁺,eⱼ⁺] = C_{ij}^k e_k⁺`;
/// * `c_mp_plus[i][j][k]`, `c_mp_minus[i][j][k]`: `[eᵢ⁻,eⱼ⁺] = C_{īj}^k e_k⁺ + C_{īj}^{k̄} e_k⁻`;
/// * `c_mm[i][j][k] = C_{īj̄}^{k̄}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalBialgebroidData {
    pub nvars: usize,
    pub a_plus: Matrix<Polynomial>,
    pub a_minus: Matrix<Polynomial>,
    pub c_pp: Vec<Vec<Vec<Polynomial>>>,
    pub c_mp_plus: Vec<Vec<Vec<Polynomial>>>,
    pub c_mp_minus: Vec<Vec<Vec<Polynomial>>>,
    pub c_mm: Vec<Vec<Vec<Polynomial>>>,
}

/// `d₊σ` and `d₋σ` as forms on `E`; slots `0..n` are dual to `eᵢ⁺`, slots
/// `n..2n` dual to `eᵢ⁻`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalDPlusMinus {
    pub plus: AltTensor,
    pub minus: AltTensor,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PdeResidual {
    /// First printed PDE, nonzero entries by `(i, j, k)`.
    pub printed_first: Vec<([usize; 3], Polynomial)>,
    /// Second printed PDE, nonzero entries by `(i, j, k)`.
    pub printed_second: Vec<([usize; 3], Polynomial)>,
    /// `d₊ω`, the `(2,1)` part of `d_E ω`.
    pub cartan_plus: AltTensor,
    /// `d₋ω`, the `(1,2)` part of `d_E ω`.
    pub cartan_minus: AltTensor,
}

impl PdeResidual {
    pub fn cartan_vanishes(&self) -> bool {
        self.cartan_plus.is_zero() && self.cartan_minus.is_zero()
    }

    pub fn printed_vanishes(&self) -> bool {
        self.printed_first.is_empty() && self.printed_second.is_empty()
    }
}

fn zeros3(n: usize, m: usize) -> Vec<Vec<Vec<Polynomial>>> {
    vec![vec![vec![Polynomial::zero(m); n]; n]; n]
}

impl LocalBialgebroidData {
    pub fn n(&self) -> usize {
        self.a_plus.len()
    }

    /// Trivial data: `C = 0`, anchors given.
    pub fn flat(a_plus: Matrix<Polynomial>, a_minus: Matrix<Polynomial>, nvars: usize) -> Self {
        let n = a_plus.len();
        LocalBialgebroidData {
            nvars,
            a_plus,
            a_minus,
            c_pp: zeros3(n, nvars),
            c_mp_plus: zeros3(n, nvars),
            c_mp_minus: zeros3(n, nvars),
            c_mm: zeros3(n, nvars),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let shape3 = |c: &Vec<Vec<Vec<Polynomial>>>| {
            c.len() == n && c.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n))
        };
        if self.a_minus.len() != n
            || self.a_plus.iter().chain(&self.a_minus).any(|r| r.len() != self.nvars)
            || ![&self.c_pp, &self.c_mp_plus, &self.c_mp_minus, &self.c_mm].iter().all(|c| shape3(c))
        {
            return Err(Error::Shape("local bialgebroid data has inconsistent index ranges".into()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c_pp[i][j][k] != -&self.c_pp[j][i][k] || self.c_mm[i][j][k] != -&self.c_mm[j][i][k] {
                        return Err(Error::Shape(format!("structure functions not antisymmetric at ({i},{j})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Read the data off a compatible para-structure whose eigenframes are
    /// dual and whose eigenbundles are both bracket-closed.
    pub fn from_structure(model: &CourantPatchModel, j: &ParaStructure) -> Result<Self> {
        let n = model.rank();
        let m = model.nvars();
        for a in 0..n {
            for b in 0..n {
                let p = model.pairing(&j.plus()[a], &j.minus()[b]);
                if p != Polynomial::from_int(m, (a == b) as i64) {
                    return Err(Error::IncompatibleStructure("eigenframes are not dual under the pairing".into()));
                }
            }
        }
        let full = AlgebroidData::from_sections(model, j.frame(), |s| j.coefficients(s))?;
        let mut d = LocalBialgebroidData::flat(
            j.plus().iter().map(|s| full_anchor(model, s)).collect(),
            j.minus().iter().map(|s| full_anchor(model, s)).collect(),
            m,
        );
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    if !full.c[a][b][n + k].is_zero() {
                        return Err(Error::IncompatibleStructure("E+ is not bracket-closed".into()));
                    }
                    if !full.c[n + a][n + b][k].is_zero() {
                        return Err(Error::IncompatibleStructure("E- is not bracket-closed".into()));
                    }
                    d.c_pp[a][b][k] = full.c[a][b][k].clone();
                    d.c_mm[a][b][k] = full.c[n + a][n + b][n + k].clone();
                    d.c_mp_plus[a][b][k] = full.c[n + a][b][k].clone();
                    d.c_mp_minus[a][b][k] = full.c[n + a][b][n + k].clone();
                }
            }
        }
        Ok(d)
    }

    /// Random data with polynomial entries; brackets need not satisfy Jacobi.
    pub fn random<R: Rng>(rng: &mut R, n: usize, nvars: usize, degree: u32) -> Self {
        let p = |rng: &mut R| random_polynomial(rng, nvars, degree, 2);
        let mat = |rng: &mut R| (0..n).map(|_| (0..nvars).map(|_| p(rng)).collect()).collect::<Matrix<Polynomial>>();
        let a_plus = mat(rng);
        let a_minus = mat(rng);
        let mut d = LocalBialgebroidData::flat(a_plus, a_minus, nvars);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    d.c_mp_plus[i][j][k] = random_polynomial(rng, nvars, degree, 2);
                    d.c_mp_minus[i][j][k] = random_polynomial(rng, nvars, degree, 2);
                    if i < j {
                        d.c_pp[i][j][k] = random_polynomial(rng, nvars, degree, 2);
                        d.c_pp[j][i][k] = -&d.c_pp[i][j][k];
                        d.c_mm[i][j][k] = random_polynomial(rng, nvars, degree, 2);
                        d.c_mm[j][i][k] = -&d.c_mm[i][j][k];
                    }
                }
            }
        }
        d
    }

    /// The full frame `{e⁺…, e⁻…}` as algebroid data.
    pub fn to_algebroid(&self) -> AlgebroidData {
        let n = self.n();
        let m = self.nvars;
        let anchor: Matrix<Polynomial> = self.a_plus.iter().chain(&self.a_minus).cloned().collect();
        let mut c = zeros3(2 * n, m);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = self.c_pp[i][j][k].clone();
                    c[n + i][n + j][n + k] = self.c_mm[i][j][k].clone();
                    c[n + i][j][k] = self.c_mp_plus[i][j][k].clone();
                    c[n + i][j][n + k] = self.c_mp_minus[i][j][k].clone();
                    c[j][n + i][k] = -&self.c_mp_plus[i][j][k];
                    c[j][n + i][n + k] = -&self.c_mp_minus[i][j][k];
                }
            }
        }
        AlgebroidData { rank: 2 * n, nvars: m, anchor, c }
    }

    fn deriv(&self, a: &[Polynomial], f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (l, c) in a.iter().enumerate() {
            if !c.is_zero() {
                let d = f.d(l);
                if !d.is_zero() {
                    out.add_mul(c, &d);
                }
            }
        }
        out
    }
}

fn full_anchor(model: &CourantPatchModel, s: &GeneralizedSection) -> Vec<Polynomial> {
    if model.is_exact() {
        s.x().to_vec()
    } else {
        Vec::new()
    }
}

/// `σ = σ⁺ + σ⁻` with `σ± = Σ σᵢ± eᵢ±`, viewed as a one-form on `E` through
/// the pairing, returns `(d₊σ, d₋σ)` from the coordinate formulas:
///
/// * `d₊σ⁺ = Σ_{j,i} (A_j^l ∂_l σᵢ⁺ + C_{īj}^{m̄} σ_m⁺) εʲ∧ε^ī`
/// * `d₋σ⁺ = Σ_{j<k} (A_j̄^l ∂_l σ_k⁺ − A_k̄^l ∂_l σ_j⁺ − C_{j̄k̄}^{m̄} σ_m⁺) ε^j̄∧ε^k̄`
/// * `d₊σ⁻ = Σ_{j<k} (A_j^l ∂_l σ_k⁻ − A_k^l ∂_l σ_j⁻ − C_{jk}^m σ_m⁻) εʲ∧εᵏ`
/// * `d₋σ⁻ = Σ_{j,k} (C_{k̄j}^m σ_m⁻ − A_k̄^l ∂_l σ_j⁻) εʲ∧ε^k̄`
pub fn d_plus_minus_local(
    data: &LocalBialgebroidData,
    sigma_plus: &[Polynomial],
    sigma_minus: &[Polynomial],
) -> Result<LocalDPlusMinus> {
    data.validate()?;
    let n = data.n();
    if sigma_plus.len() != n || sigma_minus.len() != n {
        return Err(Error::Shape(format!("section components must have length {n}")));
    }
    let m = data.nvars;
    let mut plus = AltTensor::zero(2 * n, 2, m);
    let mut minus = AltTensor::zero(2 * n, 2, m);
    let bar = |i: usize| n + i;
    let put = |t: &mut AltTensor, a: usize, b: usize, v: &Polynomial| {
        if a == b || v.is_zero() {
            return;
        }
        let mask: IndexSet = (1 << a) | (1 << b);
        t.add_term_signed(mask, if a < b { 1 } else { -1 }, v);
    };
    for j in 0..n {
        for i in 0..n {
            let mut v = data.deriv(&data.a_plus[j], &sigma_plus[i]);
            for (mm, s) in sigma_plus.iter().enumerate() {
                if !s.is_zero() {
                    v.add_mul(&data.c_mp_minus[i][j][mm], s);
                }
            }
            put(&mut plus, j, bar(i), &v);

            let mut w = Polynomial::zero(m);
            for (mm, s) in sigma_minus.iter().enumerate() {
                if !s.is_zero() {
                    w.add_mul(&data.c_mp_plus[i][j][mm], s);
                }
            }
            w.sub_assign_ref(&data.deriv(&data.a_minus[i], &sigma_minus[j]));
            put(&mut minus, j, bar(i), &w);
        }
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut v = &data.deriv(&data.a_minus[j], &sigma_plus[k]) - &data.deriv(&data.a_minus[k], &sigma_plus[j]);
            let mut w = &data.deriv(&data.a_plus[j], &sigma_minus[k]) - &data.deriv(&data.a_plus[k], &sigma_minus[j]);
            for mm in 0..n {
                if !sigma_plus[mm].is_zero() {
                    v.sub_assign_ref(&(&data.c_mm[j][k][mm] * &sigma_plus[mm]));
                }
                if !sigma_minus[mm].is_zero() {
                    w.sub_assign_ref(&(&data.c_pp[j][k][mm] * &sigma_minus[mm]));
                }
            }
            put(&mut minus, bar(j), bar(k), &v);
            put(&mut plus, j, k, &w);
        }
    }
    Ok(LocalDPlusMinus { plus, minus })
}

/// Split a form on `E = E₊ ⊕ E₋` (slots as in [`LocalDPlusMinus`]) by type.
pub fn type_part(t: &AltTensor, n: usize, p: usize) -> AltTensor {
    let lo: IndexSet = (1 << n) - 1;
    t.filter(|m| (m & lo).count_ones() as usize == p)
}

/// `w[i][j] = ω(ρeᵢ⁺, ρeⱼ⁻)` for a 2-form `ω` on the base, the `(1,1)`
/// coefficients of `ρ*ω` when `ω` has no `(2,0)` or `(0,2)` part on `E`.
pub fn anchor_pullback(model: &CourantPatchModel, j: &ParaStructure, omega: &PolyForm) -> Result<Matrix<Polynomial>> {
    let mut w = Vec::new();
    for a in j.plus() {
        let mut row = Vec::new();
        for b in j.minus() {
            row.push(omega.evaluate(&[model.anchor(a), model.anchor(b)])?);
        }
        w.push(row);
    }
    Ok(w)
}

/// The two printed PDEs for a `(1,1)`-form `ω` with `w[i][j] = ω(eᵢ⁺, eⱼ⁻)`,
/// next to `d₊ω` and `d₋ω` computed from the Cartan formula.
pub fn para_kahler_pde_check(data: &LocalBialgebroidData, w: &Matrix<Polynomial>) -> Result<PdeResidual> {
    data.validate()?;
    let n = data.n();
    if w.len() != n || w.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("ω coefficients must be {n}×{n}")));
    }
    let m = data.nvars;
    // ω_{ij̄} = w[i][j], ω_{īj} = −w[j][i]; C_{ik̄}^{l̄} = −C_{k̄i}^{l̄}.
    let om_bar_un = |i: usize, j: usize| -&w[j][i];
    let c_ik_bar = |i: usize, k: usize, l: usize| -&data.c_mp_minus[k][i][l];
    let mut first = Vec::new();
    let mut second = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut common = Polynomial::zero(m);
                for l in 0..n {
                    common.sub_assign_ref(&(&data.c_pp[i][j][l] * &w[l][k]));
                    common.add_assign_ref(&(&c_ik_bar(i, k, l) * &om_bar_un(l, j)));
                    common.sub_assign_ref(&(&c_ik_bar(j, k, l) * &om_bar_un(l, i)));
                }
                let r1 = &(&data.deriv(&data.a_minus[i], &om_bar_un(j, k))
                    - &data.deriv(&data.a_minus[j], &om_bar_un(i, k)))
                    + &common;
                let r2 = &(&data.deriv(&data.a_plus[i], &w[j][k]) - &data.deriv(&data.a_plus[j], &w[i][k])) + &common;
                if !r1.is_zero() {
                    first.push(([i, j, k], r1));
                }
                if !r2.is_zero() {
                    second.push(([i, j, k], r2));
                }
            }
        }
    }
    let mut omega = AltTensor::zero(2 * n, 2, m);
    for i in 0..n {
        for j in 0..n {
            omega.add_term((1 << i) | (1 << (n + j)), &w[i][j]);
        }
    }
    let d = data.to_algebroid().d(&omega);
    Ok(PdeResidual {
        printed_first: first,
        printed_second: second,
        cartan_plus: type_part(&d, n, 2),
        cartan_minus: type_part(&d, n, 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{EigenFrame, Patch};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tangent_algebroid_matches_exterior_derivative() {
        let p = Patch::standard(3);
        let alg = AlgebroidData::tangent(3);
        for src in ["x*y*dz", "x^2*dx^dy + z*dy^dz", "x*y*z"] {
            let f = p.parse_form(src).unwrap();
            let d = alg.d(f.tensor());
            assert_eq!(PolyForm::from_tensor(d), f.d());
        }
    }

    #[test]
    fn action_algebroid_values() {
        let b2 = AlgebroidData::from_lie(&LieAlgebraData::b2());
        let eps2 = one_form(&[Rational::zero(), Rational::one()]);
        let d = b2.d(&eps2);
        assert_eq!(d.component(&[0, 1]), Polynomial::constant(0, Rational::from_int(-1)));
        let su2 = AlgebroidData::from_lie(&LieAlgebraData::su2());
        for i in 0..3 {
            let mut v = vec![Rational::zero(); 3];
            v[i] = Rational::one();
            assert!(su2.d(&su2.d(&one_form(&v))).is_zero());
        }
    }

    #[test]
    fn local_formulas_match_cartan_formula() {
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let data = LocalBialgebroidData::random(&mut rng, 2, 3, 1);
            let sp: Vec<Polynomial> = (0..2).map(|_| random_polynomial(&mut rng, 3, 2, 3)).collect();
            let sm: Vec<Polynomial> = (0..2).map(|_| random_polynomial(&mut rng, 3, 2, 3)).collect();
            let local = d_plus_minus_local(&data, &sp, &sm).unwrap();
            let mut sigma = AltTensor::zero(4, 1, 3);
            for i in 0..2 {
                sigma.add_term(1 << (2 + i), &sp[i]);
                sigma.add_term(1 << i, &sm[i]);
            }
            let d = data.to_algebroid().d(&sigma);
            // (2,0) ⊕ (1,1) ⊕ (0,2); the (1,1) part is shared by d₊σ⁺ and d₋σ⁻.
            assert_eq!(local.plus.add(&local.minus), d, "seed {seed}");
        }
    }

    #[test]
    fn flat_pde_residuals_vanish() {
        let one = |v: i64| Polynomial::from_int(2, v);
        let a = vec![vec![one(1), one(0)]];
        let b = vec![vec![one(0), one(1)]];
        let data = LocalBialgebroidData::flat(a, b, 2);
        let r = para_kahler_pde_check(&data, &vec![vec![one(3)]]).unwrap();
        assert!(r.cartan_vanishes() && r.printed_vanishes());
    }

    #[test]
    fn structure_data_on_lifted_r4_and_b2() {
        let m = CourantPatchModel::standard(Patch::standard(4));
        let j = ParaStructure::lifted(&m, &EigenFrame::coordinate(4).unwrap()).unwrap();
        let data = LocalBialgebroidData::from_structure(&m, &j).unwrap();
        let w = m.patch().parse_form("-dx1^dx3 - 2*x1*dx1^dx4 - dx2^dx4").unwrap();
        let r = para_kahler_pde_check(&data, &anchor_pullback(&m, &j, &w).unwrap()).unwrap();
        assert!(r.cartan_vanishes());
        let open = m.patch().parse_form("x2*dx1^dx3").unwrap();
        assert!(!para_kahler_pde_check(&data, &anchor_pullback(&m, &j, &open).unwrap()).unwrap().cartan_vanishes());

        let c = CourantPatchModel::bialgebroid(LieBialgebraData::trivial(LieAlgebraData::b2())).unwrap();
        let j = ParaStructure::explicit(
            &c,
            vec![c.basis_section(0), c.basis_section(1)],
            vec![c.basis_section(2), c.basis_section(3)],
        )
        .unwrap();
        let data = LocalBialgebroidData::from_structure(&c, &j).unwrap();
        let z = Polynomial::zero(0);
        let d = d_plus_minus_local(&data, &[z.clone(), z.clone()], &[z, Polynomial::one(0)]).unwrap();
        assert_eq!(d.plus.component(&[0, 1]), Polynomial::from_int(0, -1));
    }
}
