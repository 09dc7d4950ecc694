//! Finite-dimensional real Lie algebras given by structure constants.

mod bialgebra;
mod realified;

pub use bialgebra::{BialgebraReport, LieBialgebraData, RMatrix};
pub use realified::{iwasawa_decompose, minus_im_killing, CMatrix, IwasawaParts, RealifiedSl};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, leading_minors, rank, Matrix};
use crate::scalar::Rational;

pub type Vector = Vec<Rational>;

fn zeros(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub(crate) fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

fn axpy(acc: &mut [Rational], a: &Rational, x: &[Rational]) {
    if a.is_zero() {
        return;
    }
    for (s, v) in acc.iter_mut().zip(x) {
        if !v.is_zero() {
            *s += &(a * v);
        }
    }
}

/// Brackets `[eᵢ,eⱼ] = Σₖ C^k_{ij} eₖ`, stored as `c[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraData {
    dim: usize,
    c: Vec<Vec<Vector>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiWitness {
    pub triple: [usize; 3],
    pub jacobiator: Vector,
}

impl LieAlgebraData {
    pub fn new(c: Vec<Vec<Vector>>) -> Result<Self> {
        let dim = c.len();
        for (i, row) in c.iter().enumerate() {
            if row.len() != dim || row.iter().any(|v| v.len() != dim) {
                return Err(Error::Shape(format!("structure constants must be {dim}×{dim}×{dim}")));
            }
            for j in 0..dim {
                for k in 0..dim {
                    if c[i][j][k] != -&c[j][i][k] {
                        return Err(Error::Shape(format!("C^{k}_{{{i}{j}}} is not antisymmetric")));
                    }
                }
            }
        }
        Ok(LieAlgebraData { dim, c })
    }

    /// Build from the nonzero brackets `[eᵢ,eⱼ]` with `i ≠ j`; the opposite
    /// order is filled in by antisymmetry. Later entries for the same pair
    /// override earlier ones.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vector)]) -> Result<Self> {
        let mut c = vec![vec![zeros(dim); dim]; dim];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::IndexOutOfRange { index: i.max(j), bound: dim });
            }
            if i == j || v.len() != dim {
                return Err(Error::Shape(format!("bad bracket entry [e{i}, e{j}]")));
            }
            c[i][j] = v.clone();
            c[j][i] = v.iter().map(|x| -x).collect();
        }
        Ok(LieAlgebraData { dim, c })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebraData { dim, c: vec![vec![zeros(dim); dim]; dim] }
    }

    fn ints(dim: usize, brackets: &[(usize, usize, &[i64])]) -> Self {
        let b: Vec<_> =
            brackets.iter().map(|(i, j, v)| (*i, *j, v.iter().map(|&x| Rational::from_int(x)).collect())).collect();
        Self::from_brackets(dim, &b).unwrap()
    }

    /// `[e₁,e₂] = e₃` and cyclic.
    pub fn su2() -> Self {
        Self::ints(3, &[(0, 1, &[0, 0, 1]), (1, 2, &[1, 0, 0]), (2, 0, &[0, 1, 0])])
    }

    /// Basis `{H, E, F}` with `[H,E] = 2E`, `[H,F] = −2F`, `[E,F] = H`.
    pub fn sl2r() -> Self {
        Self::ints(3, &[(0, 1, &[0, 2, 0]), (0, 2, &[0, 0, -2]), (1, 2, &[1, 0, 0])])
    }

    /// The two-dimensional non-abelian algebra, `[e₁,e₂] = e₂`.
    pub fn b2() -> Self {
        Self::ints(2, &[(0, 1, &[0, 1])])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Vec<Vector>] {
        &self.c
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.c[i][j]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = zeros(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    axpy(&mut out, &(xi * yj), &self.c[i][j]);
                }
            }
        }
        out
    }

    /// Matrix of `ad_X` acting on coordinate columns.
    pub fn ad(&self, x: &[Rational]) -> Matrix<Rational> {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.bracket(x, &unit(self.dim, j))).collect();
        (0..self.dim).map(|r| (0..self.dim).map(|j| cols[j][r].clone()).collect()).collect()
    }

    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vector {
        let n = self.dim;
        let (a, b, c) = (unit(n, i), unit(n, j), unit(n, k));
        let mut s = self.bracket(&self.c[i][j], &c);
        for (t, v) in s.iter_mut().zip(self.bracket(&self.c[j][k], &a)) {
            *t += &v;
        }
        for (t, v) in s.iter_mut().zip(self.bracket(&self.c[k][i], &b)) {
            *t += &v;
        }
        s
    }

    /// First basis triple `i < j < k` with nonzero Jacobiator.
    pub fn jacobi_check(&self) -> Option<JacobiWitness> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let jac = self.jacobiator(i, j, k);
                    if jac.iter().any(|x| !x.is_zero()) {
                        return Some(JacobiWitness { triple: [i, j, k], jacobiator: jac });
                    }
                }
            }
        }
        None
    }

    pub fn direct_sum(&self, o: &LieAlgebraData) -> LieAlgebraData {
        let n = self.dim + o.dim;
        let mut c = vec![vec![zeros(n); n]; n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                c[i][j][..self.dim].clone_from_slice(&self.c[i][j]);
            }
        }
        for i in 0..o.dim {
            for j in 0..o.dim {
                c[self.dim + i][self.dim + j][self.dim..].clone_from_slice(&o.c[i][j]);
            }
        }
        LieAlgebraData { dim: n, c }
    }

    /// `κ(X,Y) = 2·dim·Tr(ad_X ad_Y)`.
    pub fn killing_form(&self) -> BilinearFormData {
        let n = self.dim;
        let ads: Vec<Matrix<Rational>> = (0..n).map(|i| self.ad(&unit(n, i))).collect();
        let scale = Rational::from_int(2 * n as i64);
        let mut m = vec![zeros(n); n];
        for i in 0..n {
            for j in i..n {
                let mut tr = Rational::zero();
                for a in 0..n {
                    for b in 0..n {
                        if !ads[i][a][b].is_zero() && !ads[j][b][a].is_zero() {
                            tr += &(&ads[i][a][b] * &ads[j][b][a]);
                        }
                    }
                }
                m[i][j] = &tr * &scale;
                m[j][i] = m[i][j].clone();
            }
        }
        BilinearFormData { m }
    }

    /// Whether `span(w)` is closed under the bracket.
    pub fn is_subalgebra(&self, w: &[Vector]) -> bool {
        let r = rank(&w.to_vec());
        for (a, x) in w.iter().enumerate() {
            for y in &w[a + 1..] {
                let mut ext = w.to_vec();
                ext.push(self.bracket(x, y));
                if rank(&ext) != r {
                    return false;
                }
            }
        }
        true
    }
}

/// Symmetric bilinear form in a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilinearFormData {
    m: Matrix<Rational>,
}

impl BilinearFormData {
    pub fn new(m: Matrix<Rational>) -> Result<Self> {
        let n = m.len();
        if m.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("bilinear form must be square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if m[i][j] != m[j][i] {
                    return Err(Error::Shape(format!("bilinear form not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(BilinearFormData { m })
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.m[i][j]
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.m[i][j].is_zero() {
                    s += &(&(xi * yj) * &self.m[i][j]);
                }
            }
        }
        s
    }

    pub fn neg(&self) -> BilinearFormData {
        BilinearFormData { m: self.m.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    pub fn direct_sum(&self, o: &BilinearFormData) -> BilinearFormData {
        let (a, b) = (self.dim(), o.dim());
        let mut m = vec![zeros(a + b); a + b];
        for i in 0..a {
            m[i][..a].clone_from_slice(&self.m[i]);
        }
        for i in 0..b {
            m[a + i][a..].clone_from_slice(&o.m[i]);
        }
        BilinearFormData { m }
    }

    pub fn is_nondegenerate(&self) -> bool {
        determinant(&self.m).is_some_and(|d| !d.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|x| x.is_zero())
    }

    /// All leading principal minors of `−B` positive.
    pub fn negative_definite_check(&self) -> bool {
        !self.m.is_empty() && leading_minors(&self.neg().m).iter().all(|d| d.is_positive())
    }
}

/// A Lie algebra together with a symmetric pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticLieAlgebra {
    pub algebra: LieAlgebraData,
    pub pairing: BilinearFormData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagrangianReport {
    pub isotropic: bool,
    pub half_dimension: bool,
    pub closed: bool,
}

impl LagrangianReport {
    pub fn holds(&self) -> bool {
        self.isotropic && self.half_dimension && self.closed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManinReport {
    pub first: LagrangianReport,
    pub second: LagrangianReport,
    pub transverse: bool,
}

impl ManinReport {
    pub fn holds(&self) -> bool {
        self.first.holds() && self.second.holds() && self.transverse
    }
}

impl QuadraticLieAlgebra {
    pub fn new(algebra: LieAlgebraData, pairing: BilinearFormData) -> Result<Self> {
        if algebra.dim() != pairing.dim() {
            return Err(Error::Shape(format!("algebra has dimension {}, pairing {}", algebra.dim(), pairing.dim())));
        }
        Ok(QuadraticLieAlgebra { algebra, pairing })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// First basis triple with `B([X,Y],Z) + B(Y,[X,Z]) ≠ 0`.
    pub fn ad_invariance_check(&self) -> Option<[usize; 3]> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    let (y, z) = (unit(n, j), unit(n, k));
                    let a = self.pairing.eval(self.algebra.basis_bracket(i, j), &z);
                    let b = self.pairing.eval(&y, self.algebra.basis_bracket(i, k));
                    if !(a + b).is_zero() {
                        return Some([i, j, k]);
                    }
                }
            }
        }
        None
    }

    pub fn lagrangian_check(&self, w: &[Vector]) -> Result<LagrangianReport> {
        let n = self.dim();
        if w.iter().any(|v| v.len() != n) {
            return Err(Error::Shape(format!("subspace vectors must have length {n}")));
        }
        if rank(&w.to_vec()) != w.len() {
            return Err(Error::DependentGenerators);
        }
        let isotropic = w.iter().all(|x| w.iter().all(|y| self.pairing.eval(x, y).is_zero()));
        Ok(LagrangianReport { isotropic, half_dimension: 2 * w.len() == n, closed: self.algebra.is_subalgebra(w) })
    }

    pub fn manin_triple_check(&self, l1: &[Vector], l2: &[Vector]) -> Result<ManinReport> {
        let first = self.lagrangian_check(l1)?;
        let second = self.lagrangian_check(l2)?;
        let both: Vec<Vector> = l1.iter().chain(l2).cloned().collect();
        let transverse = rank(&both) == l1.len() + l2.len();
        Ok(ManinReport { first, second, transverse })
    }
}

/// `{(eᵢ, eᵢ)}` inside `𝔤 ⊕ 𝔤`.
pub fn diagonal(dim: usize) -> Vec<Vector> {
    (0..dim)
        .map(|i| {
            let mut v = zeros(2 * dim);
            v[i] = Rational::one();
            v[dim + i] = Rational::one();
            v
        })
        .collect()
}

/// `{(eᵢ, −eᵢ)}` inside `𝔤 ⊕ 𝔤`.
pub fn anti_diagonal(dim: usize) -> Vec<Vector> {
    (0..dim)
        .map(|i| {
            let mut v = zeros(2 * dim);
            v[i] = Rational::one();
            v[dim + i] = -Rational::one();
            v
        })
        .collect()
}

/// `(𝔤 ⊕ 𝔤, B ⊕ −B)`.
pub fn double_of_quadratic(g: &LieAlgebraData, b: &BilinearFormData) -> Result<QuadraticLieAlgebra> {
    QuadraticLieAlgebra::new(g.direct_sum(g), b.direct_sum(&b.neg()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn jacobi_examples() {
        assert!(LieAlgebraData::abelian(4).jacobi_check().is_none());
        assert!(LieAlgebraData::su2().jacobi_check().is_none());
        assert!(LieAlgebraData::sl2r().jacobi_check().is_none());
        let bad = LieAlgebraData::from_brackets(
            3,
            &[(0, 1, vec![q(0), q(0), q(1)]), (1, 2, vec![q(1), q(0), q(0)]), (2, 0, vec![q(1), q(0), q(0)])],
        )
        .unwrap();
        let w = bad.jacobi_check().unwrap();
        assert_eq!(w.triple, [0, 1, 2]);
        assert_eq!(w.jacobiator, vec![q(0), q(0), q(1)]);
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let mut c = vec![vec![vec![q(0); 2]; 2]; 2];
        c[0][1][1] = q(1);
        assert!(LieAlgebraData::new(c).is_err());
    }

    #[test]
    fn killing_examples() {
        assert!(LieAlgebraData::abelian(3).killing_form().is_zero());
        let k = LieAlgebraData::su2().killing_form();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(k.entry(i, j), &q(if i == j { -12 } else { 0 }));
            }
        }
        assert!(k.negative_definite_check());
        let k = LieAlgebraData::sl2r().killing_form();
        assert_eq!(k.entry(0, 0), &q(48));
        assert!(!k.negative_definite_check());
        assert!(!LieAlgebraData::abelian(2).killing_form().negative_definite_check());
    }

    #[test]
    fn killing_is_invariant() {
        for g in [LieAlgebraData::su2(), LieAlgebraData::sl2r(), LieAlgebraData::b2()] {
            let qa = QuadraticLieAlgebra::new(g.clone(), g.killing_form()).unwrap();
            assert!(qa.ad_invariance_check().is_none());
        }
    }

    #[test]
    fn cartan_dirac_lagrangians() {
        let g = LieAlgebraData::sl2r();
        let d = double_of_quadratic(&g, &g.killing_form()).unwrap();
        assert!(d.ad_invariance_check().is_none());
        assert!(d.lagrangian_check(&diagonal(3)).unwrap().holds());
        let anti = d.lagrangian_check(&anti_diagonal(3)).unwrap();
        assert!(anti.isotropic && !anti.closed);
        assert!(!d.manin_triple_check(&diagonal(3), &diagonal(3)).unwrap().holds());
        let m = d.manin_triple_check(&diagonal(3), &anti_diagonal(3)).unwrap();
        assert!(m.transverse && !m.second.closed && !m.holds());
        let dep = vec![unit(6, 0), unit(6, 0)];
        assert_eq!(d.lagrangian_check(&dep), Err(Error::DependentGenerators));
    }
}
