use std::fmt;
use std::ops::Range;

use super::{unit, zeros, BilinearFormData, LieAlgebraData, Vector};
use crate::error::{Error, Result};
use crate::linalg::{solve_rational_any, Matrix};
use crate::scalar::{parse_polynomial, Rational};

/// Square matrix with Gaussian-rational entries `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMatrix {
    pub re: Matrix<Rational>,
    pub im: Matrix<Rational>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { re: vec![zeros(n); n], im: vec![zeros(n); n] }
    }

    /// Elementary matrix `E_{kl}`.
    pub fn e(n: usize, k: usize, l: usize) -> Self {
        let mut m = Self::zeros(n);
        m.re[k][l] = Rational::one();
        m
    }

    pub fn from_parts(re: Matrix<Rational>, im: Matrix<Rational>) -> Result<Self> {
        let n = re.len();
        if im.len() != n || re.iter().chain(&im).any(|r| r.len() != n) {
            return Err(Error::Shape("complex matrix parts must be square of equal size".into()));
        }
        Ok(CMatrix { re, im })
    }

    /// Rows separated by `;`, entries by `,`; entries are rational
    /// expressions in `i`, e.g. `1/2 - 3*i`.
    pub fn parse(src: &str) -> Result<Self> {
        let names = vec!["i".to_string()];
        let mut re = Vec::new();
        let mut im = Vec::new();
        for row in src.split(';') {
            let (mut r, mut m) = (Vec::new(), Vec::new());
            for entry in row.split(',') {
                let p = parse_polynomial(entry.trim(), &names)?;
                let (mut a, mut b) = (Rational::zero(), Rational::zero());
                for (mono, c) in p.terms() {
                    match mono.degree() % 4 {
                        0 => a += c,
                        1 => b += c,
                        2 => a -= c,
                        _ => b -= c,
                    }
                }
                r.push(a);
                m.push(b);
            }
            re.push(r);
            im.push(m);
        }
        CMatrix::from_parts(re, im)
            .map_err(|_| Error::Parse { input: src.into(), message: "matrix is not square".into() })
    }

    pub fn n(&self) -> usize {
        self.re.len()
    }

    fn zip(&self, o: &CMatrix, f: impl Fn(&Rational, &Rational) -> Rational) -> CMatrix {
        let g = |a: &Matrix<Rational>, b: &Matrix<Rational>| {
            a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| f(p, q)).collect()).collect()
        };
        CMatrix { re: g(&self.re, &o.re), im: g(&self.im, &o.im) }
    }

    pub fn add(&self, o: &CMatrix) -> CMatrix {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &CMatrix) -> CMatrix {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> CMatrix {
        let g = |a: &Matrix<Rational>| a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        CMatrix { re: g(&self.re), im: g(&self.im) }
    }

    pub fn times_i(&self) -> CMatrix {
        let neg = self.im.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        CMatrix { re: neg, im: self.re.clone() }
    }

    pub fn mul(&self, o: &CMatrix) -> CMatrix {
        let n = self.n();
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let (a, b) = (&self.re[i][k], &self.im[i][k]);
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let (c, d) = (&o.re[k][j], &o.im[k][j]);
                    out.re[i][j] += &(&(a * c) - &(b * d));
                    out.im[i][j] += &(&(a * d) + &(b * c));
                }
            }
        }
        out
    }

    pub fn bracket(&self, o: &CMatrix) -> CMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> (Rational, Rational) {
        let n = self.n();
        ((0..n).map(|i| self.re[i][i].clone()).sum(), (0..n).map(|i| self.im[i][i].clone()).sum())
    }

    pub fn conj_transpose(&self) -> CMatrix {
        let n = self.n();
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.re[j][i] = self.re[i][j].clone();
                out.im[j][i] = -&self.im[i][j];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.re.iter().chain(&self.im).flatten().all(|x| x.is_zero())
    }

    pub fn is_traceless(&self) -> bool {
        let (a, b) = self.trace();
        a.is_zero() && b.is_zero()
    }

    pub fn is_anti_hermitian(&self) -> bool {
        self.add(&self.conj_transpose()).is_zero()
    }

    pub fn is_real_diagonal(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.im[i][j].is_zero() && (i == j || self.re[i][j].is_zero())))
    }

    pub fn is_strictly_upper(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..=i).all(|j| self.re[i][j].is_zero() && self.im[i][j].is_zero()))
    }

    /// Real coordinates: all real parts row-major, then all imaginary parts.
    pub fn flatten(&self) -> Vector {
        self.re.iter().flatten().chain(self.im.iter().flatten()).cloned().collect()
    }
}

fn fmt_complex(a: &Rational, b: &Rational) -> String {
    match (a.is_zero(), b.is_zero()) {
        (_, true) => a.to_string(),
        (true, false) if b.is_one() => "i".into(),
        (true, false) if (-b).is_one() => "-i".into(),
        (true, false) => format!("{b}*i"),
        (false, false) => {
            let sign = if b.is_negative() { "-" } else { "+" };
            let m = b.abs();
            if m.is_one() {
                format!("{a}{sign}i")
            } else {
                format!("{a}{sign}{m}*i")
            }
        }
    }
}

impl fmt::Display for CMatrix {
    /// Same row/column syntax accepted by [`CMatrix::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n())
            .map(|i| (0..self.n()).map(|j| fmt_complex(&self.re[i][j], &self.im[i][j])).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// Structure constants of a real span of matrices closed under commutators.
pub fn algebra_from_matrix_basis(basis: &[CMatrix]) -> Result<LieAlgebraData> {
    let cols: Matrix<Rational> = basis.iter().map(CMatrix::flatten).collect();
    let a = transpose_owned(cols);
    let m = basis.len();
    let mut c = vec![vec![zeros(m); m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let br = basis[i].bracket(&basis[j]).flatten();
            let x = solve_rational_any(&a, &br).ok_or_else(|| Error::InvalidField {
                field: "basis".into(),
                message: "span not closed under bracket".into(),
            })?;
            c[j][i] = x.iter().map(|v| -v).collect();
            c[i][j] = x;
        }
    }
    LieAlgebraData::new(c)
}

fn transpose_owned(cols: Matrix<Rational>) -> Matrix<Rational> {
    crate::linalg::transpose(&cols)
}

/// `sl(n,ℂ)` as a real Lie algebra of dimension `2(n²−1)`, in the basis
/// `su(n) ∪ 𝔞 ∪ 𝔫` with
///
/// * `su(n)`: `i(Eₖₖ−Eₖ₊₁,ₖ₊₁)`, then `Eₖₗ−Eₗₖ`, then `i(Eₖₗ+Eₗₖ)` for `k<l`;
/// * `𝔞`: `Eₖₖ−Eₖ₊₁,ₖ₊₁`;
/// * `𝔫`: `Eₖₗ, iEₖₗ` for each `k<l`.
#[derive(Clone, Debug)]
pub struct RealifiedSl {
    n: usize,
    basis: Vec<CMatrix>,
    system: Matrix<Rational>,
    algebra: LieAlgebraData,
    i_operator: Matrix<Rational>,
}

impl RealifiedSl {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Unsupported(format!("sl({n},C) needs n ≥ 2")));
        }
        let mut basis = Vec::new();
        let h = |k: usize| CMatrix::e(n, k, k).sub(&CMatrix::e(n, k + 1, k + 1));
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|k| (k + 1..n).map(move |l| (k, l))).collect();
        basis.extend((0..n - 1).map(|k| h(k).times_i()));
        basis.extend(pairs.iter().map(|&(k, l)| CMatrix::e(n, k, l).sub(&CMatrix::e(n, l, k))));
        basis.extend(pairs.iter().map(|&(k, l)| CMatrix::e(n, k, l).add(&CMatrix::e(n, l, k)).times_i()));
        basis.extend((0..n - 1).map(h));
        for &(k, l) in &pairs {
            basis.push(CMatrix::e(n, k, l));
            basis.push(CMatrix::e(n, k, l).times_i());
        }
        let system = transpose_owned(basis.iter().map(CMatrix::flatten).collect());
        let algebra = algebra_from_matrix_basis(&basis)?;
        let mut s = RealifiedSl { n, basis, system, algebra, i_operator: Vec::new() };
        let icols: Vec<Vector> = s.basis.iter().map(|b| s.coordinates(&b.times_i()).unwrap()).collect();
        s.i_operator = transpose_owned(icols);
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn algebra(&self) -> &LieAlgebraData {
        &self.algebra
    }

    /// Multiplication by `i` in basis coordinates.
    pub fn i_operator(&self) -> &Matrix<Rational> {
        &self.i_operator
    }

    pub fn k_range(&self) -> Range<usize> {
        0..self.n * self.n - 1
    }

    pub fn a_range(&self) -> Range<usize> {
        let s = self.n * self.n - 1;
        s..s + self.n - 1
    }

    pub fn n_range(&self) -> Range<usize> {
        self.a_range().end..self.dim()
    }

    pub fn span(&self, r: Range<usize>) -> Vec<Vector> {
        r.map(|i| unit(self.dim(), i)).collect()
    }

    /// `𝔞 ⊕ 𝔫`.
    pub fn an_span(&self) -> Vec<Vector> {
        self.span(self.a_range().start..self.dim())
    }

    pub fn compact_algebra(&self) -> Result<LieAlgebraData> {
        algebra_from_matrix_basis(&self.basis[self.k_range()])
    }

    /// Coordinates of a traceless matrix in the basis, `None` otherwise.
    pub fn coordinates(&self, x: &CMatrix) -> Option<Vector> {
        if x.n() != self.n {
            return None;
        }
        solve_rational_any(&self.system, &x.flatten())
    }

    pub fn matrix_of(&self, v: &[Rational]) -> CMatrix {
        let mut out = CMatrix::zeros(self.n);
        for (c, b) in v.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }
}

/// `B(X,Y) = −Im κ_ℂ(X,Y)` with `κ_ℂ = 2(n²−1)·Tr_ℂ(ad_X ad_Y)`.
///
/// For a complex-linear `T`, `Im Tr_ℂ T = −½ Tr_ℝ(i∘T)`, so
/// `B = (n²−1)·Tr_ℝ(i∘ad_X∘ad_Y)` on the realification.
pub fn minus_im_killing(s: &RealifiedSl) -> BilinearFormData {
    let d = s.dim();
    let ads: Vec<Matrix<Rational>> = (0..d).map(|i| s.algebra.ad(&unit(d, i))).collect();
    let j = &s.i_operator;
    let scale = Rational::from_int((s.n * s.n - 1) as i64);
    let mut m = vec![zeros(d); d];
    for a in 0..d {
        // i∘ad_a as a matrix
        let ja: Matrix<Rational> =
            (0..d).map(|r| (0..d).map(|c| (0..d).map(|t| &j[r][t] * &ads[a][t][c]).sum()).collect()).collect();
        for b in a..d {
            let mut tr = Rational::zero();
            for r in 0..d {
                for t in 0..d {
                    if !ja[r][t].is_zero() && !ads[b][t][r].is_zero() {
                        tr += &(&ja[r][t] * &ads[b][t][r]);
                    }
                }
            }
            m[a][b] = &tr * &scale;
            m[b][a] = m[a][b].clone();
        }
    }
    BilinearFormData { m }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IwasawaParts {
    pub k: CMatrix,
    pub a: CMatrix,
    pub n: CMatrix,
}

/// Unique `X = k + a + n` with `k ∈ su(n)`, `a` real diagonal traceless and
/// `n` strictly upper triangular.
pub fn iwasawa_decompose(s: &RealifiedSl, x: &CMatrix) -> Result<IwasawaParts> {
    if x.n() != s.n {
        return Err(Error::Shape(format!("expected a {0}×{0} matrix", s.n)));
    }
    if !x.is_traceless() {
        return Err(Error::NotTraceless);
    }
    let v = s.coordinates(x).ok_or(Error::NotTraceless)?;
    let part = |r: Range<usize>| {
        let mut w = zeros(s.dim());
        for i in r {
            w[i] = v[i].clone();
        }
        s.matrix_of(&w)
    };
    Ok(IwasawaParts { k: part(s.k_range()), a: part(s.a_range()), n: part(s.n_range()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::QuadraticLieAlgebra;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn i_operator_squares_to_minus_one() {
        for n in [2, 3] {
            let s = RealifiedSl::new(n).unwrap();
            let j = s.i_operator();
            let d = s.dim();
            for r in 0..d {
                for c in 0..d {
                    let v: Rational = (0..d).map(|t| &j[r][t] * &j[t][c]).sum();
                    assert_eq!(v, if r == c { q(-1) } else { q(0) });
                }
            }
        }
    }

    #[test]
    fn dimensions() {
        for n in [2, 3] {
            let s = RealifiedSl::new(n).unwrap();
            assert_eq!(s.k_range().len() + s.a_range().len() + s.n_range().len(), 2 * (n * n - 1));
            assert!(s.algebra().jacobi_check().is_none());
        }
    }

    #[test]
    fn iwasawa_examples() {
        let s = RealifiedSl::new(2).unwrap();
        let m = |src: &str| CMatrix::parse(src).unwrap();
        let p = iwasawa_decompose(&s, &m("1,0;0,-1")).unwrap();
        assert_eq!(p, IwasawaParts { k: CMatrix::zeros(2), a: m("1,0;0,-1"), n: CMatrix::zeros(2) });
        let p = iwasawa_decompose(&s, &m("0,1;0,0")).unwrap();
        assert_eq!((p.k.is_zero(), p.a.is_zero(), p.n), (true, true, m("0,1;0,0")));
        let p = iwasawa_decompose(&s, &m("0,0;1,0")).unwrap();
        assert_eq!((p.k, p.a.is_zero(), p.n), (m("0,-1;1,0"), true, m("0,1;0,0")));
        let p = iwasawa_decompose(&s, &m("0,0;i,0")).unwrap();
        assert_eq!((p.k, p.a.is_zero(), p.n), (m("0,i;i,0"), true, m("0,-i;0,0")));
        let p = iwasawa_decompose(&s, &m("0,1;1,0")).unwrap();
        assert_eq!((p.k, p.a.is_zero(), p.n), (m("0,-1;1,0"), true, m("0,2;0,0")));
        assert_eq!(iwasawa_decompose(&s, &m("1,0;0,0")), Err(Error::NotTraceless));
    }

    #[test]
    fn parse_and_display() {
        let x = CMatrix::parse("1/2 - 3*i, i; -i, 2*i^2").unwrap();
        assert_eq!(x.to_string(), "1/2-3*i,i;-i,-2");
        assert_eq!(CMatrix::parse(&x.to_string()).unwrap(), x);
        assert!(CMatrix::parse("1,2;3").is_err());
    }

    #[test]
    fn minus_im_killing_values() {
        let s = RealifiedSl::new(2).unwrap();
        let b = minus_im_killing(&s);
        let h = s.a_range().start;
        let ih = s.k_range().start;
        assert_eq!(b.entry(h, h), &q(0));
        assert_eq!(b.entry(h, ih), &q(-48));
        for i in s.k_range() {
            for j in s.k_range() {
                assert!(b.entry(i, j).is_zero());
            }
        }
        assert!(b.is_nondegenerate());
    }

    #[test]
    fn manin_triples() {
        for n in [2, 3] {
            let s = RealifiedSl::new(n).unwrap();
            let qa = QuadraticLieAlgebra::new(s.algebra().clone(), minus_im_killing(&s)).unwrap();
            assert!(qa.ad_invariance_check().is_none());
            let r = qa.manin_triple_check(&s.span(s.k_range()), &s.an_span()).unwrap();
            assert!(r.holds(), "n = {n}: {r:?}");
            assert!(s.compact_algebra().unwrap().killing_form().negative_definite_check());
        }
    }
}
