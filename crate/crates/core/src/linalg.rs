//! Fraction-free linear algebra over ℚ and over polynomial rings.
//!
//! Ranks are taken over the fraction field. Inverses are only produced when
//! the determinant is a unit (a nonzero constant), which keeps the result
//! polynomial.

use crate::scalar::{Polynomial, Rational};

/// Exact integral domain operations needed by Bareiss elimination.
pub trait Domain: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / o`, required to be exact.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
}

impl Domain for Rational {
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        o.recip().map(|r| self * &r)
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
}

impl Domain for Polynomial {
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        Polynomial::div_exact(self, o)
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.nvars())
    }
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.nvars())
    }
}

pub type Matrix<T> = Vec<Vec<T>>;

/// Forward Bareiss elimination; returns (rank, determinant-like pivot product
/// sign, reduced matrix). The last nonzero pivot of a square full-rank matrix
/// is its determinant up to the returned sign.
fn bareiss<T: Domain>(m: &Matrix<T>) -> (usize, bool, Matrix<T>) {
    let rows = m.len();
    if rows == 0 {
        return (0, false, Vec::new());
    }
    let cols = m[0].len();
    let mut a = m.clone();
    let mut prev: Option<T> = None;
    let mut rank = 0;
    let mut flipped = false;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        if p != rank {
            a.swap(p, rank);
            flipped = !flipped;
        }
        let pivot = a[rank][col].clone();
        for r in rank + 1..rows {
            let factor = a[r][col].clone();
            for c in col..cols {
                let v = pivot.mul(&a[r][c]).sub(&factor.mul(&a[rank][c]));
                a[r][c] = match &prev {
                    Some(d) => v.div_exact(d).expect("Bareiss division must be exact"),
                    None => v,
                };
            }
        }
        // Rows above the pivot row are untouched; entries below are now zero.
        prev = Some(pivot);
        rank += 1;
    }
    (rank, flipped, a)
}

/// Rank over the fraction field.
pub fn rank<T: Domain>(m: &Matrix<T>) -> usize {
    bareiss(m).0
}

/// Determinant of a square matrix.
pub fn determinant<T: Domain>(m: &Matrix<T>) -> Option<T> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return None;
    }
    // Bareiss without column skipping: a zero pivot column means det = 0.
    let mut a = m.clone();
    let mut flipped = false;
    let mut prev: Option<T> = None;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Some(m[0][0].zero_like());
        };
        if p != k {
            a.swap(p, k);
            flipped = !flipped;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let v = a[k][k].mul(&a[r][c]).sub(&a[r][k].mul(&a[k][c]));
                a[r][c] = match &prev {
                    Some(d) => v.div_exact(d).expect("Bareiss division must be exact"),
                    None => v,
                };
            }
            a[r][k] = a[r][k].zero_like();
        }
        prev = Some(a[k][k].clone());
    }
    let d = a[n - 1][n - 1].clone();
    Some(if flipped { d.neg() } else { d })
}

/// Inverse of a square matrix whose determinant is a unit of the ring.
///
/// Uses fraction-free Gauss–Jordan on `[A | I]`, which ends at
/// `[δ·I | δ·A⁻¹]` with `δ = ±det A`, then divides by `δ`.
pub fn inverse<T: Domain>(m: &Matrix<T>) -> Option<Matrix<T>> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return None;
    }
    let zero = m[0][0].zero_like();
    let one = m[0][0].one_like();
    let mut a: Matrix<T> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
            r
        })
        .collect();
    let mut prev = one.clone();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        if p != k {
            a.swap(p, k);
        }
        let pivot = a[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let factor = a[i][k].clone();
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let v = pivot.mul(&a[i][j]).sub(&factor.mul(&a[k][j]));
                a[i][j] = v.div_exact(&prev)?;
            }
            a[i][k] = zero.clone();
        }
        prev = pivot;
    }
    // All diagonal entries now equal the final pivot δ.
    let delta = prev;
    let inv: Matrix<T> = a
        .iter()
        .map(|row| row[n..].iter().map(|v| v.div_exact(&delta)).collect::<Option<Vec<T>>>())
        .collect::<Option<Matrix<T>>>()?;
    Some(inv)
}

pub fn mat_mul<T: Domain>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let zero = a[0][0].zero_like();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = zero.clone();
                    for t in 0..k {
                        if !a[i][t].is_zero() && !b[t][j].is_zero() {
                            acc = acc.sub(&a[i][t].mul(&b[t][j]).neg());
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Unique solution of `A x = b` for square invertible `A` over ℚ.
pub fn solve_rational(a: &Matrix<Rational>, b: &[Rational]) -> Option<Vec<Rational>> {
    let inv = inverse(a)?;
    Some(inv.iter().map(|row| row.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)).collect())
}

/// Some solution of `A x = b` over ℚ for a possibly rectangular `A`, or `None`
/// if the system is inconsistent.
pub fn solve_rational_any(a: &Matrix<Rational>, b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Matrix<Rational> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let inv = m[r][c].recip().unwrap();
        for j in c..=cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let v = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - &v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Leading principal minors `det A[..k, ..k]` for `k = 1..=n`.
pub fn leading_minors(a: &Matrix<Rational>) -> Vec<Rational> {
    (1..=a.len())
        .map(|k| {
            let sub: Matrix<Rational> = a[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&sub).unwrap()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &Matrix<T>) -> Matrix<T> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::default_names;
    use crate::scalar::parse_polynomial;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn poly_matrix(rows: &[&[&str]], nvars: usize) -> Matrix<Polynomial> {
        let names = default_names(nvars);
        rows.iter().map(|r| r.iter().map(|s| parse_polynomial(s, &names).unwrap()).collect()).collect()
    }

    #[test]
    fn rational_rank_and_det() {
        let a = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(rank(&a), 1);
        assert_eq!(determinant(&a).unwrap(), q(0));
        let b = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(determinant(&b).unwrap(), q(-1));
        assert_eq!(rank(&b), 2);
    }

    #[test]
    fn polynomial_inverse_of_unimodular() {
        let a = poly_matrix(&[&["1", "x", "0"], &["y", "x*y + 1", "y"], &["x*y", "x^2*y + x", "x*y + 1"]], 3);
        let d = determinant(&a).unwrap();
        assert!(d.is_constant() && !d.is_zero(), "det = {d}");
        let inv = inverse(&a).unwrap();
        let prod = mat_mul(&a, &inv);
        for (i, row) in prod.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(v.constant_value(), Some(q((i == j) as i64)), "entry {i},{j} = {v}");
            }
        }
    }

    #[test]
    fn polynomial_rank_over_fraction_field() {
        let a = poly_matrix(&[&["x", "y"], &["x^2", "x*y"]], 2);
        assert_eq!(rank(&a), 1);
        let b = poly_matrix(&[&["x", "y", "1"], &["y", "x", "0"]], 2);
        assert_eq!(rank(&b), 2);
    }

    #[test]
    fn rectangular_solve() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)], vec![q(0), q(1)]];
        let x = solve_rational_any(&a, &[q(3), q(6), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        assert!(solve_rational_any(&a, &[q(3), q(5), q(1)]).is_none());
    }

    #[test]
    fn minors() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        assert_eq!(leading_minors(&a), vec![q(2), q(5)]);
    }
}
