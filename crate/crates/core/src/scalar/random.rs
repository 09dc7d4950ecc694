//! Seeded pseudo-random exact values for generated test families.

use rand::Rng;

use super::{Monomial, Polynomial, Rational};

/// Small rational with numerator in `-5..=5` and denominator in `1..=3`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// Nonzero small rational.
pub fn random_nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = random_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Random polynomial of total degree at most `max_deg` with up to `max_terms` terms.
pub fn random_polynomial<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32, max_terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    let nterms = rng.gen_range(0..=max_terms);
    for _ in 0..nterms {
        let mut m = Monomial::one();
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            if nvars > 0 {
                m.0[rng.gen_range(0..nvars)] += 1;
            }
        }
        p.add_assign_ref(&Polynomial::term(nvars, m, random_rational(rng)));
    }
    p
}

/// All monomials of total degree at most `max_deg` in `nvars` variables,
/// ordered by degree then lexicographically.
pub fn monomials_up_to(nvars: usize, max_deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![Monomial::one()];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for m in &frontier {
            // Only raise variables at or after the last nonzero exponent to avoid duplicates.
            let last = (0..nvars).rev().find(|&i| m.0[i] > 0).unwrap_or(0);
            for i in last..nvars {
                let mut m2 = *m;
                m2.0[i] += 1;
                next.push(m2);
            }
        }
        next.sort_by(|a, b| b.cmp(a));
        out.extend(next.iter().copied());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_up_to(3, 2).len(), 10);
        assert_eq!(monomials_up_to(4, 1).len(), 5);
        assert_eq!(monomials_up_to(2, 3).len(), 10);
        assert_eq!(monomials_up_to(0, 2).len(), 1);
        let ms = monomials_up_to(3, 2);
        let mut dedup = ms.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), ms.len());
    }
}
