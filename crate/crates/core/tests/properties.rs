use parahol::cartan::{Patch, PolyForm};
use parahol::courant::{
    d_plus_minus_local, para_kahler_pde_check, CourantPatchModel, GeneralizedSection, LocalBialgebroidData,
};
use parahol::lie::LieAlgebraData;
use parahol::scalar::random::random_polynomial;
use parahol::scalar::{Monomial, Polynomial, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Polynomial in `n` variables from `(exponents, numerator, denominator)` triples.
fn poly(n: usize, terms: &[(Vec<u16>, i64, i64)]) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for (exps, num, den) in terms {
        let mut m = Monomial::one();
        for (i, e) in exps.iter().take(n).enumerate() {
            m.0[i] = *e;
        }
        p.add_assign_ref(&Polynomial::term(n, m, Rational::new(*num, *den)));
    }
    p
}

fn poly_strategy(n: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u16..=2, n), -4i64..=4, 1i64..=3), 0..3)
        .prop_map(move |t| poly(n, &t))
}

fn section_strategy(n: usize) -> impl Strategy<Value = GeneralizedSection> {
    (prop::collection::vec(poly_strategy(n), n), prop::collection::vec(poly_strategy(n), n))
        .prop_map(move |(x, xi)| GeneralizedSection::from_parts(n, x, xi))
}

fn form_strategy(n: usize, k: usize) -> impl Strategy<Value = PolyForm> {
    let sets: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    prop::collection::vec(poly_strategy(n), sets.len()).prop_map(move |coeffs| {
        let mut f = PolyForm::zero(n, k);
        for (idx, c) in sets.iter().zip(coeffs) {
            f = f.add(&PolyForm::monomial(idx, c)).unwrap();
        }
        f
    })
}

fn r3() -> CourantPatchModel {
    CourantPatchModel::standard(Patch::standard(3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn courant_bracket_is_skew(a in section_strategy(3), b in section_strategy(3)) {
        let m = r3();
        prop_assert_eq!(m.bracket(&a, &b).unwrap(), m.bracket(&b, &a).unwrap().neg());
    }

    #[test]
    fn anchor_is_a_bracket_morphism(a in section_strategy(3), b in section_strategy(3)) {
        let m = r3();
        let lhs = m.anchor(&m.bracket(&a, &b).unwrap());
        prop_assert_eq!(lhs, m.anchor(&a).bracket(&m.anchor(&b)).unwrap());
    }

    #[test]
    fn pairing_is_symmetric(a in section_strategy(3), b in section_strategy(3)) {
        let m = r3();
        prop_assert_eq!(m.pairing(&a, &b), m.pairing(&b, &a));
    }

    #[test]
    fn twisted_bracket_differs_by_the_twist(a in section_strategy(3), b in section_strategy(3), c in -3i64..=3) {
        let p = Patch::standard(3);
        let h = PolyForm::monomial(&[0, 1, 2], Polynomial::from_int(3, c));
        let tw = CourantPatchModel::twisted(p.clone(), h.clone()).unwrap();
        let diff = tw.bracket(&a, &b).unwrap().sub(&r3().bracket(&a, &b).unwrap());
        // ι_Xι_Y H evaluated as H(Y, X, ·).
        let expected = h.interior(&b.vf()).unwrap().interior(&a.vf()).unwrap();
        prop_assert!(diff.is_tangent_free());
        prop_assert_eq!(diff.form(), expected);
    }

    #[test]
    fn d_squares_to_zero(f in form_strategy(4, 1), g in form_strategy(4, 2)) {
        prop_assert!(f.d().d().is_zero());
        prop_assert!(g.d().d().is_zero());
    }

    #[test]
    fn d_is_a_graded_derivation(f in form_strategy(3, 1), g in form_strategy(3, 1)) {
        let lhs = f.wedge(&g).unwrap().d();
        let rhs = f.d().wedge(&g).unwrap().sub(&f.wedge(&g.d()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn local_d_plus_minus_matches_cartan(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = LocalBialgebroidData::random(&mut rng, 2, 2, 1);
        let sp: Vec<_> = (0..2).map(|_| random_polynomial(&mut rng, 2, 2, 2)).collect();
        let sm: Vec<_> = (0..2).map(|_| random_polynomial(&mut rng, 2, 2, 2)).collect();
        let local = d_plus_minus_local(&data, &sp, &sm).unwrap();
        let alg = data.to_algebroid();
        // σ⁺ pairs with e⁻ slots and σ⁻ with e⁺ slots.
        let mut sigma = alg.zero_form(1);
        for i in 0..2 {
            sigma.add_term(1 << (2 + i), &sp[i]);
            sigma.add_term(1 << i, &sm[i]);
        }
        prop_assert_eq!(local.plus.add(&local.minus), alg.d(&sigma));
    }

    #[test]
    fn second_printed_pde_is_a_cartan_component(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2;
        let data = LocalBialgebroidData::random(&mut rng, n, 2, 1);
        let w: Vec<Vec<Polynomial>> =
            (0..n).map(|_| (0..n).map(|_| random_polynomial(&mut rng, 2, 2, 2)).collect()).collect();
        let r = para_kahler_pde_check(&data, &w).unwrap();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let printed = r
                        .printed_second
                        .iter()
                        .find(|(idx, _)| *idx == [i, j, k])
                        .map_or_else(|| Polynomial::zero(2), |(_, p)| p.clone());
                    prop_assert_eq!(printed, r.cartan_plus.component(&[i, j, n + k]));
                }
            }
        }
    }

    #[test]
    fn killing_form_is_ad_invariant(x in prop::collection::vec(-3i64..=3, 3), y in prop::collection::vec(-3i64..=3, 3), z in prop::collection::vec(-3i64..=3, 3)) {
        let q = |v: &[i64]| v.iter().map(|&a| Rational::from_int(a)).collect::<Vec<_>>();
        let (x, y, z) = (q(&x), q(&y), q(&z));
        for g in [LieAlgebraData::su2(), LieAlgebraData::sl2r()] {
            let k = g.killing_form();
            let lhs = k.eval(&g.bracket(&x, &y), &z);
            let rhs = k.eval(&x, &g.bracket(&y, &z));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
