use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{CourantPatchModel, GeneralizedSection};
use crate::scalar::random::{monomials_up_to, random_polynomial, random_rational};
use crate::scalar::{Polynomial, Rational};

/// Deterministic test family: basis sections times monomials up to `degree`
/// followed by `random` seeded sections. Constant-section models use the
/// basis sections and random constant combinations.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionFamily {
    pub sections: Vec<GeneralizedSection>,
    pub functions: Vec<Polynomial>,
    pub degree: u32,
    pub random: usize,
    pub seed: u64,
}

impl SectionFamily {
    pub fn generate(model: &CourantPatchModel, degree: u32, random: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = model.nvars();
        let rank = model.rank();
        let functions: Vec<Polynomial> = if model.is_exact() {
            monomials_up_to(m, degree).into_iter().map(|mo| Polynomial::term(m, mo, Rational::one())).collect()
        } else {
            vec![Polynomial::one(m), Polynomial::constant(m, Rational::new(-3, 2))]
        };
        let unit_fns: Vec<Polynomial> = if model.is_exact() { functions.clone() } else { vec![Polynomial::one(m)] };
        let mut sections = Vec::new();
        for b in 0..2 * rank {
            let base = model.basis_section(b);
            for f in &unit_fns {
                sections.push(base.scale(f));
            }
        }
        for _ in 0..random {
            let c: Vec<Polynomial> = (0..2 * rank)
                .map(|_| {
                    if model.is_exact() {
                        random_polynomial(&mut rng, m, degree, 2)
                    } else {
                        Polynomial::constant(m, random_rational(&mut rng))
                    }
                })
                .collect();
            sections.push(GeneralizedSection::from_coefficients(m, &c));
        }
        SectionFamily { sections, functions, degree, random, seed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomWitness {
    pub sections: Vec<String>,
    pub function: Option<String>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomOutcome {
    pub axiom: u8,
    pub holds: bool,
    /// Number of tuples evaluated.
    pub cases: usize,
    pub witness: Option<AxiomWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub outcomes: Vec<AxiomOutcome>,
    pub degree: u32,
    pub random: usize,
    pub seed: u64,
    pub family_size: usize,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.outcomes.iter().all(|o| o.holds)
    }

    pub fn outcome(&self, axiom: u8) -> &AxiomOutcome {
        &self.outcomes[axiom as usize - 1]
    }

    pub fn failing(&self) -> Vec<u8> {
        self.outcomes.iter().filter(|o| !o.holds).map(|o| o.axiom).collect()
    }
}

/// Runs `f(i)` for `i in 0..n` over worker threads and returns the results in
/// index order.
fn par_map<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let workers = std::thread::available_parallelism().map(|w| w.get()).unwrap_or(1).min(n.max(1));
    if workers <= 1 {
        return (0..n).map(&f).collect();
    }
    let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
    std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = (0..workers)
            .map(|w| scope.spawn(move || (w..n).step_by(workers).map(|i| (i, f(i))).collect::<Vec<_>>()))
            .collect();
        for h in handles {
            for (i, v) in h.join().expect("worker panicked") {
                out[i] = Some(v);
            }
        }
    });
    out.into_iter().map(|v| v.expect("filled")).collect()
}

/// First failure in index order plus the total number of cases.
fn first_failure(per_index: Vec<(usize, Option<AxiomWitness>)>) -> (usize, Option<AxiomWitness>) {
    let cases = per_index.iter().map(|(c, _)| c).sum();
    (cases, per_index.into_iter().find_map(|(_, w)| w))
}

fn outcome(axiom: u8, (cases, witness): (usize, Option<AxiomWitness>)) -> AxiomOutcome {
    AxiomOutcome { axiom, holds: witness.is_none(), cases, witness }
}

/// Evaluates the five Courant algebroid conditions on every tuple of the
/// family:
/// 1. `Jac(e₁,e₂,e₃) = β⁻¹d_E T(e₁,e₂,e₃)`;
/// 2. `ρ[e₁,e₂] = [ρe₁,ρe₂]`;
/// 3. `[e₁,fe₂] = f[e₁,e₂] + (ρ(e₁)f)e₂ − ½⟨e₁,e₂⟩β⁻¹d_E f`;
/// 4. `ρ∘β⁻¹∘d_E = 0`;
/// 5. `ρ(e)⟨h₁,h₂⟩ = ⟨[e,h₁],h₂⟩ + ⟨h₁,[e,h₂]⟩ + ½d_E⟨e,h₁⟩(h₂) + ½d_E⟨e,h₂⟩(h₁)`.
///
/// Both sides of 1 are antisymmetric, so only `i < j < k` is evaluated; 5 is
/// symmetric in `h₁,h₂`.
pub fn axiom_check(model: &CourantPatchModel, family: &SectionFamily) -> AxiomReport {
    let s = &family.sections;
    let n = s.len();
    let fmt = |e: &GeneralizedSection| model.fmt_section(e);
    let half = Rational::new(1, 2);

    let rows: Vec<Vec<GeneralizedSection>> =
        par_map(n, |i| (i..n).map(|j| model.bracket(&s[i], &s[j]).expect("family sections match the model")).collect());
    let br = |i: usize, j: usize| -> GeneralizedSection {
        if i <= j {
            rows[i][j - i].clone()
        } else {
            rows[j][i - j].neg()
        }
    };
    let br_ref = |i: usize, j: usize| -> Option<&GeneralizedSection> { (i <= j).then(|| &rows[i][j - i]) };

    // 1
    let a1 = first_failure(par_map(n, |i| {
        let mut cases = 0;
        for j in i + 1..n {
            let bij = br_ref(i, j).unwrap();
            for k in j + 1..n {
                cases += 1;
                let bjk = br_ref(j, k).unwrap();
                let bki = br(k, i);
                let jac = model
                    .bracket(bij, &s[k])
                    .unwrap()
                    .add(&model.bracket(bjk, &s[i]).unwrap())
                    .add(&model.bracket(&bki, &s[j]).unwrap());
                let t = model.t_function([&s[i], &s[j], &s[k]], [bij, bjk, &bki]);
                let r = jac.sub(&model.d_section(&t));
                if !r.is_zero() {
                    return (
                        cases,
                        Some(AxiomWitness {
                            sections: vec![fmt(&s[i]), fmt(&s[j]), fmt(&s[k])],
                            function: None,
                            residual: fmt(&r),
                        }),
                    );
                }
            }
        }
        (cases, None)
    }));

    // 2
    let a2 = first_failure(par_map(n, |i| {
        let mut cases = 0;
        if !model.is_exact() {
            return (n - i, None);
        }
        for j in i..n {
            cases += 1;
            let lhs = model.anchor(br_ref(i, j).unwrap());
            let rhs = model.anchor(&s[i]).bracket(&model.anchor(&s[j])).unwrap();
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                return (
                    cases,
                    Some(AxiomWitness {
                        sections: vec![fmt(&s[i]), fmt(&s[j])],
                        function: None,
                        residual: model.patch().fmt_vector_field(&r),
                    }),
                );
            }
        }
        (cases, None)
    }));

    // 3
    let a3 = first_failure(par_map(n, |i| {
        let mut cases = 0;
        for j in 0..n {
            let bij = br(i, j);
            let p = model.pairing(&s[i], &s[j]);
            for f in &family.functions {
                cases += 1;
                let lhs = model.bracket(&s[i], &s[j].scale(f)).unwrap();
                let rhs = bij
                    .scale(f)
                    .add(&s[j].scale(&model.anchor_apply(&s[i], f)))
                    .sub(&model.d_section(f).scale(&p.scale(&half)));
                let r = lhs.sub(&rhs);
                if !r.is_zero() {
                    return (
                        cases,
                        Some(AxiomWitness {
                            sections: vec![fmt(&s[i]), fmt(&s[j])],
                            function: Some(model.fmt_poly(f)),
                            residual: fmt(&r),
                        }),
                    );
                }
            }
        }
        (cases, None)
    }));

    // 4
    let mut a4 = (0, None);
    for f in &family.functions {
        a4.0 += 1;
        let r = model.anchor(&model.d_section(f));
        if !r.is_zero() && a4.1.is_none() {
            a4.1 = Some(AxiomWitness {
                sections: Vec::new(),
                function: Some(model.fmt_poly(f)),
                residual: model.patch().fmt_vector_field(&r),
            });
        }
    }

    // 5
    let a5 = first_failure(par_map(n, |e| {
        let mut cases = 0;
        for h1 in 0..n {
            let b1 = br(e, h1);
            let p1 = model.pairing(&s[e], &s[h1]);
            for h2 in h1..n {
                cases += 1;
                let b2 = br(e, h2);
                let p2 = model.pairing(&s[e], &s[h2]);
                let lhs = model.anchor_apply(&s[e], &model.pairing(&s[h1], &s[h2]));
                let mut rhs = model.pairing(&b1, &s[h2]);
                rhs.add_assign_ref(&model.pairing(&s[h1], &b2));
                let mut corr = model.anchor_apply(&s[h2], &p1);
                corr.add_assign_ref(&model.anchor_apply(&s[h1], &p2));
                rhs.add_assign_ref(&corr.scale(&half));
                let r = &lhs - &rhs;
                if !r.is_zero() {
                    return (
                        cases,
                        Some(AxiomWitness {
                            sections: vec![fmt(&s[e]), fmt(&s[h1]), fmt(&s[h2])],
                            function: None,
                            residual: model.fmt_poly(&r),
                        }),
                    );
                }
            }
        }
        (cases, None)
    }));

    AxiomReport {
        outcomes: vec![outcome(1, a1), outcome(2, a2), outcome(3, a3), outcome(4, a4), outcome(5, a5)],
        degree: family.degree,
        random: family.random,
        seed: family.seed,
        family_size: n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Patch;
    use crate::lie::{LieAlgebraData, LieBialgebraData};

    #[test]
    fn standard_r2_passes() {
        let m = CourantPatchModel::standard(Patch::standard(2));
        let fam = SectionFamily::generate(&m, 2, 10, 1);
        let r = axiom_check(&m, &fam);
        assert!(r.holds(), "{:?}", r.failing());
    }

    #[test]
    fn no_exact_term_fails_1_3_5() {
        let m = CourantPatchModel::no_exact_term(Patch::standard(2));
        let fam = SectionFamily::generate(&m, 2, 5, 1);
        let r = axiom_check(&m, &fam);
        assert_eq!(r.failing(), vec![1, 3, 5]);
        assert!(r.outcome(5).witness.is_some());
    }

    #[test]
    fn non_closed_twist_fails_only_jacobi() {
        let p = Patch::standard(4);
        let eta = p.parse_form("x1*dx2^dx3^dx4").unwrap();
        let m = CourantPatchModel::twisted_unchecked(p, eta).unwrap();
        let fam = SectionFamily::generate(&m, 1, 3, 1);
        assert_eq!(axiom_check(&m, &fam).failing(), vec![1]);
    }

    #[test]
    fn closed_twist_passes() {
        let p = Patch::standard(3);
        let eta = p.parse_form("x*dx^dy^dz").unwrap();
        let m = CourantPatchModel::twisted(p, eta).unwrap();
        let fam = SectionFamily::generate(&m, 1, 5, 3);
        assert!(axiom_check(&m, &fam).holds());
    }

    #[test]
    fn bialgebroid_models_pass() {
        for k in [LieAlgebraData::b2(), LieAlgebraData::su2(), LieAlgebraData::abelian(2)] {
            let m = CourantPatchModel::bialgebroid(LieBialgebraData::trivial(k)).unwrap();
            let fam = SectionFamily::generate(&m, 2, 10, 5);
            assert!(axiom_check(&m, &fam).holds());
        }
    }
}
