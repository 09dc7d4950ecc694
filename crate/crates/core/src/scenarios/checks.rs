use std::cell::OnceCell;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{Built, RunConfig, Scenario};
use crate::cartan::{
    del_plus_minus, dolbeault_bar, phi_combine, phi_isomorphism, EigenFrame, Patch, PolyForm, PolyMultivector,
    PolyVectorField,
};
use crate::courant::{
    anchor_pullback, axiom_check, bivector_pi, connection_check, curvature, curvature_on_frame, decomposition_check,
    dirac_check, kernel_check, morphism_check, obstruction_cyclic_check, obstruction_forms,
    para_complex_connection_check, para_holomorphic_anchor_check, para_kahler_pde_check, split_check, standard_k,
    AxiomReport, BundleMap, ConnectionMap, CourantPatchModel, GeneralizedSection, LocalBialgebroidData, ParaStructure,
    SectionFamily,
};
use crate::error::{Error, Result};
use crate::lie::{
    anti_diagonal, diagonal, double_of_quadratic, iwasawa_decompose, minus_im_killing, CMatrix, LieAlgebraData,
    LieBialgebraData, QuadraticLieAlgebra, RealifiedSl,
};
use crate::scalar::random::{random_polynomial, random_rational};
use crate::scalar::{Polynomial, Rational};

pub const SUITES: &[&str] = &[
    "courant-axioms",
    "brackets",
    "dirac",
    "nijenhuis",
    "pi",
    "kahler",
    "double",
    "lie",
    "manin-triple",
    "iwasawa",
    "morphism",
    "dolbeault",
];

const CHECKS: &[(&str, &str)] = &[
    ("axioms-hold", "courant-axioms"),
    ("axiom", "courant-axioms"),
    ("failing-axioms", "courant-axioms"),
    ("family-size", "courant-axioms"),
    ("bracket", "brackets"),
    ("twisted-bracket", "brackets"),
    ("twist-rejected", "brackets"),
    ("pairing", "brackets"),
    ("dirac-cotangent", "dirac"),
    ("dirac-graph", "dirac"),
    ("dirac-failing-pairs", "dirac"),
    ("graph-closed-iff-d-closed", "dirac"),
    ("curvature", "dirac"),
    ("nijenhuis-tm", "nijenhuis"),
    ("nijenhuis-tm-zero", "nijenhuis"),
    ("nijenhuis-e", "nijenhuis"),
    ("nijenhuis-e-zero", "nijenhuis"),
    ("eigenbundles-closed", "nijenhuis"),
    ("plus-frame", "nijenhuis"),
    ("phi", "nijenhuis"),
    ("psi", "nijenhuis"),
    ("phi-cyclic", "nijenhuis"),
    ("d-plus-phi-zero", "nijenhuis"),
    ("obstructions-zero", "nijenhuis"),
    ("pi", "pi"),
    ("pi-schouten-zero", "pi"),
    ("pi-rank", "pi"),
    ("rank-law", "pi"),
    ("pi-consistent", "pi"),
    ("kernel-image", "pi"),
    ("structure-compatible", "kahler"),
    ("structure-integrable", "kahler"),
    ("fundamental-form", "kahler"),
    ("form-closed", "kahler"),
    ("form-type", "kahler"),
    ("connection-valid", "kahler"),
    ("connection-para-complex", "kahler"),
    ("graph-condition", "kahler"),
    ("connection-flat", "kahler"),
    ("k-integrable", "kahler"),
    ("split", "kahler"),
    ("split-iff-flat-para-complex", "kahler"),
    ("anchor-para-holomorphic", "kahler"),
    ("decomposition", "kahler"),
    ("decomposition-ranks", "kahler"),
    ("rank-divisible-by-4", "kahler"),
    ("pde-cartan-zero", "kahler"),
    ("pde-printed-zero", "kahler"),
    ("double-bracket", "double"),
    ("induced-matches-double", "double"),
    ("pairing-ad-invariant", "double"),
    ("bialgebra", "double"),
    ("r-matrix-component", "double"),
    ("jacobi", "lie"),
    ("killing", "lie"),
    ("killing-negative-definite", "lie"),
    ("killing-nondegenerate", "lie"),
    ("manin-triple", "manin-triple"),
    ("compact-killing-negative-definite", "manin-triple"),
    ("lagrangian-diagonal", "manin-triple"),
    ("lagrangian-antidiagonal", "manin-triple"),
    ("double-ad-invariant", "manin-triple"),
    ("dimension", "iwasawa"),
    ("iwasawa", "iwasawa"),
    ("iwasawa-roundtrip", "iwasawa"),
    ("killing-value", "iwasawa"),
    ("identity-morphism", "morphism"),
    ("morphism", "morphism"),
    ("deviation", "morphism"),
    ("d-squared", "dolbeault"),
    ("del-squared", "dolbeault"),
    ("phi-diagram", "dolbeault"),
];

pub fn suite_of(check: &str) -> Option<&'static str> {
    CHECKS.iter().find(|(c, _)| *c == check).map(|(_, s)| *s)
}

/// Check ids of a suite, in table order.
pub fn check_ids(suite: &str) -> Vec<&'static str> {
    CHECKS.iter().filter(|(_, s)| *s == suite).map(|(c, _)| *c).collect()
}

type Matcher = Box<dyn Fn(&Value) -> Result<bool>>;

pub(super) struct Observed {
    pub value: Value,
    pub witness: Option<Value>,
    matcher: Option<Matcher>,
}

impl Observed {
    fn plain(value: impl Into<Value>) -> Self {
        Observed { value: value.into(), witness: None, matcher: None }
    }

    fn with_witness(mut self, w: Option<Value>) -> Self {
        self.witness = w;
        self
    }

    /// Compare against an expectation; exact objects are compared after
    /// parsing the expected string.
    pub fn matches(&self, expected: &Value) -> Result<bool> {
        match &self.matcher {
            Some(m) => m(expected),
            None => Ok(&self.value == expected),
        }
    }
}

fn expected_str(v: &Value) -> Result<&str> {
    v.as_str()
        .ok_or_else(|| Error::InvalidField { field: "expected.value".into(), message: "expected a string".into() })
}

fn section_obs(model: &CourantPatchModel, s: GeneralizedSection) -> Observed {
    let m = model.clone();
    let value = Value::from(m.fmt_section(&s));
    Observed { value, witness: None, matcher: Some(Box::new(move |v| Ok(m.parse_section(expected_str(v)?)? == s))) }
}

fn poly_obs(patch: &Patch, p: Polynomial) -> Observed {
    let pt = patch.clone();
    let value = Value::from(pt.fmt_poly(&p));
    Observed { value, witness: None, matcher: Some(Box::new(move |v| Ok(pt.parse_polynomial(expected_str(v)?)? == p))) }
}

fn vector_obs(patch: &Patch, x: PolyVectorField) -> Observed {
    let pt = patch.clone();
    let value = Value::from(pt.fmt_vector_field(&x));
    Observed {
        value,
        witness: None,
        matcher: Some(Box::new(move |v| Ok(pt.parse_vector_field(expected_str(v)?)? == x))),
    }
}

fn multivector_obs(patch: &Patch, x: PolyMultivector) -> Observed {
    let pt = patch.clone();
    let value = Value::from(pt.fmt_multivector(&x));
    Observed {
        value,
        witness: None,
        matcher: Some(Box::new(move |v| {
            // `0` parses as a scalar; compare zeros of any degree.
            let e = pt.parse_multivector(expected_str(v)?)?;
            Ok(e == x || (e.is_zero() && x.is_zero()))
        })),
    }
}

fn rational_obs(q: Rational) -> Observed {
    let value = Value::from(q.to_string());
    Observed {
        value,
        witness: None,
        matcher: Some(Box::new(move |v| {
            let s = expected_str(v)?;
            let e: Rational =
                s.trim().parse().map_err(|e| Error::Parse { input: s.into(), message: format!("{e}") })?;
            Ok(e == q)
        })),
    }
}

pub(super) struct Ctx<'a> {
    pub s: &'a Scenario,
    pub cfg: &'a RunConfig,
    axioms: OnceCell<AxiomReport>,
}

fn need(what: &str) -> Error {
    Error::Unsupported(what.to_string())
}

fn arg<'b>(args: &'b [String], i: usize, name: &str) -> Result<&'b str> {
    args.get(i).map(|s| s.as_str()).ok_or_else(|| Error::InvalidField {
        field: "args".into(),
        message: format!("missing argument {} ({name})", i + 1),
    })
}

fn arg_usize(args: &[String], i: usize, name: &str) -> Result<usize> {
    let s = arg(args, i, name)?;
    s.trim().parse().map_err(|_| Error::InvalidField {
        field: "args".into(),
        message: format!("{name} must be an integer, got {s:?}"),
    })
}

fn frame_index(args: &[String], i: usize, bound: usize) -> Result<usize> {
    let k = arg_usize(args, i, "frame index")?;
    if k == 0 || k > bound {
        return Err(Error::IndexOutOfRange { index: k, bound });
    }
    Ok(k - 1)
}

fn graph_generators(model: &CourantPatchModel, w: &PolyForm) -> Result<Vec<GeneralizedSection>> {
    let a = ConnectionMap::Graph(w.clone());
    let n = model.nvars();
    (0..n).map(|i| a.apply(model, &PolyVectorField::coordinate(n, i))).collect()
}

fn index_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn random_form<R: Rng>(rng: &mut R, n: usize, k: usize) -> PolyForm {
    let mut out = PolyForm::zero(n, k);
    for idx in index_sets(n, k) {
        let f = random_polynomial(rng, n, 2, 2);
        if !f.is_zero() {
            out = out.add(&PolyForm::monomial(&idx, f)).expect("same patch");
        }
    }
    out
}

/// The `(p,q)` part of a random `k`-form, for a random admissible type.
fn random_typed_form<R: Rng>(rng: &mut R, j: &EigenFrame) -> Result<(PolyForm, usize, usize)> {
    let n = j.dim();
    let h = j.half();
    let k = rng.gen_range(0..n);
    let lo = k.saturating_sub(h);
    let p = rng.gen_range(lo..=k.min(h));
    let alpha = random_form(rng, n, k);
    let part = j.type_decompose(&alpha)?.get(p, k - p).cloned().unwrap_or_else(|| PolyForm::zero(n, k));
    Ok((part, p, k - p))
}

fn random_traceless<R: Rng>(rng: &mut R, n: usize) -> Result<CMatrix> {
    let mut re = vec![vec![Rational::zero(); n]; n];
    let mut im = vec![vec![Rational::zero(); n]; n];
    for r in 0..n {
        for c in 0..n {
            re[r][c] = random_rational(rng);
            im[r][c] = random_rational(rng);
        }
    }
    let (mut tr, mut ti) = (Rational::zero(), Rational::zero());
    for i in 0..n - 1 {
        tr += &re[i][i];
        ti += &im[i][i];
    }
    re[n - 1][n - 1] = -tr;
    im[n - 1][n - 1] = -ti;
    CMatrix::from_parts(re, im)
}

fn constant_vector(s: &GeneralizedSection) -> Vec<Rational> {
    s.coefficients().iter().map(|p| p.constant_value().unwrap_or_else(Rational::zero)).collect()
}

fn killing_matrix(alg: &LieAlgebraData) -> Value {
    let k = alg.killing_form();
    Value::from(k.matrix().iter().map(|row| row.iter().map(|q| q.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

impl<'a> Ctx<'a> {
    pub fn new(s: &'a Scenario, cfg: &'a RunConfig) -> Self {
        Ctx { s, cfg, axioms: OnceCell::new() }
    }

    pub fn degree(&self) -> u32 {
        self.s.doc.family.max_degree.map_or(self.cfg.degree, |m| m.min(self.cfg.degree))
    }

    pub fn random(&self) -> usize {
        self.s.doc.family.random.unwrap_or(self.cfg.random)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed)
    }

    fn model(&self) -> Result<&CourantPatchModel> {
        match &self.s.built {
            Built::Patch { model, .. } | Built::Constant { model, .. } => Ok(model),
            Built::Lie { .. } => Err(need("a Courant model")),
        }
    }

    fn patch_model(&self) -> Result<&CourantPatchModel> {
        match &self.s.built {
            Built::Patch { model, .. } => Ok(model),
            _ => Err(need("a patch model")),
        }
    }

    fn split(&self) -> Result<&EigenFrame> {
        match &self.s.built {
            Built::Patch { split: Some(j), .. } => Ok(j),
            _ => Err(need("a split of TM (construction.split)")),
        }
    }

    fn structure(&self) -> Result<&ParaStructure> {
        match &self.s.built {
            Built::Patch { structure: Some(j), .. } | Built::Constant { structure: j, .. } => Ok(j),
            _ => Err(need("a para-complex structure (construction.structure)")),
        }
    }

    fn bialgebra(&self) -> Result<&LieBialgebraData> {
        match &self.s.built {
            Built::Constant { bi, .. } => Ok(bi),
            _ => Err(need("a constant-section model")),
        }
    }

    fn algebra(&self) -> Result<&LieAlgebraData> {
        match &self.s.built {
            Built::Lie { algebra: Some(a), .. } => Ok(a),
            Built::Lie { realified: Some(r), .. } => Ok(r.algebra()),
            Built::Constant { bi, .. } => Ok(&bi.k),
            _ => Err(need("a Lie algebra")),
        }
    }

    fn realified(&self) -> Result<&RealifiedSl> {
        match &self.s.built {
            Built::Lie { realified: Some(r), .. } => Ok(r),
            _ => Err(need("a realified sl(n,ℂ) (construction.realified_sl)")),
        }
    }

    fn section(&self, src: &str) -> Result<GeneralizedSection> {
        self.model()?.parse_section(src)
    }

    fn form(&self, src: &str) -> Result<PolyForm> {
        self.patch_model()?.patch().parse_form(src)
    }

    /// The connection 2-form from the first argument, or from the construction.
    fn connection_form(&self, args: &[String]) -> Result<PolyForm> {
        if let Some(src) = args.first() {
            return self.form(src);
        }
        match &self.s.built {
            Built::Patch { connection: Some((w, _)), .. } => Ok(w.clone()),
            _ => Err(need("a connection (construction.connection or an argument)")),
        }
    }

    fn axioms(&self) -> Result<&AxiomReport> {
        if self.axioms.get().is_none() {
            let model = self.model()?;
            let fam = SectionFamily::generate(model, self.degree(), self.random(), self.cfg.seed);
            let _ = self.axioms.set(axiom_check(model, &fam));
        }
        Ok(self.axioms.get().expect("set above"))
    }

    pub fn run(&self, check: &str, args: &[String]) -> Result<Observed> {
        match check {
            "axioms-hold" => {
                let r = self.axioms()?;
                let w = r.outcomes.iter().find(|o| !o.holds).map(|o| json!({"axiom": o.axiom, "witness": o.witness}));
                Ok(Observed::plain(r.holds()).with_witness(w))
            }
            "axiom" => {
                let k = arg_usize(args, 0, "axiom number")?;
                if !(1..=5).contains(&k) {
                    return Err(Error::IndexOutOfRange { index: k, bound: 5 });
                }
                let o = self.axioms()?.outcome(k as u8);
                Ok(Observed::plain(o.holds).with_witness(o.witness.as_ref().map(|w| json!(w))))
            }
            "failing-axioms" => {
                let r = self.axioms()?;
                let w: Vec<Value> = r
                    .outcomes
                    .iter()
                    .filter(|o| !o.holds)
                    .map(|o| json!({"axiom": o.axiom, "witness": o.witness}))
                    .collect();
                Ok(Observed::plain(json!(r.failing())).with_witness((!w.is_empty()).then(|| Value::from(w))))
            }
            "family-size" => Ok(Observed::plain(self.axioms()?.family_size)),
            "bracket" => {
                let m = self.model()?;
                let b =
                    m.bracket(&self.section(arg(args, 0, "section")?)?, &self.section(arg(args, 1, "section")?)?)?;
                Ok(section_obs(m, b))
            }
            "twisted-bracket" => {
                let m = self.patch_model()?;
                let eta = self.form(arg(args, 0, "twist")?)?;
                let tw = CourantPatchModel::twisted(m.patch().clone(), eta)?;
                let b = tw.bracket(
                    &tw.parse_section(arg(args, 1, "section")?)?,
                    &tw.parse_section(arg(args, 2, "section")?)?,
                )?;
                Ok(section_obs(&tw, b))
            }
            "twist-rejected" => {
                let m = self.patch_model()?;
                let eta = self.form(arg(args, 0, "twist")?)?;
                Ok(match CourantPatchModel::twisted(m.patch().clone(), eta) {
                    Err(e @ Error::TwistNotClosed(_)) => Observed::plain(true).with_witness(Some(e.to_string().into())),
                    Err(e) => return Err(e),
                    Ok(_) => Observed::plain(false),
                })
            }
            "pairing" => {
                let m = self.model()?;
                let p = m.pairing(&self.section(arg(args, 0, "section")?)?, &self.section(arg(args, 1, "section")?)?);
                Ok(poly_obs(m.patch(), p))
            }
            "dirac-cotangent" => {
                let m = self.patch_model()?;
                let n = m.nvars();
                let gens: Vec<_> = (0..n).map(|i| m.basis_section(n + i)).collect();
                Ok(Observed::plain(dirac_check(m, &gens)?.holds()))
            }
            "dirac-graph" => {
                let m = self.patch_model()?;
                let r = dirac_check(m, &graph_generators(m, &self.form(arg(args, 0, "2-form")?)?)?)?;
                Ok(Observed::plain(r.holds()).with_witness(r.failing_pairs.first().map(|p| self.pair_name(*p))))
            }
            "dirac-failing-pairs" => {
                let m = self.patch_model()?;
                let r = dirac_check(m, &graph_generators(m, &self.form(arg(args, 0, "2-form")?)?)?)?;
                Ok(Observed::plain(r.failing_pairs.iter().map(|p| self.pair_name(*p)).collect::<Vec<_>>()))
            }
            "graph-closed-iff-d-closed" => {
                let m = self.patch_model()?;
                let mut rows = Vec::new();
                let mut ok = true;
                for src in args {
                    let w = self.form(src)?;
                    let closed = dirac_check(m, &graph_generators(m, &w)?)?.closed;
                    let d_closed = w.d().is_zero();
                    ok &= closed == d_closed;
                    rows.push(json!({"form": src, "graph_closed": closed, "d_closed": d_closed}));
                }
                Ok(Observed::plain(ok).with_witness(Some(rows.into())))
            }
            "curvature" => {
                let m = self.patch_model()?;
                let p = m.patch();
                let a = ConnectionMap::Graph(self.form(arg(args, 0, "2-form")?)?);
                let x = p.parse_vector_field(arg(args, 1, "vector field")?)?;
                let y = p.parse_vector_field(arg(args, 2, "vector field")?)?;
                Ok(section_obs(m, curvature(m, &a, &x, &y)?))
            }
            "nijenhuis-tm" => {
                let m = self.patch_model()?;
                let p = m.patch();
                let x = p.parse_vector_field(arg(args, 0, "vector field")?)?;
                let y = p.parse_vector_field(arg(args, 1, "vector field")?)?;
                Ok(vector_obs(p, self.split()?.nijenhuis(&x, &y)?))
            }
            "nijenhuis-tm-zero" => {
                let p = self.patch_model()?.patch();
                let j = self.split()?;
                let f = j.vectors();
                for a in 0..f.len() {
                    for b in a + 1..f.len() {
                        let n = j.nijenhuis(&f[a], &f[b])?;
                        if !n.is_zero() {
                            let w = format!(
                                "N({}, {}) = {}",
                                p.fmt_vector_field(&f[a]),
                                p.fmt_vector_field(&f[b]),
                                p.fmt_vector_field(&n)
                            );
                            return Ok(Observed::plain(false).with_witness(Some(w.into())));
                        }
                    }
                }
                Ok(Observed::plain(true))
            }
            "nijenhuis-e" => {
                let m = self.model()?;
                let n = self.structure()?.nijenhuis(
                    m,
                    &self.section(arg(args, 0, "section")?)?,
                    &self.section(arg(args, 1, "section")?)?,
                )?;
                Ok(section_obs(m, n))
            }
            "nijenhuis-e-zero" => {
                let m = self.model()?;
                let j = self.structure()?;
                let f = j.frame();
                for a in 0..f.len() {
                    for b in a + 1..f.len() {
                        let n = j.nijenhuis(m, &f[a], &f[b])?;
                        if !n.is_zero() {
                            let w = format!(
                                "N({}, {}) = {}",
                                m.fmt_section(&f[a]),
                                m.fmt_section(&f[b]),
                                m.fmt_section(&n)
                            );
                            return Ok(Observed::plain(false).with_witness(Some(w.into())));
                        }
                    }
                }
                Ok(Observed::plain(true))
            }
            "eigenbundles-closed" => {
                let c = self.structure()?.closure(self.model()?)?;
                let w = json!({"plus": c.plus_witness, "minus": c.minus_witness});
                Ok(Observed::plain(json!({"plus": c.plus_closed, "minus": c.minus_closed})).with_witness(Some(w)))
            }
            "plus-frame" => {
                let j = self.structure()?;
                let i = frame_index(args, 0, j.rank())?;
                Ok(section_obs(self.model()?, j.plus()[i].clone()))
            }
            "phi" | "psi" => {
                let m = self.model()?;
                let j = self.structure()?;
                let h = j.rank();
                let idx = [frame_index(args, 0, h)?, frame_index(args, 1, h)?, frame_index(args, 2, h)?];
                let f = obstruction_forms(m, j)?;
                let t = if check == "phi" { &f.phi } else { &f.psi };
                Ok(poly_obs(m.patch(), t.component(&idx)))
            }
            "phi-cyclic" => {
                let r = obstruction_cyclic_check(self.model()?, self.structure()?)?;
                Ok(Observed::plain(r.holds).with_witness(r.witness.map(|w| json!(w.map(|i| i + 1)))))
            }
            "d-plus-phi-zero" => {
                let f = obstruction_forms(self.model()?, self.structure()?)?;
                Ok(Observed::plain(f.d_plus_phi.is_zero() && f.d_minus_psi.is_zero() && f.alternating))
            }
            "obstructions-zero" => {
                let f = obstruction_forms(self.model()?, self.structure()?)?;
                Ok(Observed::plain(f.phi.is_zero() && f.psi.is_zero()))
            }
            "pi" => {
                let m = self.model()?;
                Ok(multivector_obs(m.patch(), bivector_pi(m, self.structure()?)?.pi))
            }
            "pi-schouten-zero" => {
                Ok(Observed::plain(bivector_pi(self.model()?, self.structure()?)?.schouten_half.is_zero()))
            }
            "pi-rank" => Ok(Observed::plain(bivector_pi(self.model()?, self.structure()?)?.rank)),
            "rank-law" => {
                let r = bivector_pi(self.model()?, self.structure()?)?;
                let w = json!({"rank": r.rank, "intersection_dim": r.intersection_dim,
                    "anchor_plus_rank": r.anchor_plus_rank, "anchor_minus_rank": r.anchor_minus_rank});
                Ok(Observed::plain(r.rank_law_holds()).with_witness(Some(w)))
            }
            "pi-consistent" => {
                let r = bivector_pi(self.model()?, self.structure()?)?;
                Ok(Observed::plain(r.consistent && r.antisymmetric))
            }
            "kernel-image" => {
                let r = kernel_check(self.model()?, self.structure()?)?;
                let w = json!({"plus_image_in_kernel": r.plus_image_in_kernel, "minus_image_in_kernel": r.minus_image_in_kernel,
                    "plus_kernel_dim": r.plus_kernel_dim, "plus_image_dim": r.plus_image_dim,
                    "minus_kernel_dim": r.minus_kernel_dim, "minus_image_dim": r.minus_image_dim});
                Ok(Observed::plain(r.holds()).with_witness(Some(w)))
            }
            "structure-compatible" => Ok(Observed::plain(self.structure()?.compatible(self.model()?))),
            "structure-integrable" => Ok(Observed::plain(self.structure()?.closure(self.model()?)?.integrable())),
            "fundamental-form" => {
                let m = self.model()?;
                let w = self.structure()?.fundamental_form(
                    m,
                    &self.section(arg(args, 0, "section")?)?,
                    &self.section(arg(args, 1, "section")?)?,
                )?;
                Ok(poly_obs(m.patch(), w))
            }
            "form-closed" => Ok(Observed::plain(self.connection_form(args)?.d().is_zero())),
            "form-type" => {
                let w = self.connection_form(args)?;
                let t = match self.split()?.type_decompose(&w)?.pure_type() {
                    _ if w.is_zero() => "zero".to_string(),
                    Some((p, q)) => format!("({p},{q})"),
                    None => "mixed".to_string(),
                };
                Ok(Observed::plain(t))
            }
            "connection-valid" => {
                let r = connection_check(self.patch_model()?, &ConnectionMap::Graph(self.connection_form(args)?))?;
                Ok(Observed::plain(r.holds()).with_witness(r.reason.map(Value::from)))
            }
            "connection-para-complex" | "graph-condition" => {
                let a = ConnectionMap::Graph(self.connection_form(args)?);
                let r = para_complex_connection_check(self.patch_model()?, &a, self.structure()?, self.split()?)?;
                Ok(Observed::plain(if check == "graph-condition" {
                    json!(r.graph_condition)
                } else {
                    json!(r.holds())
                }))
            }
            "connection-flat" => {
                let m = self.patch_model()?;
                let r = curvature_on_frame(m, &ConnectionMap::Graph(self.connection_form(args)?))?;
                let w = r.first().map(|(i, j, s)| {
                    Value::from(format!(
                        "R(∂{}, ∂{}) = {}",
                        m.patch().names()[*i],
                        m.patch().names()[*j],
                        m.fmt_section(s)
                    ))
                });
                Ok(Observed::plain(r.is_empty()).with_witness(w))
            }
            "k-integrable" => {
                let m = self.patch_model()?;
                let k = standard_k(m, &ConnectionMap::Graph(self.connection_form(args)?))?;
                Ok(Observed::plain(k.closure(m)?.integrable()))
            }
            "split" => {
                let m = self.patch_model()?;
                let k = standard_k(m, &ConnectionMap::Graph(self.connection_form(args)?))?;
                let r = split_check(m, self.structure()?, &k)?;
                let w = json!({"commute": r.commute, "l_squared_identity": r.l_squared_identity, "l_isometry": r.l_isometry,
                    "j_integrable": r.j_integrable, "k_integrable": r.k_integrable});
                Ok(Observed::plain(r.holds()).with_witness(Some(w)))
            }
            "split-iff-flat-para-complex" => {
                let m = self.patch_model()?;
                let (je, jtm) = (self.structure()?, self.split()?);
                let mut ok = true;
                let mut rows = Vec::new();
                for src in args {
                    let a = ConnectionMap::Graph(self.form(src)?);
                    let flat = curvature_on_frame(m, &a)?.is_empty();
                    let pc = para_complex_connection_check(m, &a, je, jtm)?.holds();
                    let split = split_check(m, je, &standard_k(m, &a)?)?.holds();
                    ok &= split == (flat && pc);
                    rows.push(json!({"form": src, "flat": flat, "para_complex": pc, "split": split}));
                }
                Ok(Observed::plain(ok).with_witness(Some(rows.into())))
            }
            "anchor-para-holomorphic" => {
                let r = para_holomorphic_anchor_check(self.patch_model()?, self.structure()?, self.split()?)?;
                Ok(Observed::plain(r.holds()).with_witness(r.witness.map(Value::from)))
            }
            "decomposition" | "decomposition-ranks" => {
                let a = ConnectionMap::Graph(self.connection_form(args)?);
                let r = decomposition_check(self.patch_model()?, self.structure()?, self.split()?, &a)?;
                Ok(Observed::plain(if check == "decomposition" {
                    json!(r.holds())
                } else {
                    json!([r.plus_rank, r.minus_rank])
                }))
            }
            "rank-divisible-by-4" => Ok(Observed::plain((2 * self.model()?.rank()) % 4 == 0)),
            "pde-cartan-zero" | "pde-printed-zero" => {
                let m = self.patch_model()?;
                let j = self.structure()?;
                let data = LocalBialgebroidData::from_structure(m, j)?;
                let w = anchor_pullback(m, j, &self.connection_form(args)?)?;
                let r = para_kahler_pde_check(&data, &w)?;
                Ok(Observed::plain(if check == "pde-cartan-zero" { r.cartan_vanishes() } else { r.printed_vanishes() }))
            }
            "double-bracket" => {
                let m = self.model()?;
                let bi = self.bialgebra()?;
                let a = constant_vector(&self.section(arg(args, 0, "section")?)?);
                let b = constant_vector(&self.section(arg(args, 1, "section")?)?);
                let v = bi.double_bracket(&a, &b);
                let c: Vec<Polynomial> = v.into_iter().map(|q| Polynomial::constant(0, q)).collect();
                Ok(section_obs(m, GeneralizedSection::from_coefficients(0, &c)))
            }
            "induced-matches-double" => {
                let m = self.model()?;
                let bi = self.bialgebra()?;
                let basis = m.basis_sections();
                for a in &basis {
                    for b in &basis {
                        let want = bi.double_bracket(&constant_vector(a), &constant_vector(b));
                        let got = constant_vector(&m.bracket(a, b)?);
                        if got != want {
                            let w = format!("[{}, {}]", m.fmt_section(a), m.fmt_section(b));
                            return Ok(Observed::plain(false).with_witness(Some(w.into())));
                        }
                    }
                }
                Ok(Observed::plain(true))
            }
            "pairing-ad-invariant" => {
                let w = self.bialgebra()?.double().ad_invariance_check();
                Ok(Observed::plain(w.is_none()).with_witness(w.map(|t| json!(t.map(|i| i + 1)))))
            }
            "bialgebra" => {
                let r = self.bialgebra()?.bialgebra_check();
                Ok(Observed::plain(r.holds()).with_witness((!r.holds()).then(|| json!(r))))
            }
            "r-matrix-component" => {
                let bi = self.bialgebra()?;
                let d = 2 * bi.dim();
                let (a, b) = (frame_index(args, 0, d)?, frame_index(args, 1, d)?);
                Ok(rational_obs(bi.r_matrix().component(a, b)))
            }
            "jacobi" => {
                let alg = self.algebra()?;
                let w = alg.jacobi_check().map(|w| {
                    json!({"triple": w.triple.map(|i| format!("e{}", i + 1)), "jacobiator": super::fmt_vector(&w.jacobiator, "e")})
                });
                Ok(Observed::plain(w.is_none()).with_witness(w))
            }
            "killing" => Ok(Observed::plain(killing_matrix(self.algebra()?))),
            "killing-negative-definite" => {
                Ok(Observed::plain(self.algebra()?.killing_form().negative_definite_check()))
            }
            "killing-nondegenerate" => Ok(Observed::plain(self.algebra()?.killing_form().is_nondegenerate())),
            "manin-triple" => {
                let s = self.realified()?;
                let q = QuadraticLieAlgebra::new(s.algebra().clone(), minus_im_killing(s))?;
                let r = q.manin_triple_check(&s.span(s.k_range()), &s.an_span())?;
                Ok(Observed::plain(r.holds()).with_witness((!r.holds()).then(|| json!(r))))
            }
            "compact-killing-negative-definite" => {
                Ok(Observed::plain(self.realified()?.compact_algebra()?.killing_form().negative_definite_check()))
            }
            "lagrangian-diagonal" | "lagrangian-antidiagonal" | "double-ad-invariant" => {
                let g = self.algebra()?;
                let d = double_of_quadratic(g, &g.killing_form())?;
                if check == "double-ad-invariant" {
                    return Ok(Observed::plain(d.ad_invariance_check().is_none()));
                }
                let w = if check == "lagrangian-diagonal" { diagonal(g.dim()) } else { anti_diagonal(g.dim()) };
                let r = d.lagrangian_check(&w)?;
                Ok(Observed::plain(r.holds()).with_witness(Some(json!(r))))
            }
            "dimension" => Ok(Observed::plain(self.realified()?.dim())),
            "iwasawa" => {
                let s = self.realified()?;
                let p = iwasawa_decompose(s, &CMatrix::parse(arg(args, 0, "matrix")?)?)?;
                let value = json!({"k": p.k.to_string(), "a": p.a.to_string(), "n": p.n.to_string()});
                let matcher: Matcher = Box::new(move |v| {
                    let part = |key: &str| -> Result<CMatrix> {
                        CMatrix::parse(v.get(key).and_then(Value::as_str).ok_or_else(|| Error::InvalidField {
                            field: "expected.value".into(),
                            message: format!("missing string field {key:?}"),
                        })?)
                    };
                    Ok(part("k")? == p.k && part("a")? == p.a && part("n")? == p.n)
                });
                Ok(Observed { value, witness: None, matcher: Some(matcher) })
            }
            "iwasawa-roundtrip" => {
                let s = self.realified()?;
                let count = arg_usize(args, 0, "count")?;
                let mut rng = self.rng();
                for _ in 0..count {
                    let x = random_traceless(&mut rng, s.n())?;
                    let p = iwasawa_decompose(s, &x)?;
                    let ok = p.k.is_anti_hermitian()
                        && p.k.is_traceless()
                        && p.a.is_real_diagonal()
                        && p.a.is_traceless()
                        && p.n.is_strictly_upper()
                        && p.k.add(&p.a).add(&p.n) == x;
                    if !ok {
                        return Ok(Observed::plain(false).with_witness(Some(x.to_string().into())));
                    }
                }
                Ok(Observed::plain(true))
            }
            "killing-value" => {
                let s = self.realified()?;
                let coords = |i: usize| -> Result<Vec<Rational>> {
                    s.coordinates(&CMatrix::parse(arg(args, i, "matrix")?)?).ok_or(Error::NotTraceless)
                };
                Ok(rational_obs(minus_im_killing(s).eval(&coords(0)?, &coords(1)?)))
            }
            "identity-morphism" => {
                let m = self.patch_model()?;
                Ok(Observed::plain(morphism_check(&BundleMap::identity(m), m, m)?.holds()))
            }
            "morphism" => {
                let m = self.patch_model()?;
                let psi = BundleMap::b_transform(m, &self.form(arg(args, 0, "2-form")?)?)?;
                let r = morphism_check(&psi, m, m)?;
                let value = json!({"isometry": r.isometry, "anchor": r.anchor, "d_compatible": r.d_compatible,
                    "bracket_preserved": r.bracket_preserved(), "tensorial": r.tensorial,
                    "deviation_in_rho_star": r.deviation_in_rho_star});
                let w: Vec<Value> = r
                    .deviations
                    .iter()
                    .map(|d| {
                        let b = m.basis_sections();
                        json!({"pair": [m.fmt_section(&b[d.pair.0]), m.fmt_section(&b[d.pair.1])], "deviation": m.fmt_section(&d.value)})
                    })
                    .collect();
                Ok(Observed::plain(value).with_witness((!w.is_empty()).then(|| w.into())))
            }
            "deviation" => {
                let m = self.patch_model()?;
                let psi = BundleMap::b_transform(m, &self.form(arg(args, 0, "2-form")?)?)?;
                let (a, b) = (self.section(arg(args, 1, "section")?)?, self.section(arg(args, 2, "section")?)?);
                let d = psi.apply(&m.bracket(&a, &b)?).sub(&m.bracket(&psi.apply(&a), &psi.apply(&b))?);
                let in_rho_star = d.is_tangent_free();
                Ok(section_obs(m, d).with_witness(Some(json!({"in_rho_star": in_rho_star}))))
            }
            "d-squared" => {
                let n = self.patch_model()?.nvars();
                let count = arg_usize(args, 0, "count")?;
                let mut rng = self.rng();
                for _ in 0..count {
                    let k = rng.gen_range(0..n.max(1));
                    let a = random_form(&mut rng, n, k);
                    if !a.d().d().is_zero() {
                        return Ok(
                            Observed::plain(false).with_witness(Some(self.patch_model()?.patch().fmt_form(&a).into()))
                        );
                    }
                }
                Ok(Observed::plain(true))
            }
            "del-squared" => {
                let p = self.patch_model()?.patch();
                let j = self.split()?;
                let count = arg_usize(args, 0, "count")?;
                let mut rng = self.rng();
                for _ in 0..count {
                    let (a, _, _) = random_typed_form(&mut rng, j)?;
                    let r = del_plus_minus(&a, j)?;
                    let rp = del_plus_minus(&r.plus, j)?;
                    let rm = del_plus_minus(&r.minus, j)?;
                    let ok = rp.plus.is_zero() && rm.minus.is_zero() && rp.minus.add(&rm.plus)?.is_zero();
                    if !ok {
                        return Ok(Observed::plain(false).with_witness(Some(p.fmt_form(&a).into())));
                    }
                }
                Ok(Observed::plain(true))
            }
            "phi-diagram" => {
                let p = self.patch_model()?.patch();
                let j = self.split()?;
                let count = arg_usize(args, 0, "count")?;
                let mut rng = self.rng();
                let mut tested = 0;
                while tested < count {
                    let (eta, pp, qq) = random_typed_form(&mut rng, j)?;
                    // η′ of the transposed type (q,p); skip types that do not fit.
                    if qq > j.half() || pp > j.half() {
                        continue;
                    }
                    let n = j.dim();
                    let raw = random_form(&mut rng, n, pp + qq);
                    let eta2 =
                        j.type_decompose(&raw)?.get(qq, pp).cloned().unwrap_or_else(|| PolyForm::zero(n, pp + qq));
                    tested += 1;
                    let lhs = dolbeault_bar(&phi_isomorphism(&eta, &eta2, j)?, j)?;
                    let dm = del_plus_minus(&eta, j)?.minus;
                    let dp = del_plus_minus(&eta2, j)?.plus;
                    let rhs = phi_combine(&dm, &dp)?;
                    if lhs != rhs {
                        let w = json!({"eta": p.fmt_form(&eta), "eta_prime": p.fmt_form(&eta2)});
                        return Ok(Observed::plain(false).with_witness(Some(w)));
                    }
                }
                Ok(Observed::plain(true))
            }
            other => Err(Error::InvalidField { field: "check".into(), message: format!("unknown check {other:?}") }),
        }
    }

    /// `(A∂x, A∂y)` for a pair of graph generators.
    fn pair_name(&self, (i, j): (usize, usize)) -> Value {
        let names = self.patch_model().map(|m| m.patch().names().to_vec()).unwrap_or_default();
        Value::from(format!("(A∂{}, A∂{})", names[i], names[j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_has_a_known_suite() {
        for (c, s) in CHECKS {
            assert!(SUITES.contains(s), "{c}");
        }
        for s in SUITES {
            assert!(!check_ids(s).is_empty(), "{s}");
        }
    }

    #[test]
    fn random_typed_forms_are_typed() {
        let j = EigenFrame::coordinate(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (a, p, q) = random_typed_form(&mut rng, &j).unwrap();
            if !a.is_zero() {
                assert_eq!(j.type_decompose(&a).unwrap().pure_type(), Some((p, q)));
            }
        }
    }
}
