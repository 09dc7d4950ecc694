use super::{CourantPatchModel, GeneralizedSection};
use crate::cartan::{PolyForm, PolyVectorField};
use crate::error::{Error, Result};
use crate::linalg::{rank, Matrix};
use crate::scalar::Polynomial;

#[derive(Clone, Debug, PartialEq)]
pub struct DiracReport {
    pub isotropic: bool,
    /// Number of generators equals the half rank of `E`.
    pub maximal: bool,
    pub closed: bool,
    /// Generator pairs whose bracket leaves the span, in lexicographic order.
    pub failing_pairs: Vec<(usize, usize)>,
}

impl DiracReport {
    pub fn holds(&self) -> bool {
        self.isotropic && self.maximal && self.closed
    }
}

fn coefficient_matrix(sections: &[GeneralizedSection]) -> Matrix<Polynomial> {
    sections.iter().map(|s| s.coefficients()).collect()
}

/// Whether `s` lies in the span of `frame` over the fraction field, given
/// that `frame` is independent.
pub(super) fn in_span(frame_rows: &Matrix<Polynomial>, s: &GeneralizedSection) -> bool {
    if s.is_zero() {
        return true;
    }
    let mut m = frame_rows.clone();
    m.push(s.coefficients());
    rank(&m) == frame_rows.len()
}

pub fn dirac_check(model: &CourantPatchModel, generators: &[GeneralizedSection]) -> Result<DiracReport> {
    let rows = coefficient_matrix(generators);
    if rank(&rows) != generators.len() {
        return Err(Error::DependentGenerators);
    }
    let isotropic = (0..generators.len())
        .all(|i| (i..generators.len()).all(|j| model.pairing(&generators[i], &generators[j]).is_zero()));
    let mut failing_pairs = Vec::new();
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            let b = model.bracket(&generators[i], &generators[j])?;
            if !in_span(&rows, &b) {
                failing_pairs.push((i, j));
            }
        }
    }
    Ok(DiracReport {
        isotropic,
        maximal: generators.len() == model.rank(),
        closed: failing_pairs.is_empty(),
        failing_pairs,
    })
}

/// A map `TM → E` that is linear over functions.
#[derive(Clone, Debug, PartialEq)]
pub enum ConnectionMap {
    /// `A_ω(X) = X ⊕ ι_Xω`.
    Graph(PolyForm),
    /// Images of the coordinate fields `∂ᵢ`.
    Explicit(Vec<GeneralizedSection>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionReport {
    pub right_inverse: bool,
    pub isotropic: bool,
    pub reason: Option<String>,
}

impl ConnectionReport {
    pub fn holds(&self) -> bool {
        self.right_inverse && self.isotropic
    }
}

impl ConnectionMap {
    pub fn apply(&self, model: &CourantPatchModel, x: &PolyVectorField) -> Result<GeneralizedSection> {
        match self {
            ConnectionMap::Graph(w) => {
                if w.degree() != 2 {
                    return Err(Error::TypeMismatch(format!(
                        "graph connection needs a 2-form, got degree {}",
                        w.degree()
                    )));
                }
                GeneralizedSection::new(x, &w.interior(x)?)
            }
            ConnectionMap::Explicit(images) => {
                if images.len() != x.dim() {
                    return Err(Error::Shape(format!("{} images for a {}-dimensional patch", images.len(), x.dim())));
                }
                let mut out = model.zero_section();
                for (c, im) in x.components().iter().zip(images) {
                    if !c.is_zero() {
                        out = out.add(&im.scale(c));
                    }
                }
                Ok(out)
            }
        }
    }

    fn frame_images(&self, model: &CourantPatchModel) -> Result<Vec<GeneralizedSection>> {
        let n = model.nvars();
        (0..n).map(|i| self.apply(model, &PolyVectorField::coordinate(n, i))).collect()
    }
}

/// `ρ∘A = Id` and `⟨AX, AY⟩ = 0` on the coordinate frame.
pub fn connection_check(model: &CourantPatchModel, a: &ConnectionMap) -> Result<ConnectionReport> {
    if !model.is_exact() {
        return Err(Error::Unsupported("a patch model".into()));
    }
    let n = model.nvars();
    let images = a.frame_images(model)?;
    let mut reason = None;
    let mut right_inverse = true;
    for (i, im) in images.iter().enumerate() {
        if model.anchor(im) != PolyVectorField::coordinate(n, i) {
            right_inverse = false;
            reason.get_or_insert_with(|| {
                format!("ρ(A ∂{}) = {}", i + 1, model.patch().fmt_vector_field(&model.anchor(im)))
            });
        }
    }
    let mut isotropic = true;
    for i in 0..n {
        for j in i..n {
            let p = model.pairing(&images[i], &images[j]);
            if !p.is_zero() {
                isotropic = false;
                reason.get_or_insert_with(|| format!("⟨A ∂{}, A ∂{}⟩ = {}", i + 1, j + 1, model.fmt_poly(&p)));
            }
        }
    }
    Ok(ConnectionReport { right_inverse, isotropic, reason })
}

/// `R(X,Y) = [AX, AY] − A[X,Y]`.
pub fn curvature(
    model: &CourantPatchModel,
    a: &ConnectionMap,
    x: &PolyVectorField,
    y: &PolyVectorField,
) -> Result<GeneralizedSection> {
    let r = connection_check(model, a)?;
    if !r.holds() {
        return Err(Error::InvalidConnection(r.reason.unwrap_or_default()));
    }
    let b = model.bracket(&a.apply(model, x)?, &a.apply(model, y)?)?;
    Ok(b.sub(&a.apply(model, &x.bracket(y)?)?))
}

/// Nonzero values of `R(∂ᵢ, ∂ⱼ)` for `i < j`.
pub fn curvature_on_frame(
    model: &CourantPatchModel,
    a: &ConnectionMap,
) -> Result<Vec<(usize, usize, GeneralizedSection)>> {
    let n = model.nvars();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let r = curvature(model, a, &PolyVectorField::coordinate(n, i), &PolyVectorField::coordinate(n, j))?;
            if !r.is_zero() {
                out.push((i, j, r));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Patch;

    fn model(n: usize) -> CourantPatchModel {
        CourantPatchModel::standard(Patch::standard(n))
    }

    fn graph_generators(m: &CourantPatchModel, w: &str) -> Vec<GeneralizedSection> {
        let a = ConnectionMap::Graph(m.patch().parse_form(w).unwrap());
        a.frame_images(m).unwrap()
    }

    #[test]
    fn cotangent_and_graphs() {
        let m = model(3);
        let cot: Vec<_> = (0..3).map(|i| m.basis_section(3 + i)).collect();
        assert!(dirac_check(&m, &cot).unwrap().holds());
        let m2 = model(2);
        assert!(dirac_check(&m2, &graph_generators(&m2, "dx^dy")).unwrap().holds());
        let r = dirac_check(&m, &graph_generators(&m, "x*dy^dz")).unwrap();
        assert!(r.isotropic && !r.closed);
        assert!(r.failing_pairs.contains(&(1, 2)));
        // d(x dx∧dy + dy∧dz) = 0
        assert!(dirac_check(&m, &graph_generators(&m, "x*dx^dy + dy^dz")).unwrap().holds());
        assert_eq!(dirac_check(&m, &[cot[0].clone(), cot[0].clone()]), Err(Error::DependentGenerators));
    }

    #[test]
    fn connections_and_curvature() {
        let m = model(3);
        let p = m.patch().clone();
        let a = ConnectionMap::Graph(p.parse_form("x*dy^dz").unwrap());
        assert!(connection_check(&m, &a).unwrap().holds());
        let r = curvature(&m, &a, &p.parse_vector_field("∂y").unwrap(), &p.parse_vector_field("∂z").unwrap()).unwrap();
        assert_eq!(r, m.parse_section("dx").unwrap());
        let flat = ConnectionMap::Graph(p.parse_form("dx^dy").unwrap());
        assert!(curvature_on_frame(&m, &flat).unwrap().is_empty());

        let g = ConnectionMap::Explicit((0..3).map(|i| m.basis_section(i).add(&m.basis_section(3 + i))).collect());
        let rep = connection_check(&m, &g).unwrap();
        assert!(rep.right_inverse && !rep.isotropic);
        assert!(matches!(
            curvature(&m, &g, &p.parse_vector_field("∂x").unwrap(), &p.parse_vector_field("∂y").unwrap()),
            Err(Error::InvalidConnection(_))
        ));
        let zero = ConnectionMap::Explicit(vec![m.zero_section(); 3]);
        assert!(!connection_check(&m, &zero).unwrap().right_inverse);
    }
}
