//! Scenario documents, the built-in catalog, and the suite runner.
//!
//! Documents and reports are UTF-8 JSON carrying `schema_version`. Exact
//! values (rationals, polynomials, sections) are serialized as strings in
//! the same syntax the parsers accept.

mod checks;
mod report;

pub use checks::{check_ids, suite_of, SUITES};
pub use report::{CheckResult, Report, RunConfig, Summary, Verdict};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cartan::{EigenFrame, Patch, PolyForm};
use crate::courant::{ConnectionMap, CourantPatchModel, ParaStructure};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebraData, LieBialgebraData, RealifiedSl};
use crate::scalar::Rational;

pub const SCHEMA_VERSION: u32 = 1;
/// Seed used when neither the command line nor the environment sets one.
pub const DEFAULT_SEED: u64 = 20240611;
pub const SEED_ENV: &str = "PARAHOL_SEED";
pub const DEFAULT_DEGREE: u32 = 2;
pub const DEFAULT_RANDOM: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    PatchModel,
    ConstantModel,
    LieStructure,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDocument {
    pub schema_version: u32,
    pub name: String,
    pub kind: Kind,
    pub description: String,
    /// The mathematical statement or example the scenario reproduces.
    #[serde(default)]
    pub reference: String,
    pub construction: Value,
    #[serde(default)]
    pub family: FamilySpec,
    pub expected: Vec<Expectation>,
}

/// Caps on the generated axiom family; the run configuration applies
/// otherwise.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub check: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub args: Vec<String>,
    /// `null` marks a report-only check.
    pub value: Value,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BracketSpec {
    #[default]
    Standard,
    NoExactTerm,
    Twisted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitSpec {
    pub plus: Vec<String>,
    pub minus: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StructureSpec {
    /// `"lifted"` or `"type-swapped"`.
    Named(String),
    Explicit {
        plus: Vec<String>,
        minus: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatchSpec {
    pub coordinates: Vec<String>,
    #[serde(default)]
    pub bracket: BracketSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
    #[serde(default = "yes")]
    pub validate_twist: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureSpec>,
    /// 2-form `ω` of the graph connection `A_ω`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<String>,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    /// 1-based basis indices.
    pub i: usize,
    pub j: usize,
    pub value: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    /// `su2`, `sl2r`, `b2` or `abelian`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<BracketEntry>,
    #[serde(default = "yes")]
    pub declared_valid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantSpec {
    pub k: AlgebraSpec,
    pub dual: AlgebraSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    /// `n` for the realification of `sl(n,ℂ)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realified_sl: Option<usize>,
}

/// Validated objects built from a document.
#[derive(Clone, Debug)]
pub enum Built {
    Patch {
        model: CourantPatchModel,
        split: Option<EigenFrame>,
        structure: Option<ParaStructure>,
        connection: Option<(PolyForm, ConnectionMap)>,
    },
    Constant {
        bi: LieBialgebraData,
        model: CourantPatchModel,
        structure: ParaStructure,
    },
    Lie {
        algebra: Option<LieAlgebraData>,
        realified: Option<RealifiedSl>,
    },
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub doc: ScenarioDocument,
    pub built: Built,
}

fn field_err(field: &str, e: impl std::fmt::Display) -> Error {
    Error::InvalidField { field: field.to_string(), message: e.to_string() }
}

fn at<T>(field: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        // Domain errors named in the contract pass through unchanged.
        Error::TwistNotClosed(_) | Error::JacobiFailure { .. } | Error::FrameNotUnimodular(_) => e,
        other => field_err(field, other),
    })
}

fn parse_rational(field: &str, s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| field_err(field, e))
}

pub fn build_algebra(field: &str, spec: &AlgebraSpec) -> Result<LieAlgebraData> {
    let alg = match (&spec.name, spec.dim) {
        (Some(name), None) if spec.brackets.is_empty() => match name.as_str() {
            "su2" => LieAlgebraData::su2(),
            "sl2r" => LieAlgebraData::sl2r(),
            "b2" => LieAlgebraData::b2(),
            other => return Err(field_err(&format!("{field}.name"), format!("unknown algebra {other:?}"))),
        },
        (Some(name), Some(d)) if name == "abelian" && spec.brackets.is_empty() => LieAlgebraData::abelian(d),
        (None, Some(d)) => {
            let mut br = Vec::new();
            for (idx, b) in spec.brackets.iter().enumerate() {
                let f = format!("{field}.brackets[{idx}]");
                if b.i == 0 || b.j == 0 || b.i > d || b.j > d || b.value.len() != d {
                    return Err(field_err(&f, format!("indices must lie in 1..={d} and value must have {d} entries")));
                }
                let v = b.value.iter().map(|s| parse_rational(&format!("{f}.value"), s)).collect::<Result<Vec<_>>>()?;
                br.push((b.i - 1, b.j - 1, v));
            }
            at(field, LieAlgebraData::from_brackets(d, &br))?
        }
        _ => return Err(field_err(field, "give either a name or dim with brackets")),
    };
    if spec.declared_valid {
        if let Some(w) = alg.jacobi_check() {
            return Err(Error::JacobiFailure {
                witness: format!("(e{}, e{}, e{})", w.triple[0] + 1, w.triple[1] + 1, w.triple[2] + 1),
                jacobiator: fmt_vector(&w.jacobiator, "e"),
            });
        }
    }
    Ok(alg)
}

/// `Σ vᵢ eᵢ` in the section syntax.
pub(crate) fn fmt_vector(v: &[Rational], prefix: &str) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = format!("{prefix}{}", i + 1);
        let neg = c.is_negative();
        let a = c.abs();
        let term = if a.is_one() { name } else { format!("{a}*{name}") };
        if out.is_empty() {
            out = if neg { format!("-{term}") } else { term };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn build_patch(spec: &PatchSpec) -> Result<Built> {
    let patch = at("construction.coordinates", Patch::new(spec.coordinates.clone()))?;
    let model = match (&spec.bracket, &spec.twist) {
        (BracketSpec::Standard, None) => CourantPatchModel::standard(patch.clone()),
        (BracketSpec::NoExactTerm, None) => CourantPatchModel::no_exact_term(patch.clone()),
        (BracketSpec::Twisted, Some(t)) => {
            let eta = at("construction.twist", patch.parse_form(t))?;
            if spec.validate_twist {
                at("construction.twist", CourantPatchModel::twisted(patch.clone(), eta))?
            } else {
                at("construction.twist", CourantPatchModel::twisted_unchecked(patch.clone(), eta))?
            }
        }
        (BracketSpec::Twisted, None) => {
            return Err(field_err("construction.twist", "twisted bracket needs a twist form"))
        }
        (_, Some(_)) => return Err(field_err("construction.twist", "twist given for an untwisted bracket")),
    };
    let split = match &spec.split {
        None => None,
        Some(s) => {
            let vf = |list: &[String], f: &str| {
                list.iter().map(|v| at(f, patch.parse_vector_field(v))).collect::<Result<Vec<_>>>()
            };
            let plus = vf(&s.plus, "construction.split.plus")?;
            let minus = vf(&s.minus, "construction.split.minus")?;
            Some(at("construction.split", EigenFrame::from_split(plus, minus))?)
        }
    };
    let structure = match &spec.structure {
        None => None,
        Some(StructureSpec::Named(name)) => {
            let j = split
                .as_ref()
                .ok_or_else(|| field_err("construction.structure", "a lifted structure needs a split"))?;
            Some(match name.as_str() {
                "lifted" => at("construction.structure", ParaStructure::lifted(&model, j))?,
                "type-swapped" => at("construction.structure", ParaStructure::type_swapped(&model, j))?,
                other => return Err(field_err("construction.structure", format!("unknown structure {other:?}"))),
            })
        }
        Some(StructureSpec::Explicit { plus, minus }) => {
            let sec = |list: &[String], f: &str| {
                list.iter().map(|v| at(f, model.parse_section(v))).collect::<Result<Vec<_>>>()
            };
            let p = sec(plus, "construction.structure.plus")?;
            let m = sec(minus, "construction.structure.minus")?;
            Some(at("construction.structure", ParaStructure::explicit(&model, p, m))?)
        }
    };
    let connection = match &spec.connection {
        None => None,
        Some(src) => {
            let w = at("construction.connection", patch.parse_form(src))?;
            if w.degree() != 2 {
                return Err(field_err("construction.connection", "connection form must be a 2-form"));
            }
            Some((w.clone(), ConnectionMap::Graph(w)))
        }
    };
    Ok(Built::Patch { model, split, structure, connection })
}

fn build_constant(spec: &ConstantSpec) -> Result<Built> {
    let k = build_algebra("construction.k", &spec.k)?;
    let dual = build_algebra("construction.dual", &spec.dual)?;
    let bi = at("construction", LieBialgebraData::new(k, dual))?;
    let model = CourantPatchModel::bialgebroid(bi.clone())?;
    let n = bi.dim();
    let structure = at(
        "construction",
        ParaStructure::explicit(
            &model,
            (0..n).map(|i| model.basis_section(i)).collect(),
            (n..2 * n).map(|i| model.basis_section(i)).collect(),
        ),
    )?;
    Ok(Built::Constant { bi, model, structure })
}

fn build_lie(spec: &LieSpec) -> Result<Built> {
    let algebra = spec.algebra.as_ref().map(|a| build_algebra("construction.algebra", a)).transpose()?;
    let realified = spec.realified_sl.map(|n| at("construction.realified_sl", RealifiedSl::new(n))).transpose()?;
    if algebra.is_none() && realified.is_none() {
        return Err(field_err("construction", "give an algebra or realified_sl"));
    }
    Ok(Built::Lie { algebra, realified })
}

fn typed<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| field_err("construction", e))
}

/// Parse and validate a scenario document.
pub fn scenario_load(document: &str) -> Result<Scenario> {
    let doc: ScenarioDocument = serde_json::from_str(document)
        .map_err(|e| Error::Parse { input: "scenario document".into(), message: e.to_string() })?;
    scenario_from_document(doc)
}

pub fn scenario_from_document(doc: ScenarioDocument) -> Result<Scenario> {
    if doc.schema_version != SCHEMA_VERSION {
        return Err(field_err("schema_version", format!("expected {SCHEMA_VERSION}, got {}", doc.schema_version)));
    }
    if doc.name.trim().is_empty() {
        return Err(field_err("name", "empty"));
    }
    let built = match doc.kind {
        Kind::PatchModel => build_patch(&typed(&doc.construction)?)?,
        Kind::ConstantModel => build_constant(&typed(&doc.construction)?)?,
        Kind::LieStructure => build_lie(&typed(&doc.construction)?)?,
    };
    for (i, e) in doc.expected.iter().enumerate() {
        if suite_of(&e.check).is_none() {
            return Err(field_err(&format!("expected[{i}].check"), format!("unknown check {:?}", e.check)));
        }
    }
    Ok(Scenario { doc, built })
}

const CATALOG: &[(&str, &str)] = &[
    ("std-R2", include_str!("../../catalog/std-R2.json")),
    ("std-R3", include_str!("../../catalog/std-R3.json")),
    ("para-hermitian-R4", include_str!("../../catalog/para-hermitian-R4.json")),
    ("nonintegrable-R4", include_str!("../../catalog/nonintegrable-R4.json")),
    ("para-kahler-R4", include_str!("../../catalog/para-kahler-R4.json")),
    ("rotated-R2", include_str!("../../catalog/rotated-R2.json")),
    ("b2-double", include_str!("../../catalog/b2-double.json")),
    ("su2-double", include_str!("../../catalog/su2-double.json")),
    ("iwasawa-sl2", include_str!("../../catalog/iwasawa-sl2.json")),
    ("iwasawa-sl3", include_str!("../../catalog/iwasawa-sl3.json")),
    ("cartan-dirac-sl2", include_str!("../../catalog/cartan-dirac-sl2.json")),
    ("bfield-morphism", include_str!("../../catalog/bfield-morphism.json")),
    ("broken-jacobi", include_str!("../../catalog/broken-jacobi.json")),
    ("broken-axiom5", include_str!("../../catalog/broken-axiom5.json")),
    ("nonclosed-twist-R4", include_str!("../../catalog/nonclosed-twist-R4.json")),
];

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|(n, _)| *n).collect()
}

/// Raw JSON of a built-in scenario.
pub fn catalog_document(name: &str) -> Result<&'static str> {
    CATALOG.iter().find(|(n, _)| *n == name).map(|(_, d)| *d).ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

pub fn catalog_scenario(name: &str) -> Result<Scenario> {
    scenario_load(catalog_document(name)?)
}

/// Suites with at least one expectation in the scenario, in canonical order.
pub fn scenario_suites(s: &Scenario) -> Vec<&'static str> {
    SUITES.iter().copied().filter(|suite| s.doc.expected.iter().any(|e| suite_of(&e.check) == Some(suite))).collect()
}

/// Run one suite, or every suite of the scenario for `None`.
pub fn run_suite(s: &Scenario, suite: Option<&str>, config: &RunConfig) -> Result<Report> {
    let suites: Vec<&'static str> = match suite {
        None => scenario_suites(s),
        Some(id) => vec![*SUITES.iter().find(|x| **x == id).ok_or_else(|| Error::UnknownSuite(id.to_string()))?],
    };
    Ok(report::run(s, &suites, config))
}

/// Every built-in scenario, one thread per scenario, in catalog order.
pub fn run_catalog(config: &RunConfig) -> Result<Vec<Report>> {
    let scenarios = catalog_names().into_iter().map(catalog_scenario).collect::<Result<Vec<_>>>()?;
    std::thread::scope(|scope| {
        let handles: Vec<_> = scenarios.iter().map(|s| scope.spawn(move || run_suite(s, None, config))).collect();
        handles.into_iter().map(|h| h.join().expect("scenario thread panicked")).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_loads() {
        for name in catalog_names() {
            let s = catalog_scenario(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(s.doc.name, name);
            assert!(!scenario_suites(&s).is_empty(), "{name}");
        }
    }

    #[test]
    fn validation_errors() {
        let base: Value = serde_json::from_str(catalog_document("std-R3").unwrap()).unwrap();
        let with = |f: &dyn Fn(&mut Value)| {
            let mut v = base.clone();
            f(&mut v);
            scenario_load(&v.to_string())
        };
        let e = with(&|v| {
            v["construction"]["bracket"] = "twisted".into();
            v["construction"]["twist"] = "x*dy^dz".into();
        })
        .unwrap_err();
        assert!(e.to_string().contains("twist form not closed"), "{e}");

        let e = with(&|v| v["construction"]["colour"] = "red".into()).unwrap_err();
        assert!(e.to_string().contains("colour"), "{e}");
        let e = with(&|v| v["expected"][0]["check"] = "nope".into()).unwrap_err();
        assert!(matches!(e, Error::InvalidField { ref field, .. } if field == "expected[0].check"));
        let e = with(&|v| {
            v["construction"]["split"] = serde_json::json!({"plus": ["x*∂x", "∂y"], "minus": ["∂z"]});
        })
        .unwrap_err();
        assert!(matches!(e, Error::InvalidField { .. } | Error::FrameNotUnimodular(_)), "{e}");

        let doc = serde_json::json!({
            "schema_version": 1, "name": "bad", "kind": "lie-structure", "description": "",
            "construction": {"algebra": {"dim": 3, "brackets": [
                {"i": 1, "j": 2, "value": ["0", "0", "1"]},
                {"i": 2, "j": 3, "value": ["1", "0", "0"]},
                {"i": 3, "j": 1, "value": ["1", "0", "0"]}]}},
            "expected": []
        });
        let e = scenario_load(&doc.to_string()).unwrap_err();
        assert_eq!(e, Error::JacobiFailure { witness: "(e1, e2, e3)".into(), jacobiator: "e3".into() });
    }

    #[test]
    fn non_unimodular_split_is_rejected() {
        let doc = serde_json::json!({
            "schema_version": 1, "name": "bad", "kind": "patch-model", "description": "",
            "construction": {"coordinates": ["x", "y"], "split": {"plus": ["x*∂x"], "minus": ["∂y"]}},
            "expected": []
        });
        assert!(matches!(scenario_load(&doc.to_string()), Err(Error::FrameNotUnimodular(_))));
    }
}
