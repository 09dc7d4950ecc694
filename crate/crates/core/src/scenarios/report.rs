use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::checks::{suite_of, Ctx};
use super::{Scenario, DEFAULT_DEGREE, DEFAULT_RANDOM, DEFAULT_SEED, SCHEMA_VERSION, SEED_ENV};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub degree: u32,
    pub seed: u64,
    /// Random sections added to the axiom family.
    pub random: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { degree: DEFAULT_DEGREE, seed: DEFAULT_SEED, random: DEFAULT_RANDOM }
    }
}

impl RunConfig {
    /// Defaults, with the seed taken from `PARAHOL_SEED` when it parses.
    pub fn from_env() -> Self {
        let seed = std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED);
        RunConfig { seed, ..RunConfig::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Report-only check without an expected value.
    Info,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub suite: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub args: Vec<String>,
    pub verdict: Verdict,
    pub expected: Value,
    pub observed: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub info: usize,
    pub error: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub scenario: String,
    pub suites: Vec<String>,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    pub passed: bool,
    pub elapsed_ms: f64,
}

impl Report {
    /// The report with every timing field zeroed.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        r.elapsed_ms = 0.0;
        for c in &mut r.checks {
            c.elapsed_ms = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| matches!(c.verdict, Verdict::Fail | Verdict::Error))
    }
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

pub(super) fn run(s: &Scenario, suites: &[&'static str], config: &RunConfig) -> Report {
    let start = Instant::now();
    let ctx = Ctx::new(s, config);
    let mut checks = Vec::new();
    let mut summary = Summary::default();
    for e in &s.doc.expected {
        let suite = suite_of(&e.check).expect("validated at load");
        if !suites.contains(&suite) {
            continue;
        }
        let t = Instant::now();
        let (verdict, observed, witness) = match ctx.run(&e.check, &e.args) {
            Ok(obs) if e.value.is_null() => (Verdict::Info, obs.value, obs.witness),
            Ok(obs) => match obs.matches(&e.value) {
                Ok(true) => (Verdict::Pass, obs.value, obs.witness),
                Ok(false) => (Verdict::Fail, obs.value, obs.witness),
                Err(err) => (Verdict::Error, obs.value, Some(Value::from(err.to_string()))),
            },
            Err(err) => (Verdict::Error, Value::Null, Some(Value::from(err.to_string()))),
        };
        match verdict {
            Verdict::Pass => summary.pass += 1,
            Verdict::Fail => summary.fail += 1,
            Verdict::Info => summary.info += 1,
            Verdict::Error => summary.error += 1,
        }
        checks.push(CheckResult {
            id: e.check.clone(),
            suite: suite.to_string(),
            args: e.args.clone(),
            verdict,
            expected: e.value.clone(),
            observed,
            witness,
            note: e.note.clone(),
            elapsed_ms: ms(t),
        });
    }
    Report {
        schema_version: SCHEMA_VERSION,
        scenario: s.doc.name.clone(),
        suites: suites.iter().map(|s| s.to_string()).collect(),
        config: RunConfig { degree: ctx.degree(), random: ctx.random(), seed: config.seed },
        passed: summary.fail == 0 && summary.error == 0,
        checks,
        summary,
        elapsed_ms: ms(start),
    }
}
