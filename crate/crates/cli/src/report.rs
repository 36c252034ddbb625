//! Report types and their JSON and CSV renderings. Exact scalars are always strings.

use rigidity_core::algebra::CycNumber;
use rigidity_core::genera::Scalar;
use serde::Serialize;
use serde_json::{json, Value};

use crate::scenario::Scenario;
use crate::suites::Check;

pub fn cyc_json(c: &CycNumber) -> Value {
    json!({
        "modulus": c.modulus(),
        "coefficients": c.coeffs().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
    })
}

pub fn scalar_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(q) => Value::String(q.to_string()),
        Scalar::Cyc(c) => cyc_json(c),
        Scalar::Y(f) => Value::String(f.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Genus(GenusReport),
    Equivariant(EquivReport),
    Verify(VerifyReport),
    Replay(ReplayReport),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenusReport {
    pub scenario: Scenario,
    pub space: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    /// Coefficients of `q^0, q^1, …` for q-dependent computations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<Vec<Value>>,
}

impl GenusReport {
    /// The value, or the series as an array.
    pub fn result(&self) -> Value {
        match (&self.value, &self.series) {
            (Some(v), _) => v.clone(),
            (None, Some(s)) => Value::Array(s.clone()),
            (None, None) => Value::Null,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientReport {
    pub q: usize,
    /// `[exponent, coefficient]` pairs of the reduced numerator in `u`.
    pub numerator: Vec<(i64, String)>,
    pub denominator: Vec<(i64, String)>,
    pub character: String,
    pub constant: bool,
    pub value: Option<Value>,
    /// Exponent of a `u`-monomial factored off before comparing (roots of `K` only).
    pub shift: i64,
    pub nonequivariant: Value,
    pub agrees: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquivVerdict {
    /// Every coefficient is constant and equals the non-equivariant value.
    Pass,
    NonConstant,
    /// A constant coefficient disagrees with the non-equivariant value.
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivReport {
    pub scenario: Scenario,
    pub space: String,
    pub weights: Vec<i64>,
    pub cover: u64,
    pub q_order: u32,
    pub verdict: EquivVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violated: Option<String>,
    pub coefficients: Vec<CoefficientReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckVerdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub label: String,
    pub verdict: CheckVerdict,
    pub detail: String,
    pub elapsed_us: u64,
    /// The check itself, replayable with `rigidity replay`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Check>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub status: CheckVerdict,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReplayReport {
    pub check: Check,
    pub result: CheckResult,
}

impl Report {
    /// 0 on success, 1 when a check failed.
    pub fn exit_code(&self) -> u8 {
        let failed = match self {
            Report::Genus(_) => false,
            Report::Equivariant(r) => r.verdict == EquivVerdict::Fail,
            Report::Verify(r) => r.status == CheckVerdict::Fail,
            Report::Replay(r) => r.result.verdict == CheckVerdict::Fail,
        };
        u8::from(failed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let mut rows: Vec<Vec<String>> = Vec::new();
        match self {
            Report::Genus(r) => {
                rows.push(vec!["key".into(), "value".into()]);
                if let Some(v) = &r.value {
                    rows.push(vec!["value".into(), cell(v)]);
                }
                for (k, v) in r.series.iter().flatten().enumerate() {
                    rows.push(vec![format!("q^{k}"), cell(v)]);
                }
            }
            Report::Equivariant(r) => {
                rows.push(
                    ["q", "constant", "value", "nonequivariant", "agrees", "character"].map(String::from).to_vec(),
                );
                for c in &r.coefficients {
                    rows.push(vec![
                        c.q.to_string(),
                        c.constant.to_string(),
                        c.value.as_ref().map(cell).unwrap_or_default(),
                        cell(&c.nonequivariant),
                        c.agrees.to_string(),
                        c.character.clone(),
                    ]);
                }
            }
            Report::Verify(r) => {
                rows.push(check_header());
                rows.extend(r.checks.iter().map(check_row));
            }
            Report::Replay(r) => {
                rows.push(check_header());
                rows.push(check_row(&r.result));
            }
        }
        for row in rows {
            w.write_record(&row).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }
}

fn check_header() -> Vec<String> {
    ["id", "label", "verdict", "elapsed_us", "detail"].map(String::from).to_vec()
}

fn check_row(c: &CheckResult) -> Vec<String> {
    let verdict = match c.verdict {
        CheckVerdict::Pass => "pass",
        CheckVerdict::Fail => "fail",
    };
    vec![c.id.clone(), c.label.clone(), verdict.into(), c.elapsed_us.to_string(), c.detail.clone()]
}
