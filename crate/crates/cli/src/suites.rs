//! Named verification suites. Every check is a self-contained value that can be
//! serialized, stored and replayed.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rigidity_core::algebra::{binomial, int, LaurentPoly, Rational, Ring, YFunction};
use rigidity_core::equivariant::{
    equiv_index, equivariant_integral, fixed_signature_sum, higher_vanishing_check, limit_at_cusp, linear_cp_action,
    rigidity_report, structure_checks, EquivClass, Level, Spec, Verdict,
};
use rigidity_core::genera::{self, GenusKind, YParam};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::commands::{cmd_equivariant, cmd_genus};
use crate::report::{scalar_json, CheckResult, CheckVerdict, EquivVerdict, VerifyReport};
use crate::scenario::{scenario, ActionDesc, BundleDesc, GenusName, Scenario, SpaceDesc};
use crate::CliError;

pub const SUITES: [&str; 5] = ["classical", "localization", "rigidity", "vanishing", "structure"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Check {
    /// The `genus` command on the scenario yields `expected` (a scalar or a series).
    Value { scenario: Scenario, expected: Value },
    /// Signature, Todd and `χ_y` characters are constant and equal the index;
    /// `∫1 = 0`, `∫e = χ(M)` and `Σ χ(Y) = χ(M)`.
    Localization { weights: Vec<i64> },
    /// The `equivariant` command passes.
    Rigid { scenario: Scenario },
    /// The `equivariant` command reports a non-constant coefficient.
    NonRigid { scenario: Scenario },
    /// Every coefficient of the equivariant character is zero.
    CharacterVanishes { scenario: Scenario },
    /// The higher vanishing statement applies with the given codimension and its zeros hold.
    HigherVanishing { weights: Vec<i64>, order: u64, level: u64, codim: u32 },
    /// The cusp limit of the signature character equals `Σ ±sign(Y)` and `sign(M)`.
    CuspLimit { weights: Vec<i64> },
    /// `Σ (m_i + 1) = m + 1`, Euler characteristics add up, generators restrict.
    Structure { weights: Vec<i64> },
    /// `level_n` with `N = 2` equals `loop_signature` through `q_order`.
    Coherence { space: SpaceDesc, q_order: u32 },
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Result<Outcome, CliError> {
    Ok(Outcome { pass: true, detail: detail.into() })
}

fn fail(detail: impl Into<String>) -> Result<Outcome, CliError> {
    Ok(Outcome { pass: false, detail: detail.into() })
}

fn with_action(space: SpaceDesc, weights: &[i64], genus: GenusName) -> Scenario {
    let mut s = scenario(space, genus);
    s.action = Some(ActionDesc::LinearCp { weights: weights.to_vec() });
    s
}

fn on_cp(weights: &[i64], genus: GenusName) -> Scenario {
    with_action(SpaceDesc::cp(weights.len() as u32 - 1), weights, genus)
}

fn describe(sc: &Scenario) -> String {
    let space = sc.space().map(|m| m.name().to_string()).unwrap_or_else(|_| "?".into());
    let genus = serde_json::to_value(sc.genus).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let mut s = format!("{genus}({space}");
    if let Some(b) = &sc.bundle {
        s += &format!(", {}", serde_json::to_string(b).expect("bundles serialize"));
    }
    if let Some(n) = sc.level {
        s += &format!(", N={n}");
    }
    s.push(')');
    if let Some(ActionDesc::LinearCp { weights }) = &sc.action {
        s += &format!(" weights {weights:?}");
    }
    if let Some(q) = sc.options.q_order {
        s += &format!(" through q^{q}");
    }
    s
}

impl Check {
    pub fn label(&self) -> String {
        match self {
            Check::Value { scenario, expected } => format!("{} = {expected}", describe(scenario)),
            Check::Localization { weights } => format!("localization on weights {weights:?}"),
            Check::Rigid { scenario } => format!("rigid: {}", describe(scenario)),
            Check::NonRigid { scenario } => format!("non-rigid: {}", describe(scenario)),
            Check::CharacterVanishes { scenario } => format!("vanishes: {}", describe(scenario)),
            Check::HigherVanishing { weights, order, level, codim } => {
                format!("level {level} vanishing, σ of order {order} (codim {codim}) on weights {weights:?}")
            }
            Check::CuspLimit { weights } => format!("cusp limit of the signature on weights {weights:?}"),
            Check::Structure { weights } => format!("fixed-set structure on weights {weights:?}"),
            Check::Coherence { space, q_order } => format!("level 2 coherence on {space:?} through q^{q_order}"),
        }
    }

    fn evaluate(&self) -> Result<Outcome, CliError> {
        match self {
            Check::Value { scenario, expected } => {
                let got = cmd_genus(scenario, 0)?.result();
                if got == *expected {
                    pass(format!("{got}"))
                } else {
                    fail(format!("got {got}, expected {expected}"))
                }
            }
            Check::Localization { weights } => localization(weights),
            Check::Rigid { scenario } => {
                let r = cmd_equivariant(scenario, 0)?;
                match r.verdict {
                    EquivVerdict::Pass => pass(format!("{} constant coefficients", r.coefficients.len())),
                    _ => {
                        let bad =
                            r.coefficients.iter().find(|c| !(c.constant && c.agrees)).expect("a failing coefficient");
                        fail(format!("q^{}: character {}, index {}", bad.q, bad.character, bad.nonequivariant))
                    }
                }
            }
            Check::NonRigid { scenario } => {
                let r = cmd_equivariant(scenario, 0)?;
                match r.coefficients.iter().find(|c| !c.constant) {
                    Some(c) => pass(format!("q^{}: {}", c.q, c.character)),
                    None => fail("every coefficient is constant"),
                }
            }
            Check::CharacterVanishes { scenario } => {
                let a = scenario.circle_action()?.ok_or_else(|| CliError::Parse("action: missing".into()))?;
                let target = scenario.target()?;
                let q = if target.is_series() { scenario.q_order(0) } else { 0 };
                let v = equiv_index(&a, &target.spec(), q)?;
                match v.coeffs.iter().position(|c| !c.is_zero()) {
                    None => pass(format!("{} coefficients vanish", v.coeffs.len())),
                    Some(k) => fail(format!("q^{k}: {}", v.coeffs[k])),
                }
            }
            Check::HigherVanishing { weights, order, level, codim } => {
                let a = linear_cp_action(weights)?;
                let lvl = if *level == 2 { Level::Two } else { Level::N(*level) };
                let r = higher_vanishing_check(&a, *order, lvl)?;
                let values: Vec<String> = r.checks.iter().map(|c| format!("{} = {}", c.label, c.value)).collect();
                if r.codim != *codim {
                    return fail(format!("codim M^σ = {}, expected {codim}", r.codim));
                }
                match r.verdict {
                    Verdict::Pass if !r.checks.is_empty() => pass(values.join("; ")),
                    Verdict::Pass => fail("no values were checked"),
                    Verdict::Fail => fail(values.join("; ")),
                    Verdict::NotApplicable(why) => fail(format!("not applicable: {why}")),
                }
            }
            Check::CuspLimit { weights } => {
                let a = linear_cp_action(weights)?;
                let lim = limit_at_cusp(&a, &Spec::Genus(GenusKind::Signature))?;
                let fixed = fixed_signature_sum(&a)?;
                let sign = genera::index(a.space(), &GenusKind::Signature)?;
                let lim_q = lim.as_rational();
                let sign_q = sign.as_rational();
                if lim_q.as_ref() == Some(&fixed) && sign_q.as_ref() == Some(&fixed) {
                    pass(format!("{fixed}"))
                } else {
                    fail(format!("limit {lim}, Σ ±sign(Y) = {fixed}, sign(M) = {sign}"))
                }
            }
            Check::Structure { weights } => {
                let s = structure_checks(&linear_cp_action(weights)?)?;
                let detail = format!("Σ(m_i + 1) = {}, m + 1 = {}", s.rank_sum, s.rank);
                if s.passes() {
                    pass(detail)
                } else {
                    fail(format!("{detail}; {s:?}"))
                }
            }
            Check::Coherence { space, q_order } => {
                let m = space.build()?;
                let a = genera::level_n_loop(&m, 2, *q_order)?;
                let b = genera::loop_signature(&m, *q_order)?;
                for k in 0..=*q_order as usize {
                    if a.coeff(k).as_rational().as_ref() != Some(b.coeff(k)) {
                        return fail(format!("q^{k}: level N = 2 gives {}, loop signature {}", a.coeff(k), b.coeff(k)));
                    }
                }
                pass(format!("{} coefficients agree", q_order + 1))
            }
        }
    }

    /// Runs the check. Errors raised by the computation count as failures.
    pub fn run(&self, id: String) -> CheckResult {
        let start = Instant::now();
        let outcome = self.evaluate().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}") });
        let elapsed_us = start.elapsed().as_micros() as u64;
        CheckResult {
            id,
            label: self.label(),
            verdict: if outcome.pass { CheckVerdict::Pass } else { CheckVerdict::Fail },
            detail: outcome.detail,
            elapsed_us,
            counterexample: (!outcome.pass).then(|| self.clone()),
        }
    }
}

fn localization(weights: &[i64]) -> Result<Outcome, CliError> {
    let a = linear_cp_action(weights)?;
    for g in [GenusKind::Signature, GenusKind::Todd, GenusKind::ChiY(YParam::Formal)] {
        let r = rigidity_report(&a, &Spec::Genus(g.clone()), 0)?;
        if !r.rigid() {
            let c = &r.coefficients[0];
            return fail(format!("{g:?}: character {}, index {}", c.character, c.nonequivariant));
        }
    }
    let chi = int(weights.len() as i64);
    let one = equivariant_integral(&a, &EquivClass::Const(int(1)))?;
    if !one.total.is_zero() {
        return fail(format!("∫1 = {}", one.total.render("z")));
    }
    let euler = equivariant_integral(&a, &EquivClass::Euler)?;
    if euler.total != LaurentPoly::constant(chi.clone()) {
        return fail(format!("∫e = {}, χ(M) = {chi}", euler.total.render("z")));
    }
    let sum: Rational =
        a.components().iter().map(|c| c.space.euler_characteristic()).collect::<Result<Vec<_>, _>>()?.into_iter().sum();
    if sum != chi {
        return fail(format!("Σ χ(Y) = {sum}, χ(M) = {chi}"));
    }
    pass(format!("{} fixed components, Σ χ(Y) = {chi}", a.components().len()))
}

/// Fifty seeded linear actions on `CP^n`, `1 ≤ n ≤ 5`, weights in `[-5, 5]`, not all equal.
pub fn random_actions(seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..50)
        .map(|_| {
            let n = rng.gen_range(1..=5usize);
            loop {
                let w: Vec<i64> = (0..=n).map(|_| rng.gen_range(-5..=5)).collect();
                if w.iter().any(|&v| v != w[0]) {
                    return w;
                }
            }
        })
        .collect()
}

/// Actions on `CP^3` and `CP^5`, both spin.
pub fn spin_actions() -> Vec<Vec<i64>> {
    vec![
        vec![0, 1, 2, 3],
        vec![0, 0, 1, 1],
        vec![0, 1, 1, 3],
        vec![-2, 0, 1, 5],
        vec![0, 2, 3, 7],
        vec![0, 1, 2, 3, 4, 5],
        vec![0, 0, 0, 1, 1, 1],
        vec![0, 0, 1, 1, 2, 2],
        vec![0, 1, 3, 4, 7, 9],
        vec![-3, -1, 0, 2, 2, 5],
    ]
}

fn value(space: SpaceDesc, genus: GenusName, expected: Value) -> Check {
    Check::Value { scenario: scenario(space, genus), expected }
}

fn twisted_value(space: SpaceDesc, genus: GenusName, bundle: BundleDesc, expected: Value) -> Check {
    let mut sc = scenario(space, genus);
    sc.bundle = Some(bundle);
    Check::Value { scenario: sc, expected }
}

fn classical() -> Vec<Check> {
    let mut v = Vec::new();
    for n in 1..=5u32 {
        let s = if n % 2 == 0 { "1" } else { "0" };
        v.push(value(SpaceDesc::cp(n), GenusName::Signature, json!(s)));
    }
    for n in 1..=6 {
        v.push(value(SpaceDesc::cp(n), GenusName::Todd, json!("1")));
    }
    for n in 1..=5u32 {
        let terms = (0..=n as i64).map(|i| (i, int(if i % 2 == 0 { 1 } else { -1 })));
        let chi_y = YFunction::from_poly(LaurentPoly::from_terms(terms));
        v.push(value(SpaceDesc::cp(n), GenusName::ChiY, scalar_json(&genera::Scalar::Y(chi_y))));
    }
    v.push(value(SpaceDesc::cp(2), GenusName::Ahat, json!("-1/8")));
    let k3 = SpaceDesc::Hypersurface { m: 2, d: 4 };
    for (g, x) in
        [(GenusName::Euler, "24"), (GenusName::Signature, "-16"), (GenusName::Ahat, "2"), (GenusName::Todd, "2")]
    {
        v.push(value(k3.clone(), g, json!(x)));
    }
    for n in 1..=6u32 {
        for k in -8i64..=8 {
            let expected = binomial(n as i64 + k, n).to_string();
            v.push(twisted_value(SpaceDesc::cp(n), GenusName::Todd, BundleDesc::Line(vec![k]), json!(expected)));
        }
    }
    v
}

fn localization_suite(seed: u64) -> Vec<Check> {
    random_actions(seed).into_iter().map(|weights| Check::Localization { weights }).collect()
}

fn with_q(mut sc: Scenario, q: u32) -> Scenario {
    sc.options.q_order = Some(q);
    sc
}

fn rigidity_suite(seed: u64) -> Vec<Check> {
    let mut v = Vec::new();
    for w in random_actions(seed) {
        v.push(Check::Rigid { scenario: on_cp(&w, GenusName::Signature) });
        v.push(Check::Rigid { scenario: on_cp(&w, GenusName::ChiY) });
    }
    for w in spin_actions() {
        v.push(Check::Rigid { scenario: with_q(on_cp(&w, GenusName::LoopSignature), 3) });
    }
    for w in spin_actions().into_iter().filter(|w| w.len() == 6) {
        let mut sc = with_q(on_cp(&w, GenusName::LevelN), 2);
        sc.level = Some(3);
        v.push(Check::Rigid { scenario: sc });
        for alpha in 1..3 {
            let mut sc = on_cp(&w, GenusName::Todd);
            sc.bundle = Some(BundleDesc::Kroot(3, alpha));
            v.push(Check::Rigid { scenario: sc });
        }
    }
    let mut sc = on_cp(&[0, 1, 2], GenusName::Signature);
    sc.bundle = Some(BundleDesc::TangentComplexified);
    v.push(Check::NonRigid { scenario: sc });
    v
}

fn vanishing() -> Vec<Check> {
    let mut v = Vec::new();
    for (n, big_n) in [(3u32, 2i64), (3, 4), (5, 2), (5, 3), (5, 6)] {
        for alpha in 1..big_n {
            v.push(twisted_value(SpaceDesc::cp(n), GenusName::Todd, BundleDesc::Kroot(big_n, alpha), json!("0")));
        }
    }
    for w in spin_actions() {
        v.push(Check::CharacterVanishes { scenario: on_cp(&w, GenusName::Ahat) });
    }
    v.push(Check::HigherVanishing { weights: vec![0, 0, 0, 1, 1, 1], order: 2, level: 2, codim: 6 });
    v.push(Check::HigherVanishing { weights: vec![0, 0, 1, 1, 2, 2], order: 3, level: 2, codim: 8 });
    v.push(Check::HigherVanishing { weights: vec![0, 0, 0, 1, 1, 1], order: 2, level: 3, codim: 6 });
    v.push(twisted_value(
        SpaceDesc::cp(5),
        GenusName::Todd,
        BundleDesc::Tensor(vec![BundleDesc::TangentDual, BundleDesc::Kroot(3, 1)]),
        json!("0"),
    ));
    v
}

fn structure(seed: u64) -> Vec<Check> {
    let mut actions = random_actions(seed);
    actions.extend(spin_actions());
    let mut v: Vec<Check> = actions.iter().map(|w| Check::Structure { weights: w.clone() }).collect();
    v.extend(random_actions(seed).into_iter().map(|weights| Check::CuspLimit { weights }));
    v.push(Check::Coherence { space: SpaceDesc::Hypersurface { m: 2, d: 4 }, q_order: 3 });
    v.push(Check::Coherence { space: SpaceDesc::cp(3), q_order: 3 });
    v
}

pub fn suite_checks(name: &str, seed: u64) -> Result<Vec<Check>, CliError> {
    Ok(match name {
        "classical" => classical(),
        "localization" => localization_suite(seed),
        "rigidity" => rigidity_suite(seed),
        "vanishing" => vanishing(),
        "structure" => structure(seed),
        other => {
            return Err(CliError::Parse(format!(
                "suite: unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    })
}

/// Runs a suite's checks in parallel; results keep the suite's order.
pub fn cmd_verify(name: &str, seed: u64) -> Result<VerifyReport, CliError> {
    let checks = suite_checks(name, seed)?;
    let results: Vec<CheckResult> =
        checks.par_iter().enumerate().map(|(i, c)| c.run(format!("{name}/{:03}", i + 1))).collect();
    let failed = results.iter().filter(|r| r.verdict == CheckVerdict::Fail).count();
    Ok(VerifyReport {
        suite: name.to_string(),
        seed,
        status: if failed == 0 { CheckVerdict::Pass } else { CheckVerdict::Fail },
        passed: results.len() - failed,
        failed,
        checks: results,
    })
}

/// Accepts a bare check or a check result carrying a `counterexample`.
pub fn parse_counterexample(text: &str) -> Result<Check, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("counterexample: {e}")))?;
    let inner = v.get("counterexample").cloned().unwrap_or(v);
    serde_json::from_value(inner).map_err(|e| CliError::Parse(format!("counterexample: {e}")))
}
