use rigidity_core::equivariant::{rigidity_report, LoopFamily};
use rigidity_core::genera::{self, Scalar};

use crate::report::{cyc_json, scalar_json, CoefficientReport, EquivReport, EquivVerdict, GenusReport};
use crate::scenario::{Scenario, Target};
use crate::CliError;

pub const DEFAULT_Q_ORDER: u32 = 4;
pub const DEFAULT_SEED: u64 = 7;

/// Non-equivariant value of the scenario's genus on its space.
pub fn cmd_genus(sc: &Scenario, q_order: u32) -> Result<GenusReport, CliError> {
    if sc.action.is_some() {
        return Err(CliError::Parse("action: the genus command takes no action (use equivariant)".into()));
    }
    let m = sc.space()?;
    let q = sc.q_order(q_order);
    let rational_series = |s: rigidity_core::algebra::QSeries<_>| -> Vec<serde_json::Value> {
        s.coeffs().iter().map(|c| scalar_json(&Scalar::Rational(Clone::clone(c)))).collect()
    };
    let (value, series) = match sc.target()? {
        Target::Genus(kind, None) => (Some(scalar_json(&genera::index(&m, &kind)?)), None),
        Target::Genus(kind, Some(b)) if b.depends_on_q() => {
            let v = genera::twisted_series(&m, &kind, &b.build(), q)?;
            (None, Some(v.iter().map(scalar_json).collect()))
        }
        Target::Genus(kind, Some(b)) => (Some(scalar_json(&genera::twisted_index(&m, &kind, &b.build())?)), None),
        Target::Loop(LoopFamily::Signature) => (None, Some(rational_series(genera::loop_signature(&m, q)?))),
        Target::Loop(LoopFamily::DiracCusp) => (None, Some(rational_series(genera::dirac_cusp_series(&m, q)?))),
        Target::Loop(LoopFamily::LevelN(n)) => {
            let s = genera::level_n_loop(&m, n, q)?;
            (None, Some(s.coeffs().iter().map(cyc_json).collect()))
        }
    };
    Ok(GenusReport { scenario: sc.clone(), space: m.name().to_string(), value, series })
}

/// The equivariant character of the scenario's action, coefficient by coefficient,
/// with its constancy verdict and the non-equivariant cross-check.
pub fn cmd_equivariant(sc: &Scenario, q_order: u32) -> Result<EquivReport, CliError> {
    let a =
        sc.circle_action()?.ok_or_else(|| CliError::Parse("action: the equivariant command needs an action".into()))?;
    let target = sc.target()?;
    let q = if target.is_series() { sc.q_order(q_order) } else { 0 };
    let r = rigidity_report(&a, &target.spec(), q)?;
    let verdict = if r.rigid() {
        EquivVerdict::Pass
    } else if r.coefficients.iter().any(|c| !c.constant) {
        EquivVerdict::NonConstant
    } else {
        EquivVerdict::Fail
    };
    let violated = r.coefficients.iter().enumerate().find(|(_, c)| c.constant && !c.agrees).map(|(k, c)| {
        format!(
            "q^{k}: equivariant index {} differs from the non-equivariant value {}",
            c.value.as_ref().expect("constant coefficients have a value"),
            c.nonequivariant
        )
    });
    let coefficients = r
        .coefficients
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let (numerator, denominator) = c.character.coefficient_lists();
            CoefficientReport {
                q: k,
                numerator,
                denominator,
                character: c.character.render(),
                constant: c.constant,
                value: c.value.as_ref().map(scalar_json),
                shift: c.shift,
                nonequivariant: scalar_json(&c.nonequivariant),
                agrees: c.agrees,
            }
        })
        .collect();
    Ok(EquivReport {
        scenario: sc.clone(),
        space: a.space().name().to_string(),
        weights: a.weights().map(<[i64]>::to_vec).unwrap_or_default(),
        cover: r.cover,
        q_order: q,
        verdict,
        violated,
        coefficients,
    })
}
