use std::collections::BTreeMap;

use crate::algebra::{gcd_i64, Rational};
use crate::equivariant::action::CircleAction;
use crate::error::{Error, Result};
use crate::genera::{self, BundleExpr, GenusKind, Scalar};
use crate::spaces::SpaceModel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaComponent {
    /// The common weight residue mod `o`.
    pub residue: i64,
    /// Number of homogeneous coordinates; the component is `CP^{size-1}`.
    pub size: usize,
}

/// The fixed set of the element of order `o` in the circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaFixedData {
    pub order: u64,
    pub components: Vec<SigmaComponent>,
    /// Minimum real codimension over the components.
    pub codim: u32,
}

impl SigmaFixedData {
    pub fn spaces(&self) -> Result<Vec<SpaceModel>> {
        self.components
            .iter()
            .map(|c| if c.size == 1 { Ok(SpaceModel::point()) } else { SpaceModel::cp(c.size as u32 - 1) })
            .collect()
    }
}

pub fn sigma_fixed_set(a: &CircleAction, o: u64) -> Result<SigmaFixedData> {
    if o < 2 {
        return Err(Error::Invalid(format!("order must be at least 2, got {o}")));
    }
    let weights = a.weights().ok_or_else(|| {
        Error::Precondition("fixed sets of finite subgroups are computed for linear actions only".into())
    })?;
    let mut groups: BTreeMap<i64, usize> = BTreeMap::new();
    for w in weights {
        *groups.entry(w.rem_euclid(o as i64)).or_insert(0) += 1;
    }
    let n = weights.len() as u32 - 1;
    let largest = *groups.values().max().unwrap() as u32;
    Ok(SigmaFixedData {
        order: o,
        components: groups.into_iter().map(|(residue, size)| SigmaComponent { residue, size }).collect(),
        codim: 2 * (n + 1 - largest),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValueCheck {
    pub label: String,
    pub value: Scalar,
    pub pass: bool,
}

/// Which elliptic genus the vanishing statement is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Two,
    N(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct VanishingReport {
    pub verdict: Verdict,
    pub codim: u32,
    /// Number of coefficients beyond the first that are forced to vanish.
    pub r: Option<u32>,
    pub checks: Vec<ValueCheck>,
}

fn not_applicable(codim: u32, why: String) -> VanishingReport {
    VanishingReport { verdict: Verdict::NotApplicable(why), codim, r: None, checks: vec![] }
}

fn is_effective(weights: &[i64]) -> bool {
    let g = weights.iter().fold(0, |g, w| gcd_i64(g, w - weights[0]));
    g == 1
}

/// Applies the higher vanishing statements to the action and checks the forced zeros
/// by non-equivariant integration.
///
/// Level 2: `codim M^σ > 2·o·r` forces the first `r+1` Dirac-cusp coefficients to vanish
/// (for `o > 2` the action must be effective). Level `N`: `σ` of order 2 with
/// `codim M^σ ≥ 6` forces `Td(M, T*⊗K^{α/N}) = 0` for `0 < α < N/2`.
pub fn higher_vanishing_check(a: &CircleAction, o: u64, level: Level) -> Result<VanishingReport> {
    let m = a.space();
    let sigma = sigma_fixed_set(a, o)?;
    let codim = sigma.codim;
    match level {
        Level::Two => {
            if !m.is_c1_divisible(2)? {
                let c1 = m.render_form(&m.c1()?);
                return Ok(not_applicable(codim, format!("spin condition failed: c1 = {c1}")));
            }
            if o > 2 && !is_effective(a.weights().unwrap()) {
                return Ok(not_applicable(codim, "the action is not effective".into()));
            }
            if codim == 0 {
                return Ok(not_applicable(codim, "σ acts trivially".into()));
            }
            let r = (codim - 1) / (2 * o as u32);
            let series = genera::dirac_cusp_series(m, r)?;
            let checks: Vec<ValueCheck> = series
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| ValueCheck {
                    label: format!("dirac cusp coefficient q^{k}"),
                    value: Scalar::Rational(c.clone()),
                    pass: num_traits::Zero::is_zero(c),
                })
                .collect();
            Ok(finish(codim, Some(r), checks))
        }
        Level::N(n) => {
            if n < 2 {
                return Err(Error::Invalid(format!("level must be at least 2, got {n}")));
            }
            if !m.is_c1_divisible(n as i64)? {
                let c1 = m.render_form(&m.c1()?);
                return Ok(not_applicable(codim, format!("c1 = {c1} is not divisible by {n}")));
            }
            if o != 2 {
                return Ok(not_applicable(codim, "the level-N statement concerns σ of order 2".into()));
            }
            if codim < 6 {
                return Ok(not_applicable(codim, format!("codim M^σ = {codim} < 6")));
            }
            let mut checks = Vec::new();
            for alpha in 1..n as i64 {
                if 2 * alpha >= n as i64 {
                    break;
                }
                let e = BundleExpr::Tensor(vec![BundleExpr::TangentDual, BundleExpr::KRoot { n: n as i64, alpha }]);
                let value = genera::twisted_index(m, &GenusKind::Todd, &e)?;
                checks.push(ValueCheck { label: format!("Td(M, T*⊗K^({alpha}/{n}))"), pass: value.is_zero(), value });
            }
            Ok(finish(codim, None, checks))
        }
    }
}

fn finish(codim: u32, r: Option<u32>, checks: Vec<ValueCheck>) -> VanishingReport {
    let verdict = if checks.iter().all(|c| c.pass) { Verdict::Pass } else { Verdict::Fail };
    VanishingReport { verdict, codim, r, checks }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    pub euler_total: Rational,
    pub euler_components: Vec<Rational>,
    /// `m + 1` for `dim M = 2m`.
    pub rank: u32,
    /// `Σ (m_i + 1)` over the components.
    pub rank_sum: u32,
    pub generators_restrict: bool,
}

impl StructureReport {
    pub fn passes(&self) -> bool {
        self.euler_components.iter().sum::<Rational>() == self.euler_total
            && self.rank_sum == self.rank
            && self.generators_restrict
    }
}

pub fn structure_checks(a: &CircleAction) -> Result<StructureReport> {
    let m = a.space();
    let euler_components = a.components().iter().map(|c| c.space.euler_characteristic()).collect::<Result<Vec<_>>>()?;
    let rank_sum = a.components().iter().map(|c| c.space.complex_dim() + 1).sum();
    // The hyperplane class restricts to the generator of each positive-dimensional component.
    let generators_restrict = a.components().iter().all(|c| {
        c.space.complex_dim() == 0
            || c.hyperplane.iter().any(|h| h.form.iter().all(|&x| x.abs() <= 1) && h.form.contains(&1))
    });
    Ok(StructureReport {
        euler_total: m.euler_characteristic()?,
        euler_components,
        rank: m.complex_dim() + 1,
        rank_sum,
        generators_restrict,
    })
}

/// `Σ_Y ε_Y·sign(Y)`, with `Y` oriented so that its normal weights are positive:
/// `ε_Y = (-1)^{#negative normal weights}`.
pub fn fixed_signature_sum(a: &CircleAction) -> Result<Rational> {
    let mut total = Rational::from_integer(0.into());
    for c in a.components() {
        let s = genera::index(&c.space, &GenusKind::Signature)?.as_rational().expect("signature is rational");
        let negative = c.normal().iter().filter(|l| l.weight < 0).count();
        total += if negative % 2 == 0 { s } else { -s };
    }
    Ok(total)
}
