//! Multiplicative genera, twisted indices and elliptic-genus q-expansions.

mod bundle;
mod integrand;
mod series;

use std::fmt;

pub use bundle::{BundleExpr, ERoot, Family, KClass, LineKey, Param, RootSystem};
pub use integrand::{base_integrand, chern, y_power, CycloDen, Fraction, Integrand};
pub use series::{genus_coeffs, BaseKind};

use crate::algebra::{CycNumber, Field, NilPoly, QSeries, Rational, RationalFunction, Ring, YFunction};
use crate::error::{Error, Result};
use crate::spaces::SpaceModel;

/// How the `χ_y` parameter is treated.
#[derive(Clone, Debug, PartialEq)]
pub enum YParam {
    Formal,
    Value(CycNumber),
}

#[derive(Clone, Debug, PartialEq)]
pub enum GenusKind {
    Euler,
    Signature,
    AHat,
    Todd,
    ChiY(YParam),
}

impl GenusKind {
    /// The series-based kind, or `None` for `Euler`.
    pub fn base(&self) -> Option<BaseKind> {
        match self {
            GenusKind::Euler => None,
            GenusKind::Signature => Some(BaseKind::Signature),
            GenusKind::AHat => Some(BaseKind::AHat),
            GenusKind::Todd => Some(BaseKind::Todd),
            GenusKind::ChiY(_) => Some(BaseKind::ChiY),
        }
    }

    /// `y = -ζ_N^β`, the evaluation used in the level-N cusps.
    pub fn chi_y_at_root(n: u64, beta: i64) -> Self {
        GenusKind::ChiY(YParam::Value(level_y(n, beta)))
    }
}

/// `-ζ_N^β` inside `Q(ζ_{lcm(2, N)})`.
pub fn level_y(n: u64, beta: i64) -> CycNumber {
    let d = crate::algebra::lcm_u64(2, n);
    let step = (d / n) as i64;
    CycNumber::root_of_unity(d, beta * step).neg()
}

/// At `y = -1` the `χ_y` series vanishes at 0, so trivial summands cannot be divided
/// out numerically; such values are computed with formal `y` and substituted.
pub fn is_minus_one(y: &CycNumber) -> bool {
    y.add(&CycNumber::one()).is_zero()
}

/// Evaluates a function of `y` at `y = v`.
pub fn substitute_y(f: &YFunction, v: &CycNumber) -> Result<CycNumber> {
    f.map_coeffs(|c| CycNumber::rational(c.clone()))
        .eval(v)
        .ok_or_else(|| Error::Precondition(format!("pole at y = {v} in {f}")))
}

/// An exact scalar produced by an index computation.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Cyc(CycNumber),
    /// A rational function of the formal parameter `y` (a polynomial for honest indices).
    Y(YFunction),
}

impl Scalar {
    /// The rational value, if the scalar is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Cyc(c) => c.as_rational(),
            Scalar::Y(f) => f.as_constant(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => Ring::is_zero(q),
            Scalar::Cyc(c) => c.is_zero(),
            Scalar::Y(f) => f.is_zero(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Cyc(c) => write!(f, "{c}"),
            Scalar::Y(p) => write!(f, "{p}"),
        }
    }
}

/// Result of an index computation: a single value or a q-series.
#[derive(Clone, Debug, PartialEq)]
pub enum IndexValue {
    Scalar(Scalar),
    Series(Vec<Scalar>),
}

/// Check a `KRoot` or level condition: `c₁ ≡ 0 mod n`.
pub fn require_divisible(m: &SpaceModel, n: i64) -> Result<()> {
    if !m.is_c1_divisible(n)? {
        let c1 = m.render_form(&m.c1()?);
        return Err(Error::Precondition(format!("c1 = {c1} is not divisible by {n}")));
    }
    Ok(())
}

/// The spin condition for complex models (`w₂ = c₁ mod 2`); oriented spheres are spin.
pub fn require_spin(m: &SpaceModel) -> Result<()> {
    if m.is_complex() && !m.is_c1_divisible(2)? {
        let c1 = m.render_form(&m.c1()?);
        return Err(Error::Precondition(format!("spin condition failed: c1 = {c1}")));
    }
    Ok(())
}

fn check_twist(m: &SpaceModel, e: &BundleExpr) -> Result<()> {
    let mut orders = Vec::new();
    e.kroot_orders(&mut orders);
    for n in orders {
        require_divisible(m, n)?;
    }
    Ok(())
}

/// `∫_M (genus integrand) · ch(R_k)` for every `q^k`, `k ≤ q_order`, with scalars in `K`.
pub fn space_series<K: Field>(
    m: &SpaceModel,
    kind: BaseKind,
    yval: Option<&K>,
    twist: Option<&KClass>,
    q_order: u32,
) -> Result<Vec<K>> {
    let rs = RootSystem::of_space(m);
    let base = base_integrand::<K>(m, &rs, kind, yval)?;
    let scalar = |f: Fraction<K>| -> K { f.num.coeff(0) };
    match twist {
        None => Ok(vec![scalar(base.integrate(m))]),
        Some(class) => (0..=q_order)
            .map(|k| {
                let ch = chern::<K>(m, &class.q_coefficient(k), yval)?;
                Ok(scalar(base.mul_num(&ch).integrate(m)))
            })
            .collect(),
    }
}

fn dispatch(m: &SpaceModel, g: &GenusKind, twist: Option<&KClass>, q_order: u32) -> Result<Vec<Scalar>> {
    if let Some(b) = g.base() {
        if b.needs_complex() && !m.is_complex() {
            return Err(Error::Precondition(format!("{} is not a complex model", m.name())));
        }
    }
    match g {
        GenusKind::Euler => {
            if twist.is_some() {
                return Err(Error::Invalid("the Euler characteristic cannot be twisted".into()));
            }
            Ok(vec![Scalar::Rational(m.euler_characteristic()?)])
        }
        GenusKind::ChiY(YParam::Formal) => {
            let y = YFunction::var();
            Ok(space_series(m, BaseKind::ChiY, Some(&y), twist, q_order)?.into_iter().map(Scalar::Y).collect())
        }
        GenusKind::ChiY(YParam::Value(v)) if is_minus_one(v) => {
            let y = YFunction::var();
            space_series(m, BaseKind::ChiY, Some(&y), twist, q_order)?
                .iter()
                .map(|f| substitute_y(f, v).map(Scalar::Cyc))
                .collect()
        }
        GenusKind::ChiY(YParam::Value(v)) => {
            Ok(space_series(m, BaseKind::ChiY, Some(v), twist, q_order)?.into_iter().map(Scalar::Cyc).collect())
        }
        _ => {
            let b = g.base().unwrap();
            Ok(space_series::<Rational>(m, b, None, twist, q_order)?.into_iter().map(Scalar::Rational).collect())
        }
    }
}

/// The genus of `M`.
pub fn index(m: &SpaceModel, g: &GenusKind) -> Result<Scalar> {
    Ok(dispatch(m, g, None, 0)?.remove(0))
}

/// The genus of `M` twisted by `E` (any q-dependence of `E` is truncated to `q⁰`).
pub fn twisted_index(m: &SpaceModel, base: &GenusKind, e: &BundleExpr) -> Result<Scalar> {
    Ok(twisted_series(m, base, e, 0)?.remove(0))
}

/// Twisted index coefficient by coefficient in `q`.
pub fn twisted_series(m: &SpaceModel, base: &GenusKind, e: &BundleExpr, q_order: u32) -> Result<Vec<Scalar>> {
    if matches!(base, GenusKind::Euler) {
        return Err(Error::Invalid("the Euler characteristic cannot be twisted".into()));
    }
    check_twist(m, e)?;
    let class = e.eval(&RootSystem::of_space(m), q_order)?;
    dispatch(m, base, Some(&class), q_order)
}

/// Chern character of `E` per power of `q`. Bundles involving `y` are rejected.
pub fn chern_character(m: &SpaceModel, e: &BundleExpr, q_order: u32) -> Result<Vec<NilPoly<Rational>>> {
    check_twist(m, e)?;
    let class = e.eval(&RootSystem::of_space(m), q_order)?;
    (0..=q_order)
        .map(|k| {
            let ch = chern::<Rational>(m, &class.q_coefficient(k), None)?;
            Ok(ch.map(|c| c.coeff(0)))
        })
        .collect()
}

fn rational_series(v: Vec<Scalar>, q_order: u32) -> QSeries<Rational> {
    let coeffs = v.into_iter().map(|s| s.as_rational().expect("rational coefficient")).collect();
    QSeries::new(q_order as usize, coeffs)
}

/// The signature of the free loop space, `Σ sign(M, R_k) q^k`.
pub fn loop_signature(m: &SpaceModel, q_order: u32) -> Result<QSeries<Rational>> {
    let v = twisted_series(m, &GenusKind::Signature, &BundleExpr::QProduct(Family::LoopSignature), q_order)?;
    Ok(rational_series(v, q_order))
}

/// The twisted Â expansion at the Dirac cusp (normalizing constant omitted).
pub fn dirac_cusp_series(m: &SpaceModel, q_order: u32) -> Result<QSeries<Rational>> {
    require_spin(m)?;
    let v = twisted_series(m, &GenusKind::AHat, &BundleExpr::QProduct(Family::DiracCusp), q_order)?;
    Ok(rational_series(v, q_order))
}

/// `Σ Td_y(M, R_k) q^k` at `y = -ζ_N`.
pub fn level_n_loop(m: &SpaceModel, n: u64, q_order: u32) -> Result<QSeries<CycNumber>> {
    if n < 2 {
        return Err(Error::Invalid(format!("level must be at least 2, got {n}")));
    }
    if !m.is_complex() {
        return Err(Error::Precondition(format!("{} is not a complex model", m.name())));
    }
    require_divisible(m, n as i64)?;
    let y = level_y(n, 1);
    let class = BundleExpr::QProduct(Family::LevelN).eval(&RootSystem::of_space(m), q_order)?;
    let v = space_series(m, BaseKind::ChiY, Some(&y), Some(&class), q_order)?;
    Ok(QSeries::new(q_order as usize, v))
}

/// Values of the level-N elliptic genus in the cusps other than `i∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspValues {
    pub n: u64,
    /// `Td(M, K^{α/N})` for `α = 1, …, N-1`.
    pub kroot: Vec<Rational>,
    /// `Td_y(M)` at `y = -ζ_N^β` for `β = 1, …, N-1`.
    pub chi_y: Vec<CycNumber>,
}

pub fn cusp_values(m: &SpaceModel, n: u64) -> Result<CuspValues> {
    if n < 2 {
        return Err(Error::Invalid(format!("level must be at least 2, got {n}")));
    }
    if !m.is_complex() {
        return Err(Error::Precondition(format!("{} is not a complex model", m.name())));
    }
    require_divisible(m, n as i64)?;
    let mut kroot = Vec::new();
    let mut chi_y = Vec::new();
    for a in 1..n as i64 {
        let v = twisted_index(m, &GenusKind::Todd, &BundleExpr::KRoot { n: n as i64, alpha: a })?;
        kroot.push(v.as_rational().unwrap());
        let y = level_y(n, a);
        chi_y.push(space_series(m, BaseKind::ChiY, Some(&y), None, 0)?.remove(0));
    }
    Ok(CuspValues { n, kroot, chi_y })
}

/// Builds the reduced rational function in `u` of a sum of fractions.
pub fn sum_fractions<K: Field>(parts: &[Fraction<K>]) -> RationalFunction<K> {
    Fraction::sum(parts)
}
