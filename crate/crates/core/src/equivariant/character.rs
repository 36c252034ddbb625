use std::fmt;

use crate::algebra::{CycNumber, Field, LaurentPoly, Rational, RationalFunction, Ring, YFunction};
use crate::equivariant::action::CircleAction;
use crate::error::{Error, Result};
use crate::genera::{
    self, base_integrand, chern, level_y, BaseKind, BundleExpr, Family, Fraction, GenusKind, Scalar, YParam,
};

/// The q-series whose coefficients are checked for rigidity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopFamily {
    /// Level 2 at the signature cusp.
    Signature,
    /// Level 2 at the Dirac cusp.
    DiracCusp,
    /// Level `N` at `i∞`, with `y = -ζ_N`.
    LevelN(u64),
}

/// What an equivariant index computes.
#[derive(Clone, Debug, PartialEq)]
pub enum Spec {
    Genus(GenusKind),
    Twisted(GenusKind, BundleExpr),
    Loop(LoopFamily),
}

impl Spec {
    fn has_kroot(&self) -> bool {
        let mut v = Vec::new();
        if let Spec::Twisted(_, e) = self {
            e.kroot_orders(&mut v);
        }
        !v.is_empty()
    }

    /// Cover index needed for integral `u`-exponents.
    pub fn required_cover(&self) -> u64 {
        let mut d = 1;
        match self {
            Spec::Genus(GenusKind::AHat) | Spec::Loop(LoopFamily::DiracCusp) => d = 2,
            Spec::Twisted(g, e) => {
                if *g == GenusKind::AHat {
                    d = 2;
                }
                let mut v = Vec::new();
                e.kroot_orders(&mut v);
                for n in v {
                    d = crate::algebra::lcm_u64(d, 2 * n.unsigned_abs());
                }
            }
            _ => {}
        }
        d
    }
}

/// `(exponent, coefficient)` pairs of a Laurent polynomial in `u`.
pub type Terms = Vec<(i64, String)>;

/// One q-coefficient of an equivariant character, as a reduced rational function in `u`.
#[derive(Clone, Debug, PartialEq)]
pub enum Character {
    Rational(RationalFunction<Rational>),
    Cyc(RationalFunction<CycNumber>),
    Y(RationalFunction<YFunction>),
}

fn terms<F: Field + fmt::Display>(p: &LaurentPoly<F>) -> Terms {
    p.terms().map(|(e, c)| (e, c.to_string())).collect()
}

impl Character {
    pub fn as_constant(&self) -> Option<Scalar> {
        match self {
            Character::Rational(f) => f.as_constant().map(Scalar::Rational),
            Character::Cyc(f) => f.as_constant().map(Scalar::Cyc),
            Character::Y(f) => f.as_constant().map(Scalar::Y),
        }
    }

    /// `Some((k, c))` when the character is `c·u^k`.
    pub fn as_monomial(&self) -> Option<(i64, Scalar)> {
        match self {
            Character::Rational(f) => f.as_monomial().map(|(k, c)| (k, Scalar::Rational(c))),
            Character::Cyc(f) => f.as_monomial().map(|(k, c)| (k, Scalar::Cyc(c))),
            Character::Y(f) => f.as_monomial().map(|(k, c)| (k, Scalar::Y(c))),
        }
    }

    pub fn limit_at_infinity(&self) -> Option<Scalar> {
        match self {
            Character::Rational(f) => f.limit_at_infinity().map(Scalar::Rational),
            Character::Cyc(f) => f.limit_at_infinity().map(Scalar::Cyc),
            Character::Y(f) => f.limit_at_infinity().map(Scalar::Y),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Character::Rational(f) => f.is_zero(),
            Character::Cyc(f) => f.is_zero(),
            Character::Y(f) => f.is_zero(),
        }
    }

    /// Numerator and denominator as `(exponent, coefficient)` lists.
    pub fn coefficient_lists(&self) -> (Terms, Terms) {
        match self {
            Character::Rational(f) => (terms(f.numer()), terms(f.denom())),
            Character::Cyc(f) => (terms(f.numer()), terms(f.denom())),
            Character::Y(f) => (terms(f.numer()), terms(f.denom())),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Character::Rational(f) => f.render(),
            Character::Cyc(f) => f.render(),
            Character::Y(f) => f.render(),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

trait CharScalar: Field {
    fn character(f: RationalFunction<Self>) -> Character;
}

impl CharScalar for Rational {
    fn character(f: RationalFunction<Self>) -> Character {
        Character::Rational(f)
    }
}

impl CharScalar for CycNumber {
    fn character(f: RationalFunction<Self>) -> Character {
        Character::Cyc(f)
    }
}

impl CharScalar for YFunction {
    fn character(f: RationalFunction<Self>) -> Character {
        Character::Y(f)
    }
}

/// An equivariant index: one character per power of `q` (a single one outside loop specs).
#[derive(Clone, Debug, PartialEq)]
pub struct EquivValue {
    /// Characters are functions of `u` with `λ = u^cover`.
    pub cover: u64,
    pub coeffs: Vec<Character>,
}

struct Plan {
    kind: Option<BaseKind>,
    y: Option<YParam>,
    twist: Option<BundleExpr>,
    q_order: u32,
}

fn plan(a: &CircleAction, spec: &Spec, q_order: u32) -> Result<Plan> {
    let m = a.space();
    let (g, twist, q_order) = match spec {
        Spec::Genus(g) => (g.clone(), None, 0),
        Spec::Twisted(g, e) => {
            if *g == GenusKind::Euler {
                return Err(Error::Invalid("the Euler characteristic cannot be twisted".into()));
            }
            let mut v = Vec::new();
            e.kroot_orders(&mut v);
            for n in v {
                genera::require_divisible(m, n)?;
            }
            (g.clone(), Some(e.clone()), 0)
        }
        Spec::Loop(LoopFamily::Signature) => {
            (GenusKind::Signature, Some(BundleExpr::QProduct(Family::LoopSignature)), q_order)
        }
        Spec::Loop(LoopFamily::DiracCusp) => {
            genera::require_spin(m)?;
            (GenusKind::AHat, Some(BundleExpr::QProduct(Family::DiracCusp)), q_order)
        }
        Spec::Loop(LoopFamily::LevelN(n)) => {
            if *n < 2 {
                return Err(Error::Invalid(format!("level must be at least 2, got {n}")));
            }
            genera::require_divisible(m, *n as i64)?;
            (GenusKind::ChiY(YParam::Value(level_y(*n, 1))), Some(BundleExpr::QProduct(Family::LevelN)), q_order)
        }
    };
    let y = match &g {
        GenusKind::ChiY(p) => Some(p.clone()),
        _ => None,
    };
    Ok(Plan { kind: g.base(), y, twist, q_order })
}

/// Local fractions per component and per q-coefficient.
fn fractions<K: Field>(
    a: &CircleAction,
    d: u64,
    p: &Plan,
    kind: BaseKind,
    y: Option<&K>,
) -> Result<Vec<Vec<Fraction<K>>>> {
    (0..a.components().len())
        .map(|i| {
            let comp = &a.components()[i];
            let rs = a.root_system(i, d);
            let base = base_integrand::<K>(&comp.space, &rs, kind, y)?;
            match &p.twist {
                None => Ok(vec![base.integrate(&comp.space)]),
                Some(e) => {
                    let class = e.eval(&rs, p.q_order)?;
                    (0..=p.q_order)
                        .map(|k| {
                            let ch = chern::<K>(&comp.space, &class.q_coefficient(k), y)?;
                            Ok(base.mul_num(&ch).integrate(&comp.space))
                        })
                        .collect()
                }
            }
        })
        .collect()
}

fn to_characters<K: CharScalar>(parts: Vec<Vec<Fraction<K>>>) -> Vec<Vec<Character>> {
    parts.into_iter().map(|v| v.iter().map(|f| K::character(f.to_rational_function())).collect()).collect()
}

fn summed<K: CharScalar>(parts: Vec<Vec<Fraction<K>>>, len: usize) -> Vec<Character> {
    (0..len)
        .map(|k| {
            let col: Vec<Fraction<K>> = parts.iter().map(|v| v[k].clone()).collect();
            K::character(Fraction::sum(&col))
        })
        .collect()
}

enum Computed {
    Rational(Vec<Vec<Fraction<Rational>>>),
    Cyc(Vec<Vec<Fraction<CycNumber>>>),
    Y(Vec<Vec<Fraction<YFunction>>>),
}

fn compute(a: &CircleAction, spec: &Spec, q_order: u32) -> Result<(u64, usize, Computed)> {
    let p = plan(a, spec, q_order)?;
    let d = a.effective_cover(spec.required_cover());
    let len = p.q_order as usize + 1;
    let Some(kind) = p.kind else {
        // Euler: each component contributes χ(Y).
        let parts = a
            .components()
            .iter()
            .map(|c| Ok(vec![Fraction::constant(c.space.euler_characteristic()?)]))
            .collect::<Result<Vec<_>>>()?;
        return Ok((d, 1, Computed::Rational(parts)));
    };
    let out = match &p.y {
        Some(YParam::Formal) => Computed::Y(fractions(a, d, &p, kind, Some(&YFunction::var()))?),
        Some(YParam::Value(v)) if genera::is_minus_one(v) => {
            let formal = fractions(a, d, &p, kind, Some(&YFunction::var()))?;
            let at = |f: &Fraction<YFunction>| -> Result<Fraction<CycNumber>> {
                let terms =
                    f.num.terms().map(|(e, c)| Ok((e, genera::substitute_y(c, v)?))).collect::<Result<Vec<_>>>()?;
                Ok(Fraction { num: LaurentPoly::from_terms(terms), den: f.den.clone() })
            };
            Computed::Cyc(formal.iter().map(|v| v.iter().map(at).collect()).collect::<Result<_>>()?)
        }
        Some(YParam::Value(v)) => Computed::Cyc(fractions(a, d, &p, kind, Some(v))?),
        None => Computed::Rational(fractions::<Rational>(a, d, &p, kind, None)?),
    };
    Ok((d, len, out))
}

/// The local datum of component `i`.
pub fn local_datum(a: &CircleAction, i: usize, spec: &Spec, q_order: u32) -> Result<EquivValue> {
    if i >= a.components().len() {
        return Err(Error::Invalid(format!("no fixed component {i}")));
    }
    let mut all = local_data(a, spec, q_order)?;
    Ok(all.swap_remove(i))
}

/// Local data of every component, in component order.
pub fn local_data(a: &CircleAction, spec: &Spec, q_order: u32) -> Result<Vec<EquivValue>> {
    let (cover, _, c) = compute(a, spec, q_order)?;
    let chars = match c {
        Computed::Rational(v) => to_characters(v),
        Computed::Cyc(v) => to_characters(v),
        Computed::Y(v) => to_characters(v),
    };
    Ok(chars.into_iter().map(|coeffs| EquivValue { cover, coeffs }).collect())
}

/// The equivariant index: sum of the local data, reduced.
pub fn equiv_index(a: &CircleAction, spec: &Spec, q_order: u32) -> Result<EquivValue> {
    let (cover, len, c) = compute(a, spec, q_order)?;
    let coeffs = match c {
        Computed::Rational(v) => summed(v, len),
        Computed::Cyc(v) => summed(v, len),
        Computed::Y(v) => summed(v, len),
    };
    Ok(EquivValue { cover, coeffs })
}

/// The non-equivariant values the characters should reduce to.
fn nonequivariant(a: &CircleAction, spec: &Spec, q_order: u32) -> Result<Vec<Scalar>> {
    let m = a.space();
    Ok(match spec {
        Spec::Genus(g) => vec![genera::index(m, g)?],
        Spec::Twisted(g, e) => vec![genera::twisted_index(m, g, e)?],
        Spec::Loop(LoopFamily::Signature) => {
            genera::loop_signature(m, q_order)?.coeffs().iter().cloned().map(Scalar::Rational).collect()
        }
        Spec::Loop(LoopFamily::DiracCusp) => {
            genera::dirac_cusp_series(m, q_order)?.coeffs().iter().cloned().map(Scalar::Rational).collect()
        }
        Spec::Loop(LoopFamily::LevelN(n)) => {
            genera::level_n_loop(m, *n, q_order)?.coeffs().iter().cloned().map(Scalar::Cyc).collect()
        }
    })
}

/// Exact equality across scalar kinds (rational values may sit in any cyclotomic field).
pub fn scalar_eq(a: &Scalar, b: &Scalar) -> bool {
    match (a, b) {
        (Scalar::Cyc(x), Scalar::Cyc(y)) => x.sub(y).is_zero(),
        (Scalar::Y(x), Scalar::Y(y)) => x == y,
        (Scalar::Y(_), _) | (_, Scalar::Y(_)) => a.as_rational().is_some() && a.as_rational() == b.as_rational(),
        _ => a.as_rational().is_some() && a.as_rational() == b.as_rational(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVerdict {
    pub character: Character,
    pub constant: bool,
    /// The constant (after removing a `u`-monomial when that is allowed).
    pub value: Option<Scalar>,
    /// Exponent of the removed `u`-monomial.
    pub shift: i64,
    pub nonequivariant: Scalar,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RigidityReport {
    pub cover: u64,
    pub coefficients: Vec<CoefficientVerdict>,
}

impl RigidityReport {
    /// Every coefficient is constant and equals the non-equivariant value.
    pub fn rigid(&self) -> bool {
        self.coefficients.iter().all(|c| c.constant && c.agrees)
    }
}

/// Constancy of each coefficient and comparison with the genera module.
/// Specs with a root of `K` are accepted up to a `u`-monomial, the ambiguity of the lift.
pub fn rigidity_report(a: &CircleAction, spec: &Spec, q_order: u32) -> Result<RigidityReport> {
    let v = equiv_index(a, spec, q_order)?;
    let expected = nonequivariant(a, spec, q_order)?;
    let monomial_ok = spec.has_kroot();
    let coefficients = v
        .coeffs
        .into_iter()
        .zip(expected)
        .map(|(character, nonequivariant)| {
            let (value, shift) = match character.as_constant() {
                Some(c) => (Some(c), 0),
                None if monomial_ok => match character.as_monomial() {
                    Some((k, c)) => (Some(c), k),
                    None => (None, 0),
                },
                None => (None, 0),
            };
            let agrees = value.as_ref().is_some_and(|c| scalar_eq(c, &nonequivariant));
            CoefficientVerdict { character, constant: value.is_some(), value, shift, nonequivariant, agrees }
        })
        .collect();
    Ok(RigidityReport { cover: v.cover, coefficients })
}

/// Limits of the local data as `u → ∞`, one per component.
pub fn local_limits(a: &CircleAction, spec: &Spec) -> Result<Vec<Scalar>> {
    if matches!(spec, Spec::Loop(_)) {
        return Err(Error::Invalid("cusp limits are defined for single characters, not loop series".into()));
    }
    local_data(a, spec, 0)?
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.coeffs[0]
                .limit_at_infinity()
                .ok_or_else(|| Error::Inconsistent(format!("local datum of component {i} has no finite limit")))
        })
        .collect()
}

/// `Σ_Y lim_{u→∞} a_Y`. For the signature this is `Σ sign(Y)`.
pub fn limit_at_cusp(a: &CircleAction, spec: &Spec) -> Result<Scalar> {
    let limits = local_limits(a, spec)?;
    let mut iter = limits.into_iter();
    let first = iter.next().expect("actions have a component");
    iter.try_fold(first, |acc, s| add_scalars(&acc, &s))
}

fn add_scalars(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    Ok(match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
        (Scalar::Cyc(x), Scalar::Cyc(y)) => Scalar::Cyc(x.add(y)),
        (Scalar::Y(x), Scalar::Y(y)) => Scalar::Y(x.add(y)),
        _ => return Err(Error::Inconsistent("local data of different scalar kinds".into())),
    })
}
