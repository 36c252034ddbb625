//! Virtual bundles built from root data, and their λ-ring operations.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::binomial;
use crate::error::{Error, Result};
use crate::spaces::{SpaceModel, Tangent};

/// An equivariant root `c + m·z`: an integer linear form in the degree-2
/// generators together with a weight measured in powers of the cover variable `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ERoot {
    pub form: Vec<i64>,
    pub weight: i64,
}

impl ERoot {
    pub fn new(form: Vec<i64>, weight: i64) -> Self {
        Self { form, weight }
    }

    pub fn neg(&self) -> Self {
        Self { form: self.form.iter().map(|a| -a).collect(), weight: -self.weight }
    }
}

/// Tangent data seen from one place: the whole manifold (all weights zero) or a
/// fixed component of a circle action (normal directions carry nonzero weight).
#[derive(Clone, Debug, PartialEq)]
pub struct RootSystem {
    /// Number of degree-2 generators the forms refer to.
    pub width: usize,
    pub positive: Vec<ERoot>,
    pub negative: Vec<ERoot>,
    pub trivial: u32,
    /// Restriction of each ambient degree-2 generator, used by `Line`.
    pub hyperplane: Vec<ERoot>,
    /// Hyperplane weights at the reference component; `Line` weights are measured from here.
    pub ref_hyperplane: Vec<i64>,
    /// Sum of tangent weights at the reference component; `KRoot` weights are measured from here.
    pub ref_weight_sum: i64,
    /// `Some(rank)` for oriented-only models, whose complexified tangent bundle is trivial.
    pub oriented_rank: Option<u32>,
}

impl RootSystem {
    /// The roots of `M` itself, with all weights zero.
    pub fn of_space(m: &SpaceModel) -> Self {
        let width = m.ring().generators().len();
        match m.tangent() {
            Tangent::Complex(r) => Self {
                width,
                positive: r.positive.iter().map(|f| ERoot::new(f.clone(), 0)).collect(),
                negative: r.negative.iter().map(|f| ERoot::new(f.clone(), 0)).collect(),
                trivial: r.trivial,
                hyperplane: (0..width)
                    .map(|i| ERoot::new((0..width).map(|j| i64::from(i == j)).collect(), 0))
                    .collect(),
                ref_hyperplane: vec![0; width],
                ref_weight_sum: 0,
                oriented_rank: None,
            },
            Tangent::Oriented(_) => Self {
                width,
                positive: vec![],
                negative: vec![],
                trivial: 0,
                hyperplane: vec![],
                ref_hyperplane: vec![],
                ref_weight_sum: 0,
                oriented_rank: Some(m.real_dim()),
            },
        }
    }

    /// `c₁` as an equivariant root (form and total weight).
    pub fn c1(&self) -> ERoot {
        let mut form = vec![0i64; self.width];
        let mut weight = 0;
        for r in &self.positive {
            form.iter_mut().zip(&r.form).for_each(|(a, b)| *a += b);
            weight += r.weight;
        }
        for r in &self.negative {
            form.iter_mut().zip(&r.form).for_each(|(a, b)| *a -= b);
            weight -= r.weight;
        }
        ERoot { form, weight }
    }

    fn complex_only(&self, what: &str) -> Result<()> {
        if self.oriented_rank.is_some() {
            return Err(Error::Precondition(format!("{what} needs a complex model")));
        }
        Ok(())
    }
}

/// `t = ±q^a y^b`, the parameter of a λ- or symmetric-power series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Param {
    pub negative: bool,
    pub q: u32,
    pub y: i64,
}

impl Param {
    pub fn q(a: u32) -> Self {
        Self { negative: false, q: a, y: 0 }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.q > 0 {
            parts.push(if self.q == 1 { "q".to_string() } else { format!("q^{}", self.q) });
        }
        if self.y != 0 {
            parts.push(if self.y == 1 { "y".to_string() } else { format!("y^{}", self.y) });
        }
        let body = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
        if self.negative {
            write!(f, "-{body}")
        } else {
            f.write_str(&body)
        }
    }
}

/// The q-indexed tensor products defining the elliptic genera.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `⊗ S_{qⁿ} T_C ⊗ ⊗ Λ_{qⁿ} T_C` over `n ≥ 1`.
    LoopSignature,
    /// `⊗_{n odd} Λ_{-qⁿ} T_C ⊗ ⊗_{n even} S_{qⁿ} T_C`.
    DiracCusp,
    /// `⊗ Λ_{y qⁿ} T* ⊗ Λ_{y⁻¹ qⁿ} T ⊗ S_{qⁿ}(T ⊕ T*)` over `n ≥ 1`.
    LevelN,
}

/// Symbolic virtual bundle.
#[derive(Clone, Debug, PartialEq)]
pub enum BundleExpr {
    Tangent,
    TangentDual,
    TangentComplexified,
    /// The line bundle with first Chern class given by a linear form in the generators.
    Line(Vec<i64>),
    /// `K^{α/N}` with `K = det T*`.
    KRoot {
        n: i64,
        alpha: i64,
    },
    Sum(Vec<BundleExpr>),
    Diff(Box<BundleExpr>, Box<BundleExpr>),
    Tensor(Vec<BundleExpr>),
    ExtPower(u32, Box<BundleExpr>),
    SymPower(u32, Box<BundleExpr>),
    LambdaSeries(Param, Box<BundleExpr>),
    SymSeries(Param, Box<BundleExpr>),
    QProduct(Family),
}

impl BundleExpr {
    /// The trivial line bundle.
    pub fn trivial() -> Self {
        BundleExpr::Line(vec![])
    }

    pub fn ext(i: u32, e: BundleExpr) -> Self {
        BundleExpr::ExtPower(i, Box::new(e))
    }

    pub fn sym(i: u32, e: BundleExpr) -> Self {
        BundleExpr::SymPower(i, Box::new(e))
    }

    /// Collects the order `n` of every `KRoot(n, _)` in the expression.
    pub fn kroot_orders(&self, out: &mut Vec<i64>) {
        match self {
            BundleExpr::KRoot { n, .. } => out.push(*n),
            BundleExpr::Sum(v) | BundleExpr::Tensor(v) => v.iter().for_each(|e| e.kroot_orders(out)),
            BundleExpr::Diff(a, b) => {
                a.kroot_orders(out);
                b.kroot_orders(out);
            }
            BundleExpr::ExtPower(_, e)
            | BundleExpr::SymPower(_, e)
            | BundleExpr::LambdaSeries(_, e)
            | BundleExpr::SymSeries(_, e) => e.kroot_orders(out),
            _ => {}
        }
    }

    /// Evaluates to a class in the representation ring generated by the roots,
    /// keeping powers of `q` up to `q_order`.
    pub fn eval(&self, rs: &RootSystem, q_order: u32) -> Result<KClass> {
        let w = rs.width;
        Ok(match self {
            BundleExpr::Tangent => {
                rs.complex_only("the tangent bundle")?;
                tangent_class(rs, q_order)?
            }
            BundleExpr::TangentDual => {
                rs.complex_only("the cotangent bundle")?;
                tangent_class(rs, q_order)?.dual()
            }
            BundleExpr::TangentComplexified => match rs.oriented_rank {
                Some(r) => KClass::trivial(w, q_order, r as i64),
                None => {
                    let t = tangent_class(rs, q_order)?;
                    t.add(&t.dual())?
                }
            },
            BundleExpr::Line(form) => {
                if form.iter().all(|&a| a == 0) {
                    return Ok(KClass::trivial(w, q_order, 1));
                }
                rs.complex_only("a line bundle")?;
                if form.len() != rs.hyperplane.len() {
                    return Err(Error::Invalid(format!(
                        "line class has {} coefficients but the space has {} generators",
                        form.len(),
                        rs.hyperplane.len()
                    )));
                }
                let mut f = vec![0i64; w];
                let mut weight = 0i64;
                for ((k, h), r) in form.iter().zip(&rs.hyperplane).zip(&rs.ref_hyperplane) {
                    f.iter_mut().zip(&h.form).for_each(|(a, b)| *a += k * b);
                    weight += k * (h.weight - r);
                }
                KClass::line(q_order, ERoot::new(f, weight))?
            }
            BundleExpr::KRoot { n, alpha } => {
                rs.complex_only("a root of the canonical bundle")?;
                if *n < 1 {
                    return Err(Error::Invalid(format!("KRoot order must be positive, got {n}")));
                }
                let c1 = rs.c1();
                if c1.form.iter().any(|a| a % n != 0) {
                    return Err(Error::Precondition(format!("c1 is not divisible by {n}")));
                }
                let shift = c1.weight - rs.ref_weight_sum;
                if (alpha * shift) % n != 0 {
                    return Err(Error::Precondition(format!(
                        "local weight of K^({alpha}/{n}) is fractional; raise the cover index"
                    )));
                }
                let form = c1.form.iter().map(|a| -alpha * a / n).collect();
                KClass::line(q_order, ERoot::new(form, -alpha * shift / n))?
            }
            BundleExpr::Sum(v) => {
                let mut acc = KClass::zero(w, q_order);
                for e in v {
                    acc = acc.add(&e.eval(rs, q_order)?)?;
                }
                acc
            }
            BundleExpr::Diff(a, b) => a.eval(rs, q_order)?.sub(&b.eval(rs, q_order)?)?,
            BundleExpr::Tensor(v) => {
                let mut acc = KClass::trivial(w, q_order, 1);
                for e in v {
                    acc = acc.tensor(&e.eval(rs, q_order)?)?;
                }
                acc
            }
            BundleExpr::ExtPower(i, e) => e.eval(rs, q_order)?.lambda_poly(false, *i)?.swap_remove(*i as usize),
            BundleExpr::SymPower(i, e) => e.eval(rs, q_order)?.lambda_poly(true, *i)?.swap_remove(*i as usize),
            BundleExpr::LambdaSeries(p, e) => e.eval(rs, q_order)?.series(*p, false)?,
            BundleExpr::SymSeries(p, e) => e.eval(rs, q_order)?.series(*p, true)?,
            BundleExpr::QProduct(fam) => qproduct(*fam, rs, q_order)?,
        })
    }
}

fn tangent_class(rs: &RootSystem, q_order: u32) -> Result<KClass> {
    let mut t = KClass::trivial(rs.width, q_order, -(rs.trivial as i64));
    for r in &rs.positive {
        t = t.add(&KClass::line(q_order, r.clone())?)?;
    }
    for r in &rs.negative {
        t = t.sub(&KClass::line(q_order, r.clone())?)?;
    }
    Ok(t)
}

fn qproduct(fam: Family, rs: &RootSystem, q_order: u32) -> Result<KClass> {
    let tc = BundleExpr::TangentComplexified.eval(rs, q_order)?;
    let mut acc = KClass::trivial(rs.width, q_order, 1);
    for n in 1..=q_order {
        let factors: Vec<(KClass, Param, bool)> = match fam {
            Family::LoopSignature => vec![(tc.clone(), Param::q(n), true), (tc.clone(), Param::q(n), false)],
            Family::DiracCusp if n % 2 == 1 => {
                vec![(tc.clone(), Param { negative: true, q: n, y: 0 }, false)]
            }
            Family::DiracCusp => vec![(tc.clone(), Param::q(n), true)],
            Family::LevelN => {
                rs.complex_only("the level-N family")?;
                let t = tangent_class(rs, q_order)?;
                let td = t.dual();
                vec![
                    (td.clone(), Param { negative: false, q: n, y: 1 }, false),
                    (t.clone(), Param { negative: false, q: n, y: -1 }, false),
                    (t.add(&td)?, Param::q(n), true),
                ]
            }
        };
        for (class, p, symmetric) in factors {
            acc = acc.tensor(&class.series(p, symmetric)?)?;
        }
    }
    Ok(acc)
}

/// A line in the representation ring: equivariant root plus powers of `y` and `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineKey {
    pub q: u32,
    pub y: i64,
    pub root: ERoot,
}

/// A finite integer combination of lines, truncated above `q^{q_order}`.
#[derive(Clone, Debug, PartialEq)]
pub struct KClass {
    width: usize,
    q_order: u32,
    terms: BTreeMap<LineKey, i64>,
}

impl KClass {
    pub fn zero(width: usize, q_order: u32) -> Self {
        Self { width, q_order, terms: BTreeMap::new() }
    }

    pub fn trivial(width: usize, q_order: u32, rank: i64) -> Self {
        let mut k = Self::zero(width, q_order);
        k.insert(LineKey { q: 0, y: 0, root: ERoot::new(vec![0; width], 0) }, rank).unwrap();
        k
    }

    pub fn line(q_order: u32, root: ERoot) -> Result<Self> {
        let mut k = Self::zero(root.form.len(), q_order);
        k.insert(LineKey { q: 0, y: 0, root }, 1)?;
        Ok(k)
    }

    pub fn q_order(&self) -> u32 {
        self.q_order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LineKey, i64)> {
        self.terms.iter().map(|(k, n)| (k, *n))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplicity of the trivial line at `q⁰ y⁰`; the rank for `y`-free classes.
    pub fn rank(&self) -> i64 {
        self.terms.iter().filter(|(k, _)| k.q == 0).map(|(_, n)| *n).sum()
    }

    fn insert(&mut self, key: LineKey, n: i64) -> Result<()> {
        if n == 0 || key.q > self.q_order {
            return Ok(());
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(n);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(n).ok_or(Error::Overflow("bundle multiplicities"))?;
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.q_order != other.q_order {
            return Err(Error::Invalid("bundles truncated at different q-orders".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (k, n) in &other.terms {
            out.insert(k.clone(), *n)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (k, n) in &other.terms {
            out.insert(k.clone(), n.checked_neg().ok_or(Error::Overflow("bundle multiplicities"))?)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let mut out = Self::zero(self.width, self.q_order);
        for (k, n) in &self.terms {
            out.insert(k.clone(), n.checked_mul(c).ok_or(Error::Overflow("bundle multiplicities"))?)?;
        }
        Ok(out)
    }

    pub fn dual(&self) -> Self {
        let terms = self.terms.iter().map(|(k, n)| (LineKey { q: k.q, y: k.y, root: k.root.neg() }, *n)).collect();
        Self { width: self.width, q_order: self.q_order, terms }
    }

    /// Multiplies by `±q^a y^b`.
    pub fn twist(&self, p: Param) -> Result<Self> {
        let mut out = Self::zero(self.width, self.q_order);
        let sign = if p.negative { -1 } else { 1 };
        for (k, n) in &self.terms {
            let key = LineKey { q: k.q + p.q, y: k.y + p.y, root: k.root.clone() };
            out.insert(key, n * sign)?;
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.width, self.q_order);
        for (a, m) in &self.terms {
            for (b, n) in &other.terms {
                if a.q + b.q > self.q_order {
                    continue;
                }
                let form = a.root.form.iter().zip(&b.root.form).map(|(x, y)| x + y).collect();
                let key = LineKey { q: a.q + b.q, y: a.y + b.y, root: ERoot::new(form, a.root.weight + b.root.weight) };
                out.insert(key, m.checked_mul(*n).ok_or(Error::Overflow("bundle multiplicities"))?)?;
            }
        }
        Ok(out)
    }

    /// Coefficients of `Λ_t` (or `S_t` when `symmetric`) as a polynomial in a
    /// formal `t`, up to `t^{max_t}`.
    ///
    /// Each line `L` with multiplicity `n` contributes `(1 + tL)^n`, resp.
    /// `(1 - tL)^{-n}`, so virtual classes are handled by generalized binomials.
    pub fn lambda_poly(&self, symmetric: bool, max_t: u32) -> Result<Vec<KClass>> {
        let one = KClass::trivial(self.width, self.q_order, 1);
        let mut acc = vec![one];
        acc.resize(max_t as usize + 1, KClass::zero(self.width, self.q_order));
        for (key, n) in &self.terms {
            let (exp, sign) = if symmetric { (-n, -1i64) } else { (*n, 1i64) };
            // factor = Σ_j C(exp, j) (sign·L)^j t^j
            let mut factor = Vec::with_capacity(max_t as usize + 1);
            let mut power = KClass::trivial(self.width, self.q_order, 1);
            let line = {
                let mut l = KClass::zero(self.width, self.q_order);
                l.insert(key.clone(), 1)?;
                l
            };
            for j in 0..=max_t {
                let c = binomial(exp, j) * num_bigint::BigInt::from(sign.pow(j));
                let c: i64 = i64::try_from(c).map_err(|_| Error::Overflow("binomial coefficients"))?;
                factor.push(power.scale(c)?);
                power = power.tensor(&line)?;
            }
            let mut next = vec![KClass::zero(self.width, self.q_order); max_t as usize + 1];
            for (i, a) in acc.iter().enumerate() {
                if a.is_empty() {
                    continue;
                }
                for (j, b) in factor.iter().enumerate().take(max_t as usize + 1 - i) {
                    if b.is_empty() {
                        continue;
                    }
                    next[i + j] = next[i + j].add(&a.tensor(b)?)?;
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// `Λ_t(self)` or `S_t(self)` for `t = ±q^a y^b`, truncated at the q-order.
    pub fn series(&self, p: Param, symmetric: bool) -> Result<Self> {
        let min_q = self.terms.keys().map(|k| k.q).min().unwrap_or(0);
        let step = p.q + min_q;
        let max_t = if let Some(m) = self.q_order.checked_div(step) {
            m
        } else {
            // Without q-growth the series is finite only for an honest bundle.
            let (total, virtual_) = self.terms.values().fold((0i64, false), |(t, v), &n| (t + n.abs(), v || n < 0));
            if virtual_ || symmetric {
                return Err(Error::Precondition(format!(
                    "{} series of this bundle does not terminate; use a parameter with positive q-degree",
                    if symmetric { "symmetric" } else { "exterior" }
                )));
            }
            total as u32
        };
        let poly = self.lambda_poly(symmetric, max_t)?;
        let mut out = Self::zero(self.width, self.q_order);
        for (j, c) in poly.iter().enumerate() {
            let j = j as u32;
            let pj = Param { negative: p.negative && j % 2 == 1, q: p.q * j, y: p.y * j as i64 };
            out = out.add(&c.twist(pj)?)?;
        }
        Ok(out)
    }

    /// The part at `q^m`.
    pub fn q_coefficient(&self, m: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.q == m)
            .map(|(k, n)| (LineKey { q: 0, y: k.y, root: k.root.clone() }, *n))
            .collect();
        Self { width: self.width, q_order: self.q_order, terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(n: u32) -> RootSystem {
        RootSystem::of_space(&SpaceModel::cp(n).unwrap())
    }

    #[test]
    fn tangent_rank() {
        let rs = cp(3);
        assert_eq!(BundleExpr::Tangent.eval(&rs, 0).unwrap().rank(), 3);
        assert_eq!(BundleExpr::TangentComplexified.eval(&rs, 0).unwrap().rank(), 6);
    }

    #[test]
    fn exterior_powers_of_virtual_bundle() {
        // T CP² = 3L - 1, so Λ²T = 3L² - 3L + 1 as a representation
        let rs = cp(2);
        let l2 = BundleExpr::ext(2, BundleExpr::Tangent).eval(&rs, 0).unwrap();
        let line = |k: i64| KClass::line(0, ERoot::new(vec![k], 0)).unwrap();
        let expected = line(2).scale(3).unwrap().add(&line(1).scale(-3).unwrap()).unwrap().add(&line(0)).unwrap();
        assert_eq!(l2, expected);

        // In K(CP²), where (L - 1)³ = 0: Λ²T = det T = L³, and Λ³ of a rank-2 bundle vanishes.
        let m = crate::spaces::SpaceModel::cp(2).unwrap();
        let ch = |e: BundleExpr| crate::genera::chern_character(&m, &e, 0).unwrap().remove(0);
        assert_eq!(ch(BundleExpr::ext(2, BundleExpr::Tangent)), ch(BundleExpr::Line(vec![3])));
        assert!(ch(BundleExpr::ext(3, BundleExpr::Tangent)).is_zero());
    }

    #[test]
    fn loop_signature_first_coefficients() {
        let rs = cp(2);
        let r = BundleExpr::QProduct(Family::LoopSignature).eval(&rs, 2).unwrap();
        let tc = BundleExpr::TangentComplexified.eval(&rs, 0).unwrap();
        assert_eq!(r.q_coefficient(0), KClass::trivial(1, 2, 1));
        assert_eq!(r.q_coefficient(1).terms().collect::<Vec<_>>(), tc.scale(2).unwrap().terms().collect::<Vec<_>>());
    }

    #[test]
    fn nonterminating_series_rejected() {
        let rs = cp(2);
        let e = BundleExpr::LambdaSeries(Param { negative: false, q: 0, y: 1 }, Box::new(BundleExpr::Tangent));
        assert!(e.eval(&rs, 2).is_err());
    }

    #[test]
    fn kroot_is_a_line() {
        let rs = cp(5);
        let k = BundleExpr::KRoot { n: 3, alpha: 1 }.eval(&rs, 0).unwrap();
        assert_eq!(k, KClass::line(0, ERoot::new(vec![-2], 0)).unwrap());
        assert!(BundleExpr::KRoot { n: 4, alpha: 1 }.eval(&rs, 0).is_err());
    }
}
