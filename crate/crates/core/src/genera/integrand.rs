//! The index integrand over a fixed component (or the whole manifold), with
//! coefficients Laurent polynomials in the circle variable `u` and a
//! denominator kept as a product of cyclotomic polynomials in `u`.

use std::collections::BTreeMap;

use crate::algebra::{
    cyclotomic_polynomial, divisors, int, rat, Field, LaurentPoly, NilPoly, Rational, RationalFunction, Ring,
};
use crate::error::{Error, Result};
use crate::genera::bundle::{ERoot, KClass, RootSystem};
use crate::genera::series::{genus_coeffs, BaseKind};
use crate::spaces::SpaceModel;

pub type Coef<K> = LaurentPoly<K>;

/// Exponents of `Φ_k(u)` in a denominator.
pub type CycloDen = BTreeMap<u64, u32>;

/// `num / Π Φ_k(u)^{a_k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fraction<K> {
    pub num: LaurentPoly<K>,
    pub den: CycloDen,
}

impl<K: Field> Fraction<K> {
    pub fn constant(c: K) -> Self {
        Self { num: LaurentPoly::constant(c), den: CycloDen::new() }
    }

    /// The denominator as a polynomial.
    pub fn den_poly(&self) -> LaurentPoly<K> {
        den_poly(&self.den)
    }

    pub fn to_rational_function(&self) -> RationalFunction<K> {
        RationalFunction::new(self.num.clone(), self.den_poly())
    }

    /// Adds fractions over the least common multiple of their denominators.
    pub fn sum(parts: &[Fraction<K>]) -> RationalFunction<K> {
        let mut lcm = CycloDen::new();
        for p in parts {
            for (k, a) in &p.den {
                let e = lcm.entry(*k).or_insert(0);
                *e = (*e).max(*a);
            }
        }
        let mut num = LaurentPoly::zero();
        for p in parts {
            let mut cof = CycloDen::new();
            for (k, a) in &lcm {
                let have = p.den.get(k).copied().unwrap_or(0);
                if *a > have {
                    cof.insert(*k, a - have);
                }
            }
            num = num.add(&p.num.mul(&den_poly(&cof)));
        }
        RationalFunction::new(num, den_poly(&lcm))
    }
}

fn den_poly<K: Field>(den: &CycloDen) -> LaurentPoly<K> {
    let mut p = LaurentPoly::one();
    for (k, a) in den {
        let phi: LaurentPoly<K> = cyclotomic_polynomial(*k).map(K::from_rational);
        p = p.mul(&phi.pow(*a));
    }
    p
}

/// An integrand `num / den` over one component.
#[derive(Clone, Debug)]
pub struct Integrand<K> {
    pub num: NilPoly<Coef<K>>,
    pub den: CycloDen,
}

impl<K: Field> Integrand<K> {
    pub fn mul_num(&self, other: &NilPoly<Coef<K>>) -> Self {
        Self { num: self.num.mul(other), den: self.den.clone() }
    }

    pub fn integrate(&self, y: &SpaceModel) -> Fraction<K> {
        Fraction { num: y.integrate(&self.num), den: self.den.clone() }
    }
}

fn lift<K: Field>(p: &NilPoly<Rational>) -> NilPoly<Coef<K>> {
    p.map(|c| LaurentPoly::constant(K::from_rational(c)))
}

/// `y^b` in `K`.
pub fn y_power<K: Field>(y: Option<&K>, b: i64) -> Result<K> {
    if b == 0 {
        return Ok(K::one());
    }
    let y = y.ok_or_else(|| Error::Precondition("bundle involves y but the genus has no y parameter".into()))?;
    if b > 0 {
        Ok(y.pow(b as u32))
    } else {
        let inv = y.try_inv().ok_or_else(|| Error::Precondition("y is not invertible".into()))?;
        Ok(inv.pow((-b) as u32))
    }
}

/// Evaluates `Σ n_L e^{c_L} u^{w_L} y^{b_L}` over the `q⁰` part of `class`.
pub fn chern<K: Field>(y: &SpaceModel, class: &KClass, yval: Option<&K>) -> Result<NilPoly<Coef<K>>> {
    let ring = y.ring();
    let mut by_form: BTreeMap<&Vec<i64>, Coef<K>> = BTreeMap::new();
    for (key, n) in class.terms() {
        if key.q != 0 {
            continue;
        }
        let c = y_power(yval, key.y)?.scale(&int(n));
        by_form.entry(&key.root.form).or_insert_with(LaurentPoly::zero).add_term(key.root.weight, &c);
    }
    let mut out = NilPoly::zero(ring);
    for (form, scalar) in by_form {
        if scalar.is_zero() {
            continue;
        }
        let e = y.class::<Rational>(form).exp()?;
        out = out.add(&lift::<K>(&e).mul_scalar(&scalar));
    }
    Ok(out)
}

fn eval_series<K: Field>(coeffs: &[K], x: &NilPoly<Coef<K>>) -> NilPoly<Coef<K>> {
    let ring = x.spec().clone();
    let mut acc = NilPoly::zero(&ring);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(&NilPoly::scalar(&ring, LaurentPoly::constant(c.clone())));
    }
    acc
}

fn count<'a>(roots: impl Iterator<Item = &'a ERoot>) -> BTreeMap<&'a ERoot, u32> {
    let mut m = BTreeMap::new();
    for r in roots {
        *m.entry(r).or_insert(0) += 1;
    }
    m
}

/// The genus integrand: characteristic series over roots of weight zero and
/// the equivariant factor `h(e^{-c} u^{-m})` over roots of weight `m ≠ 0`.
pub fn base_integrand<K: Field>(
    y: &SpaceModel,
    rs: &RootSystem,
    kind: BaseKind,
    yval: Option<&K>,
) -> Result<Integrand<K>> {
    let ring = y.ring();
    let depth = (ring.cap() / 2) as usize;
    let coeffs = genus_coeffs::<K>(kind, yval, depth)?;
    let g0 = coeffs[0].clone();
    let one = NilPoly::<Coef<K>>::one(ring);

    if let Some(rank) = rs.oriented_rank {
        if kind.needs_complex() {
            return Err(Error::Precondition(format!("{kind:?} needs a complex model")));
        }
        // Trivial Pontrjagin class: each of the rank/2 roots contributes g(0).
        let c = g0.pow(rank / 2);
        return Ok(Integrand { num: NilPoly::scalar(ring, LaurentPoly::constant(c)), den: CycloDen::new() });
    }

    let mut num = one.clone();
    let mut den = CycloDen::new();

    for (root, mult) in count(rs.positive.iter().filter(|r| r.weight == 0)) {
        let x = lift::<K>(&y.class(&root.form));
        num = num.mul(&eval_series(&coeffs, &x).pow(mult));
    }
    for (root, mult) in count(rs.negative.iter()) {
        if root.weight != 0 {
            return Err(Error::Inconsistent("virtual roots with nonzero weight".into()));
        }
        let x = lift::<K>(&y.class(&root.form));
        num = num.mul(&eval_series(&coeffs, &x).invert()?.pow(mult));
    }
    if rs.trivial > 0 {
        let inv = g0.try_inv().ok_or_else(|| Error::Precondition("characteristic series vanishes at 0".into()))?;
        num = num.mul_scalar(&LaurentPoly::constant(inv.pow(rs.trivial)));
    }

    for (root, mult) in count(rs.positive.iter().filter(|r| r.weight != 0)) {
        let (f, e) = normal_factor(y, root, kind, yval, depth)?;
        num = num.mul(&f.pow(mult));
        for k in divisors(e.unsigned_abs()) {
            *den.entry(k).or_insert(0) += (depth as u32 + 1) * mult;
        }
    }
    Ok(Integrand { num, den })
}

/// Numerator of `h(t)`, `t = e^{-c} u^{-e}`, over the denominator `(u^{|e|} - 1)^{depth+1}`.
fn normal_factor<K: Field>(
    y: &SpaceModel,
    root: &ERoot,
    kind: BaseKind,
    yval: Option<&K>,
    depth: usize,
) -> Result<(NilPoly<Coef<K>>, i64)> {
    let ring = y.ring();
    let e = root.weight;
    let c = y.class::<Rational>(&root.form);
    let big_e = lift::<K>(&c.neg().exp()?);
    let one = NilPoly::<Coef<K>>::one(ring);
    let mono = |k: i64| NilPoly::scalar(ring, LaurentPoly::<K>::var_pow(k));
    let t = big_e.mul(&mono(-e));

    // 1/(1 - t) = Σ_k (-R)^k s^{k+1} P^{depth-k} / P^{depth+1}
    // with B0 = 1 - u^{-e} = s^{-1} P, R = -u^{-e} n, n = e^{-c} - 1.
    let n = big_e.sub(&one);
    let minus_r = n.mul(&mono(-e));
    let s: Coef<K> = if e > 0 { LaurentPoly::var_pow(e) } else { LaurentPoly::constant(K::one().neg()) };
    let p: Coef<K> = LaurentPoly::from_terms([(e.abs(), K::one()), (0, K::one().neg())]);
    let mut geo = NilPoly::zero(ring);
    let mut rk = one.clone();
    for k in 0..=depth {
        if rk.is_zero() {
            break;
        }
        let scalar = s.pow(k as u32 + 1).mul(&p.pow((depth - k) as u32));
        geo = geo.add(&rk.mul_scalar(&scalar));
        rk = rk.mul(&minus_r);
    }

    let numer = match kind {
        BaseKind::Todd => one,
        BaseKind::Signature => one.add(&t),
        BaseKind::ChiY => {
            let yv = yval.ok_or_else(|| Error::Invalid("chi_y needs a value or formal y".into()))?;
            one.add(&t.mul_scalar(&LaurentPoly::constant(yv.clone())))
        }
        BaseKind::AHat => {
            if e % 2 != 0 {
                return Err(Error::Precondition(
                    "odd weight in the A-hat local datum; the cover index must be even".into(),
                ));
            }
            lift::<K>(&c.scale(&rat(-1, 2)).exp()?).mul(&mono(-e / 2))
        }
    };
    Ok((numer.mul(&geo), e))
}
