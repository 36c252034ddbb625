//! Laurent polynomials in one variable over an arbitrary scalar ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::ring::ring_ops;
use crate::algebra::{Field, Rational, Ring};

/// A finite sum `Σ c_e · v^e` with integer (possibly negative) exponents.
///
/// Zero coefficients are never stored. The variable name is not part of the
/// value; it is supplied when rendering.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPoly<R> {
    terms: BTreeMap<i64, R>,
}

impl<R: Ring> LaurentPoly<R> {
    pub fn from_terms<I: IntoIterator<Item = (i64, R)>>(terms: I) -> Self {
        let mut p = Self { terms: BTreeMap::new() };
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn monomial(c: R, e: i64) -> Self {
        Self::from_terms([(e, c)])
    }

    /// The variable itself raised to `e`.
    pub fn var_pow(e: i64) -> Self {
        Self::monomial(R::one(), e)
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0)
    }

    /// Dense coefficient list read as `c[0] + c[1] v + c[2] v² + …`.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
    }

    pub fn add_term(&mut self, e: i64, c: &R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn coeff(&self, e: i64) -> R {
        self.terms.get(&e).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn lowest_coeff(&self) -> Option<&R> {
        self.terms.values().next()
    }

    pub fn leading_coeff(&self) -> Option<&R> {
        self.terms.values().next_back()
    }

    /// The constant value, when no non-zero exponent is present.
    pub fn as_constant(&self) -> Option<R> {
        match self.terms.len() {
            0 => Some(R::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale_by(&self, c: &R) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x.mul(c))))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> LaurentPoly<S> {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Substitutes `v ↦ v^k`.
    pub fn inflate(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn render(&self, var: &str) -> String
    where
        R: fmt::Display,
    {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mut cs = c.to_string();
            let negative = cs.starts_with('-') && !cs[1..].contains([' ', '+', '-']);
            if i > 0 {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            if negative {
                cs.remove(0);
            }
            let atomic = !cs.contains([' ', '+', '-']);
            let coeff = if atomic { cs } else { format!("({cs})") };
            match *e {
                0 => out.push_str(&coeff),
                _ => {
                    let power = if *e == 1 { var.to_string() } else { format!("{var}^{e}") };
                    if coeff == "1" {
                        out.push_str(&power);
                    } else {
                        out.push_str(&format!("{coeff}*{power}"));
                    }
                }
            }
        }
        out
    }
}

impl<R: Field> LaurentPoly<R> {
    /// Evaluates at a nonzero point (or any point if all exponents are ≥ 0).
    pub fn eval(&self, at: &R) -> Option<R> {
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 { at.pow(*e as u32) } else { at.try_inv()?.pow((-e) as u32) };
            acc = acc.add(&c.mul(&p));
        }
        Some(acc)
    }

    pub fn make_monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale_by(&lc.inv()),
            None => self.clone(),
        }
    }

    /// Division with remainder, both operands read as ordinary polynomials.
    ///
    /// Panics if either operand has a negative exponent or the divisor is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(self.min_exp().unwrap_or(0) >= 0 && divisor.min_exp().unwrap_or(0) >= 0);
        let dd = divisor.max_exp().expect("polynomial division by zero");
        let lc_inv = divisor.leading_coeff().unwrap().inv();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.max_exp() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coeff().unwrap().mul(&lc_inv);
            let k = rd - dd;
            for (e, dc) in &divisor.terms {
                rem.add_term(e + k, &dc.mul(&c).neg());
            }
            quot.add_term(k, &c);
        }
        (quot, rem)
    }

    /// Exact quotient `self / divisor` of polynomials, if the division leaves no remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_empty().then_some(q)
    }

    /// Monic greatest common divisor of two polynomials.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_empty() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.make_monic();
        }
        a.make_monic()
    }
}

impl<R: Ring> Ring for LaurentPoly<R> {
    fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &c.neg());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, &ca.mul(cb));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(R::from_rational(q))
    }
    fn try_inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some(Self::monomial(c.try_inv()?, -e))
    }
    fn scale(&self, q: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.scale(q))))
    }
}

ring_ops!(impl<R: Ring> for LaurentPoly<R>);

impl<R: Ring + fmt::Display> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("u"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn p(c: &[i64]) -> LaurentPoly<Rational> {
        LaurentPoly::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 0]);
        assert_eq!((a + b).len(), 1);
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (u-1)(u+2) and (u-1)(u-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.exact_div(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(a.exact_div(&p(&[2, 1])), None);
    }

    #[test]
    fn eval_with_negative_exponents() {
        let f = LaurentPoly::from_terms([(-1, int(1)), (1, int(1))]);
        assert_eq!(f.eval(&int(2)), Some(rat(5, 2)));
    }

    #[test]
    fn render_signs() {
        let f = LaurentPoly::from_terms([(0, int(1)), (1, int(-1))]);
        assert_eq!(f.render("y"), "1 - y");
        let g = LaurentPoly::from_terms([(-1, rat(1, 2)), (2, int(3))]);
        assert_eq!(g.render("u"), "1/2*u^-1 + 3*u^2");
    }
}
