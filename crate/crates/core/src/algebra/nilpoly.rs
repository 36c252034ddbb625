//! Truncated graded polynomial rings with nilpotent generators.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::rational::factorial;
use crate::algebra::{Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub name: String,
    /// Real degree; always even and positive.
    pub degree: u32,
    /// `x^k = 0` for `k ≥ nilpotency`, when set.
    pub nilpotency: Option<u32>,
}

/// The monomial basis and multiplication table of a truncated ring
/// `Q[x_1, …, x_k] / (x_i^{n_i}, everything above the degree cap)`.
#[derive(Debug, PartialEq)]
pub struct RingSpec {
    generators: Vec<Generator>,
    cap: u32,
    monomials: Vec<Vec<u32>>,
    degrees: Vec<u32>,
    index: HashMap<Vec<u32>, usize>,
    table: Vec<Vec<Option<usize>>>,
}

impl RingSpec {
    pub fn new(generators: Vec<Generator>, cap: u32) -> Arc<Self> {
        for g in &generators {
            assert!(g.degree > 0 && g.degree % 2 == 0, "generator {} must have positive even degree", g.name);
        }
        let mut monomials = vec![vec![]];
        for g in &generators {
            let mut next = Vec::new();
            for m in &monomials {
                let used: u32 = m.iter().zip(&generators).map(|(e, h)| e * h.degree).sum();
                let mut e = 0;
                while used + e * g.degree <= cap && g.nilpotency.is_none_or(|n| e < n) {
                    let mut m2 = m.clone();
                    m2.push(e);
                    next.push(m2);
                    e += 1;
                }
            }
            monomials = next;
        }
        let degree_of = |m: &[u32]| m.iter().zip(&generators).map(|(e, g)| e * g.degree).sum::<u32>();
        monomials.sort_by_key(|m| (degree_of(m), std::cmp::Reverse(m.clone())));
        let degrees: Vec<u32> = monomials.iter().map(|m| degree_of(m)).collect();
        let index: HashMap<Vec<u32>, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let table = monomials
            .iter()
            .map(|a| {
                monomials
                    .iter()
                    .map(|b| {
                        let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        index.get(&prod).copied()
                    })
                    .collect()
            })
            .collect();
        Arc::new(Self { generators, cap, monomials, degrees, index, table })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn degree_of(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    fn render_monomial(&self, i: usize) -> String {
        let parts: Vec<String> = self.monomials[i]
            .iter()
            .zip(&self.generators)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| if *e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) })
            .collect();
        parts.join("*")
    }
}

/// An element of a [`RingSpec`] ring with coefficients in `S`.
#[derive(Clone, Debug)]
pub struct NilPoly<S> {
    spec: Arc<RingSpec>,
    coeffs: Vec<S>,
}

impl<S: Ring> NilPoly<S> {
    pub fn zero(spec: &Arc<RingSpec>) -> Self {
        Self { spec: spec.clone(), coeffs: vec![S::zero(); spec.len()] }
    }

    pub fn scalar(spec: &Arc<RingSpec>, c: S) -> Self {
        let mut p = Self::zero(spec);
        p.coeffs[0] = c;
        p
    }

    pub fn one(spec: &Arc<RingSpec>) -> Self {
        Self::scalar(spec, S::one())
    }

    /// `c` times the monomial with exponent vector `exps` (zero if it is truncated away).
    pub fn monomial(spec: &Arc<RingSpec>, exps: &[u32], c: S) -> Self {
        let mut p = Self::zero(spec);
        if let Some(i) = spec.index_of(exps) {
            p.coeffs[i] = c;
        }
        p
    }

    /// The `i`-th generator.
    pub fn gen(spec: &Arc<RingSpec>, i: usize) -> Self {
        let mut exps = vec![0; spec.generators.len()];
        exps[i] = 1;
        Self::monomial(spec, &exps, S::one())
    }

    /// `Σ a_i x_i` over the generators, from integer coefficients.
    pub fn linear(spec: &Arc<RingSpec>, coeffs: &[i64]) -> Self {
        let mut p = Self::zero(spec);
        for (i, &a) in coeffs.iter().enumerate() {
            if a != 0 {
                p = p.add(&Self::gen(spec, i).scale(&Rational::from_integer(a.into())));
            }
        }
        p
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: &[u32]) -> S {
        self.spec.index_of(exps).map_or_else(S::zero, |i| self.coeffs[i].clone())
    }

    pub fn constant_term(&self) -> &S {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    /// Highest degree carrying a nonzero coefficient (`None` for zero).
    pub fn degree(&self) -> Option<u32> {
        (0..self.coeffs.len()).rev().find(|&i| !self.coeffs[i].is_zero()).map(|i| self.spec.degrees[i])
    }

    /// Whether every nonzero term has exactly degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.coeffs.iter().enumerate().all(|(i, c)| c.is_zero() || self.spec.degrees[i] == d)
    }

    /// The degree-`d` part.
    pub fn component(&self, d: u32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if self.spec.degrees[i] == d { c.clone() } else { S::zero() })
            .collect();
        Self { spec: self.spec.clone(), coeffs }
    }

    fn same_ring(&self, other: &Self) {
        assert!(Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec, "NilPoly values from different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        Self { spec: self.spec.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_ring(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect();
        Self { spec: self.spec.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        Self { spec: self.spec.clone(), coeffs: self.coeffs.iter().map(S::neg).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut out = vec![S::zero(); self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if let Some(k) = self.spec.table[i][j] {
                    out[k] = out[k].add(&a.mul(b));
                }
            }
        }
        Self { spec: self.spec.clone(), coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.spec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self { spec: self.spec.clone(), coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect() }
    }

    pub fn mul_scalar(&self, s: &S) -> Self {
        Self { spec: self.spec.clone(), coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect() }
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> NilPoly<T> {
        NilPoly { spec: self.spec.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// `Σ c^k / k!`, finite because `c` has no constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("exponential needs a zero constant term".into()));
        }
        let mut acc = Self::one(&self.spec);
        let mut power = Self::one(&self.spec);
        let mut k = 1u32;
        loop {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power.scale(&Rational::from_integer(factorial(k)).recip()));
            k += 1;
        }
        Ok(acc)
    }

    /// Multiplicative inverse, via the geometric series in the nilpotent part.
    pub fn invert(&self) -> Result<Self> {
        let a0 =
            self.coeffs[0].try_inv().ok_or_else(|| Error::Precondition("constant term is not invertible".into()))?;
        // self = a0 (1 + n), inverse = a0^{-1} Σ (-n)^k
        let n = self.mul_scalar(&a0).sub(&Self::one(&self.spec)).neg();
        let mut acc = Self::one(&self.spec);
        let mut power = Self::one(&self.spec);
        loop {
            power = power.mul(&n);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.mul_scalar(&a0))
    }

    pub fn render(&self) -> String
    where
        S: fmt::Display,
    {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            let m = self.spec.render_monomial(i);
            parts.push(match (m.is_empty(), cs.as_str()) {
                (true, _) => cs,
                (false, "1") => m,
                (false, "-1") => format!("-{m}"),
                _ => format!("{cs}*{m}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl<S: Ring> PartialEq for NilPoly<S> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec) && self.coeffs == other.coeffs
    }
}

impl<S: Ring + fmt::Display> fmt::Display for NilPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn one_gen(nil: u32, cap: u32) -> Arc<RingSpec> {
        RingSpec::new(vec![Generator { name: "x".into(), degree: 2, nilpotency: Some(nil) }], cap)
    }

    #[test]
    fn exp_truncates_at_cap() {
        let r = one_gen(3, 4);
        let x = NilPoly::<Rational>::gen(&r, 0);
        let e = x.exp().unwrap();
        assert_eq!(e.coeffs(), &[int(1), int(1), rat(1, 2)]);
        assert!(NilPoly::<Rational>::zero(&r).exp().unwrap() == NilPoly::one(&r));
    }

    #[test]
    fn exp_of_two_generators() {
        let r = RingSpec::new(
            vec![
                Generator { name: "x".into(), degree: 2, nilpotency: Some(2) },
                Generator { name: "u".into(), degree: 2, nilpotency: Some(2) },
            ],
            4,
        );
        let x = NilPoly::<Rational>::gen(&r, 0);
        let u = NilPoly::<Rational>::gen(&r, 1);
        let lhs = x.add(&u).exp().unwrap();
        let rhs = NilPoly::one(&r).add(&x).add(&u).add(&x.mul(&u));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_rejects_constant_term() {
        let r = one_gen(3, 4);
        assert!(NilPoly::<Rational>::one(&r).exp().is_err());
    }

    #[test]
    fn invert_examples() {
        let r = one_gen(3, 4);
        let x = NilPoly::<Rational>::gen(&r, 0);
        let one = NilPoly::one(&r);
        assert_eq!(one.invert().unwrap(), one);
        let a = one.sub(&x);
        assert_eq!(a.invert().unwrap().coeffs(), &[int(1), int(1), int(1)]);
        let b = NilPoly::scalar(&r, int(2)).add(&x);
        assert_eq!(b.invert().unwrap().coeffs(), &[rat(1, 2), rat(-1, 4), rat(1, 8)]);
        assert!(x.invert().is_err());
    }

    #[test]
    fn render_terms() {
        let r = one_gen(3, 4);
        let x = NilPoly::<Rational>::gen(&r, 0);
        let p = NilPoly::scalar(&r, int(2)).add(&x.scale(&int(3))).add(&x.mul(&x).scale(&rat(3, 2)));
        assert_eq!(p.to_string(), "2 + 3*x + 3/2*x^2");
    }
}
