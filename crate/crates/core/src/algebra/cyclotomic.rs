//! Exact arithmetic in cyclotomic fields `Q(ζ_d) = Q[x]/(Φ_d)`.

use std::fmt;

use crate::algebra::rational::{euler_phi, int, lcm_u64};
use crate::algebra::ring::ring_ops;
use crate::algebra::{Field, LaurentPoly, Rational, Ring};

/// Integer coefficients of the `d`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_coeffs(d: u64) -> Vec<i64> {
    assert!(d >= 1);
    // Φ_d = (x^d - 1) / Π_{k | d, k < d} Φ_k
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for k in 1..d {
        if d.is_multiple_of(k) {
            num = exact_div_int(&num, &cyclotomic_coeffs(k));
        }
    }
    num
}

/// `Φ_d` as a polynomial with rational coefficients.
pub fn cyclotomic_polynomial(d: u64) -> LaurentPoly<Rational> {
    LaurentPoly::from_coeffs(cyclotomic_coeffs(d).into_iter().map(int).collect())
}

fn exact_div_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "cyclotomic divisor must be monic");
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &dc) in den.iter().enumerate() {
            rem[k + i] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An element of `Q(ζ_d)` written in the power basis `1, ζ, …, ζ^{φ(d)-1}`.
///
/// Modulus 1 holds plain rationals. Values of different moduli combine in the
/// field of the least common multiple, so `ζ_3` and `-1` may be mixed freely.
#[derive(Clone, Debug)]
pub struct CycNumber {
    modulus: u64,
    coeffs: Vec<Rational>,
}

impl CycNumber {
    /// Builds `Σ c_i ζ_d^i` for any number of coefficients, reducing modulo `Φ_d`.
    pub fn new(modulus: u64, coeffs: Vec<Rational>) -> Self {
        assert!(modulus >= 1, "cyclotomic modulus must be positive");
        let phi = euler_phi(modulus) as usize;
        let mut v = Self { modulus, coeffs: vec![Rational::zero(); phi] };
        let mut full = coeffs;
        reduce_in_place(&mut full, modulus);
        for (i, c) in full.into_iter().enumerate().take(phi) {
            v.coeffs[i] = c;
        }
        v
    }

    pub fn rational(q: Rational) -> Self {
        Self { modulus: 1, coeffs: vec![q] }
    }

    /// `ζ_d^k` for any integer `k`.
    pub fn root_of_unity(d: u64, k: i64) -> Self {
        let e = k.rem_euclid(d as i64) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        Self::new(d, c)
    }

    /// The distinguished generator `ζ_d = e^{2πi/d}`.
    pub fn zeta(d: u64) -> Self {
        Self::root_of_unity(d, 1)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Re-expresses this value in `Q(ζ_m)`; `m` must be a multiple of the modulus.
    pub fn embed(&self, m: u64) -> Self {
        if m == self.modulus {
            return self.clone();
        }
        assert_eq!(m % self.modulus, 0, "cannot embed Q(ζ_{}) into Q(ζ_{m})", self.modulus);
        let step = (m / self.modulus) as usize;
        let mut c = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i * step] = x.clone();
        }
        Self::new(m, c)
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Ring::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = lcm_u64(self.modulus, other.modulus);
        (self.embed(m), other.embed(m))
    }

    fn as_poly(&self) -> LaurentPoly<Rational> {
        LaurentPoly::from_coeffs(self.coeffs.clone())
    }

    fn from_poly(modulus: u64, p: &LaurentPoly<Rational>) -> Self {
        let deg = p.max_exp().unwrap_or(0).max(0) as usize;
        let mut c = vec![Rational::zero(); deg + 1];
        for (e, x) in p.terms() {
            c[e as usize] = x.clone();
        }
        Self::new(modulus, c)
    }
}

/// Reduces a coefficient vector modulo `x^d - 1` and then modulo `Φ_d`.
fn reduce_in_place(c: &mut Vec<Rational>, d: u64) {
    let d = d as usize;
    if c.len() > d {
        for i in d..c.len() {
            let x = std::mem::take(&mut c[i]);
            c[i % d] += x;
        }
        c.truncate(d);
    }
    let phi_coeffs = cyclotomic_coeffs(d as u64);
    let phi = phi_coeffs.len() - 1;
    for top in (phi..c.len()).rev() {
        let lead = std::mem::take(&mut c[top]);
        if lead.is_zero() {
            continue;
        }
        for (i, &pc) in phi_coeffs.iter().enumerate().take(phi) {
            if pc != 0 {
                c[top - phi + i] -= &lead * Rational::from_integer(pc.into());
            }
        }
    }
    c.truncate(phi.max(1));
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Ring for CycNumber {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn one() -> Self {
        Self::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }
    fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        Self { modulus: a.modulus, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }
    fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        Self { modulus: a.modulus, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.modulus == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.modulus == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let (a, b) = self.common(other);
        let mut prod = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        Self::new(a.modulus, prod)
    }
    fn neg(&self) -> Self {
        Self { modulus: self.modulus, coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.modulus <= 2 {
            return Some(Self::rational(self.coeffs[0].recip()));
        }
        // Extended Euclid: s·a + t·Φ = 1 in Q[x].
        let phi = cyclotomic_polynomial(self.modulus);
        let (mut r0, mut r1) = (phi, self.as_poly());
        let (mut s0, mut s1) = (LaurentPoly::<Rational>::zero(), LaurentPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant since Φ_d is irreducible.
        let c = r0.as_constant()?;
        Some(Self::from_poly(self.modulus, &s0.scale(&c.recip())))
    }
    fn scale(&self, q: &Rational) -> Self {
        Self { modulus: self.modulus, coeffs: self.coeffs.iter().map(|x| x * q).collect() }
    }
}

impl Field for CycNumber {}

ring_ops!(CycNumber);

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        f.write_str(&self.as_poly().render(&format!("ζ{}", self.modulus)))
    }
}
