//! Power series in `q` truncated at a fixed order.

use std::fmt;

use crate::algebra::{Rational, Ring};

/// `c_0 + c_1 q + … + c_Q q^Q`, computed modulo `q^{Q+1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct QSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> QSeries<R> {
    /// Pads or truncates `coeffs` to length `order + 1`.
    pub fn new(order: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.resize(order + 1, R::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn constant(order: usize, c: R) -> Self {
        Self::new(order, vec![c])
    }

    /// `c · q^k`, or zero when `k` exceeds the order.
    pub fn monomial(order: usize, c: R, k: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(order, self.coeffs.iter().take(order + 1).cloned().collect())
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "q-series of different orders");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(R::neg).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.coeffs.len();
        let mut out = vec![R::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self { coeffs: out }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.scale(q)).collect() }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> QSeries<S> {
        QSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Multiplicative inverse when the constant term is a unit.
    pub fn try_inv(&self) -> Option<Self> {
        let c0 = self.coeffs[0].try_inv()?;
        let n = self.coeffs.len();
        let mut out = vec![R::zero(); n];
        out[0] = c0.clone();
        for k in 1..n {
            let mut acc = R::zero();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out[k] = acc.mul(&c0).neg();
        }
        Some(Self { coeffs: out })
    }
}

impl<R: Ring + fmt::Display> fmt::Display for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = c.to_string();
            let cs =
                if cs.contains([' ', '+']) || cs.chars().skip(1).any(|ch| ch == '-') { format!("({cs})") } else { cs };
            match k {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "{cs}*q")?,
                _ => write!(f, "{cs}*q^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.coeffs.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn s(c: &[i64]) -> QSeries<Rational> {
        QSeries::new(c.len() - 1, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn product_truncates() {
        let a = s(&[1, 1, 0]);
        assert_eq!(a.mul(&a), s(&[1, 2, 1]));
        assert_eq!(a.mul(&a).mul(&a), s(&[1, 3, 3]));
    }

    #[test]
    fn inverse_of_one_minus_q() {
        let a = s(&[1, -1, 0, 0]);
        assert_eq!(a.try_inv().unwrap(), s(&[1, 1, 1, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(s(&[1, 0, -2]).to_string(), "1 + -2*q^2 + O(q^3)");
    }
}
