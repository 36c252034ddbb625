//! Characteristic power series of the multiplicative genera.

use crate::algebra::{factorial, int, rat, Field, Rational, Ring};
use crate::error::{Error, Result};

/// The genera that have a characteristic series `g(x) = x·h(e^{-x})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    /// `h(t) = (1+t)/(1-t)`
    Signature,
    /// `h(t) = t^{1/2}/(1-t)`
    AHat,
    /// `h(t) = 1/(1-t)`
    Todd,
    /// `h(t) = (1+yt)/(1-t)`
    ChiY,
}

impl BaseKind {
    pub fn needs_complex(self) -> bool {
        matches!(self, BaseKind::Todd | BaseKind::ChiY)
    }
}

/// `x/(1-e^{-x})` through `x^n`.
fn todd_coeffs(n: usize) -> Vec<Rational> {
    // (1 - e^{-x})/x = Σ (-1)^k x^k/(k+1)!
    let d: Vec<Rational> = (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            int(sign) / Rational::from_integer(factorial(k as u32 + 1))
        })
        .collect();
    let mut inv = vec![int(0); n + 1];
    inv[0] = int(1);
    for k in 1..=n {
        let mut acc = int(0);
        for j in 1..=k {
            acc += &d[j] * &inv[k - j];
        }
        inv[k] = -acc;
    }
    inv
}

/// `e^{a x}` through `x^n`.
fn exp_coeffs(a: &Rational, n: usize) -> Vec<Rational> {
    (0..=n).map(|k| Ring::pow(a, k as u32) / Rational::from_integer(factorial(k as u32))).collect()
}

/// Coefficients `g_0, …, g_n` of `g(x)` for the given kind; `y` is required for `ChiY`.
pub fn genus_coeffs<K: Field>(kind: BaseKind, y: Option<&K>, n: usize) -> Result<Vec<K>> {
    let todd = todd_coeffs(n);
    let a: Vec<K> = match kind {
        BaseKind::Todd => vec![K::one()],
        BaseKind::Signature => {
            let mut e = exp_coeffs(&int(-1), n);
            e[0] = int(2);
            e.iter().map(K::from_rational).collect()
        }
        BaseKind::AHat => exp_coeffs(&rat(-1, 2), n).iter().map(K::from_rational).collect(),
        BaseKind::ChiY => {
            let y = y.ok_or_else(|| Error::Invalid("chi_y needs a value or formal y".into()))?;
            let mut e: Vec<K> = exp_coeffs(&int(-1), n).iter().map(|c| y.scale(c)).collect();
            e[0] = e[0].add(&K::one());
            e
        }
    };
    Ok((0..=n)
        .map(|k| {
            let mut acc = K::zero();
            for (j, aj) in a.iter().enumerate().take(k + 1) {
                acc = acc.add(&aj.scale(&todd[k - j]));
            }
            acc
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn todd_series() {
        // x/(1-e^{-x}) = 1 + x/2 + x²/12 - x⁴/720
        assert_eq!(todd_coeffs(4), vec![int(1), rat(1, 2), rat(1, 12), int(0), rat(-1, 720)]);
    }

    #[test]
    fn signature_series_is_even() {
        // x(1+e^{-x})/(1-e^{-x}) = x coth(x/2) = 2 + x²/6 - x⁴/360
        let c = genus_coeffs::<Rational>(BaseKind::Signature, None, 4).unwrap();
        assert_eq!(c, vec![int(2), int(0), rat(1, 6), int(0), rat(-1, 360)]);
    }

    #[test]
    fn ahat_series_is_even() {
        let c = genus_coeffs::<Rational>(BaseKind::AHat, None, 4).unwrap();
        assert_eq!(c, vec![int(1), int(0), rat(-1, 24), int(0), rat(7, 5760)]);
    }
}
