//! Reduced quotients of Laurent polynomials in one variable.

use std::fmt;
use std::marker::PhantomData;

use crate::algebra::ring::ring_ops;
use crate::algebra::{Field, LaurentPoly, Rational, Ring};

/// Names the variable of a [`RationalFunction`] for display purposes.
pub trait VarName: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    const NAME: &'static str;
}

/// The circle variable `u` (with `λ = u^d`).
#[derive(Clone, PartialEq, Debug)]
pub struct VarU;
/// The formal genus parameter `y`.
#[derive(Clone, PartialEq, Debug)]
pub struct VarY;
/// The generator `z` of `H*(BS¹)`.
#[derive(Clone, PartialEq, Debug)]
pub struct VarZ;

impl VarName for VarU {
    const NAME: &'static str = "u";
}
impl VarName for VarY {
    const NAME: &'static str = "y";
}
impl VarName for VarZ {
    const NAME: &'static str = "z";
}

/// `num / den` in canonical form.
///
/// The denominator is an ordinary polynomial with nonzero constant term equal
/// to 1, and it shares no factor with the numerator. Powers of the variable
/// live in the numerator only, which may carry negative exponents. Canonical
/// form makes structural equality agree with equality of functions.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction<F, V = VarU> {
    num: LaurentPoly<F>,
    den: LaurentPoly<F>,
    var: PhantomData<V>,
}

/// Rational functions in the formal parameter `y` over the rationals.
pub type YFunction = RationalFunction<Rational, VarY>;

impl<F: Field, V: VarName> RationalFunction<F, V> {
    /// Builds and reduces `num / den`. Panics on a zero denominator.
    pub fn new(num: LaurentPoly<F>, den: LaurentPoly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let k = den.min_exp().unwrap();
        let (mut num, mut den) = (num.shift(-k), den.shift(-k));
        if den.len() > 1 {
            let lo = num.min_exp().unwrap();
            let num_poly = num.shift(-lo);
            if let Some(q) = num_poly.exact_div(&den) {
                num = q.shift(lo);
                den = LaurentPoly::one();
            } else {
                let g = num_poly.gcd(&den);
                if g.len() > 1 || g.max_exp() != Some(0) {
                    num = num_poly.exact_div(&g).expect("gcd divides").shift(lo);
                    den = den.exact_div(&g).expect("gcd divides");
                }
            }
        }
        let c = den.coeff(0).inv();
        Self { num: num.scale_by(&c), den: den.scale_by(&c), var: PhantomData }
    }

    pub fn from_poly(p: LaurentPoly<F>) -> Self {
        Self { num: p, den: LaurentPoly::one(), var: PhantomData }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::from_poly(LaurentPoly::var_pow(1))
    }

    pub fn numer(&self) -> &LaurentPoly<F> {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly<F> {
        &self.den
    }

    /// The scalar `c` if this function equals the constant `c`.
    pub fn as_constant(&self) -> Option<F> {
        if self.den.len() == 1 {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// `Some((k, c))` when the function is exactly `c · v^k`.
    pub fn as_monomial(&self) -> Option<(i64, F)> {
        if self.den.len() != 1 {
            return None;
        }
        match self.num.len() {
            0 => Some((0, F::zero())),
            1 => self.num.terms().next().map(|(e, c)| (e, c.clone())),
            _ => None,
        }
    }

    /// Limit as the variable tends to infinity, if finite.
    pub fn limit_at_infinity(&self) -> Option<F> {
        let Some(top) = self.num.max_exp() else {
            return Some(F::zero());
        };
        let dtop = self.den.max_exp().unwrap();
        match top.cmp(&dtop) {
            std::cmp::Ordering::Less => Some(F::zero()),
            std::cmp::Ordering::Equal => Some(self.num.leading_coeff().unwrap().div(self.den.leading_coeff().unwrap())),
            std::cmp::Ordering::Greater => None,
        }
    }

    /// Value at a point; `None` at a pole (or at zero when negative powers occur).
    pub fn eval(&self, at: &F) -> Option<F> {
        let d = self.den.eval(at)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(at)?.div(&d))
    }

    /// Substitutes `v ↦ v^k` for `k ≥ 1`.
    pub fn inflate(&self, k: i64) -> Self {
        assert!(k >= 1);
        Self { num: self.num.inflate(k), den: self.den.inflate(k), var: PhantomData }
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> RationalFunction<G, V> {
        RationalFunction::new(self.num.map(&f), self.den.map(&f))
    }

    pub fn render(&self) -> String
    where
        F: fmt::Display,
    {
        let n = self.num.render(V::NAME);
        if self.den.len() == 1 {
            return n;
        }
        let d = self.den.render(V::NAME);
        let wrap = |s: String| if s.contains([' ', '*']) { format!("({s})") } else { s };
        format!("{}/{}", wrap(n), wrap(d))
    }
}

impl<F: Field, V: VarName> Ring for RationalFunction<F, V> {
    fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        if other.den.len() == 1 {
            return Self::new(self.num.add(&other.num.mul(&self.den)), self.den.clone());
        }
        if self.den.len() == 1 {
            return Self::new(self.num.mul(&other.den).add(&other.num), other.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let a = other.den.exact_div(&g).unwrap();
        let b = self.den.exact_div(&g).unwrap();
        Self::new(self.num.mul(&a).add(&other.num.mul(&b)), self.den.mul(&a))
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.len() == 1 && other.den.len() == 1 {
            return Self::from_poly(self.num.mul(&other.num));
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone(), var: PhantomData }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(F::from_rational(q))
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()))
    }
    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(q), den: self.den.clone(), var: PhantomData }
    }
}

impl<F: Field, V: VarName> Field for RationalFunction<F, V> {}

ring_ops!(impl<F: Field, V: VarName> for RationalFunction<F, V>);

impl<F: Field + fmt::Display, V: VarName> fmt::Display for RationalFunction<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    type Rf = RationalFunction<Rational>;

    fn p(c: &[i64]) -> LaurentPoly<Rational> {
        LaurentPoly::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn identical_parts_reduce_to_one() {
        let f = Rf::new(p(&[-1, 0, 1]), p(&[-1, 0, 1]));
        assert_eq!(f.as_constant(), Some(int(1)));
    }

    #[test]
    fn non_constant_is_detected() {
        let f = Rf::new(p(&[0, 1]), p(&[-1, 1]));
        assert_eq!(f.as_constant(), None);
        assert_eq!(f.limit_at_infinity(), Some(int(1)));
    }

    #[test]
    fn limits_at_infinity() {
        // (1 + u^-1)/(1 - u^-1)
        let f = Rf::new(
            LaurentPoly::from_terms([(0, int(1)), (-1, int(1))]),
            LaurentPoly::from_terms([(0, int(1)), (-1, int(-1))]),
        );
        assert_eq!(f.limit_at_infinity(), Some(int(1)));
        let g = Rf::new(p(&[0, 0, 1]), p(&[-1, 1]));
        assert_eq!(g.limit_at_infinity(), None);
    }

    #[test]
    fn canonical_denominator() {
        let f = Rf::new(p(&[0, 2]), p(&[0, 0, 4, 2]));
        // 2u / (4u^2 + 2u^3) = u^-1 / (2 + u)
        assert_eq!(f.denom().coeff(0), int(1));
        assert_eq!(f.denom().min_exp(), Some(0));
        assert_eq!(f.numer(), &LaurentPoly::monomial(Rational::new(1.into(), 2.into()), -1));
    }

    #[test]
    fn inverse_and_eval() {
        let f = Rf::new(p(&[1, 1]), p(&[3, 0, 1]));
        assert!(f.mul(&f.inv()).is_one());
        assert_eq!(f.eval(&int(1)), Some(Rational::new(1.into(), 2.into())));
    }
}
