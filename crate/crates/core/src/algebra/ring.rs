//! Scalar-domain traits shared by every exact type in the engine.

use std::fmt::Debug;

use crate::algebra::Rational;

/// A commutative ring containing the rationals, with decidable equality.
///
/// Constants returned by [`Ring::zero`] and [`Ring::one`] are context free:
/// types that carry extra structure (a cyclotomic modulus, say) embed them on
/// first contact with a structured value.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_rational(q: &Rational) -> Self;

    /// Multiplicative inverse, when it exists in this ring.
    fn try_inv(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn scale(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Self {
        self.try_inv().expect("division by zero")
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

/// Implements the `std::ops` arithmetic traits for a type in terms of its
/// [`Ring`] methods, for both owned and borrowed operands.
macro_rules! ring_ops {
    (impl<$($g:ident : $b:path),*> for $t:ty) => {
        impl<$($g: $b),*> std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t { $crate::algebra::Ring::add(&self, &o) }
        }
        impl<'a, $($g: $b),*> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &'a $t) -> $t { $crate::algebra::Ring::add(self, o) }
        }
        impl<$($g: $b),*> std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t { $crate::algebra::Ring::sub(&self, &o) }
        }
        impl<'a, $($g: $b),*> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &'a $t) -> $t { $crate::algebra::Ring::sub(self, o) }
        }
        impl<$($g: $b),*> std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t { $crate::algebra::Ring::mul(&self, &o) }
        }
        impl<'a, $($g: $b),*> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, o: &'a $t) -> $t { $crate::algebra::Ring::mul(self, o) }
        }
        impl<$($g: $b),*> std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t { $crate::algebra::Ring::neg(&self) }
        }
        impl<'a, $($g: $b),*> std::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t { $crate::algebra::Ring::neg(self) }
        }
    };
    ($t:ty) => { ring_ops!(impl<> for $t); };
}
pub(crate) use ring_ops;

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn try_inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

impl Field for Rational {}
