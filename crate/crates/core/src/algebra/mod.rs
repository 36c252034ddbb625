//! Exact scalar and symbolic arithmetic.

mod cyclotomic;
mod laurent;
mod nilpoly;
mod qseries;
mod ratfunc;
mod rational;
mod ring;

pub use cyclotomic::{cyclotomic_coeffs, cyclotomic_polynomial, CycNumber};
pub use laurent::LaurentPoly;
pub use nilpoly::{Generator, NilPoly, RingSpec};
pub use qseries::QSeries;
pub use ratfunc::{RationalFunction, VarName, VarU, VarY, VarZ, YFunction};
pub use rational::{
    binomial, divisors, euler_phi, factorial, format_rational, gcd_i64, int, is_negative, lcm_u64, parse_rational, rat,
    to_integer, Rational,
};
pub use ring::{Field, Ring};

/// `rf_is_constant`: the constant value of a reduced rational function, if it is one.
pub fn rf_is_constant<F: Field, V: VarName>(f: &RationalFunction<F, V>) -> Option<F> {
    f.as_constant()
}

/// `rf_limit_at_infinity`: the limit as the variable grows, when finite.
pub fn rf_limit_at_infinity<F: Field, V: VarName>(f: &RationalFunction<F, V>) -> Option<F> {
    f.limit_at_infinity()
}

/// `nil_exp`: exponential of a class with zero constant term.
pub fn nil_exp<S: Ring>(c: &NilPoly<S>) -> crate::Result<NilPoly<S>> {
    c.exp()
}

/// `nil_invert`: inverse of a class with invertible constant term.
pub fn nil_invert<S: Ring>(c: &NilPoly<S>) -> crate::Result<NilPoly<S>> {
    c.invert()
}
