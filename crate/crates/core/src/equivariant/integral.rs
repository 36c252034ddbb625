use crate::algebra::{int, LaurentPoly, NilPoly, Rational, RationalFunction, Ring, VarZ};
use crate::equivariant::action::CircleAction;
use crate::error::{Error, Result};

/// Rational functions in the generator `z` of `H*(BS¹)`.
pub type ZFunction = RationalFunction<Rational, VarZ>;

/// An equivariant class on `M`, given by its restrictions to the fixed components.
#[derive(Clone, Debug, PartialEq)]
pub enum EquivClass {
    Const(Rational),
    Z,
    /// Equivariant hyperplane class with lift `s`: restricts to `x_Y + (s - w_Y)·z`.
    Hyperplane {
        lift: i64,
    },
    /// Equivariant Chern class `c_k` of the tangent bundle.
    Chern(u32),
    /// Equivariant Euler class of the tangent bundle.
    Euler,
    Sum(Vec<EquivClass>),
    Prod(Vec<EquivClass>),
    Pow(Box<EquivClass>, u32),
}

type ZClass = NilPoly<ZFunction>;

fn zlin(c: i64) -> ZFunction {
    ZFunction::from_poly(LaurentPoly::monomial(int(c), 1))
}

fn lift(p: &NilPoly<Rational>) -> ZClass {
    p.map(|c| ZFunction::constant(c.clone()))
}

/// `e_k` of the restricted tangent roots.
fn chern_class(a: &CircleAction, i: usize, k: u32) -> ZClass {
    let comp = &a.components()[i];
    let y = &comp.space;
    let mut e = vec![ZClass::one(y.ring())];
    for r in &comp.roots {
        let root = lift(&y.class(&r.form)).add(&ZClass::scalar(y.ring(), zlin(r.weight)));
        let mut next = e.clone();
        next.push(ZClass::zero(y.ring()));
        for j in 1..next.len() {
            next[j] = next[j].add(&e[j - 1].mul(&root));
        }
        e = next;
    }
    e.get(k as usize).cloned().unwrap_or_else(|| ZClass::zero(y.ring()))
}

fn restrict(a: &CircleAction, i: usize, v: &EquivClass) -> Result<ZClass> {
    let comp = &a.components()[i];
    let ring = comp.space.ring();
    Ok(match v {
        EquivClass::Const(c) => ZClass::scalar(ring, ZFunction::constant(c.clone())),
        EquivClass::Z => ZClass::scalar(ring, zlin(1)),
        EquivClass::Hyperplane { lift: s } => {
            let h =
                comp.hyperplane.first().ok_or_else(|| Error::Invalid("the model has no hyperplane class".into()))?;
            if a.space().ring().generators().len() != 1 {
                return Err(Error::Invalid("hyperplane classes need a model with one generator".into()));
            }
            lift(&comp.space.class(&h.form)).add(&ZClass::scalar(ring, zlin(h.weight + s)))
        }
        EquivClass::Chern(k) => chern_class(a, i, *k),
        EquivClass::Euler => chern_class(a, i, a.space().complex_dim()),
        EquivClass::Sum(v) => {
            let mut acc = ZClass::zero(ring);
            for t in v {
                acc = acc.add(&restrict(a, i, t)?);
            }
            acc
        }
        EquivClass::Prod(v) => {
            let mut acc = ZClass::one(ring);
            for t in v {
                acc = acc.mul(&restrict(a, i, t)?);
            }
            acc
        }
        EquivClass::Pow(b, e) => restrict(a, i, b)?.pow(*e),
    })
}

/// `∫_M v` by localization, with the contribution of each component.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivIntegral {
    pub local: Vec<ZFunction>,
    /// The sum, a polynomial in `z`.
    pub total: LaurentPoly<Rational>,
}

pub fn equivariant_integral(a: &CircleAction, v: &EquivClass) -> Result<EquivIntegral> {
    let mut local = Vec::new();
    for (i, comp) in a.components().iter().enumerate() {
        let y = &comp.space;
        let mut euler = ZClass::one(y.ring());
        for l in comp.normal() {
            euler = euler.mul(&lift(&y.class(&l.form)).add(&ZClass::scalar(y.ring(), zlin(l.weight))));
        }
        let integrand = restrict(a, i, v)?.mul(&euler.invert()?);
        local.push(y.integrate(&integrand));
    }
    let mut sum = ZFunction::zero();
    for f in &local {
        sum = sum.add(f);
    }
    let is_poly = sum.denom().len() == 1 && sum.numer().min_exp().is_none_or(|e| e >= 0);
    if !is_poly {
        return Err(Error::Inconsistent(format!("localization sum {} is not a polynomial in z", sum.render())));
    }
    let total = sum.numer().clone();
    Ok(EquivIntegral { local, total })
}

/// A product of `m` equivariant hyperplane classes whose local data vanish at all
/// but the last component: for `i < l`, `m_i + 1` factors are lifted to have weight
/// zero at `Y_i`; the remaining `m_l` factors have weight zero at `Y_l`.
pub fn h2_witness(a: &CircleAction) -> Result<EquivClass> {
    let Some(weights) = a.weights() else {
        return Err(Error::Precondition("the witness is built for linear actions on projective space".into()));
    };
    let mut distinct = weights.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut factors = Vec::new();
    let last = distinct.len() - 1;
    for (i, comp) in a.components().iter().enumerate() {
        let m_i = comp.space.complex_dim();
        let count = if i < last { m_i + 1 } else { m_i };
        for _ in 0..count {
            factors.push(EquivClass::Hyperplane { lift: distinct[i] });
        }
    }
    Ok(EquivClass::Prod(factors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::linear_cp_action;

    #[test]
    fn integral_of_one_vanishes() {
        let a = linear_cp_action(&[0, 1]).unwrap();
        let r = equivariant_integral(&a, &EquivClass::Const(int(1))).unwrap();
        assert!(r.total.is_zero());
        assert_eq!(r.local[0].render(), "z^-1");
    }

    #[test]
    fn euler_class_counts_fixed_points() {
        for w in [vec![0, 1, 2], vec![0, 0, 1], vec![3, -1, 3, 0]] {
            let a = linear_cp_action(&w).unwrap();
            let r = equivariant_integral(&a, &EquivClass::Euler).unwrap();
            assert_eq!(r.total, LaurentPoly::constant(int(w.len() as i64)));
        }
    }
}
