//! Model manifolds: truncated cohomology ring, integration, and tangent data.

use std::sync::Arc;

use crate::algebra::{int, Generator, NilPoly, Rational, Ring, RingSpec};
use crate::error::{Error, Result};

/// Stable Chern roots of a complex model, as integer linear forms in the
/// degree-2 generators.
#[derive(Clone, Debug, PartialEq)]
pub struct RootData {
    pub positive: Vec<Vec<i64>>,
    /// Roots of the virtual subtrahend.
    pub negative: Vec<Vec<i64>>,
    /// Number of trivial complex lines added to make the roots stable.
    pub trivial: u32,
}

impl RootData {
    /// `|positive| - |negative|`.
    pub fn virtual_rank(&self) -> i64 {
        self.positive.len() as i64 - self.negative.len() as i64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrientedData {
    /// Always 1 here; nontrivial Pontrjagin data is not modelled.
    pub pontrjagin: NilPoly<Rational>,
    pub euler: NilPoly<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Tangent {
    Complex(RootData),
    Oriented(OrientedData),
}

/// A closed manifold described by its characteristic data.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceModel {
    name: String,
    real_dim: u32,
    ring: Arc<RingSpec>,
    top: Vec<u32>,
    normalization: Rational,
    tangent: Tangent,
}

const NAME_POOL: [&str; 8] = ["x", "y", "w", "v", "s", "t", "r", "p"];

fn linear_gen(name: &str, nilpotency: u32) -> Generator {
    Generator { name: name.into(), degree: 2, nilpotency: Some(nilpotency) }
}

impl SpaceModel {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn real_dim(&self) -> u32 {
        self.real_dim
    }

    /// Complex dimension (half the real dimension).
    pub fn complex_dim(&self) -> u32 {
        self.real_dim / 2
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn tangent(&self) -> &Tangent {
        &self.tangent
    }

    pub fn is_complex(&self) -> bool {
        matches!(self.tangent, Tangent::Complex(_))
    }

    pub fn roots(&self) -> Result<&RootData> {
        match &self.tangent {
            Tangent::Complex(r) => Ok(r),
            Tangent::Oriented(_) => Err(Error::Precondition(format!("{} is not a complex model", self.name))),
        }
    }

    /// Coefficient of the top monomial times the normalization.
    pub fn integrate<S: Ring>(&self, p: &NilPoly<S>) -> S {
        p.coeff(&self.top).scale(&self.normalization)
    }

    /// The class of an integer linear form in the degree-2 generators.
    pub fn class<S: Ring>(&self, form: &[i64]) -> NilPoly<S> {
        NilPoly::linear(&self.ring, form)
    }

    /// `c₁` as a linear form.
    pub fn c1(&self) -> Result<Vec<i64>> {
        let r = self.roots()?;
        let mut c = vec![0i64; self.ring.generators().len()];
        for root in &r.positive {
            for (a, b) in c.iter_mut().zip(root) {
                *a += b;
            }
        }
        for root in &r.negative {
            for (a, b) in c.iter_mut().zip(root) {
                *a -= b;
            }
        }
        Ok(c)
    }

    /// Renders a linear form such as `2x + 3y`.
    pub fn render_form(&self, form: &[i64]) -> String {
        self.class::<Rational>(form).to_string().replace('*', "")
    }

    /// Total Chern class of the stable tangent bundle.
    pub fn total_chern(&self) -> Result<NilPoly<Rational>> {
        let r = self.roots()?;
        let one = NilPoly::<Rational>::one(&self.ring);
        let mut c = one.clone();
        for root in &r.positive {
            c = c.mul(&one.add(&self.class(root)));
        }
        for root in &r.negative {
            c = c.mul(&one.add(&self.class(root)).invert()?);
        }
        Ok(c)
    }

    /// Top Chern class for complex models, the stored euler class otherwise.
    pub fn euler_class(&self) -> Result<NilPoly<Rational>> {
        match &self.tangent {
            Tangent::Complex(_) => Ok(self.total_chern()?.component(self.real_dim)),
            Tangent::Oriented(o) => Ok(o.euler.clone()),
        }
    }

    pub fn euler_characteristic(&self) -> Result<Rational> {
        Ok(self.integrate(&self.euler_class()?))
    }

    /// Whether `c₁ ≡ 0 mod n` in the integral generator basis.
    pub fn is_c1_divisible(&self, n: i64) -> Result<bool> {
        if n < 1 {
            return Err(Error::Invalid(format!("divisor must be positive, got {n}")));
        }
        Ok(self.c1()?.iter().all(|a| a % n == 0))
    }

    /// The one-point space.
    pub fn point() -> Self {
        Self {
            name: "pt".into(),
            real_dim: 0,
            ring: RingSpec::new(vec![], 0),
            top: vec![],
            normalization: int(1),
            tangent: Tangent::Complex(RootData { positive: vec![], negative: vec![], trivial: 0 }),
        }
    }

    /// Complex projective space `CP^n`.
    pub fn cp(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("cp(0) is a point; use point()".into()));
        }
        Ok(Self {
            name: format!("CP{n}"),
            real_dim: 2 * n,
            ring: RingSpec::new(vec![linear_gen("x", n + 1)], 2 * n),
            top: vec![n],
            normalization: int(1),
            tangent: Tangent::Complex(RootData {
                positive: vec![vec![1]; n as usize + 1],
                negative: vec![],
                trivial: 1,
            }),
        })
    }

    /// A degree-`d` hypersurface in `CP^{m+1}`, integrated by pushforward.
    pub fn hypersurface(m: u32, d: u32) -> Result<Self> {
        if m == 0 || d == 0 {
            return Err(Error::Invalid(format!("hypersurface needs m, d >= 1 (got m={m}, d={d})")));
        }
        Ok(Self {
            name: format!("X{d}⊂CP{}", m + 1),
            real_dim: 2 * m,
            ring: RingSpec::new(vec![linear_gen("x", m + 1)], 2 * m),
            top: vec![m],
            normalization: int(d as i64),
            tangent: Tangent::Complex(RootData {
                positive: vec![vec![1]; m as usize + 2],
                negative: vec![vec![d as i64]],
                trivial: 1,
            }),
        })
    }

    /// The sphere `S^{2n}` as an oriented model.
    pub fn even_sphere(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("even_sphere needs n >= 1".into()));
        }
        let ring = RingSpec::new(vec![Generator { name: "u".into(), degree: 2 * n, nilpotency: Some(2) }], 2 * n);
        let u = NilPoly::<Rational>::gen(&ring, 0);
        Ok(Self {
            name: format!("S{}", 2 * n),
            real_dim: 2 * n,
            top: vec![1],
            normalization: int(1),
            tangent: Tangent::Oriented(OrientedData { pontrjagin: NilPoly::one(&ring), euler: u.scale(&int(2)) }),
            ring,
        })
    }

    /// Cartesian product with the Künneth ring.
    pub fn product(a: &Self, b: &Self) -> Result<Self> {
        if a.real_dim == 0 {
            return Ok(b.clone());
        }
        if b.real_dim == 0 {
            return Ok(a.clone());
        }
        if a.is_complex() != b.is_complex() {
            return Err(Error::Precondition(format!(
                "cannot multiply complex and oriented-only models ({} × {})",
                a.name, b.name
            )));
        }
        let mut gens: Vec<Generator> = a.ring.generators().to_vec();
        for g in b.ring.generators() {
            let mut g = g.clone();
            if gens.iter().any(|h| h.name == g.name) {
                g.name = NAME_POOL
                    .iter()
                    .map(|s| s.to_string())
                    .chain((1..).map(|i| format!("x{i}")))
                    .find(|cand| gens.iter().chain(b.ring.generators()).all(|h| &h.name != cand))
                    .unwrap();
            }
            gens.push(g);
        }
        let ring = RingSpec::new(gens, a.ring.cap() + b.ring.cap());
        let na = a.ring.generators().len();
        let nb = b.ring.generators().len();
        let widen = |form: &Vec<i64>, left: bool| -> Vec<i64> {
            if left {
                form.iter().copied().chain(std::iter::repeat_n(0, nb)).collect()
            } else {
                std::iter::repeat_n(0, na).chain(form.iter().copied()).collect()
            }
        };
        let tangent = match (&a.tangent, &b.tangent) {
            (Tangent::Complex(ra), Tangent::Complex(rb)) => Tangent::Complex(RootData {
                positive: ra
                    .positive
                    .iter()
                    .map(|f| widen(f, true))
                    .chain(rb.positive.iter().map(|f| widen(f, false)))
                    .collect(),
                negative: ra
                    .negative
                    .iter()
                    .map(|f| widen(f, true))
                    .chain(rb.negative.iter().map(|f| widen(f, false)))
                    .collect(),
                trivial: ra.trivial + rb.trivial,
            }),
            (Tangent::Oriented(oa), Tangent::Oriented(ob)) => {
                let ea = embed(&oa.euler, &ring, 0);
                let eb = embed(&ob.euler, &ring, na);
                Tangent::Oriented(OrientedData { pontrjagin: NilPoly::one(&ring), euler: ea.mul(&eb) })
            }
            _ => unreachable!(),
        };
        Ok(Self {
            name: format!("{}×{}", a.name, b.name),
            real_dim: a.real_dim + b.real_dim,
            top: a.top.iter().chain(&b.top).copied().collect(),
            normalization: &a.normalization * &b.normalization,
            tangent,
            ring,
        })
    }
}

/// Copies `p` into a larger ring whose generators start at `offset`.
fn embed(p: &NilPoly<Rational>, ring: &Arc<RingSpec>, offset: usize) -> NilPoly<Rational> {
    let mut out = NilPoly::zero(ring);
    let total = ring.generators().len();
    for (m, c) in p.spec().monomials().iter().zip(p.coeffs()) {
        if c.is_zero() {
            continue;
        }
        let mut exps = vec![0u32; total];
        exps[offset..offset + m.len()].copy_from_slice(m);
        out = out.add(&NilPoly::monomial(ring, &exps, c.clone()));
    }
    out
}
