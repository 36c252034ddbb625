use crate::algebra::{lcm_u64, Rational};
use crate::error::{Error, Result};
use crate::genera::{ERoot, RootSystem};
use crate::spaces::{SpaceModel, Tangent};

/// A normal line `c + m·z` at a fixed component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedLine {
    pub form: Vec<i64>,
    pub weight: i64,
}

/// One connected component of the fixed set.
#[derive(Clone, Debug)]
pub struct FixedComponent {
    pub space: SpaceModel,
    /// The ambient stable tangent roots restricted here. Weight-zero roots are
    /// the roots of the component itself, the others span the normal bundle.
    pub roots: Vec<ERoot>,
    pub trivial: u32,
    /// Restriction of each ambient degree-2 generator.
    pub hyperplane: Vec<ERoot>,
}

impl FixedComponent {
    pub fn normal(&self) -> Vec<WeightedLine> {
        self.roots
            .iter()
            .filter(|r| r.weight != 0)
            .map(|r| WeightedLine { form: r.form.clone(), weight: r.weight })
            .collect()
    }

    pub fn codim(&self) -> u32 {
        2 * self.normal().len() as u32
    }
}

#[derive(Clone, Debug)]
pub struct CircleAction {
    space: SpaceModel,
    components: Vec<FixedComponent>,
    cover: u64,
    weights: Option<Vec<i64>>,
}

impl CircleAction {
    /// Checks dimensions and the Euler count `Σ χ(Y) = χ(M)`.
    pub fn new(space: SpaceModel, components: Vec<FixedComponent>, cover: u64) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Invalid("a circle action needs at least one fixed component".into()));
        }
        if cover == 0 {
            return Err(Error::Invalid("cover index must be positive".into()));
        }
        let Tangent::Complex(ambient) = space.tangent() else {
            return Err(Error::Precondition("circle actions need a complex model".into()));
        };
        let width = space.ring().generators().len();
        for (i, c) in components.iter().enumerate() {
            let width_y = c.space.ring().generators().len();
            if c.roots.len() != ambient.positive.len() || c.trivial != ambient.trivial {
                return Err(Error::Inconsistent(format!(
                    "component {i}: tangent roots do not match the ambient model"
                )));
            }
            if c.hyperplane.len() != width {
                return Err(Error::Inconsistent(format!("component {i}: wrong number of hyperplane restrictions")));
            }
            if c.roots.iter().chain(&c.hyperplane).any(|r| r.form.len() != width_y) {
                return Err(Error::Inconsistent(format!("component {i}: class has the wrong width")));
            }
            let own = c.roots.iter().filter(|r| r.weight == 0).count() as u32;
            if own != c.space.complex_dim() + c.trivial || c.space.real_dim() + c.codim() != space.real_dim() {
                return Err(Error::Inconsistent(format!("component {i}: dimensions do not add up")));
            }
        }
        let euler: Rational = components.iter().map(|c| c.space.euler_characteristic()).sum::<Result<Rational>>()?;
        if euler != space.euler_characteristic()? {
            return Err(Error::Inconsistent(format!(
                "fixed components have total Euler characteristic {euler}, but χ({}) = {}",
                space.name(),
                space.euler_characteristic()?
            )));
        }
        Ok(Self { space, components, cover, weights: None })
    }

    pub fn space(&self) -> &SpaceModel {
        &self.space
    }

    pub fn components(&self) -> &[FixedComponent] {
        &self.components
    }

    pub fn cover(&self) -> u64 {
        self.cover
    }

    /// The weight vector of a linear action on projective space.
    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    pub fn with_cover(mut self, d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("cover index must be positive".into()));
        }
        self.cover = d;
        Ok(self)
    }

    /// `lcm(cover, required)`.
    pub fn effective_cover(&self, required: u64) -> u64 {
        lcm_u64(self.cover, required.max(1))
    }

    /// Root data of component `i` with weights measured in `u = λ^{1/d}`.
    pub fn root_system(&self, i: usize, d: u64) -> RootSystem {
        let d = d as i64;
        let scale = |r: &ERoot| ERoot::new(r.form.clone(), r.weight * d);
        let c = &self.components[i];
        let reference = &self.components[0];
        RootSystem {
            width: c.space.ring().generators().len(),
            positive: c.roots.iter().map(scale).collect(),
            negative: vec![],
            trivial: c.trivial,
            hyperplane: c.hyperplane.iter().map(scale).collect(),
            ref_hyperplane: reference.hyperplane.iter().map(|h| h.weight * d).collect(),
            ref_weight_sum: reference.roots.iter().map(|r| r.weight * d).sum(),
            oriented_rank: None,
        }
    }
}

fn cp_or_point(k: usize) -> Result<SpaceModel> {
    if k == 0 {
        Ok(SpaceModel::point())
    } else {
        SpaceModel::cp(k as u32)
    }
}

/// The action `t·[z_0 : … : z_n] = [t^{w_0} z_0 : … : t^{w_n} z_n]` on `CP^n`.
/// Components are the projective subspaces of equal weight, in increasing weight order.
pub fn linear_cp_action(weights: &[i64]) -> Result<CircleAction> {
    if weights.len() < 2 {
        return Err(Error::Invalid(format!("a linear action on CP^n needs n+1 >= 2 weights, got {}", weights.len())));
    }
    let n = weights.len() - 1;
    let mut distinct: Vec<i64> = weights.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut components = Vec::new();
    for &w in &distinct {
        let size = weights.iter().filter(|&&v| v == w).count();
        let space = cp_or_point(size - 1)?;
        let x: Vec<i64> = if size > 1 { vec![1] } else { vec![] };
        components.push(FixedComponent {
            space,
            roots: weights.iter().map(|&v| ERoot::new(x.clone(), v - w)).collect(),
            trivial: 1,
            hyperplane: vec![ERoot::new(x, -w)],
        });
    }
    let mut a = CircleAction::new(SpaceModel::cp(n as u32)?, components, 1)?;
    a.weights = Some(weights.to_vec());
    Ok(a)
}
