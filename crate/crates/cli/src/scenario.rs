//! Scenario files: the JSON description of a space, an optional circle action and
//! what to compute on it.

use rigidity_core::algebra::{CycNumber, Rational};
use rigidity_core::equivariant::{linear_cp_action, CircleAction, LoopFamily, Spec};
use rigidity_core::genera::{level_y, BundleExpr, Family, GenusKind, Param, YParam};
use rigidity_core::spaces::SpaceModel;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub space: SpaceDesc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionDesc>,
    pub genus: GenusName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bundle: Option<BundleDesc>,
    /// `N` for `level_n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u64>,
    /// Value of `y` for `chi_y`; formal when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<YDesc>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_order: Option<u32>,
    /// Cover index override for the circle action.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<u64>,
}

impl Options {
    fn is_empty(&self) -> bool {
        self.q_order.is_none() && self.cover.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceDesc {
    Point,
    Cp {
        n: u32,
    },
    Hypersurface {
        m: u32,
        d: u32,
    },
    /// `n` is the real dimension, which must be even.
    Sphere {
        n: u32,
    },
    Product {
        factors: Vec<SpaceDesc>,
    },
}

impl SpaceDesc {
    pub fn cp(n: u32) -> Self {
        SpaceDesc::Cp { n }
    }

    pub fn build(&self) -> Result<SpaceModel, CliError> {
        Ok(match self {
            SpaceDesc::Point => SpaceModel::point(),
            SpaceDesc::Cp { n } => SpaceModel::cp(*n)?,
            SpaceDesc::Hypersurface { m, d } => SpaceModel::hypersurface(*m, *d)?,
            SpaceDesc::Sphere { n } => {
                if n % 2 != 0 {
                    return Err(CliError::Parse(format!("space.n: only even spheres are modelled, got S{n}")));
                }
                SpaceModel::even_sphere(n / 2)?
            }
            SpaceDesc::Product { factors } => {
                let mut acc = SpaceModel::point();
                for f in factors {
                    acc = SpaceModel::product(&acc, &f.build()?)?;
                }
                acc
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionDesc {
    LinearCp { weights: Vec<i64> },
}

impl ActionDesc {
    pub fn build(&self) -> Result<CircleAction, CliError> {
        match self {
            ActionDesc::LinearCp { weights } => Ok(linear_cp_action(weights)?),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusName {
    Euler,
    Signature,
    Ahat,
    Todd,
    ChiY,
    LoopSignature,
    DiracCusp,
    LevelN,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum YDesc {
    /// `y = -ζ_N^β`.
    Root(u64, i64),
    Rational(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamDesc {
    #[serde(default)]
    pub negative: bool,
    #[serde(default)]
    pub q: u32,
    #[serde(default)]
    pub y: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyDesc {
    LoopSignature,
    DiracCusp,
    LevelN,
}

/// Bundle expressions, e.g. `{"tensor":[{"extpower":[2,"T_C"]},{"kroot":[3,1]}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleDesc {
    #[serde(rename = "T")]
    Tangent,
    #[serde(rename = "T*")]
    TangentDual,
    #[serde(rename = "T_C")]
    TangentComplexified,
    Trivial,
    Line(Vec<i64>),
    Kroot(i64, i64),
    Sum(Vec<BundleDesc>),
    Diff(Box<BundleDesc>, Box<BundleDesc>),
    Tensor(Vec<BundleDesc>),
    Extpower(u32, Box<BundleDesc>),
    Sympower(u32, Box<BundleDesc>),
    LambdaSeries(ParamDesc, Box<BundleDesc>),
    SymSeries(ParamDesc, Box<BundleDesc>),
    Qproduct(FamilyDesc),
}

impl BundleDesc {
    pub fn build(&self) -> BundleExpr {
        let param = |p: &ParamDesc| Param { negative: p.negative, q: p.q, y: p.y };
        match self {
            BundleDesc::Tangent => BundleExpr::Tangent,
            BundleDesc::TangentDual => BundleExpr::TangentDual,
            BundleDesc::TangentComplexified => BundleExpr::TangentComplexified,
            BundleDesc::Trivial => BundleExpr::trivial(),
            BundleDesc::Line(f) => BundleExpr::Line(f.clone()),
            BundleDesc::Kroot(n, alpha) => BundleExpr::KRoot { n: *n, alpha: *alpha },
            BundleDesc::Sum(v) => BundleExpr::Sum(v.iter().map(Self::build).collect()),
            BundleDesc::Diff(a, b) => BundleExpr::Diff(Box::new(a.build()), Box::new(b.build())),
            BundleDesc::Tensor(v) => BundleExpr::Tensor(v.iter().map(Self::build).collect()),
            BundleDesc::Extpower(i, e) => BundleExpr::ext(*i, e.build()),
            BundleDesc::Sympower(i, e) => BundleExpr::sym(*i, e.build()),
            BundleDesc::LambdaSeries(p, e) => BundleExpr::LambdaSeries(param(p), Box::new(e.build())),
            BundleDesc::SymSeries(p, e) => BundleExpr::SymSeries(param(p), Box::new(e.build())),
            BundleDesc::Qproduct(f) => BundleExpr::QProduct(match f {
                FamilyDesc::LoopSignature => Family::LoopSignature,
                FamilyDesc::DiracCusp => Family::DiracCusp,
                FamilyDesc::LevelN => Family::LevelN,
            }),
        }
    }

    /// Whether the expression has terms beyond `q⁰`.
    pub fn depends_on_q(&self) -> bool {
        match self {
            BundleDesc::Qproduct(_) => true,
            BundleDesc::LambdaSeries(p, e) | BundleDesc::SymSeries(p, e) => p.q > 0 || e.depends_on_q(),
            BundleDesc::Sum(v) | BundleDesc::Tensor(v) => v.iter().any(Self::depends_on_q),
            BundleDesc::Diff(a, b) => a.depends_on_q() || b.depends_on_q(),
            BundleDesc::Extpower(_, e) | BundleDesc::Sympower(_, e) => e.depends_on_q(),
            _ => false,
        }
    }
}

/// What a scenario asks for, resolved against the core types.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Genus(GenusKind, Option<BundleDesc>),
    Loop(LoopFamily),
}

impl Target {
    pub fn spec(&self) -> Spec {
        match self {
            Target::Genus(g, None) => Spec::Genus(g.clone()),
            Target::Genus(g, Some(b)) => Spec::Twisted(g.clone(), b.build()),
            Target::Loop(f) => Spec::Loop(*f),
        }
    }

    pub fn is_series(&self) -> bool {
        match self {
            Target::Genus(_, b) => b.as_ref().is_some_and(BundleDesc::depends_on_q),
            Target::Loop(_) => true,
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Parse(format!("y.rational: cannot parse {s:?} as p/q"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p.into(), q.into()))
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("scenario: {e}")))
    }

    pub fn target(&self) -> Result<Target, CliError> {
        let no_bundle = |what: &str| -> Result<(), CliError> {
            if self.bundle.is_some() {
                return Err(CliError::Parse(format!("bundle: {what} cannot be twisted")));
            }
            Ok(())
        };
        if self.level.is_some() && self.genus != GenusName::LevelN {
            return Err(CliError::Parse("level: only used with genus \"level_n\"".into()));
        }
        if self.y.is_some() && self.genus != GenusName::ChiY {
            return Err(CliError::Parse("y: only used with genus \"chi_y\"".into()));
        }
        let kind = match self.genus {
            GenusName::Euler => GenusKind::Euler,
            GenusName::Signature => GenusKind::Signature,
            GenusName::Ahat => GenusKind::AHat,
            GenusName::Todd => GenusKind::Todd,
            GenusName::ChiY => GenusKind::ChiY(match &self.y {
                None => YParam::Formal,
                Some(YDesc::Root(n, beta)) => {
                    if *n == 0 {
                        return Err(CliError::Parse("y.root: N must be positive".into()));
                    }
                    YParam::Value(level_y(*n, *beta))
                }
                Some(YDesc::Rational(s)) => YParam::Value(CycNumber::rational(parse_rational(s)?)),
            }),
            GenusName::LoopSignature => {
                no_bundle("loop_signature")?;
                return Ok(Target::Loop(LoopFamily::Signature));
            }
            GenusName::DiracCusp => {
                no_bundle("dirac_cusp")?;
                return Ok(Target::Loop(LoopFamily::DiracCusp));
            }
            GenusName::LevelN => {
                no_bundle("level_n")?;
                let n = self.level.ok_or_else(|| CliError::Parse("level: genus \"level_n\" needs \"level\"".into()))?;
                return Ok(Target::Loop(LoopFamily::LevelN(n)));
            }
        };
        if kind == GenusKind::Euler {
            no_bundle("euler")?;
        }
        Ok(Target::Genus(kind, self.bundle.clone()))
    }

    pub fn space(&self) -> Result<SpaceModel, CliError> {
        self.space.build()
    }

    /// The action, after checking it acts on the scenario's space and applying the cover override.
    pub fn circle_action(&self) -> Result<Option<CircleAction>, CliError> {
        let Some(desc) = &self.action else { return Ok(None) };
        let ActionDesc::LinearCp { weights } = desc;
        let expected = SpaceDesc::cp(weights.len().saturating_sub(1) as u32);
        if self.space != expected {
            return Err(CliError::Parse(format!(
                "action: a linear action with {} weights acts on {{\"type\":\"cp\",\"n\":{}}}",
                weights.len(),
                weights.len().saturating_sub(1)
            )));
        }
        let mut a = desc.build()?;
        if let Some(d) = self.options.cover {
            a = a.with_cover(d)?;
        }
        Ok(Some(a))
    }

    pub fn q_order(&self, default: u32) -> u32 {
        self.options.q_order.unwrap_or(default)
    }
}

/// Convenience constructor used by the suites.
pub fn scenario(space: SpaceDesc, genus: GenusName) -> Scenario {
    Scenario { space, action: None, genus, bundle: None, level: None, y: None, options: Options::default() }
}
