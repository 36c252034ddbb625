//! Circle actions: localization integrals, local data, equivariant characters
//! and the rigidity, vanishing and structure checks built on them.

mod action;
mod character;
mod checks;
mod integral;

pub use action::{linear_cp_action, CircleAction, FixedComponent, WeightedLine};
pub use character::{
    equiv_index, limit_at_cusp, local_data, local_datum, local_limits, rigidity_report, Character, CoefficientVerdict,
    EquivValue, LoopFamily, RigidityReport, Spec, Terms,
};
pub use checks::{
    fixed_signature_sum, higher_vanishing_check, sigma_fixed_set, structure_checks, Level, SigmaComponent,
    SigmaFixedData, StructureReport, ValueCheck, VanishingReport, Verdict,
};
pub use integral::{equivariant_integral, h2_witness, EquivClass, EquivIntegral, ZFunction};
