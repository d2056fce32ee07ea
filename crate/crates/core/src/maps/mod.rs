//! Representations of `C f` and `H f` through transforms of `f(⋄^r)`.

pub mod exponent;
pub mod power;
pub mod rational;
pub mod sheeted;

pub use exponent::{
    branch_ceiling, branch_index, lambda_root, lambda_root_rational, sheet_of, RationalExponent, SheetedEvaluation,
};
pub use power::{cauchy_power_map, hilbert_power_map};
pub use rational::{cauchy_rational_map, hilbert_rational_map};
pub use sheeted::{
    cauchy_root_map, cauchy_sheeted, cauchy_sheeted_boundary, hilbert_root_map, p_r_boundary, p_r_transform,
    PrOperatorSpec,
};
