// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chebyshev;
mod error;
mod estimate;
mod function;
pub mod halfline;
pub mod irrational;
pub mod maps;
pub mod oracle;
pub mod oscasym;
pub mod par;
pub mod quadrature;

pub use error::{Error, Result};
pub use estimate::{BoundaryPair, Estimate};
pub use function::{HalfLineFunction, Oscillation};
pub use oracle::{cauchy_boundary_oracle, cauchy_oracle, hilbert_oracle};
pub use par::Execution;
pub use quadrature::QuadratureSpec;
