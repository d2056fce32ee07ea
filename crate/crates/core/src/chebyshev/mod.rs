//! Chebyshev expansions on intervals and their Cauchy/Hilbert transforms.

pub mod mobius;
pub mod moments;
pub mod series;

pub use mobius::{mobius_cauchy, mobius_hilbert, MobiusExpansion, MobiusMap, SeriesEstimate};
pub use moments::{
    cauchy_series, cauchy_t, cauchy_t_all, chebyshev_integral, endpoint_finite_parts, hilbert_series, hilbert_t,
    hilbert_t_all,
};
pub use series::{
    cheb_eval, cheb_expand, cheb_expand_adaptive, coefficients_from_values, lobatto_points, ChebSeries, PiecewiseSeries,
};
