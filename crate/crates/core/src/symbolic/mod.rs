//! Exact polynomial and rational-function arithmetic over the rationals,
//! power-series extraction and small matrix solves.

mod matrix;
mod poly;
mod ratfunc;
mod series;

pub use matrix::{
    bareiss_last, bareiss_solve, identity, inverse, mat_mul, mat_sub, quasi_inverse_solve, solve,
    RfMatrix,
};
pub use poly::{Monomial, Poly, Var, NVARS};
pub use ratfunc::RatFunc;
pub use series::{scalar_series, series_coefficients, series_coefficients_truncated, SeriesTable};
