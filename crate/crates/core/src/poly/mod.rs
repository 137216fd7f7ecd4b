//! Exact polynomial machinery: sparse multivariate expansion of pencil
//! determinants, univariate restrictions, and degree computations.

pub mod degree;
pub mod det;
pub mod sign;
pub mod sparse;
pub mod univariate;

pub use degree::{
    degree_by_interpolation, degree_by_interpolation_report, predicted_degree, product_formula_eval, restricted_determinant,
    zero_sum_signings, DegreeReport,
};
pub use det::{det_expand, det_expand_with, monic_in_d_check, xy_degree, DetBudget, DetStrategy};
pub use sign::SignVector;
pub use sparse::{Monomial, SparsePoly};
pub use univariate::UniPoly;
