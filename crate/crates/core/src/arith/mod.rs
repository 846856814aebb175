//! Exact arithmetic: rationals, dense matrices, polynomials, determinants
//! and root extraction.

pub mod bivariate;
pub mod det;
pub mod matrix;
pub mod multipoly;
pub mod rational;
pub mod resultant;
pub mod roots;
pub mod univariate;

pub use bivariate::BivariatePoly;
pub use det::{cofactor_det, ff_det, ExactDomain};
pub use matrix::RatMatrix;
pub use multipoly::{poly_det, Monomial, MultivariatePoly};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use resultant::{companion, generalized_resultant, pencil_det};
pub use roots::{uni_roots, ComplexApprox, RootValue};
pub use univariate::{charpoly, uni_det, UnivariatePoly};
