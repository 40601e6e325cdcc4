//! Mahler functional equations: exact series solutions, characteristic
//! polynomials, numeric evaluation, and radial asymptotics.

pub mod charpoly;
pub mod equation;
pub mod eval;
pub mod radial;
pub mod series;

pub use charpoly::{
    characteristic_polynomial, select_eigenvalue, CharPolyReport, Eigenvalue, EigenvalueStatus,
};
pub use equation::MahlerEquation;
pub use eval::Evaluator;
pub use radial::{oscillation_profile, radial_fit, AsymptoticFit, RadialParams, RadialSample};
pub use series::solve_coefficients;
