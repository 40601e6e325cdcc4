//! k-regular sequences via linear representations: exact term evaluation,
//! partial sums sigma_f(r), and the growth constants alpha_f, m_f.

pub mod growth;
pub mod rep;
pub mod sums;

pub use growth::{growth_constants, GrowthReport};
pub use rep::{verify_representation, LinearRepresentation, VerifyOutcome};
pub use sums::{partial_sums_naive, partial_sums_sigma, weighted_sum_trace};
