//! Asymptotic analysis of Mahler functional equations and k-regular
//! sequences: characteristic polynomials and eigenvalues, radial growth
//! measurement near roots of unity, growth constants of partial sums, and
//! multiplicative-independence certification.

pub mod catalog;
pub mod error;
pub mod exact;
pub mod hp;
pub mod independence;
pub mod mahler;
pub mod regular;
pub mod report;

pub use error::{MahlerError, Result};
