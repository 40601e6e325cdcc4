//! Multiplicative-independence certification for eigenvalues and growth
//! constants, in three honesty tiers (exact, quadratic, bounded).

pub mod lll;
pub mod set;
pub mod tiers;
pub mod verdict;

pub use set::{rescale_common_base, Element, MultiplicativeSet};
pub use tiers::{
    factor_rational, independence, verify_relation, IndependenceVerdict, SearchConfig, Status,
    Tier,
};
pub use verdict::{verdict_report, VerdictReport};
