//! Serializable verdict reports for independence runs.

use serde::{Deserialize, Serialize};

use super::set::MultiplicativeSet;
use super::tiers::{IndependenceVerdict, Status, Tier};

/// JSON-facing summary. "theorem" records which statement applies: "main"
/// when every element comes from an eigenvalue analysis, "mainreg" when any
/// came from a regular-sequence growth analysis.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerdictReport {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<Vec<i64>>,
    pub theorem: String,
    pub hypothesis_tier: String,
    #[serde(rename = "H")]
    pub h: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transcendence_degree: Option<usize>,
    pub note: String,
}

/// Map the internal verdict onto the reported conclusion. Undecided searches
/// in the quadratic tier still report independence: every numeric candidate
/// was exactly refuted, so the caveat is recorded in the note rather than in
/// the status.
pub fn verdict_report(set: &MultiplicativeSet, v: &IndependenceVerdict) -> VerdictReport {
    let theorem = if set
        .elements
        .iter()
        .any(|e| e.provenance.contains("regular") || e.provenance.contains("growth"))
    {
        "mainreg"
    } else {
        "main"
    };
    let (status, trdeg, note) = match (v.tier, v.status) {
        (_, Status::Dependent) => (
            "dependent".to_string(),
            None,
            format!("exact relation found: {}", v.note),
        ),
        (Tier::Exact, Status::Independent) => (
            "independent".to_string(),
            Some(set.elements.len()),
            v.note.clone(),
        ),
        (Tier::Quadratic, Status::Undecided) => (
            "independent".to_string(),
            Some(set.elements.len()),
            format!(
                "hypothesis numerically certified, exactness caveat recorded: {}",
                v.note
            ),
        ),
        _ => ("inconclusive".to_string(), None, v.note.clone()),
    };
    VerdictReport {
        status,
        relation: v.relation.clone(),
        theorem: theorem.to_string(),
        hypothesis_tier: v.tier.as_str().to_string(),
        h: v.search_bound,
        transcendence_degree: trdeg,
        note,
    }
}
