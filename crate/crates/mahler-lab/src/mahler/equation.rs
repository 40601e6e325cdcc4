//! Mahler functional equations a_0(z)F(z) + a_1(z)F(z^k) + ... + a_d(z)F(z^{k^d}) = 0.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{MahlerError, Result};
use crate::exact::poly::{parse_rational, rational_to_string, RationalPoly};

/// A k-Mahler functional equation with rational polynomial coefficients,
/// optionally carrying the leading series coefficients of the solution.
#[derive(Debug, Clone)]
pub struct MahlerEquation {
    pub k: u64,
    pub coeffs: Vec<RationalPoly>,
    pub seed: Vec<BigRational>,
}

impl MahlerEquation {
    pub fn new(k: u64, coeffs: Vec<RationalPoly>, seed: Vec<BigRational>) -> Result<Self> {
        if k < 2 {
            return Err(MahlerError::InvalidInput(format!("k = {k} must be >= 2")));
        }
        if coeffs.len() < 2 {
            return Err(MahlerError::InvalidInput(
                "equation needs degree d >= 1 (at least a_0 and a_1)".into(),
            ));
        }
        if coeffs.first().unwrap().is_zero() || coeffs.last().unwrap().is_zero() {
            return Err(MahlerError::InvalidInput(
                "a_0 and a_d must be nonzero polynomials".into(),
            ));
        }
        Ok(MahlerEquation { k, coeffs, seed })
    }

    /// Equation degree d.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn a(&self, i: usize) -> &RationalPoly {
        &self.coeffs[i]
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawEquation = serde_json::from_str(text)
            .map_err(|e| MahlerError::InvalidInput(format!("equation JSON: {e}")))?;
        raw.build()
    }

    pub fn to_json(&self) -> String {
        let raw = RawEquation {
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .map(|p| p.coeffs().iter().map(rational_to_string).collect())
                .collect(),
            seed: if self.seed.is_empty() {
                None
            } else {
                Some(self.seed.iter().map(rational_to_string).collect())
            },
        };
        serde_json::to_string_pretty(&raw).expect("equation serialization")
    }
}

/// Wire format: exact rationals as strings, coefficients ascending in degree.
#[derive(Debug, Serialize, Deserialize)]
struct RawEquation {
    k: u64,
    coeffs: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<Vec<String>>,
}

impl RawEquation {
    fn build(self) -> Result<MahlerEquation> {
        let coeffs: Result<Vec<RationalPoly>> = self
            .coeffs
            .iter()
            .map(|c| RationalPoly::from_strings(c))
            .collect();
        let seed: Result<Vec<BigRational>> = self
            .seed
            .unwrap_or_default()
            .iter()
            .map(|s| parse_rational(s))
            .collect();
        MahlerEquation::new(self.k, coeffs?, seed?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn parses_spec_wire_format() {
        let eq = MahlerEquation::from_json(
            r#"{ "k": 2, "coeffs": [["0","1"], ["-1","-1","-1"]], "seed": ["0","1"] }"#,
        )
        .unwrap();
        assert_eq!(eq.k, 2);
        assert_eq!(eq.degree(), 1);
        assert_eq!(eq.a(0), &RationalPoly::from_ints(&[0, 1]));
        assert_eq!(eq.a(1), &RationalPoly::from_ints(&[-1, -1, -1]));
        assert_eq!(eq.seed, vec![
            BigRational::from(BigInt::from(0)),
            BigRational::from(BigInt::from(1)),
        ]);
    }

    #[test]
    fn json_round_trip() {
        let eq = MahlerEquation::from_json(
            r#"{ "k": 2, "coeffs": [["1"], ["0","-1"], ["-1"]] }"#,
        )
        .unwrap();
        let eq2 = MahlerEquation::from_json(&eq.to_json()).unwrap();
        assert_eq!(eq2.coeffs, eq.coeffs);
        assert_eq!(eq2.k, eq.k);
    }

    #[test]
    fn rejects_zero_edge_coefficients() {
        assert!(MahlerEquation::from_json(r#"{ "k": 2, "coeffs": [["0"], ["1"]] }"#).is_err());
        assert!(MahlerEquation::from_json(r#"{ "k": 1, "coeffs": [["1"], ["1"]] }"#).is_err());
    }
}
