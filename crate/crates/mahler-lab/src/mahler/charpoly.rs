//! Characteristic polynomial and eigenvalue of a Mahler equation.

use num_rational::BigRational;
use num_traits::Zero;

use super::equation::MahlerEquation;
use super::radial::AsymptoticFit;
use crate::error::{MahlerError, Result};
use crate::exact::poly::RationalPoly;
use crate::exact::roots::{isolate_real_roots, IsolatedRoot, RootIsolation};

/// How the eigenvalue stands after analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EigenvalueStatus {
    /// Eigenvalue selected and stored.
    Exists,
    /// 0 is a root of the characteristic polynomial (e.g. Thue-Morse);
    /// log_k of the eigenvalue is undefined.
    DegenerateZero,
    /// Selection has not been attempted yet (needs a radial fit).
    Unselected,
    /// Zero or several roots matched the measured growth.
    Ambiguous,
}

/// The selected eigenvalue, exact when the matched root has degree <= 2.
pub type Eigenvalue = crate::exact::ExactOrInterval;

/// Characteristic polynomial p_F with its root data and (once selected)
/// the eigenvalue lambda_F.
#[derive(Debug, Clone)]
pub struct CharPolyReport {
    pub p: RationalPoly,
    pub distinct_roots: bool,
    pub roots: RootIsolation,
    pub eigenvalue: Option<Eigenvalue>,
    pub status: EigenvalueStatus,
}

/// p_F(lambda) = a_0(1) lambda^d + a_1(1) lambda^{d-1} + ... + a_d(1).
pub fn characteristic_polynomial(eq: &MahlerEquation) -> CharPolyReport {
    characteristic_polynomial_prec(eq, 50)
}

pub fn characteristic_polynomial_prec(eq: &MahlerEquation, precision: u32) -> CharPolyReport {
    let d = eq.degree();
    let mut coeffs = vec![BigRational::zero(); d + 1];
    for i in 0..=d {
        // a_i multiplies lambda^{d-i}.
        coeffs[d - i] = eq.a(i).eval_at_one();
    }
    let p = RationalPoly::new(coeffs);
    assert!(!p.is_zero(), "all a_i(1) vanish; degenerate equation");

    let roots = isolate_real_roots(&p, precision);
    let distinct = roots.distinct && p.degree() == d;
    let zero_root = p.coeff(0).is_zero();
    CharPolyReport {
        p,
        distinct_roots: distinct,
        roots,
        eigenvalue: None,
        status: if zero_root {
            EigenvalueStatus::DegenerateZero
        } else {
            EigenvalueStatus::Unselected
        },
    }
}

/// Fill in the eigenvalue: the unique root of p_F whose modulus matches the
/// measured radial growth k^gamma within relative tolerance 1e-2.
pub fn select_eigenvalue(report: &CharPolyReport, fit: &AsymptoticFit) -> Result<CharPolyReport> {
    let measured = fit.lambda_estimate;
    let rel_tol = 1e-2;

    let mut matches: Vec<&IsolatedRoot> = Vec::new();
    for root in &report.roots.real_roots {
        let m = root.to_f64().abs();
        if (m - measured).abs() <= rel_tol * measured.max(1.0) {
            matches.push(root);
        }
    }
    // Non-real roots are only modulus-bounded; a bound below the measured
    // growth rules them out, anything else leaves the match ambiguous.
    let complex_possible = report.roots.complex_count > 0
        && crate::exact::rational_to_f64(&report.roots.modulus_bound)
            >= measured * (1.0 - rel_tol);

    match (matches.len(), complex_possible) {
        (0, _) => Err(MahlerError::NoMatchingRoot { measured }),
        (1, false) => {
            let root = matches[0];
            let eigenvalue = crate::exact::sharpen_root(&report.p, root);
            Ok(CharPolyReport {
                eigenvalue: Some(eigenvalue),
                status: EigenvalueStatus::Exists,
                ..report.clone()
            })
        }
        (n, _) => Err(MahlerError::AmbiguousMatch {
            measured,
            candidates: n.max(2),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::RationalPoly;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn eq(k: u64, coeffs: Vec<RationalPoly>) -> MahlerEquation {
        MahlerEquation::new(k, coeffs, vec![]).unwrap()
    }

    #[test]
    fn stern_char_poly() {
        let e = eq(
            2,
            vec![
                RationalPoly::from_ints(&[0, 1]),
                RationalPoly::from_ints(&[-1, -1, -1]),
            ],
        );
        let rep = characteristic_polynomial(&e);
        assert_eq!(rep.p, RationalPoly::from_ints(&[-3, 1]));
        assert!(rep.distinct_roots);
        assert_eq!(rep.status, EigenvalueStatus::Unselected);
    }

    #[test]
    fn baum_sweet_char_poly() {
        let e = eq(
            2,
            vec![
                RationalPoly::from_ints(&[1]),
                RationalPoly::from_ints(&[0, -1]),
                RationalPoly::from_ints(&[-1]),
            ],
        );
        let rep = characteristic_polynomial(&e);
        assert_eq!(rep.p, RationalPoly::from_ints(&[-1, -1, 1]));
        assert!(rep.distinct_roots);
    }

    #[test]
    fn thue_morse_degenerate() {
        // T(z) - (1-z) T(z^2) = 0: a_1(1) = 0, so p = lambda.
        let e = eq(
            2,
            vec![
                RationalPoly::from_ints(&[1]),
                RationalPoly::from_ints(&[-1, 1]),
            ],
        );
        let rep = characteristic_polynomial(&e);
        assert_eq!(rep.p, RationalPoly::from_ints(&[0, 1]));
        assert_eq!(rep.status, EigenvalueStatus::DegenerateZero);
    }

    #[test]
    fn exact_coefficient_recompute() {
        // a_i(1) recomputed by direct substitution must match p's coefficients.
        let e = eq(
            2,
            vec![
                RationalPoly::from_ints(&[2, 5, -1]),
                RationalPoly::from_ints(&[1, 1]),
                RationalPoly::from_ints(&[3]),
            ],
        );
        let rep = characteristic_polynomial(&e);
        let one = q(1);
        for i in 0..=e.degree() {
            assert_eq!(rep.p.coeff(e.degree() - i), e.a(i).eval(&one));
        }
    }
}
