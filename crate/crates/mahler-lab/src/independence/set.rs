//! Multiplicative sets {k, lambda_1, ..., lambda_d} and base rescaling.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{MahlerError, Result};
use crate::exact::{ExactOrInterval, QuadraticNumber};

/// One eigenvalue or growth constant, with where it came from and the
/// exponent weight assigned by base rescaling (an element attached to
/// k = k0^e is compared through log lambda / e; weight = e).
#[derive(Debug, Clone)]
pub struct Element {
    pub value: ExactOrInterval,
    pub provenance: String,
    pub weight: u64,
}

impl Element {
    pub fn exact(value: QuadraticNumber, provenance: &str) -> Self {
        Element {
            value: ExactOrInterval::Exact(value),
            provenance: provenance.to_string(),
            weight: 1,
        }
    }

    pub fn rational_int(n: i64, provenance: &str) -> Self {
        Element::exact(QuadraticNumber::from_int(n), provenance)
    }

    pub fn is_positive(&self) -> bool {
        match &self.value {
            ExactOrInterval::Exact(q) => q.is_positive(),
            ExactOrInterval::Interval(r) => r.to_f64() > 0.0,
        }
    }
}

/// The hypothesis set of the independence theorems.
#[derive(Debug, Clone)]
pub struct MultiplicativeSet {
    pub base_k: u64,
    pub elements: Vec<Element>,
}

impl MultiplicativeSet {
    pub fn new(base_k: u64, elements: Vec<Element>) -> Result<Self> {
        if base_k < 2 {
            return Err(MahlerError::InvalidInput(format!(
                "base k = {base_k} must be >= 2"
            )));
        }
        for e in &elements {
            if !e.is_positive() {
                return Err(MahlerError::NonPositiveElement(format!(
                    "{} ({})",
                    e.value.to_f64(),
                    e.provenance
                )));
            }
        }
        Ok(MultiplicativeSet { base_k, elements })
    }
}

/// Merge inputs living over different bases k_i into one set over the common
/// base k0, with k_i = k0^{e_i}. Each element keeps weight e_i unless an
/// exact e_i-th root exists in its field, in which case the root is taken
/// and the weight drops to 1.
pub fn rescale_common_base(inputs: &[(u64, Vec<Element>)]) -> Result<MultiplicativeSet> {
    assert!(!inputs.is_empty());
    let ks: Vec<u64> = inputs.iter().map(|(k, _)| *k).collect();
    let k0 = common_base(&ks)?;

    let mut elements = Vec::new();
    for (k, els) in inputs {
        let e = power_exponent(k0, *k).expect("checked by common_base");
        for el in els {
            let mut el = el.clone();
            if e > 1 {
                match &el.value {
                    ExactOrInterval::Exact(q) => match exact_root(q, e) {
                        Some(root) => {
                            el.value = ExactOrInterval::Exact(root);
                            el.weight = 1;
                        }
                        None => el.weight = e,
                    },
                    ExactOrInterval::Interval(_) => el.weight = e,
                }
            }
            elements.push(el);
        }
    }
    MultiplicativeSet::new(k0, elements)
}

/// Smallest b >= 2 with every k a power of b.
fn common_base(ks: &[u64]) -> Result<u64> {
    let k_min = *ks.iter().min().unwrap();
    for b in 2..=k_min {
        if ks.iter().all(|&k| power_exponent(b, k).is_some()) {
            return Ok(b);
        }
    }
    let bad = *ks.iter().max().unwrap();
    Err(MahlerError::IncommensurableBases(k_min, bad))
}

/// e with b^e = k, if any.
fn power_exponent(b: u64, k: u64) -> Option<u64> {
    let mut acc = 1u64;
    let mut e = 0u64;
    while acc < k {
        acc = acc.checked_mul(b)?;
        e += 1;
    }
    (acc == k).then_some(e)
}

/// Exact e-th root within the same quadratic field, when it exists.
/// Square parts go through the field's exact square root; odd parts are only
/// attempted for rationals.
pub fn exact_root(q: &QuadraticNumber, e: u64) -> Option<QuadraticNumber> {
    if e == 1 {
        return Some(q.clone());
    }
    if e % 2 == 0 {
        return exact_root(&q.sqrt_exact()?, e / 2);
    }
    let r = q.as_rational()?;
    if r.is_negative() {
        return None;
    }
    let n = r.numer().nth_root(e as u32);
    let d = r.denom().nth_root(e as u32);
    let cand = BigRational::new(n, d);
    let mut acc = BigRational::from(BigInt::from(1));
    for _ in 0..e {
        acc *= &cand;
    }
    (acc == *r).then(|| QuadraticNumber::rational(cand))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rejects_nonpositive_elements() {
        let bad = Element::rational_int(-2, "test");
        assert!(matches!(
            MultiplicativeSet::new(2, vec![bad]),
            Err(MahlerError::NonPositiveElement(_))
        ));
    }

    #[test]
    fn same_base_identity_rescaling() {
        let s = rescale_common_base(&[
            (2, vec![Element::rational_int(3, "a")]),
            (2, vec![Element::rational_int(5, "b")]),
        ])
        .unwrap();
        assert_eq!(s.base_k, 2);
        assert!(s.elements.iter().all(|e| e.weight == 1));
    }

    #[test]
    fn base_four_eigenvalue_becomes_phi() {
        // (3+sqrt(5))/2 over k=4 rescales to its exact square root phi over k=2.
        let ds = QuadraticNumber::new(qr(3, 2), qr(1, 2), 5);
        let s = rescale_common_base(&[
            (2, vec![Element::rational_int(3, "s")]),
            (4, vec![Element::exact(ds, "f")]),
        ])
        .unwrap();
        assert_eq!(s.base_k, 2);
        let phi = s.elements[1].value.exact().unwrap();
        assert_eq!(phi, &QuadraticNumber::new(qr(1, 2), qr(1, 2), 5));
        assert_eq!(s.elements[1].weight, 1);
    }

    #[test]
    fn eight_over_two_weight_three() {
        // 5 over k=8 has no exact cube root; it keeps weight 3 over base 2.
        let s = rescale_common_base(&[
            (2, vec![Element::rational_int(3, "a")]),
            (8, vec![Element::rational_int(5, "c")]),
        ])
        .unwrap();
        assert_eq!(s.base_k, 2);
        assert_eq!(s.elements[1].weight, 3);
        // 8 itself over k=8 would rescale exactly: 8^(1/3) = 2.
        assert_eq!(
            exact_root(&QuadraticNumber::from_int(8), 3).unwrap(),
            QuadraticNumber::from_int(2)
        );
    }

    #[test]
    fn incommensurable_bases_rejected() {
        let r = rescale_common_base(&[
            (2, vec![Element::rational_int(3, "a")]),
            (3, vec![Element::rational_int(5, "b")]),
        ]);
        assert!(matches!(r, Err(MahlerError::IncommensurableBases(_, _))));
    }
}
