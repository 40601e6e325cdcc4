//! Minimal linear recurrence detection over exact rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::RationalPoly;
use crate::error::{MahlerError, Result};

/// A confirmed minimal-order linear recurrence.
#[derive(Debug, Clone)]
pub struct RecurrenceFit {
    /// Monic characteristic polynomial x^L - c_1 x^{L-1} - ... - c_L of the
    /// recurrence s_n = c_1 s_{n-1} + ... + c_L s_{n-L}.
    pub char_poly: RationalPoly,
    pub order: usize,
    pub verified_terms: usize,
}

impl RecurrenceFit {
    /// The recurrence weights c_1..c_L.
    pub fn weights(&self) -> Vec<BigRational> {
        let l = self.order;
        (0..l).map(|i| -self.char_poly.coeff(l - 1 - i)).collect()
    }

    /// Check that the recurrence reproduces `terms` beyond the initial segment.
    pub fn reproduces(&self, terms: &[BigRational]) -> bool {
        let w = self.weights();
        for n in self.order..terms.len() {
            let mut acc = BigRational::zero();
            for (i, c) in w.iter().enumerate() {
                acc += c * &terms[n - 1 - i];
            }
            if acc != terms[n] {
                return false;
            }
        }
        true
    }
}

/// Berlekamp-Massey over Q. Returns the minimal-order recurrence satisfied by
/// the whole sequence, or `InsufficientData` when the minimal order exceeds
/// half the number of supplied terms (the fit cannot be confirmed).
pub fn berlekamp_massey(terms: &[BigRational]) -> Result<RecurrenceFit> {
    if terms.len() < 4 {
        return Err(MahlerError::InsufficientData {
            order: 0,
            terms: terms.len(),
        });
    }

    // Connection polynomial c(x) with c(0) = 1: sum_i c_i s_{n-i} = 0.
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last_disc = BigRational::one();

    for n in 0..terms.len() {
        let mut disc = terms[n].clone();
        for i in 1..=l {
            if i < c.len() {
                disc += &c[i] * &terms[n - i];
            }
        }
        if disc.is_zero() {
            m += 1;
        } else if 2 * l <= n {
            let t = c.clone();
            let coef = &disc / &last_disc;
            if c.len() < b.len() + m {
                c.resize(b.len() + m, BigRational::zero());
            }
            for (i, bi) in b.iter().enumerate() {
                c[i + m] -= &coef * bi;
            }
            l = n + 1 - l;
            b = t;
            last_disc = disc;
            m = 1;
        } else {
            let coef = &disc / &last_disc;
            if c.len() < b.len() + m {
                c.resize(b.len() + m, BigRational::zero());
            }
            for (i, bi) in b.iter().enumerate() {
                c[i + m] -= &coef * bi;
            }
            m += 1;
        }
    }

    if 2 * l > terms.len() {
        return Err(MahlerError::InsufficientData {
            order: l,
            terms: terms.len(),
        });
    }

    // Characteristic polynomial: x^L + c_1 x^{L-1} + ... + c_L.
    let mut char_coeffs = vec![BigRational::zero(); l + 1];
    for (i, ci) in c.iter().enumerate().take(l + 1) {
        char_coeffs[l - i] = ci.clone();
    }
    let fit = RecurrenceFit {
        char_poly: RationalPoly::new(char_coeffs),
        order: l,
        verified_terms: terms.len(),
    };
    debug_assert!(fit.reproduces(terms));
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn seq(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect()
    }

    #[test]
    fn geometric() {
        let fit = berlekamp_massey(&seq(&[1, 2, 4, 8, 16, 32])).unwrap();
        assert_eq!(fit.order, 1);
        assert_eq!(fit.char_poly, RationalPoly::from_ints(&[-2, 1]));
    }

    #[test]
    fn fibonacci() {
        let fit = berlekamp_massey(&seq(&[0, 1, 1, 2, 3, 5, 8, 13])).unwrap();
        assert_eq!(fit.order, 2);
        assert_eq!(fit.char_poly, RationalPoly::from_ints(&[-1, -1, 1]));
    }

    #[test]
    fn too_few_terms_rejected() {
        assert!(matches!(
            berlekamp_massey(&seq(&[1, 2, 3])),
            Err(MahlerError::InsufficientData { .. })
        ));
    }

    #[test]
    fn unconfirmable_order_rejected() {
        // Random-looking data with no short recurrence.
        let r = berlekamp_massey(&seq(&[3, 1, 4, 1, 5, 9, 2]));
        assert!(matches!(r, Err(MahlerError::InsufficientData { .. })));
    }

    #[test]
    fn recovers_order_three() {
        // s_n = 2 s_{n-1} - s_{n-3}
        let mut s = vec![1i64, 0, 1];
        for n in 3..14 {
            let v = 2 * s[n - 1] - s[n - 3];
            s.push(v);
        }
        let fit = berlekamp_massey(&seq(&s)).unwrap();
        assert!(fit.order <= 3);
        assert!(fit.reproduces(&seq(&s)));
    }
}
