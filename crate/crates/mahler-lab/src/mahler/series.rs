//! Exact series coefficients of a Mahler equation's solution.
//!
//! The functional equation matches coefficients of z^N:
//! sum over i, j of a_{i,j} * f((N - j) / k^i), restricted to exact divisions.
//! With v the valuation of a_0, the coefficient of z^{N} carries the pivot
//! unknown f(N - v); small N may need seed values instead.

use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

use super::equation::MahlerEquation;
use crate::error::{MahlerError, Result};

/// Solve for f(0)..f(n_max) exactly. Seed values (if any) occupy the leading
/// indices and are checked for consistency with the equation.
pub fn solve_coefficients(eq: &MahlerEquation, n_max: usize) -> Result<Vec<BigRational>> {
    let v = eq
        .a(0)
        .valuation()
        .expect("a_0 is nonzero by construction");
    let mut known: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (i, s) in eq.seed.iter().enumerate() {
        known.insert(i, s.clone());
    }

    // Pending equations, one per matched power of z.
    let mut pending: Vec<usize> = (v..=n_max + v).collect();
    loop {
        let mut progress = false;
        let mut still_pending = Vec::new();
        for &big_n in &pending {
            let combo = coefficient_combo(eq, big_n);
            let mut unknowns: Vec<(usize, &BigRational)> = Vec::new();
            let mut known_sum = BigRational::zero();
            for (idx, c) in &combo {
                match known.get(idx) {
                    Some(val) => known_sum += c * val,
                    None => unknowns.push((*idx, c)),
                }
            }
            match unknowns.len() {
                0 => {
                    if !known_sum.is_zero() {
                        return Err(MahlerError::InconsistentSeed {
                            index: big_n.saturating_sub(v),
                        });
                    }
                    progress = true;
                }
                1 => {
                    let (idx, c) = unknowns[0];
                    known.insert(idx, -known_sum / c);
                    progress = true;
                }
                _ => still_pending.push(big_n),
            }
        }
        pending = still_pending;
        if pending.is_empty() || !progress {
            break;
        }
    }

    let missing: Vec<usize> = (0..=n_max).filter(|i| !known.contains_key(i)).collect();
    if !missing.is_empty() {
        return Err(MahlerError::UnderdeterminedSeries(missing));
    }
    Ok((0..=n_max).map(|i| known.remove(&i).unwrap()).collect())
}

/// The linear combination sum c_idx * f(idx) equated to zero by the
/// coefficient of z^N, with zero-coefficient entries dropped.
fn coefficient_combo(eq: &MahlerEquation, big_n: usize) -> BTreeMap<usize, BigRational> {
    let mut combo: BTreeMap<usize, BigRational> = BTreeMap::new();
    let mut step = 1usize; // k^i
    for i in 0..=eq.degree() {
        for (j, c) in eq.a(i).coeffs().iter().enumerate() {
            if c.is_zero() || j > big_n {
                continue;
            }
            let rem = big_n - j;
            if rem % step == 0 {
                let idx = rem / step;
                *combo.entry(idx).or_insert_with(BigRational::zero) += c;
            }
        }
        match step.checked_mul(eq.k as usize) {
            Some(s) => step = s,
            None => break,
        }
    }
    combo.retain(|_, c| !c.is_zero());
    combo
}
