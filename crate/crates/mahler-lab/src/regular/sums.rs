//! Partial sums of k-regular sequences.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::rep::{weighted_power, LinearRepresentation};
use crate::exact::rational_to_f64;

/// sigma_f(r) = sum of f(n) for n <= k^r, exactly, for r = 0..=r_max.
///
/// Fast path when A_0 v = v: padding every n < k^r to r digits shows
/// sum_{n < k^r} f(n) = w^T (A_0 + ... + A_{k-1})^r v, and the n = k^r term
/// is added separately. Otherwise the sum is taken naively.
pub fn partial_sums_sigma(rep: &LinearRepresentation, r_max: usize) -> Vec<BigInt> {
    if rep.zero_padding_invariant() {
        let boundary = rep.power_subsequence(r_max);
        (0..=r_max)
            .map(|r| weighted_power(rep, r) + &boundary[r])
            .collect()
    } else {
        partial_sums_naive(rep, r_max)
    }
}

/// Brute-force reference path: stream every term once.
pub fn partial_sums_naive(rep: &LinearRepresentation, r_max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(r_max + 1);
    let mut acc = rep.term(0);
    let mut n = 1u64;
    for r in 0..=r_max {
        let limit = rep.k.pow(r as u32);
        while n <= limit {
            acc += rep.term(n);
            n += 1;
        }
        out.push(acc.clone());
    }
    out
}

/// Weighted prefix-sum trace (N, sum_{n<=N} f(n) / (N^exponent ln^m N)) for
/// N in [n_min, n_max], streaming the exact prefix sum once.
pub fn weighted_sum_trace(
    rep: &LinearRepresentation,
    n_min: u64,
    n_max: u64,
    exponent: f64,
    m: usize,
) -> Vec<(u64, f64)> {
    let mut out = Vec::new();
    let mut acc = BigInt::from(0);
    for n in 0..=n_max {
        acc += rep.term(n);
        if n >= n_min && n >= 2 {
            let s = rational_to_f64(&BigRational::from(acc.clone()));
            let nf = n as f64;
            let weight = nf.powf(exponent) * nf.ln().powi(m as i32);
            out.push((n, s / weight));
        }
    }
    out
}
