//! Lattice reduction for integer-relation candidate generation.
//!
//! Textbook LLL with exact rational Gram-Schmidt. Dimensions here are tiny
//! (one row per set element plus one), so the naive recomputation of the
//! orthogonalization is comfortably fast even with huge entries.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Reduce the rows of `basis` in place with delta = 3/4 and return them.
pub fn lll_reduce(mut basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = basis.len();
    if n < 2 {
        return basis;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));

    let mut k = 1usize;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        if guard > 10_000 {
            break;
        }
        let (mu, bstar_norm) = gram_schmidt(&basis);
        // Size-reduce row k against rows k-1 .. 0.
        for j in (0..k).rev() {
            let r = round_rational(&mu[k][j]);
            if !r.is_zero() {
                for c in 0..basis[k].len() {
                    let s = &basis[j][c] * &r;
                    basis[k][c] -= s;
                }
            }
        }
        let (mu, bstar_norm) = if (0..k).any(|j| round_rational(&mu[k][j]) != BigInt::zero()) {
            gram_schmidt(&basis)
        } else {
            (mu, bstar_norm)
        };

        // Lovasz condition.
        let lhs = &bstar_norm[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar_norm[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            k = k.saturating_sub(1).max(1);
        }
    }
    basis
}

/// (mu, ||b*_i||^2) for the current basis.
fn gram_schmidt(basis: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = basis.len();
    let dim = basis[0].len();
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norms: Vec<BigRational> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];

    for i in 0..n {
        let mut v: Vec<BigRational> = basis[i]
            .iter()
            .map(|x| BigRational::from(x.clone()))
            .collect();
        for j in 0..i {
            let dot = (0..dim)
                .map(|c| BigRational::from(basis[i][c].clone()) * &bstar[j][c])
                .fold(BigRational::zero(), |a, b| a + b);
            mu[i][j] = if norms[j].is_zero() {
                BigRational::zero()
            } else {
                &dot / &norms[j]
            };
            for c in 0..dim {
                let s = &mu[i][j] * &bstar[j][c];
                v[c] -= s;
            }
        }
        let norm = v
            .iter()
            .map(|x| x * x)
            .fold(BigRational::zero(), |a, b| a + b);
        norms.push(norm);
        bstar.push(v);
    }
    (mu, norms)
}

/// Nearest integer, halves rounded toward +infinity.
fn round_rational(q: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    let shifted = q + BigRational::new(BigInt::one(), two);
    shifted.floor().to_integer()
}

/// Candidate relation vectors for real values x_0..x_{n-1}: embed the
/// identity next to a scaled-and-rounded column of the x_i and reduce; short
/// rows expose integer combinations with small |sum e_i x_i|.
pub fn relation_candidates(scaled: &[BigInt], bound: i64) -> Vec<Vec<i64>> {
    let n = scaled.len();
    let mut basis = Vec::with_capacity(n);
    for (i, s) in scaled.iter().enumerate() {
        let mut row = vec![BigInt::zero(); n + 1];
        row[i] = BigInt::one();
        row[n] = s.clone();
        basis.push(row);
    }
    let reduced = lll_reduce(basis);

    let mut out = Vec::new();
    for row in &reduced {
        let mut e = Vec::with_capacity(n);
        let mut ok = true;
        for x in &row[..n] {
            match i64::try_from(x.clone()) {
                Ok(v) if v.abs() <= bound => e.push(v),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && e.iter().any(|&v| v != 0) && !out.contains(&e) {
            let neg: Vec<i64> = e.iter().map(|v| -v).collect();
            if !out.contains(&neg) {
                out.push(e);
            }
        }
    }
    out
}
