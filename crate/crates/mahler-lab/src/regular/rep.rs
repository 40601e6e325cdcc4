//! Linear representations of k-regular sequences.
//!
//! Digit convention: writing n in base k as i_s ... i_0 (most significant
//! first), f(n) = w^T A_{i_0} ... A_{i_s} v with the least-significant
//! digit's matrix leftmost. The empty product gives f(0) = w^T v.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{MahlerError, Result};

/// (k, dim, w, v, A_0..A_{k-1}) with exact integer entries; matrices row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRepresentation {
    pub k: u64,
    pub dim: usize,
    pub w: Vec<BigInt>,
    pub v: Vec<BigInt>,
    pub matrices: Vec<Vec<Vec<BigInt>>>,
}

impl LinearRepresentation {
    pub fn new(
        k: u64,
        w: Vec<BigInt>,
        v: Vec<BigInt>,
        matrices: Vec<Vec<Vec<BigInt>>>,
    ) -> Result<Self> {
        if k < 2 {
            return Err(MahlerError::InvalidInput(format!("k = {k} must be >= 2")));
        }
        let dim = w.len();
        if dim == 0 || v.len() != dim {
            return Err(MahlerError::InvalidInput(
                "w and v must be nonempty vectors of equal length".into(),
            ));
        }
        if matrices.len() != k as usize {
            return Err(MahlerError::InvalidInput(format!(
                "expected {k} matrices, got {}",
                matrices.len()
            )));
        }
        for m in &matrices {
            if m.len() != dim || m.iter().any(|row| row.len() != dim) {
                return Err(MahlerError::InvalidInput(format!(
                    "matrices must be {dim}x{dim}"
                )));
            }
        }
        Ok(LinearRepresentation {
            k,
            dim,
            w,
            v,
            matrices,
        })
    }

    pub fn from_ints(k: u64, w: &[i64], v: &[i64], matrices: &[&[&[i64]]]) -> Result<Self> {
        let conv = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        LinearRepresentation::new(
            k,
            conv(w),
            conv(v),
            matrices
                .iter()
                .map(|m| m.iter().map(|row| conv(row)).collect())
                .collect(),
        )
    }

    /// f(n) as an exact integer.
    pub fn term(&self, n: u64) -> BigInt {
        // Build the product right-to-left: start from v, apply matrices for
        // the most significant digit first, ending with the least significant
        // applied last... the digit order has the LSD matrix leftmost, so v
        // absorbs the MSD matrix first.
        let mut digits = Vec::new();
        let mut m = n;
        while m > 0 {
            digits.push((m % self.k) as usize);
            m /= self.k;
        }
        // digits[0] is the least significant; product A_{i_0} ... A_{i_s} v
        // folds from the right.
        let mut x = self.v.clone();
        for &d in digits.iter().rev() {
            x = self.mat_vec(&self.matrices[d], &x);
        }
        dot(&self.w, &x)
    }

    /// f(n) as a rational, the canonical exact-scalar type of the pipeline.
    pub fn eval_term(&self, n: u64) -> BigRational {
        BigRational::from(self.term(n))
    }

    fn mat_vec(&self, m: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
        m.iter().map(|row| dot(row, x)).collect()
    }

    /// Row vector times matrix.
    fn vec_mat(&self, x: &[BigInt], m: &[Vec<BigInt>]) -> Vec<BigInt> {
        (0..self.dim)
            .map(|j| x.iter().zip(m).map(|(xi, row)| xi * &row[j]).sum())
            .collect()
    }

    /// f(k^0), f(k^1), ..., f(k^l_max) by repeated multiplication with A_0:
    /// k^l has digits 0^l 1 (least significant first), so
    /// f(k^l) = w^T A_0^l A_1 v.
    pub fn power_subsequence(&self, l_max: usize) -> Vec<BigInt> {
        let a1v = self.mat_vec(&self.matrices[1], &self.v);
        let mut left = self.w.clone();
        let mut out = Vec::with_capacity(l_max + 1);
        for _ in 0..=l_max {
            out.push(dot(&left, &a1v));
            left = self.vec_mat(&left, &self.matrices[0]);
        }
        out
    }

    /// True when padding with leading zeros is a no-op, enabling the fast
    /// partial-sum path.
    pub fn zero_padding_invariant(&self) -> bool {
        self.mat_vec(&self.matrices[0], &self.v) == self.v
    }

    /// Sum of all digit matrices.
    pub fn matrix_sum(&self) -> Vec<Vec<BigInt>> {
        let mut s = vec![vec![BigInt::zero(); self.dim]; self.dim];
        for m in &self.matrices {
            for (srow, mrow) in s.iter_mut().zip(m) {
                for (se, me) in srow.iter_mut().zip(mrow) {
                    *se += me;
                }
            }
        }
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawRep = serde_json::from_str(text)
            .map_err(|e| MahlerError::InvalidInput(format!("representation JSON: {e}")))?;
        raw.build()
    }

    pub fn to_json(&self) -> String {
        let conv = |xs: &[BigInt]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let raw = RawRep {
            k: self.k,
            dim: self.dim,
            w: conv(&self.w),
            v: conv(&self.v),
            matrices: self
                .matrices
                .iter()
                .map(|m| m.iter().map(|row| conv(row)).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("representation serialization")
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Wire format: exact integer strings, matrices row-major.
#[derive(Debug, Serialize, Deserialize)]
struct RawRep {
    k: u64,
    dim: usize,
    w: Vec<String>,
    v: Vec<String>,
    matrices: Vec<Vec<Vec<String>>>,
}

impl RawRep {
    fn build(self) -> Result<LinearRepresentation> {
        let parse = |s: &String| -> Result<BigInt> {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| MahlerError::InvalidInput(format!("not an integer: {s:?}")))
        };
        let conv = |xs: &[String]| xs.iter().map(parse).collect::<Result<Vec<_>>>();
        let rep = LinearRepresentation::new(
            self.k,
            conv(&self.w)?,
            conv(&self.v)?,
            self.matrices
                .iter()
                .map(|m| m.iter().map(|row| conv(row)).collect())
                .collect::<Result<Vec<_>>>()?,
        )?;
        if rep.dim != self.dim {
            return Err(MahlerError::InvalidInput(format!(
                "declared dim {} does not match vectors of length {}",
                self.dim, rep.dim
            )));
        }
        Ok(rep)
    }
}

/// Outcome of checking a representation against reference values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub ok: bool,
    pub first_mismatch: Option<u64>,
}

/// Compare eval_term against an oracle indexed from 0.
pub fn verify_representation(rep: &LinearRepresentation, oracle: &[BigRational]) -> VerifyOutcome {
    for (n, want) in oracle.iter().enumerate() {
        if rep.eval_term(n as u64) != *want {
            return VerifyOutcome {
                ok: false,
                first_mismatch: Some(n as u64),
            };
        }
    }
    VerifyOutcome {
        ok: true,
        first_mismatch: None,
    }
}

/// w^T M^r v for the matrix sum, by repeated vector-matrix products.
pub fn weighted_power(rep: &LinearRepresentation, r: usize) -> BigInt {
    let m = rep.matrix_sum();
    let mut left = rep.w.clone();
    for _ in 0..r {
        left = rep.vec_mat(&left, &m);
    }
    dot(&left, &rep.v)
}

impl LinearRepresentation {
    /// Constant-one control sequence, any k.
    pub fn all_ones(k: u64) -> Self {
        let one = vec![BigInt::one()];
        LinearRepresentation {
            k,
            dim: 1,
            w: one.clone(),
            v: one,
            matrices: (0..k).map(|_| vec![vec![BigInt::one()]]).collect(),
        }
    }
}
