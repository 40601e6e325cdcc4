//! Exact integer kernels via Hermite-style row reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Integer matrix in row-major order.
#[derive(Debug, Clone)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix::new(r, c, data)
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    /// Multiply by an integer vector.
    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &x[j]).sum())
            .collect()
    }
}

/// Basis of the integer kernel {x in Z^cols : M x = 0}, possibly empty.
///
/// Works on the transpose augmented with the identity: unimodular row
/// operations bring M^T to echelon form; transformation rows matching zero
/// echelon rows span the kernel lattice.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = m.cols; // unknowns
    let r = m.rows;

    // a = M^T (n x r), u = identity (n x n); keep u rows synchronized.
    let mut a = IntMatrix::new(
        n,
        r,
        (0..n * r)
            .map(|idx| m.at(idx % r, idx / r).clone())
            .collect(),
    );
    let mut u = IntMatrix::new(
        n,
        n,
        (0..n * n)
            .map(|idx| {
                if idx / n == idx % n {
                    BigInt::from(1)
                } else {
                    BigInt::zero()
                }
            })
            .collect(),
    );

    let mut pivot_row = 0usize;
    for col in 0..r {
        if pivot_row >= n {
            break;
        }
        // Clear the column below pivot_row with gcd steps.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..n {
                if !a.at(i, col).is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if a.at(i, col).magnitude() < a.at(b, col).magnitude() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(p) = best else { break };
            swap_rows(&mut a, &mut u, pivot_row, p);
            let mut done = true;
            for i in (pivot_row + 1)..n {
                if a.at(i, col).is_zero() {
                    continue;
                }
                let q = a.at(i, col).div_floor(a.at(pivot_row, col));
                row_sub_mul(&mut a, i, pivot_row, &q);
                row_sub_mul(&mut u, i, pivot_row, &q);
                if !a.at(i, col).is_zero() {
                    done = false;
                }
            }
            if done {
                pivot_row += 1;
                break;
            }
        }
    }

    // Rows of a that are now zero correspond to kernel vectors in u.
    let mut basis = Vec::new();
    for i in 0..n {
        if (0..r).all(|j| a.at(i, j).is_zero()) {
            basis.push((0..n).map(|j| u.at(i, j).clone()).collect());
        }
    }
    basis
}

fn swap_rows(a: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols {
        a.data.swap(i * a.cols + c, j * a.cols + c);
    }
    for c in 0..u.cols {
        u.data.swap(i * u.cols + c, j * u.cols + c);
    }
}

fn row_sub_mul(m: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..m.cols {
        let s = m.at(j, c) * q;
        *m.at_mut(i, c) -= s;
    }
}
