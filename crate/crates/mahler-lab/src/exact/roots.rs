//! Certified real-root isolation via Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::RationalPoly;

/// A real root of a polynomial, either exact (low == high) or bracketed by a
/// rational interval containing exactly one root.
#[derive(Debug, Clone)]
pub struct IsolatedRoot {
    pub low: BigRational,
    pub high: BigRational,
    pub multiplicity: usize,
}

impl IsolatedRoot {
    pub fn is_exact(&self) -> bool {
        self.low == self.high
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.low + &self.high) / BigRational::from(BigInt::from(2))
    }

    pub fn width(&self) -> BigRational {
        &self.high - &self.low
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }

    /// |root| as an interval [lo, hi].
    pub fn abs_interval(&self) -> (BigRational, BigRational) {
        let zero = BigRational::zero();
        if self.low >= zero {
            (self.low.clone(), self.high.clone())
        } else if self.high <= zero {
            (-self.high.clone(), -self.low.clone())
        } else {
            let hi = if -&self.low > self.high {
                -self.low.clone()
            } else {
                self.high.clone()
            };
            (zero, hi)
        }
    }
}

/// Result of isolating all roots of a rational polynomial.
#[derive(Debug, Clone)]
pub struct RootIsolation {
    /// Real roots in ascending order.
    pub real_roots: Vec<IsolatedRoot>,
    /// Number of non-real roots, counted with multiplicity.
    pub complex_count: usize,
    /// Every root (real or complex) has modulus below this bound.
    pub modulus_bound: BigRational,
    /// True when the polynomial has no repeated roots over C.
    pub distinct: bool,
}

/// Isolate the real roots of a nonzero polynomial into disjoint intervals of
/// width at most 10^-precision, with multiplicities from the square-free
/// decomposition. Non-real roots are reported as a count plus the common
/// modulus bound.
pub fn isolate_real_roots(p: &RationalPoly, precision: u32) -> RootIsolation {
    assert!(!p.is_zero(), "cannot isolate roots of the zero polynomial");
    let distinct = p.is_square_free();
    let bound = cauchy_bound(p);
    let width_limit = pow10_neg(precision);

    let mut real_roots: Vec<IsolatedRoot> = Vec::new();
    let mut complex_count = 0usize;

    for (factor, mult) in p.square_free_decomposition() {
        let roots = isolate_square_free(&factor, &width_limit);
        complex_count += (factor.degree() - roots.len()) * mult;
        for (low, high) in roots {
            real_roots.push(IsolatedRoot {
                low,
                high,
                multiplicity: mult,
            });
        }
    }
    real_roots.sort_by(|a, b| a.low.cmp(&b.low));

    RootIsolation {
        real_roots,
        complex_count,
        modulus_bound: bound,
        distinct,
    }
}

/// Cauchy bound: all roots have modulus < 1 + max |c_i / c_n|.
pub fn cauchy_bound(p: &RationalPoly) -> BigRational {
    let lead = p.leading().expect("nonzero polynomial").clone();
    let mut m = BigRational::zero();
    for c in p.coeffs().iter().take(p.degree()) {
        let r = (c / &lead).abs();
        if r > m {
            m = r;
        }
    }
    m + BigRational::one()
}

/// Isolate roots of a square-free polynomial; each returned interval
/// (low, high) contains exactly one simple root, or low == high for an exact
/// rational root.
fn isolate_square_free(q: &RationalPoly, width_limit: &BigRational) -> Vec<(BigRational, BigRational)> {
    if q.degree() == 0 {
        return vec![];
    }
    if q.degree() == 1 {
        let root = -q.coeff(0) / q.coeff(1);
        return vec![(root.clone(), root)];
    }

    let chain = sturm_chain(q);
    let bound = cauchy_bound(q);
    let mut out = Vec::new();

    // Initial interval (-B, B]; B exceeds all real roots in modulus.
    let a = -bound.clone();
    let b = bound.clone();
    let mut stack = vec![(a.clone(), b.clone(), variations(&chain, &a), variations(&chain, &b))];

    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        let count = vlo - vhi;
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(refine_single(q, lo, hi, width_limit));
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
        if q.eval(&mid).is_zero() {
            // Exact rational root at the midpoint; nudge the split point so the
            // Sturm counts on both sides remain valid, and record the root.
            out.push((mid.clone(), mid.clone()));
            let mut delta = (&hi - &lo) / BigRational::from(BigInt::from(1024));
            loop {
                let left = &mid - &delta;
                let right = &mid + &delta;
                if !q.eval(&left).is_zero() && !q.eval(&right).is_zero() {
                    let vl = variations(&chain, &left);
                    let vr = variations(&chain, &right);
                    // (left, right] must contain only the root at mid.
                    if vl - vr == 1 {
                        stack.push((lo, left.clone(), vlo, vl));
                        stack.push((right.clone(), hi, vr, vhi));
                        break;
                    }
                }
                delta /= BigRational::from(BigInt::from(2));
            }
            continue;
        }
        let vmid = variations(&chain, &mid);
        if vlo - vmid > 0 {
            stack.push((lo, mid.clone(), vlo, vmid));
        }
        if vmid - vhi > 0 {
            stack.push((mid, hi, vmid, vhi));
        }
    }

    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Shrink an interval known to contain exactly one simple root of q by
/// bisection on sign changes.
fn refine_single(
    q: &RationalPoly,
    mut lo: BigRational,
    mut hi: BigRational,
    width_limit: &BigRational,
) -> (BigRational, BigRational) {
    // The root may sit exactly at the right endpoint (interval is half-open).
    if q.eval(&hi).is_zero() {
        return (hi.clone(), hi);
    }
    let slo = q.eval(&lo).signum();
    debug_assert!(slo != q.eval(&hi).signum());
    let two = BigRational::from(BigInt::from(2));
    while &hi - &lo > *width_limit {
        let mid = (&lo + &hi) / &two;
        let v = q.eval(&mid);
        if v.is_zero() {
            return (mid.clone(), mid);
        }
        if v.signum() == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Sturm chain p0 = q, p1 = q', p_{i+1} = -rem(p_{i-1}, p_i).
fn sturm_chain(q: &RationalPoly) -> Vec<RationalPoly> {
    let mut chain = vec![q.clone(), q.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    chain
}

fn variations(chain: &[RationalPoly], x: &BigRational) -> isize {
    let mut count = 0isize;
    let mut last = 0i8;
    for p in chain {
        let s = sign_i8(&p.eval(x));
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_i8(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn pow10_neg(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    // Good enough for reporting; exact work never round-trips through f64.
    // Strip common magnitude first so huge numerators and denominators do not
    // both overflow to infinity.
    let nd = q.numer().to_string().len();
    let dd = q.denom().to_string().len();
    let shift = nd.min(dd).saturating_sub(18) as u32;
    let (mut n, mut d) = (q.numer().clone(), q.denom().clone());
    if shift > 0 {
        let s = BigInt::from(10u32).pow(shift);
        n /= &s;
        d /= &s;
    }
    let f = |i: &BigInt| i.to_string().parse::<f64>().unwrap_or(f64::NAN);
    f(&n) / f(&d)
}
