//! Exact arithmetic in real quadratic fields Q(sqrt(D)).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::poly::RationalPoly;
use crate::error::{MahlerError, Result};

/// a + b*sqrt(D) with D a square-free positive integer. Rational numbers are
/// represented with b = 0 and D = 1.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticNumber {
    pub a: BigRational,
    pub b: BigRational,
    pub d: u64,
}

impl QuadraticNumber {
    pub fn rational(a: BigRational) -> Self {
        QuadraticNumber {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn from_int(n: i64) -> Self {
        QuadraticNumber::rational(BigRational::from(BigInt::from(n)))
    }

    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        let mut x = QuadraticNumber { a, b, d };
        x.normalize();
        x
    }

    /// Pull square factors of D into b and collapse to rational when possible.
    fn normalize(&mut self) {
        if self.b.is_zero() {
            self.d = 1;
            return;
        }
        let (sq, rest) = split_square(self.d);
        if sq > 1 {
            self.b *= BigRational::from(BigInt::from(sq));
            self.d = rest;
        }
        if self.d == 1 {
            self.a += std::mem::replace(&mut self.b, BigRational::zero());
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn check_field(&self, other: &Self) -> Result<u64> {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, _) => Ok(other.d),
            (_, true) => Ok(self.d),
            _ if self.d == other.d => Ok(self.d),
            _ => Err(MahlerError::MixedFields(self.d, other.d)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let d = self.check_field(other)?;
        Ok(QuadraticNumber::new(
            &self.a + &other.a,
            &self.b + &other.b,
            d,
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self.check_field(other)?;
        let dd = BigRational::from(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * &dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadraticNumber::new(a, b, d))
    }

    /// Field conjugate a - b*sqrt(D).
    pub fn conjugate(&self) -> Self {
        QuadraticNumber {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm a^2 - D b^2.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from(BigInt::from(self.d)) * &self.b * &self.b
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(MahlerError::NonPositiveElement("division by zero".into()));
        }
        let n = self.norm();
        let conj = self.conjugate();
        Ok(QuadraticNumber::new(conj.a / &n, conj.b / &n, self.d))
    }

    /// self^e for any integer exponent, by binary exponentiation.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = QuadraticNumber::from_int(1);
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Exact sign, using the conjugate to avoid any floating point.
    pub fn is_positive(&self) -> bool {
        if self.b.is_zero() {
            return self.a.is_positive();
        }
        // a + b sqrt(D) > 0  <=>  (a > 0 and (b >= 0 or a^2 > D b^2))
        //                      or (b > 0 and D b^2 > a^2)
        let n = self.norm();
        if self.a.is_positive() {
            !self.b.is_negative() || n.is_positive()
        } else {
            self.b.is_positive() && n.is_negative()
        }
    }

    /// Exact square root within the same field, if one exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.b.is_zero() {
            return sqrt_rational(&self.a);
        }
        // (x + y sqrt(D))^2 = self: x^2 solves t^2 - a t + D b^2 / 4 = 0.
        let disc = self.norm();
        let sdisc = rational_square_root(&disc)?;
        let two = BigRational::from(BigInt::from(2));
        for t in [(&self.a + &sdisc) / &two, (&self.a - &sdisc) / &two] {
            if let Some(x) = rational_square_root(&t) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&x * &two);
                let cand = QuadraticNumber::new(x, y, self.d);
                if cand.mul(&cand).ok()? == *self {
                    return Some(if cand.is_positive() {
                        cand
                    } else {
                        cand.neg()
                    });
                }
            }
        }
        None
    }

    pub fn neg(&self) -> Self {
        QuadraticNumber {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Decimal approximation for reporting.
    pub fn to_f64(&self) -> f64 {
        use super::roots::rational_to_f64;
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * (self.d as f64).sqrt()
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// Exact root of an irreducible polynomial of degree <= 2. For degree 2 with
/// two real roots, returns the larger one.
pub fn quadratic_from_poly(p: &RationalPoly) -> Result<QuadraticNumber> {
    match p.degree() {
        0 => Err(MahlerError::NotQuadratic("constant polynomial".into())),
        1 => Ok(QuadraticNumber::rational(-p.coeff(0) / p.coeff(1))),
        2 => {
            let a = p.coeff(2);
            let b = p.coeff(1);
            let c = p.coeff(0);
            let four = BigRational::from(BigInt::from(4));
            let two = BigRational::from(BigInt::from(2));
            let disc = &b * &b - four * &a * &c;
            if disc.is_negative() {
                return Err(MahlerError::NotQuadratic(format!(
                    "negative discriminant {disc}"
                )));
            }
            // disc = r^2 * D with D square-free.
            let (r, d) = rational_sqrt_decompose(&disc);
            let denom = &two * &a;
            let root = QuadraticNumber::new(-&b / &denom, &r / &denom, d);
            // Larger root: flip the sqrt term if the leading coefficient made
            // it negative.
            if root.b.is_negative() {
                Ok(QuadraticNumber::new(root.a, -root.b, root.d))
            } else {
                Ok(root)
            }
        }
        n => Err(MahlerError::NotQuadratic(format!("degree {n} > 2"))),
    }
}

/// Split n = sq^2 * rest with rest square-free.
fn split_square(n: u64) -> (u64, u64) {
    let mut sq = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            sq *= p;
        }
        p += 1;
    }
    (sq, rest)
}

/// sqrt of a nonnegative rational if it is an exact rational square.
fn rational_square_root(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Write q = r^2 * D with D a square-free positive integer and r rational.
fn rational_sqrt_decompose(q: &BigRational) -> (BigRational, u64) {
    assert!(!q.is_negative());
    if q.is_zero() {
        return (BigRational::zero(), 1);
    }
    // q = n/d = (n*d) / d^2, so sqrt(q) = sqrt(n*d) / d.
    let nd = q.numer() * q.denom();
    let root = nd.sqrt();
    if &root * &root == nd {
        return (BigRational::new(root, q.denom().clone()), 1);
    }
    // Factor out the square part of n*d (small values only; fine here).
    let n: u64 = nd
        .try_into()
        .expect("square-free decomposition limited to small discriminants");
    let (sq, rest) = split_square(n);
    (
        BigRational::new(BigInt::from(sq), q.denom().clone()),
        rest,
    )
}

/// sqrt of a positive rational inside some quadratic field, when expressible
/// as r or r*sqrt(D).
fn sqrt_rational(q: &BigRational) -> Option<QuadraticNumber> {
    if q.is_negative() {
        return None;
    }
    if let Some(r) = rational_square_root(q) {
        return Some(QuadraticNumber::rational(r));
    }
    let (r, d) = rational_sqrt_decompose(q);
    Some(QuadraticNumber::new(BigRational::zero(), r, d))
}
