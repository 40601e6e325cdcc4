//! Dense univariate polynomials over arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{MahlerError, Result};

/// Polynomial with exact rational coefficients, `coeffs[i]` the coefficient
/// of `z^i`. The zero polynomial is the empty coefficient list; otherwise the
/// trailing coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RationalPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RationalPoly::new(vec![c])
    }

    /// Polynomial from integer coefficients, ascending degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        RationalPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
        )
    }

    /// Parse a coefficient list of exact rationals given as strings
    /// ("p/q" or plain integers), ascending degree.
    pub fn from_strings(coeffs: &[String]) -> Result<Self> {
        let parsed: Result<Vec<BigRational>> = coeffs.iter().map(|s| parse_rational(s)).collect();
        Ok(RationalPoly::new(parsed?))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports degree 0 by convention of callers
    /// that have already excluded it.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Index of the lowest nonzero coefficient (order of vanishing at 0).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sum of coefficients, i.e. the value at z = 1.
    pub fn eval_at_one(&self) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |a, c| a + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return RationalPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
            .collect();
        RationalPoly::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        RationalPoly::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RationalPoly::new(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division, returning (quotient, remainder).
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dlead = divisor.leading().unwrap();
        let ddeg = divisor.degree();
        if rem.len() <= ddeg {
            return (RationalPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - ddeg];
        for i in (ddeg..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / dlead;
            quot[i - ddeg] = q.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - ddeg + j;
                rem[idx] = &rem[idx] - &q * dc;
            }
        }
        (RationalPoly::new(quot), RationalPoly::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => RationalPoly::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Square-free part: self / gcd(self, self').
    pub fn square_free_part(&self) -> Self {
        if self.is_zero() {
            return RationalPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.monic();
        }
        let (q, _) = self.div_rem(&g);
        q.monic()
    }

    /// True when self has no repeated roots (over C).
    pub fn is_square_free(&self) -> bool {
        self.is_zero() || self.gcd(&self.derivative()).degree() == 0
    }

    /// Yun-style square-free decomposition: returns pairs (factor, multiplicity)
    /// with self = lc * prod factor_i^mult_i and each factor square-free, monic.
    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_zero() || self.degree() == 0 {
            return out;
        }
        let mut p = self.monic();
        let mut mult = 1usize;
        // Repeated gcd peeling; fine at the degrees this artifact meets.
        loop {
            let g = p.gcd(&p.derivative());
            if g.degree() == 0 {
                if p.degree() > 0 {
                    out.push((p, mult));
                }
                break;
            }
            let (q, _) = p.div_rem(&g);
            // q = product of distinct factors of p; those not dividing g have
            // exact multiplicity `mult` in the original.
            let (extra, _) = q.div_rem(&q.gcd(&g));
            if extra.degree() > 0 {
                out.push((extra.monic(), mult));
            }
            p = g;
            mult += 1;
        }
        out
    }

    /// Substitute z -> -z.
    pub fn compose_neg(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        RationalPoly::new(coeffs)
    }

    /// Clear denominators, returning integer coefficients with content 1 and
    /// positive leading coefficient.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        use num_integer::Integer;
        if self.is_zero() {
            return vec![];
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if !content.is_zero() {
            for c in ints.iter_mut() {
                *c = &*c / &content;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in ints.iter_mut() {
                *c = -&*c;
            }
        }
        ints
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoly({})", self)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                _ => {
                    if a.is_one() {
                        write!(f, "z")?;
                    } else {
                        write!(f, "{}*z", a)?;
                    }
                    if i > 1 {
                        write!(f, "^{}", i)?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// All rational roots of a nonzero polynomial, without multiplicity, via the
/// rational root theorem on the primitive integer form. Gives up (returns
/// only what is certain, possibly nothing) when the edge coefficients are too
/// large to enumerate divisors.
pub fn rational_roots(p: &RationalPoly) -> Vec<BigRational> {
    use num_traits::ToPrimitive;
    let mut out = Vec::new();
    if p.is_zero() || p.degree() == 0 {
        return out;
    }
    let mut ints = p.primitive_integer_coeffs();
    let val = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if val > 0 {
        out.push(BigRational::zero());
        ints.drain(..val);
    }
    if ints.len() < 2 {
        return out;
    }
    let (Some(a0), Some(an)) = (
        ints.first().unwrap().abs().to_u64(),
        ints.last().unwrap().abs().to_u64(),
    ) else {
        return out;
    };
    let q = RationalPoly::new(ints.iter().map(|c| BigRational::from(c.clone())).collect());
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(sign) * BigInt::from(num), BigInt::from(den));
                if q.eval(&cand).is_zero() && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
        if d > 1_000_000 {
            break;
        }
    }
    out
}

/// n-th cyclotomic polynomial: (z^n - 1) / prod of cyclotomic(d) over proper
/// divisors d of n.
pub fn cyclotomic(n: u64) -> RationalPoly {
    assert!(n >= 1);
    let mut xn_minus_1 = vec![BigRational::zero(); n as usize + 1];
    xn_minus_1[0] = -BigRational::one();
    xn_minus_1[n as usize] = BigRational::one();
    let mut p = RationalPoly::new(xn_minus_1);
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = p.div_rem(&cyclotomic(d));
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    p
}

/// Parse "p/q" or a plain integer string into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| MahlerError::InvalidInput(format!("not an integer: {t:?}")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let n = parse_int(num)?;
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(MahlerError::InvalidInput(format!("zero denominator: {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from(parse_int(s)?)),
    }
}

/// Render a rational as "p/q" (or "p" when integral), matching the input format.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn eval_at_one_examples() {
        // z - 3
        assert_eq!(
            RationalPoly::from_ints(&[-3, 1]).eval_at_one(),
            q(-2, 1)
        );
        // -(1 + z + z^2), the Stern a_1
        assert_eq!(
            RationalPoly::from_ints(&[-1, -1, -1]).eval_at_one(),
            q(-3, 1)
        );
        assert_eq!(RationalPoly::zero().eval_at_one(), q(0, 1));
    }

    #[test]
    fn normalization_strips_trailing_zeros() {
        let p = RationalPoly::new(vec![q(1, 2), q(0, 1), q(0, 1)]);
        assert_eq!(p.degree(), 0);
        assert!(!p.is_zero());
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = RationalPoly::from_ints(&[2, -3, 0, 1, 5]);
        let b = RationalPoly::from_ints(&[1, 1, 2]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(quot.mul(&b).add(&rem), a);
        assert!(rem.degree() < b.degree());
    }

    #[test]
    fn square_free_decomposition_detects_multiplicity() {
        // (z-1)^2 (z+2)
        let p = RationalPoly::from_ints(&[-1, 1])
            .mul(&RationalPoly::from_ints(&[-1, 1]))
            .mul(&RationalPoly::from_ints(&[2, 1]));
        let dec = p.square_free_decomposition();
        assert_eq!(dec.len(), 2);
        let mults: Vec<usize> = dec.iter().map(|(_, m)| *m).collect();
        assert!(mults.contains(&1) && mults.contains(&2));
        assert!(!p.is_square_free());
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic(1), RationalPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), RationalPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic(4), RationalPoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(5), RationalPoly::from_ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(8), RationalPoly::from_ints(&[1, 0, 0, 0, 1]));
        // Phi_p(1) = p for odd primes.
        assert_eq!(cyclotomic(7).eval_at_one(), q(7, 1));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
