//! High-precision real and complex floating point, wrapping `astro-float`.
//!
//! All radial work near the unit circle runs through this module: 1 - z_m
//! underflows f64 near depth 40, so everything is computed in arbitrary
//! precision and only demoted to f64 for reporting.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;

use std::cell::RefCell;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

const RM: RoundingMode = RoundingMode::None;

/// Shared precision context. `bits` includes guard bits over the requested
/// decimal precision.
#[derive(Clone, Copy, Debug)]
pub struct FloatCtx {
    pub bits: usize,
}

impl FloatCtx {
    /// Context for roughly `digits` decimal digits plus guard bits.
    pub fn with_digits(digits: u32) -> Self {
        FloatCtx {
            bits: (digits as usize * 10) / 3 + 96,
        }
    }

    pub fn digits(&self) -> u32 {
        (((self.bits.saturating_sub(96)) * 3) / 10) as u32
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_i64(0, self.bits)
    }

    pub fn from_i64(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.bits)
    }

    pub fn from_f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.bits)
    }

    pub fn from_bigint(&self, n: &BigInt) -> BigFloat {
        let p = self.bits.max(n.bits() as usize + 64);
        with_cc(|cc| BigFloat::parse(&n.to_string(), Radix::Dec, p, RM, cc))
    }

    pub fn from_rational(&self, q: &BigRational) -> BigFloat {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        n.div(&d, self.bits, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.bits, RM)
    }

    pub fn ln(&self, a: &BigFloat) -> BigFloat {
        with_cc(|cc| a.ln(self.bits, RM, cc))
    }

    pub fn exp(&self, a: &BigFloat) -> BigFloat {
        with_cc(|cc| a.exp(self.bits, RM, cc))
    }

    pub fn sin(&self, a: &BigFloat) -> BigFloat {
        with_cc(|cc| a.sin(self.bits, RM, cc))
    }

    pub fn cos(&self, a: &BigFloat) -> BigFloat {
        with_cc(|cc| a.cos(self.bits, RM, cc))
    }

    pub fn pi(&self) -> BigFloat {
        with_cc(|cc| cc.pi(self.bits, RM))
    }

    /// a^n for signed integer n.
    pub fn powi(&self, a: &BigFloat, n: i64) -> BigFloat {
        if n < 0 {
            let p = a.powi(n.unsigned_abs() as usize, self.bits, RM);
            self.from_i64(1).div(&p, self.bits, RM)
        } else {
            a.powi(n as usize, self.bits, RM)
        }
    }

    /// a^x for positive real a via exp(x ln a).
    pub fn pow(&self, a: &BigFloat, x: &BigFloat) -> BigFloat {
        self.exp(&self.mul(x, &self.ln(a)))
    }

    /// Positive real k-th root.
    pub fn kth_root(&self, a: &BigFloat, k: u64) -> BigFloat {
        let inv_k = self.div(&self.from_i64(1), &self.from_i64(k as i64));
        self.pow(a, &inv_k)
    }

    /// log base k.
    pub fn log_base(&self, a: &BigFloat, k: u64) -> BigFloat {
        self.div(&self.ln(a), &self.ln(&self.from_i64(k as i64)))
    }

    pub fn to_f64(&self, a: &BigFloat) -> f64 {
        if a.is_nan() {
            return f64::NAN;
        }
        if a.is_inf_pos() {
            return f64::INFINITY;
        }
        if a.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if a.is_zero() {
            return 0.0;
        }
        let mut r = a.clone();
        // 64 bits of mantissa are plenty for an f64 round trip.
        let _ = r.set_precision(64, RoundingMode::ToEven);
        let s = with_cc(|cc| r.format(Radix::Dec, RoundingMode::ToEven, cc))
            .unwrap_or_else(|_| "NaN".into());
        s.parse::<f64>().unwrap_or(f64::NAN)
    }

    /// Decimal string with the context's full precision.
    pub fn to_string(&self, a: &BigFloat) -> String {
        with_cc(|cc| a.format(Radix::Dec, RoundingMode::ToEven, cc)).unwrap_or_else(|_| "NaN".into())
    }
}

/// Complex number at context precision.
#[derive(Clone, Debug)]
pub struct HpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl HpComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        HpComplex { re, im }
    }

    pub fn real(ctx: &FloatCtx, re: BigFloat) -> Self {
        HpComplex {
            re,
            im: ctx.zero(),
        }
    }

    pub fn from_rational_pair(ctx: &FloatCtx, re: &BigRational, im: &BigRational) -> Self {
        HpComplex {
            re: ctx.from_rational(re),
            im: ctx.from_rational(im),
        }
    }

    pub fn zero(ctx: &FloatCtx) -> Self {
        HpComplex {
            re: ctx.zero(),
            im: ctx.zero(),
        }
    }

    pub fn one(ctx: &FloatCtx) -> Self {
        HpComplex {
            re: ctx.from_i64(1),
            im: ctx.zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self, ctx: &FloatCtx) -> Self {
        HpComplex {
            re: ctx.add(&self.re, &other.re),
            im: ctx.add(&self.im, &other.im),
        }
    }

    pub fn sub(&self, other: &Self, ctx: &FloatCtx) -> Self {
        HpComplex {
            re: ctx.sub(&self.re, &other.re),
            im: ctx.sub(&self.im, &other.im),
        }
    }

    pub fn mul(&self, other: &Self, ctx: &FloatCtx) -> Self {
        let re = ctx.sub(
            &ctx.mul(&self.re, &other.re),
            &ctx.mul(&self.im, &other.im),
        );
        let im = ctx.add(
            &ctx.mul(&self.re, &other.im),
            &ctx.mul(&self.im, &other.re),
        );
        HpComplex { re, im }
    }

    pub fn div(&self, other: &Self, ctx: &FloatCtx) -> Self {
        let den = ctx.add(
            &ctx.mul(&other.re, &other.re),
            &ctx.mul(&other.im, &other.im),
        );
        let num = self.mul(
            &HpComplex {
                re: other.re.clone(),
                im: other.im.neg(),
            },
            ctx,
        );
        HpComplex {
            re: ctx.div(&num.re, &den),
            im: ctx.div(&num.im, &den),
        }
    }

    pub fn neg(&self) -> Self {
        HpComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn scale(&self, s: &BigFloat, ctx: &FloatCtx) -> Self {
        HpComplex {
            re: ctx.mul(&self.re, s),
            im: ctx.mul(&self.im, s),
        }
    }

    pub fn abs(&self, ctx: &FloatCtx) -> BigFloat {
        ctx.sqrt(&ctx.add(
            &ctx.mul(&self.re, &self.re),
            &ctx.mul(&self.im, &self.im),
        ))
    }

    pub fn powi(&self, mut n: u64, ctx: &FloatCtx) -> Self {
        let mut acc = HpComplex::one(ctx);
        let mut sq = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq, ctx);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq, ctx);
            }
        }
        acc
    }

    pub fn to_f64_pair(&self, ctx: &FloatCtx) -> (f64, f64) {
        (ctx.to_f64(&self.re), ctx.to_f64(&self.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn ctx() -> FloatCtx {
        FloatCtx::with_digits(60)
    }

    #[test]
    fn rational_round_trip() {
        let c = ctx();
        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        let x = c.from_rational(&q);
        let back = c.to_f64(&x);
        assert!((back - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn kth_root_inverts_power() {
        let c = ctx();
        let half = c.from_rational(&BigRational::new(BigInt::one(), BigInt::from(2)));
        let r = c.kth_root(&half, 8);
        let again = c.powi(&r, 8);
        let err = c.sub(&again, &half).abs();
        let tol = c.pow(&c.from_i64(10), &c.from_i64(-50));
        assert!(err.cmp(&tol) == Some(-1));
    }

    #[test]
    fn complex_multiplication() {
        let c = ctx();
        // (1 + i)^2 = 2i
        let z = HpComplex::new(c.from_i64(1), c.from_i64(1));
        let z2 = z.powi(2, &c);
        assert!(c.to_f64(&z2.re).abs() < 1e-50);
        assert!((c.to_f64(&z2.im) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn pi_and_trig() {
        let c = ctx();
        let pi = c.pi();
        assert!((c.to_f64(&pi) - std::f64::consts::PI).abs() < 1e-15);
        let s = c.sin(&pi);
        assert!(c.to_f64(&s).abs() < 1e-50);
    }

    #[test]
    fn tiny_one_minus_z_survives() {
        // depth-40 ladder point: 1 - (1/2)^(2^-40)
        let c = ctx();
        let half = c.from_rational(&BigRational::new(BigInt::one(), BigInt::from(2)));
        let mut z = half;
        for _ in 0..40 {
            z = c.sqrt(&z);
        }
        let one_minus = c.sub(&c.from_i64(1), &z);
        let v = c.to_f64(&one_minus);
        assert!(v > 0.0 && v < 1e-12);
    }
}
