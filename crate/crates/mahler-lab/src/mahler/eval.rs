//! Numeric evaluation of the solution F inside the unit disk.
//!
//! For |z| <= 1/2 the truncated power series converges fast and the tail is
//! bounded explicitly. Closer to the circle, the functional equation is used
//! as a pullback: F(z) is expressed through F(z^k), ..., F(z^{k^d}), walking
//! the tower w_i = z^{k^i} down until the modulus drops below 1/2.

use num_rational::BigRational;

use super::equation::MahlerEquation;
use super::series::solve_coefficients;
use crate::error::{MahlerError, Result};
use crate::exact::poly::RationalPoly;
use crate::exact::rational_to_f64;
use crate::hp::{FloatCtx, HpComplex};

/// Direct-summation radius; beyond it the pullback kicks in.
const SERIES_RADIUS: f64 = 0.5;

/// Coefficient growth envelope |f(n)| <= A (n+1)^B, fitted on the first half
/// of the computed coefficients and checked against all of them.
#[derive(Debug, Clone, Copy)]
struct TailBound {
    log10_a: f64,
    b: f64,
}

impl TailBound {
    fn fit(abs_coeffs: &[f64]) -> Self {
        let half = (abs_coeffs.len() / 2).max(2);
        let mut b = 0.0f64;
        for (n, &a) in abs_coeffs.iter().enumerate().take(half).skip(2) {
            if a > 1.0 {
                b = b.max(a.ln() / (n as f64).ln());
            }
        }
        // Certify A over every computed term, then pad by a factor of two.
        let mut a_max = 1.0f64;
        for (n, &a) in abs_coeffs.iter().enumerate() {
            if a > 0.0 {
                a_max = a_max.max(a / ((n + 1) as f64).powf(b));
            }
        }
        TailBound {
            log10_a: (2.0 * a_max).log10(),
            b,
        }
    }

    /// log10 of an upper bound on sum_{m > n} A (m+1)^B x^m, or +inf when the
    /// geometric comparison fails.
    fn tail_log10(&self, n: usize, x: f64) -> f64 {
        let q = ((n as f64 + 2.0) / (n as f64 + 1.0)).powf(self.b) * x;
        if q >= 1.0 {
            return f64::INFINITY;
        }
        self.log10_a
            + self.b * ((n + 2) as f64).log10()
            + (n as f64 + 1.0) * x.log10()
            - (1.0 - q).log10()
    }
}

/// Prepared evaluator for one equation: exact series coefficients plus the
/// tail envelope.
pub struct Evaluator {
    eq: MahlerEquation,
    coeffs: Vec<BigRational>,
    tail: TailBound,
}

impl Evaluator {
    /// Solve for `terms + 1` exact coefficients and fit the tail envelope.
    /// More terms buy more reachable precision, not more accuracy per digit.
    pub fn new(eq: &MahlerEquation, terms: usize) -> Result<Self> {
        let coeffs = solve_coefficients(eq, terms)?;
        let abs: Vec<f64> = coeffs.iter().map(|c| rational_to_f64(c).abs()).collect();
        Ok(Evaluator {
            eq: eq.clone(),
            coeffs,
            tail: TailBound::fit(&abs),
        })
    }

    pub fn equation(&self) -> &MahlerEquation {
        &self.eq
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// F(z) to `digits` decimal digits, for |z| < 1.
    pub fn evaluate(&self, z: &HpComplex, ctx: &FloatCtx, digits: u32) -> Result<HpComplex> {
        let abs_z = ctx.to_f64(&z.abs(ctx));
        if !(abs_z < 1.0) {
            return Err(MahlerError::InvalidInput(format!(
                "evaluation point has modulus {abs_z} >= 1"
            )));
        }

        // Tower w_0 = z, w_{i+1} = w_i^k until the modulus is small enough
        // for direct summation.
        let mut tower = vec![z.clone()];
        while ctx.to_f64(&tower.last().unwrap().abs(ctx)) > SERIES_RADIUS {
            if tower.len() > 4096 {
                return Err(MahlerError::PrecisionLoss {
                    requested: digits,
                    achieved: 0,
                });
            }
            let next = tower.last().unwrap().powi(self.eq.k, ctx);
            tower.push(next);
        }
        let t = tower.len() - 1;
        let d = self.eq.degree();

        // Series values at w_t, w_t^k, ..., w_t^{k^{d-1}}; window[j] holds
        // F(w_{i+1+j}) while back-substituting at level i.
        let mut window: Vec<HpComplex> = Vec::with_capacity(d);
        let mut w = tower[t].clone();
        for j in 0..d {
            window.push(self.series_sum(&w, ctx, digits)?);
            if j + 1 < d {
                w = w.powi(self.eq.k, ctx);
            }
        }

        for i in (0..t).rev() {
            let wi = &tower[i];
            let a0 = eval_poly_complex(self.eq.a(0), wi, ctx);
            let a0_abs = ctx.to_f64(&a0.abs(ctx));
            if a0.is_zero() || a0_abs < 10f64.powi(-(digits as i32)) {
                let (re, im) = wi.to_f64_pair(ctx);
                return Err(MahlerError::PoleOnPath { re, im });
            }
            let mut acc = HpComplex::zero(ctx);
            for (j, fval) in window.iter().enumerate() {
                let aj = eval_poly_complex(self.eq.a(j + 1), wi, ctx);
                acc = acc.add(&aj.mul(fval, ctx), ctx);
            }
            let val = acc.neg().div(&a0, ctx);
            window.insert(0, val);
            window.truncate(d);
        }
        Ok(window[0].clone())
    }

    /// Truncated series with tail below 10^-(digits+2), or PrecisionLoss if
    /// the stored coefficients cannot get there.
    fn series_sum(&self, z: &HpComplex, ctx: &FloatCtx, digits: u32) -> Result<HpComplex> {
        let x = (ctx.to_f64(&z.abs(ctx)) + 1e-12).min(0.9999);
        let target = -(digits as f64) - 2.0;
        let n_max = self.coeffs.len() - 1;
        let mut n = 8usize;
        loop {
            if self.tail.tail_log10(n, x) <= target {
                break;
            }
            if n >= n_max {
                let achieved = (-self.tail.tail_log10(n_max, x)).floor() as i64;
                return Err(MahlerError::PrecisionLoss {
                    requested: digits,
                    achieved,
                });
            }
            n = (n * 2).min(n_max);
        }
        // Horner over the first n+1 coefficients.
        let mut acc = HpComplex::zero(ctx);
        for c in self.coeffs[..=n].iter().rev() {
            acc = acc.mul(z, ctx);
            acc.re = ctx.add(&acc.re, &ctx.from_rational(c));
        }
        Ok(acc)
    }
}

/// Horner evaluation of an exact polynomial at a complex point.
pub fn eval_poly_complex(p: &RationalPoly, z: &HpComplex, ctx: &FloatCtx) -> HpComplex {
    let mut acc = HpComplex::zero(ctx);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z, ctx);
        acc.re = ctx.add(&acc.re, &ctx.from_rational(c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn geometric_eq() -> MahlerEquation {
        MahlerEquation::new(
            2,
            vec![
                RationalPoly::from_ints(&[1]),
                RationalPoly::from_ints(&[-1, -1]),
            ],
            vec![q(1)],
        )
        .unwrap()
    }

    fn stern_eq() -> MahlerEquation {
        MahlerEquation::new(
            2,
            vec![
                RationalPoly::from_ints(&[0, 1]),
                RationalPoly::from_ints(&[-1, -1, -1]),
            ],
            vec![q(0), q(1)],
        )
        .unwrap()
    }

    fn err_f64(ctx: &FloatCtx, got: &HpComplex, want: &HpComplex) -> f64 {
        ctx.to_f64(&got.sub(want, ctx).abs(ctx))
    }

    #[test]
    fn geometric_inside_series_radius() {
        let ctx = FloatCtx::with_digits(40);
        let ev = Evaluator::new(&geometric_eq(), 512).unwrap();
        // F(3/10) = 1 / (7/10)
        let z = HpComplex::from_rational_pair(&ctx, &qr(3, 10), &q(0));
        let got = ev.evaluate(&z, &ctx, 30).unwrap();
        let want = HpComplex::one(&ctx).div(
            &HpComplex::from_rational_pair(&ctx, &qr(7, 10), &q(0)),
            &ctx,
        );
        assert!(err_f64(&ctx, &got, &want) < 1e-28);
    }

    #[test]
    fn geometric_through_pullback() {
        let ctx = FloatCtx::with_digits(40);
        let ev = Evaluator::new(&geometric_eq(), 512).unwrap();
        // |z| = 7/10 forces one pullback step; F(7/10) = 10/3.
        let z = HpComplex::from_rational_pair(&ctx, &qr(7, 10), &q(0));
        let got = ev.evaluate(&z, &ctx, 30).unwrap();
        let want = HpComplex::one(&ctx).div(
            &HpComplex::from_rational_pair(&ctx, &qr(3, 10), &q(0)),
            &ctx,
        );
        assert!(err_f64(&ctx, &got, &want) < 1e-25);
    }

    #[test]
    fn stern_pullback_matches_long_series() {
        let ctx = FloatCtx::with_digits(50);
        let ev = Evaluator::new(&stern_eq(), 1024).unwrap();
        // Complex point with |z| ~ 0.64, beyond the series radius.
        let z = HpComplex::from_rational_pair(&ctx, &qr(1, 2), &qr(2, 5));
        let got = ev.evaluate(&z, &ctx, 30).unwrap();

        // Oracle: brute-force partial sum of 4096 exact coefficients. At
        // |z| = 0.64 with s(n) <= n the tail is below 1e-700.
        let coeffs = solve_coefficients(&stern_eq(), 4096).unwrap();
        let mut want = HpComplex::zero(&ctx);
        for c in coeffs.iter().rev() {
            want = want.mul(&z, &ctx);
            want.re = ctx.add(&want.re, &ctx.from_rational(c));
        }
        assert!(err_f64(&ctx, &got, &want) < 1e-25);
    }

    #[test]
    fn pole_on_pullback_path() {
        // a_0 = 5z - 3 vanishes at z = 3/5, which lies on the pullback path.
        let eq = MahlerEquation::new(
            2,
            vec![
                RationalPoly::from_ints(&[-3, 5]),
                RationalPoly::from_ints(&[1]),
            ],
            vec![],
        )
        .unwrap();
        let ctx = FloatCtx::with_digits(40);
        let ev = Evaluator::new(&eq, 256).unwrap();
        let z = HpComplex::from_rational_pair(&ctx, &qr(3, 5), &q(0));
        assert!(matches!(
            ev.evaluate(&z, &ctx, 30),
            Err(MahlerError::PoleOnPath { .. })
        ));
    }

    #[test]
    fn precision_loss_reported() {
        let ctx = FloatCtx::with_digits(400);
        let ev = Evaluator::new(&geometric_eq(), 64).unwrap();
        let z = HpComplex::from_rational_pair(&ctx, &qr(1, 2), &q(0));
        match ev.evaluate(&z, &ctx, 300) {
            Err(MahlerError::PrecisionLoss { requested, achieved }) => {
                assert_eq!(requested, 300);
                assert!(achieved < 300);
            }
            other => panic!("expected PrecisionLoss, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn rejects_points_outside_disk() {
        let ctx = FloatCtx::with_digits(40);
        let ev = Evaluator::new(&geometric_eq(), 64).unwrap();
        let z = HpComplex::from_rational_pair(&ctx, &qr(3, 2), &q(0));
        assert!(ev.evaluate(&z, &ctx, 10).is_err());
    }
}
