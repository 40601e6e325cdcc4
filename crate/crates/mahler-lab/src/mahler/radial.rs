//! Radial asymptotics: estimating the growth exponent of F along a ray
//! toward a root of unity.
//!
//! The sampling ladder z_0, z_1, ... takes repeated positive real k-th roots,
//! so z_{m+1}^k = z_m. The multiplicatively periodic factor C(z) = C(z^k) is
//! then literally constant along the ladder and cancels in ratios, leaving
//!     gamma_m = ln(|F(xi z_{m+1})| / |F(xi z_m)|) / ln((1-z_m)/(1-z_{m+1}))
//! as a clean estimator of the exponent of 1/(1-z).

use num_rational::BigRational;

use super::equation::MahlerEquation;
use super::eval::Evaluator;
use crate::error::{MahlerError, Result};
use crate::exact::poly::cyclotomic;
use crate::hp::{FloatCtx, HpComplex};

/// One rung of the sampling ladder, demoted to f64 for reporting.
#[derive(Debug, Clone, Copy)]
pub struct RadialSample {
    pub m: usize,
    /// 1 - z_m (the radial part, before twisting by xi).
    pub one_minus_z: f64,
    /// ln |F(xi z_m)|.
    pub log_abs_f: f64,
    /// Step estimate gamma_m (None at the last rung).
    pub gamma_step: Option<f64>,
}

/// Result of a radial fit toward xi = exp(2 pi i j / k^n).
#[derive(Debug, Clone)]
pub struct AsymptoticFit {
    pub k: u64,
    /// Exponent of 1/(1-z).
    pub gamma: f64,
    /// k^gamma.
    pub lambda_estimate: f64,
    /// Spread of gamma_m over the averaged window.
    pub residual: f64,
    pub samples: Vec<RadialSample>,
    /// (j, n) for xi = exp(2 pi i j / k^n); None means xi = 1.
    pub xi: Option<(u64, u32)>,
    /// Nearest integer to gamma_ref - gamma, once a reference is supplied.
    pub m_xi: Option<i64>,
    /// Distance of gamma_ref - gamma to that integer.
    pub integrality_distance: Option<f64>,
}

impl AsymptoticFit {
    /// Compare against a reference exponent (the fit at xi = 1, or an exact
    /// log_k lambda): the shift must be an integer per the asymptotics at
    /// roots of unity.
    pub fn with_reference(mut self, gamma_ref: f64) -> Self {
        let delta = gamma_ref - self.gamma;
        let m = delta.round();
        self.m_xi = Some(m as i64);
        self.integrality_distance = Some((delta - m).abs());
        self
    }

    /// Largest deviation of the pointwise exponent ln|F| / ln(1/(1-z)) from
    /// gamma over rungs m >= m_min. Bounding this by epsilon certifies the
    /// (1-z)^(-gamma -+ epsilon) bracketing numerically.
    pub fn bracketing_deviation(&self, m_min: usize) -> f64 {
        let mut worst = 0.0f64;
        for s in &self.samples {
            if s.m < m_min || s.one_minus_z <= 0.0 {
                continue;
            }
            let local = s.log_abs_f / -s.one_minus_z.ln();
            worst = worst.max((local - self.gamma).abs());
        }
        worst
    }
}

/// Ladder parameters.
#[derive(Debug, Clone)]
pub struct RadialParams {
    /// Number of root-taking steps; samples run m = 0..=depth.
    pub depth: usize,
    /// Starting radius z_0 in (0, 1).
    pub z0: BigRational,
    /// Twist by xi = exp(2 pi i j / k^n); None for the positive real ray.
    pub xi: Option<(u64, u32)>,
    /// NoConvergence if the gamma_m spread over the averaged tail window
    /// stays above this.
    pub residual_tol: f64,
}

impl Default for RadialParams {
    fn default() -> Self {
        RadialParams {
            depth: 40,
            z0: BigRational::new(1.into(), 2.into()),
            xi: None,
            residual_tol: 5e-2,
        }
    }
}

/// Fit the radial growth exponent of the equation's solution.
pub fn radial_fit(
    ev: &Evaluator,
    ctx: &FloatCtx,
    params: &RadialParams,
) -> Result<AsymptoticFit> {
    let eq = ev.equation();
    check_coefficients_at_xi(eq, params.xi)?;

    let xi = params.xi.map(|(j, n)| root_of_unity(ctx, eq.k, j, n));
    let digits = ctx.digits().saturating_sub(6).max(10);

    // Ladder radii and ln|F(xi z_m)| at full precision.
    let mut z = ctx.from_rational(&params.z0);
    let mut log_f = Vec::with_capacity(params.depth + 1);
    let mut log_one_minus = Vec::with_capacity(params.depth + 1);
    let one = ctx.from_i64(1);
    for m in 0..=params.depth {
        let point = match &xi {
            Some(x) => x.scale(&z, ctx),
            None => HpComplex::real(ctx, z.clone()),
        };
        let value = ev.evaluate(&point, ctx, digits)?;
        let abs = value.abs(ctx);
        if abs.is_zero() {
            return Err(MahlerError::NoConvergence { residual: f64::NAN });
        }
        log_f.push(ctx.ln(&abs));
        log_one_minus.push(ctx.ln(&ctx.sub(&one, &z)));
        if m < params.depth {
            z = ctx.kth_root(&z, eq.k);
        }
    }

    // gamma_m = (ln F_{m+1} - ln F_m) / (ln(1-z_m) - ln(1-z_{m+1})).
    let mut steps = Vec::with_capacity(params.depth);
    for m in 0..params.depth {
        let num = ctx.sub(&log_f[m + 1], &log_f[m]);
        let den = ctx.sub(&log_one_minus[m], &log_one_minus[m + 1]);
        steps.push(ctx.to_f64(&ctx.div(&num, &den)));
    }

    // Average over the final quarter, where the o(1) terms have died down.
    let window = (params.depth / 4).max(1);
    let tail = &steps[params.depth - window..];
    let gamma = tail.iter().sum::<f64>() / tail.len() as f64;
    let residual = tail
        .iter()
        .map(|g| (g - gamma).abs())
        .fold(0.0f64, f64::max);
    if !gamma.is_finite() || residual > params.residual_tol {
        return Err(MahlerError::NoConvergence { residual });
    }

    let samples = (0..=params.depth)
        .map(|m| RadialSample {
            m,
            one_minus_z: ctx.to_f64(&log_one_minus[m]).exp(),
            log_abs_f: ctx.to_f64(&log_f[m]),
            gamma_step: steps.get(m).copied(),
        })
        .collect();

    Ok(AsymptoticFit {
        k: eq.k,
        gamma,
        lambda_estimate: (eq.k as f64).powf(gamma),
        residual,
        samples,
        xi: params.xi,
        m_xi: None,
        integrality_distance: None,
    })
}

/// The asymptotics at xi require every a_i to be nonzero there. Exact check:
/// xi of order e has minimal polynomial cyclotomic(e), so a_i(xi) = 0 exactly
/// when that polynomial divides a_i.
fn check_coefficients_at_xi(eq: &MahlerEquation, xi: Option<(u64, u32)>) -> Result<()> {
    use num_traits::Zero;
    let order = match xi {
        None => 1,
        Some((j, n)) => {
            let modulus = eq.k.pow(n);
            let g = gcd_u64(j % modulus, modulus);
            modulus / g
        }
    };
    if order == 1 {
        for i in 0..=eq.degree() {
            if eq.a(i).eval_at_one().is_zero() {
                return Err(MahlerError::CoefficientVanishesAtXi { index: i, degree: 1 });
            }
        }
        return Ok(());
    }
    let phi = cyclotomic(order);
    for i in 0..=eq.degree() {
        let (_, r) = eq.a(i).div_rem(&phi);
        if r.is_zero() {
            return Err(MahlerError::CoefficientVanishesAtXi {
                index: i,
                degree: order,
            });
        }
    }
    Ok(())
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}

/// exp(2 pi i j / k^n) at context precision.
pub fn root_of_unity(ctx: &FloatCtx, k: u64, j: u64, n: u32) -> HpComplex {
    let modulus = k.pow(n);
    let angle = ctx.div(
        &ctx.mul(
            &ctx.mul(&ctx.from_i64(2), &ctx.pi()),
            &ctx.from_i64((j % modulus) as i64),
        ),
        &ctx.from_i64(modulus as i64),
    );
    HpComplex::new(ctx.cos(&angle), ctx.sin(&angle))
}

/// Sample the multiplicatively periodic prefactor over one period:
/// C(z) ~ |F(xi z)| (1-z)^gamma for z = z0^(k^-(depth + g/points)), g = 0..points.
/// Returns (fractional offset, C estimate) pairs.
pub fn oscillation_profile(
    ev: &Evaluator,
    ctx: &FloatCtx,
    gamma: f64,
    depth: usize,
    points: usize,
    xi: Option<(u64, u32)>,
) -> Result<Vec<(f64, f64)>> {
    let eq = ev.equation();
    let k = eq.k;
    let half = BigRational::new(1.into(), 2.into());
    let digits = ctx.digits().saturating_sub(6).max(10);
    let xi_c = xi.map(|(j, n)| root_of_unity(ctx, k, j, n));
    let ln_z0 = ctx.ln(&ctx.from_rational(&half));
    let g_f = ctx.from_f64(gamma);
    let one = ctx.from_i64(1);

    let mut out = Vec::with_capacity(points);
    for g in 0..points {
        let u = g as f64 / points as f64;
        // z = exp(ln z0 * k^-(depth+u))
        let expo = ctx.pow(
            &ctx.from_i64(k as i64),
            &ctx.from_f64(-(depth as f64 + u)),
        );
        let z = ctx.exp(&ctx.mul(&ln_z0, &expo));
        let point = match &xi_c {
            Some(x) => x.scale(&z, ctx),
            None => HpComplex::real(ctx, z.clone()),
        };
        let f = ev.evaluate(&point, ctx, digits)?;
        let one_minus = ctx.sub(&one, &z);
        let c = ctx.mul(&f.abs(ctx), &ctx.pow(&one_minus, &g_f));
        out.push((u, ctx.to_f64(&c)));
    }
    Ok(out)
}
