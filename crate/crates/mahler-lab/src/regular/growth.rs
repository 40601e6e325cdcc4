//! Growth constants alpha_f and m_f from the partial-sum recurrence.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rep::LinearRepresentation;
use super::sums::partial_sums_sigma;
use crate::error::{MahlerError, Result};
use crate::exact::poly::RationalPoly;
use crate::exact::recurrence::{berlekamp_massey, RecurrenceFit};
use crate::exact::roots::cauchy_bound;
use crate::exact::{isolate_real_roots, sharpen_root, ExactOrInterval, IsolatedRoot};

/// alpha_f, m_f and the recurrence they came from. Partial sums grow like
/// c r^m alpha^r along r -> sigma_f(r), i.e. N^(log_k alpha) log^m N overall.
#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub alpha: ExactOrInterval,
    pub m: usize,
    pub sigma_recurrence: RecurrenceFit,
    /// log_k(alpha).
    pub exponent: f64,
}

/// Detect the sigma recurrence and certify its dominant positive real root.
pub fn growth_constants(rep: &LinearRepresentation, r_max: usize) -> Result<GrowthReport> {
    check_sequence_hypothesis(rep)?;

    let sigma = partial_sums_sigma(rep, r_max);
    let terms: Vec<BigRational> = sigma.into_iter().map(BigRational::from).collect();
    let fit = berlekamp_massey(&terms)?;
    let p = fit.char_poly.clone();

    let iso = isolate_real_roots(&p, 40);
    let candidate = dominant_positive_root(&p, &iso)?;
    let m = candidate.multiplicity - 1;
    let alpha = sharpen_root(&p, candidate);
    let alpha_f = alpha.to_f64();
    if alpha_f < 1.0 - 1e-12 {
        return Err(MahlerError::NoDominantRealRoot(format!(
            "dominant root {alpha_f} < 1"
        )));
    }
    Ok(GrowthReport {
        exponent: alpha_f.log2() / (rep.k as f64).log2(),
        alpha,
        m,
        sigma_recurrence: fit,
    })
}

/// The hypothesis of the growth theorem: nonnegative, not eventually zero.
/// Verified on the first 2048 terms.
fn check_sequence_hypothesis(rep: &LinearRepresentation) -> Result<()> {
    let mut any_positive = false;
    for n in 0..2048u64 {
        let t = rep.term(n);
        if t.is_negative() {
            return Err(MahlerError::SequenceHypothesis(format!(
                "f({n}) = {t} is negative"
            )));
        }
        if t.is_positive() {
            any_positive = true;
        }
    }
    // "Not eventually zero" on the inspected window: the tail half must
    // contain a positive term.
    let tail_positive = (1024..2048u64).any(|n| rep.term(n).is_positive());
    if !any_positive || !tail_positive {
        return Err(MahlerError::SequenceHypothesis(
            "sequence is zero (or eventually zero) on the inspected window".into(),
        ));
    }
    Ok(())
}

/// Select the positive real root of maximal modulus and certify that it
/// strictly dominates every other root, exactly where possible.
fn dominant_positive_root<'a>(
    p: &RationalPoly,
    iso: &'a crate::exact::RootIsolation,
) -> Result<&'a IsolatedRoot> {
    let zero = BigRational::zero();
    let mut best: Option<&IsolatedRoot> = None;
    for root in &iso.real_roots {
        if root.low > zero || (root.is_exact() && root.low.is_positive()) {
            if best.is_none_or(|b| root.high > b.high) {
                best = Some(root);
            }
        }
    }
    let cand = best.ok_or_else(|| {
        MahlerError::NoDominantRealRoot("no positive real root in the recurrence".into())
    })?;

    // Real roots: |other| must be exactly below the candidate's interval.
    for other in &iso.real_roots {
        if std::ptr::eq(other, cand) {
            continue;
        }
        let (_, abs_hi) = other.abs_interval();
        if abs_hi >= cand.low {
            return Err(MahlerError::NoDominantRealRoot(format!(
                "root near {} ties or crowds the candidate near {}",
                other.to_f64(),
                cand.to_f64()
            )));
        }
    }

    // Complex roots: peel off every rational real root and bound what
    // remains by the Cauchy bound. This only certifies dominance when the
    // candidate itself was among the peeled rational roots.
    if iso.complex_count > 0 {
        let rationals = crate::exact::poly::rational_roots(p);
        let cand_rational = rationals
            .iter()
            .any(|r| *r >= cand.low && *r <= cand.high);
        if !cand_rational {
            return Err(MahlerError::NoDominantRealRoot(
                "cannot certify an irrational candidate against complex roots".into(),
            ));
        }
        let mut q = p.monic();
        for r in &rationals {
            let lin = RationalPoly::new(vec![-r.clone(), BigRational::one()]);
            loop {
                let (quot, rem) = q.div_rem(&lin);
                if rem.is_zero() && !quot.is_zero() {
                    q = quot;
                } else {
                    break;
                }
            }
        }
        if q.degree() >= 1 && cauchy_bound(&q) >= cand.low {
            return Err(MahlerError::NoDominantRealRoot(format!(
                "complex roots bounded only by {}, not below the candidate",
                crate::exact::rational_to_f64(&cauchy_bound(&q))
            )));
        }
    }
    Ok(cand)
}
