//! The three honesty tiers of multiplicative-independence testing.
//!
//! Rationals: exact prime factorization plus an integer lattice kernel.
//! One quadratic field: LLL and exhaustive candidate generation on
//! high-precision logs, every candidate verified or refuted exactly in
//! Q(sqrt(D)). Anything else: bounded numeric search that can only ever
//! report "undecided".

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lll::relation_candidates;
use super::set::MultiplicativeSet;
use crate::error::{MahlerError, Result};
use crate::exact::{integer_kernel, ExactOrInterval, IntMatrix, QuadraticNumber};
use crate::hp::FloatCtx;

pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Independent,
    Dependent,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    Exact,
    Quadratic,
    Bounded,
}

impl Tier {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tier::Exact => "exact",
            Tier::Quadratic => "quadratic",
            Tier::Bounded => "bounded",
        }
    }
}

/// Search parameters, echoed into every verdict.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    /// Coefficient bound for the numeric tiers.
    pub h: i64,
    /// Log precision in decimal digits.
    pub digits: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { h: 50, digits: 60 }
    }
}

#[derive(Debug, Clone)]
pub struct IndependenceVerdict {
    pub status: Status,
    /// Exponents (e_0 for k, then one per element) with
    /// k^e_0 * prod lambda_i^e_i = 1, verified exactly.
    pub relation: Option<Vec<i64>>,
    pub search_bound: i64,
    pub precision_used: u32,
    pub tier: Tier,
    /// Numeric candidates that exact arithmetic refuted.
    pub refuted_candidates: usize,
    pub note: String,
}

/// Dispatch on the element kinds.
pub fn independence(set: &MultiplicativeSet, config: &SearchConfig) -> Result<IndependenceVerdict> {
    let mut all_rational = true;
    let mut d: Option<u64> = None;
    for el in &set.elements {
        match &el.value {
            ExactOrInterval::Exact(q) => {
                if !q.is_rational() {
                    all_rational = false;
                    match d {
                        None => d = Some(q.d),
                        Some(existing) if existing != q.d => {
                            return Err(MahlerError::MixedFields(existing, q.d))
                        }
                        _ => {}
                    }
                }
            }
            ExactOrInterval::Interval(_) => {
                return independence_bounded(set, config);
            }
        }
    }
    if all_rational {
        independence_rational(set, config)
    } else {
        independence_quadratic(set, config)
    }
}

/// Exact tier: positive rationals only.
pub fn independence_rational(
    set: &MultiplicativeSet,
    config: &SearchConfig,
) -> Result<IndependenceVerdict> {
    let w_lcm = weight_lcm(set);
    let mut factorizations = vec![factor_rational(&BigRational::from(BigInt::from(
        set.base_k,
    )))?];
    for el in &set.elements {
        let q = el
            .value
            .exact()
            .and_then(QuadraticNumber::as_rational)
            .ok_or_else(|| {
                MahlerError::InvalidInput("rational tier requires rational elements".into())
            })?;
        factorizations.push(factor_rational(q)?);
    }

    // Exponent matrix: one row per prime, one column per set member; the
    // column for element j is scaled by W/w_j so a kernel vector encodes
    // k^(W e_0) * prod lambda_j^((W/w_j) e_j) = 1.
    let mut primes: Vec<BigInt> = Vec::new();
    for f in &factorizations {
        for p in f.keys() {
            if !primes.contains(p) {
                primes.push(p.clone());
            }
        }
    }
    primes.sort();
    let cols = factorizations.len();
    let mut data = Vec::with_capacity(primes.len() * cols);
    for p in &primes {
        for (j, f) in factorizations.iter().enumerate() {
            let scale = if j == 0 { w_lcm } else { w_lcm / set.elements[j - 1].weight };
            let e = f.get(p).copied().unwrap_or(0);
            data.push(BigInt::from(e) * BigInt::from(scale));
        }
    }
    let m = IntMatrix::new(primes.len(), cols, data);
    let kernel = integer_kernel(&m);

    if kernel.is_empty() {
        return Ok(IndependenceVerdict {
            status: Status::Independent,
            relation: None,
            search_bound: config.h,
            precision_used: config.digits,
            tier: Tier::Exact,
            refuted_candidates: 0,
            note: "trivial integer kernel of the exact prime-exponent lattice".into(),
        });
    }

    // Translate the kernel vector into verified multiplicative exponents.
    let v = &kernel[0];
    let mut rel: Vec<BigInt> = Vec::with_capacity(cols);
    for (j, e) in v.iter().enumerate() {
        let scale = if j == 0 { w_lcm } else { w_lcm / set.elements[j - 1].weight };
        rel.push(e * BigInt::from(scale));
    }
    let g = rel
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in rel.iter_mut() {
            *x = &*x / &g;
        }
    }
    let rel_i64: Vec<i64> = rel
        .iter()
        .map(|x| x.to_i64().expect("small relation exponents"))
        .collect();
    debug_assert!(verify_relation(set, &rel_i64).unwrap_or(false));

    Ok(IndependenceVerdict {
        status: Status::Dependent,
        relation: Some(rel_i64),
        search_bound: config.h,
        precision_used: config.digits,
        tier: Tier::Exact,
        refuted_candidates: 0,
        note: "kernel vector of the prime-exponent lattice, verified exactly".into(),
    })
}

/// Quadratic tier: every candidate relation checked in Q(sqrt(D)).
pub fn independence_quadratic(
    set: &MultiplicativeSet,
    config: &SearchConfig,
) -> Result<IndependenceVerdict> {
    let mut field_d = 1u64;
    for el in &set.elements {
        if let Some(q) = el.value.exact() {
            if !q.is_rational() {
                if field_d != 1 && field_d != q.d {
                    return Err(MahlerError::MixedFields(field_d, q.d));
                }
                field_d = q.d;
            }
        }
    }

    let candidates = numeric_candidates(set, config)?;
    let mut refuted = 0usize;
    for cand in &candidates {
        if verify_relation(set, cand)? {
            return Ok(IndependenceVerdict {
                status: Status::Dependent,
                relation: Some(reduce_relation(cand)),
                search_bound: config.h,
                precision_used: config.digits,
                tier: Tier::Quadratic,
                refuted_candidates: refuted,
                note: format!("relation verified exactly in Q(sqrt({field_d}))"),
            });
        }
        refuted += 1;
    }

    Ok(IndependenceVerdict {
        status: Status::Undecided,
        relation: None,
        search_bound: config.h,
        precision_used: config.digits,
        tier: Tier::Quadratic,
        refuted_candidates: refuted,
        note: format!(
            "no relation with max |e_i| <= {}; {} numeric candidate(s) exactly refuted in Q(sqrt({}))",
            config.h, refuted, field_d
        ),
    })
}

/// Bounded tier: elements outside supported fields; candidates cannot be
/// verified exactly, so the status is always undecided.
pub fn independence_bounded(
    set: &MultiplicativeSet,
    config: &SearchConfig,
) -> Result<IndependenceVerdict> {
    let candidates = numeric_candidates(set, config)?;
    let note = if candidates.is_empty() {
        format!(
            "no numeric relation with max |e_i| <= {}; elements outside exact fields, nothing provable",
            config.h
        )
    } else {
        format!(
            "{} numeric candidate(s) below threshold but unverifiable outside exact fields",
            candidates.len()
        )
    };
    Ok(IndependenceVerdict {
        status: Status::Undecided,
        relation: None,
        search_bound: config.h,
        precision_used: config.digits,
        tier: Tier::Bounded,
        refuted_candidates: 0,
        note,
    })
}

/// Candidate exponent vectors [e_0, e_1..e_d] whose weighted log combination
/// nearly vanishes: LLL rows plus exhaustive enumeration when feasible.
fn numeric_candidates(set: &MultiplicativeSet, config: &SearchConfig) -> Result<Vec<Vec<i64>>> {
    let ctx = FloatCtx::with_digits(config.digits);
    let d = set.elements.len();

    // x_0 = ln k, x_j = ln(lambda_j) / w_j.
    let mut logs = vec![ctx.ln(&ctx.from_i64(set.base_k as i64))];
    for el in &set.elements {
        let val = match &el.value {
            ExactOrInterval::Exact(q) => {
                let a = ctx.from_rational(&q.a);
                let b = ctx.from_rational(&q.b);
                let sd = ctx.sqrt(&ctx.from_i64(q.d as i64));
                ctx.add(&a, &ctx.mul(&b, &sd))
            }
            ExactOrInterval::Interval(r) => ctx.from_rational(&r.midpoint()),
        };
        let l = ctx.ln(&val);
        logs.push(ctx.div(&l, &ctx.from_i64(el.weight as i64)));
    }

    // Residual threshold 10^-(digits/2).
    let threshold = 10f64.powi(-((config.digits / 2) as i32));
    let residual = |e: &[i64]| -> f64 {
        let mut acc = ctx.zero();
        for (x, &c) in logs.iter().zip(e) {
            acc = ctx.add(&acc, &ctx.mul(x, &ctx.from_i64(c)));
        }
        ctx.to_f64(&acc).abs()
    };

    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut push = |e: Vec<i64>| {
        let neg: Vec<i64> = e.iter().map(|x| -x).collect();
        if !out.contains(&e) && !out.contains(&neg) {
            out.push(e);
        }
    };

    // LLL on the scaled logs.
    let scale_digits = config.digits.saturating_sub(8);
    let scaled: Vec<BigInt> = logs
        .iter()
        .map(|x| {
            let s = ctx.mul(x, &ctx.powi(&ctx.from_i64(10), scale_digits as i64));
            big_from_float_trunc(&ctx, &s)
        })
        .collect();
    for cand in relation_candidates(&scaled, config.h) {
        if residual(&cand) < threshold {
            push(cand);
        }
    }

    // Exhaustive enumeration over element exponents, e_0 derived by rounding.
    let grid = 2 * config.h as u128 + 1;
    if grid.pow(d as u32) <= 4_000_000 {
        let ln_k = ctx.to_f64(&logs[0]);
        let logs_f: Vec<f64> = logs[1..].iter().map(|x| ctx.to_f64(x)).collect();
        let mut e = vec![-config.h; d];
        loop {
            if e.iter().any(|&x| x != 0) {
                let s: f64 = e.iter().zip(&logs_f).map(|(&c, x)| c as f64 * x).sum();
                let e0 = -(s / ln_k).round() as i64;
                let mut full = Vec::with_capacity(d + 1);
                full.push(e0);
                full.extend_from_slice(&e);
                // Coarse f64 filter first, precise filter second.
                if (e0 as f64 * ln_k + s).abs() < 1e-6 && residual(&full) < threshold {
                    push(full);
                }
            }
            // Odometer increment.
            let mut i = 0usize;
            loop {
                if i == d {
                    return Ok(out);
                }
                e[i] += 1;
                if e[i] <= config.h {
                    break;
                }
                e[i] = -config.h;
                i += 1;
            }
        }
    }
    Ok(out)
}

/// Truncate a BigFloat to a BigInt through its decimal representation.
fn big_from_float_trunc(ctx: &FloatCtx, x: &astro_float::BigFloat) -> BigInt {
    let s = ctx.to_string(x);
    // Formats like "1.234e+57"; reconstruct the integer part.
    parse_decimal_to_bigint(&s)
}

fn parse_decimal_to_bigint(s: &str) -> BigInt {
    let s = s.trim();
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (s, 0),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    let digits: String = format!("{int_part}{frac_part}");
    let point_shift = exp - frac_part.len() as i64;
    let base: BigInt = digits.parse().unwrap_or_else(|_| BigInt::zero());
    let val = if point_shift >= 0 {
        base * BigInt::from(10u32).pow(point_shift as u32)
    } else {
        let cut = (-point_shift) as usize;
        if cut >= digits.len() {
            BigInt::zero()
        } else {
            digits[..digits.len() - cut]
                .parse()
                .unwrap_or_else(|_| BigInt::zero())
        }
    };
    if neg {
        -val
    } else {
        val
    }
}

/// Exact check of k^(e_0) * prod lambda_j^(e_j / w_j) = 1, carried out as
/// k^(W e_0) * prod lambda_j^((W/w_j) e_j) = 1 in the quadratic field.
/// Errors only if an element is not exactly representable.
pub fn verify_relation(set: &MultiplicativeSet, e: &[i64]) -> Result<bool> {
    assert_eq!(e.len(), set.elements.len() + 1);
    let w_lcm = weight_lcm(set) as i64;
    let mut acc = QuadraticNumber::from_int(set.base_k as i64).pow(e[0] * w_lcm)?;
    for (el, &c) in set.elements.iter().zip(&e[1..]) {
        let q = el.value.exact().ok_or_else(|| {
            MahlerError::InvalidInput("cannot verify a relation on interval elements".into())
        })?;
        let scaled = c * (w_lcm / el.weight as i64);
        acc = acc.mul(&q.pow(scaled)?)?;
    }
    Ok(acc.is_one())
}

fn reduce_relation(e: &[i64]) -> Vec<i64> {
    let mut g = 0i64;
    for &x in e {
        g = gcd_i64(g, x.abs());
    }
    if g <= 1 {
        return e.to_vec();
    }
    e.iter().map(|x| x / g).collect()
}

fn gcd_i64(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

fn weight_lcm(set: &MultiplicativeSet) -> u64 {
    set.elements
        .iter()
        .fold(1u64, |acc, el| acc.lcm(&el.weight))
}

/// Prime exponents of a positive rational (negative exponents from the
/// denominator) by trial division.
pub fn factor_rational(q: &BigRational) -> Result<BTreeMap<BigInt, i64>> {
    if !q.is_positive() {
        return Err(MahlerError::NonPositiveElement(q.to_string()));
    }
    let mut map = BTreeMap::new();
    factor_into(q.numer(), 1, &mut map)?;
    factor_into(q.denom(), -1, &mut map)?;
    map.retain(|_, e| *e != 0);
    Ok(map)
}

fn factor_into(n: &BigInt, sign: i64, map: &mut BTreeMap<BigInt, i64>) -> Result<()> {
    let mut rem = n.clone();
    let mut p = 2u64;
    while rem > BigInt::one() && p <= TRIAL_DIVISION_BOUND {
        let pb = BigInt::from(p);
        while (&rem % &pb).is_zero() {
            rem /= &pb;
            *map.entry(pb.clone()).or_insert(0) += sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rem > BigInt::one() {
        // Anything left below bound^2 is necessarily prime.
        let bound_sq = BigInt::from(TRIAL_DIVISION_BOUND) * BigInt::from(TRIAL_DIVISION_BOUND);
        if rem < bound_sq {
            *map.entry(rem).or_insert(0) += sign;
        } else {
            return Err(MahlerError::Unfactorable(rem.to_string()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::independence::set::Element;

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn phi() -> QuadraticNumber {
        QuadraticNumber::new(qr(1, 2), qr(1, 2), 5)
    }

    #[test]
    fn two_three_independent() {
        let set = MultiplicativeSet::new(2, vec![Element::rational_int(3, "stern")]).unwrap();
        let v = independence(&set, &SearchConfig::default()).unwrap();
        assert_eq!(v.status, Status::Independent);
        assert_eq!(v.tier, Tier::Exact);
    }

    #[test]
    fn two_four_dependent_with_relation() {
        let set = MultiplicativeSet::new(2, vec![Element::rational_int(4, "geometric")]).unwrap();
        let v = independence(&set, &SearchConfig::default()).unwrap();
        assert_eq!(v.status, Status::Dependent);
        let rel = v.relation.unwrap();
        assert!(verify_relation(&set, &rel).unwrap());
        // Up to sign: (-2, 1).
        assert_eq!((rel[0] * rel[0], rel[1] * rel[1]), (4, 1));
    }

    #[test]
    fn distinct_primes_independent() {
        let set = MultiplicativeSet::new(
            2,
            vec![
                Element::rational_int(3, "p3"),
                Element::rational_int(5, "p5"),
                Element::rational_int(7, "p7"),
            ],
        )
        .unwrap();
        let v = independence(&set, &SearchConfig::default()).unwrap();
        assert_eq!(v.status, Status::Independent);
    }

    #[test]
    fn rational_tier_permutation_invariant() {
        let cfg = SearchConfig::default();
        let a = independence(
            &MultiplicativeSet::new(
                2,
                vec![Element::rational_int(6, "x"), Element::rational_int(15, "y")],
            )
            .unwrap(),
            &cfg,
        )
        .unwrap();
        let b = independence(
            &MultiplicativeSet::new(
                2,
                vec![Element::rational_int(15, "y"), Element::rational_int(6, "x")],
            )
            .unwrap(),
            &cfg,
        )
        .unwrap();
        assert_eq!(a.status, b.status);
    }

    #[test]
    fn two_phi_undecided_with_refutations() {
        let set = MultiplicativeSet::new(2, vec![Element::exact(phi(), "baum-sweet")]).unwrap();
        let v = independence(&set, &SearchConfig { h: 50, digits: 60 }).unwrap();
        assert_eq!(v.status, Status::Undecided);
        assert_eq!(v.tier, Tier::Quadratic);
        assert!(v.relation.is_none());
        assert!(v.note.contains("50"));
    }

    #[test]
    fn phi_squared_dependence_found_exactly() {
        let phi2 = phi().mul(&phi()).unwrap();
        let set = MultiplicativeSet::new(
            2,
            vec![
                Element::exact(phi2, "dilcher-stolarsky"),
                Element::exact(phi(), "baum-sweet"),
            ],
        )
        .unwrap();
        let v = independence(&set, &SearchConfig { h: 20, digits: 60 }).unwrap();
        assert_eq!(v.status, Status::Dependent);
        let rel = v.relation.unwrap();
        assert!(verify_relation(&set, &rel).unwrap());
        // phi^2 * phi^-2 = 1 with no power of 2.
        assert_eq!(rel[0], 0);
    }

    #[test]
    fn two_three_phi_undecided() {
        let set = MultiplicativeSet::new(
            2,
            vec![
                Element::rational_int(3, "stern"),
                Element::exact(phi(), "baum-sweet"),
            ],
        )
        .unwrap();
        let v = independence(&set, &SearchConfig { h: 50, digits: 60 }).unwrap();
        assert_eq!(v.status, Status::Undecided);
        assert_eq!(v.tier, Tier::Quadratic);
    }

    #[test]
    fn constructed_quadratic_relation_caught() {
        // lambda = 2^3 * phi^-2 is multiplicatively dependent with {2, phi}.
        let lam = QuadraticNumber::from_int(8)
            .mul(&phi().pow(-2).unwrap())
            .unwrap();
        let set = MultiplicativeSet::new(
            2,
            vec![Element::exact(lam, "built"), Element::exact(phi(), "phi")],
        )
        .unwrap();
        let v = independence(&set, &SearchConfig { h: 10, digits: 60 }).unwrap();
        assert_eq!(v.status, Status::Dependent);
        assert!(verify_relation(&set, &v.relation.unwrap()).unwrap());
    }

    #[test]
    fn factorization_small_rationals() {
        let f = factor_rational(&qr(12, 35)).unwrap();
        assert_eq!(f.get(&BigInt::from(2)), Some(&2));
        assert_eq!(f.get(&BigInt::from(3)), Some(&1));
        assert_eq!(f.get(&BigInt::from(5)), Some(&-1));
        assert_eq!(f.get(&BigInt::from(7)), Some(&-1));
    }

    #[test]
    fn parse_decimal_forms() {
        assert_eq!(parse_decimal_to_bigint("123"), BigInt::from(123));
        assert_eq!(parse_decimal_to_bigint("-1.5e2"), BigInt::from(-150));
        assert_eq!(parse_decimal_to_bigint("6.93e+2"), BigInt::from(693));
        assert_eq!(parse_decimal_to_bigint("1.23e1"), BigInt::from(12));
    }
}
