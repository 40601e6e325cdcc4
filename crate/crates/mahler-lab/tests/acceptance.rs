//! Acceptance gate: one test per top-level criterion, each printing a single
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; the test names mirror the criteria.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use mahler_lab::catalog;
use mahler_lab::exact::poly::RationalPoly;
use mahler_lab::exact::QuadraticNumber;
use mahler_lab::hp::FloatCtx;
use mahler_lab::independence::{
    independence, Element, MultiplicativeSet, SearchConfig, Status, Tier,
};
use mahler_lab::mahler::{characteristic_polynomial, radial_fit, Evaluator, RadialParams};
use mahler_lab::regular::{growth_constants, weighted_sum_trace};

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "[acceptance] {}: {criterion} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{criterion}: {detail}");
}

fn within(elapsed: Duration, limit_s: u64) -> bool {
    elapsed <= Duration::from_secs(limit_s)
}

fn phi() -> QuadraticNumber {
    QuadraticNumber::new(
        BigRational::new(BigInt::from(1), BigInt::from(2)),
        BigRational::new(BigInt::from(1), BigInt::from(2)),
        5,
    )
}

fn stern_params(depth: usize, xi: Option<(u64, u32)>) -> RadialParams {
    RadialParams {
        depth,
        z0: BigRational::new(1.into(), 2.into()),
        xi,
        residual_tol: 0.2,
    }
}

#[test]
fn criterion_1_characteristic_polynomials_exact() {
    let t = Instant::now();
    let stern = catalog::get("stern").unwrap();
    let bs = catalog::get("baum-sweet").unwrap();
    let tm = catalog::get("thue-morse").unwrap();
    let p1 = characteristic_polynomial(stern.mahler_equation.as_ref().unwrap()).p;
    let p2 = characteristic_polynomial(bs.mahler_equation.as_ref().unwrap()).p;
    let p3 = characteristic_polynomial(tm.mahler_equation.as_ref().unwrap()).p;
    let ok = p1 == RationalPoly::from_ints(&[-3, 1])
        && p2 == RationalPoly::from_ints(&[-1, -1, 1])
        && p3 == RationalPoly::from_ints(&[0, 1])
        && within(t.elapsed(), 1);
    report(
        "1. characteristic polynomials exact",
        ok,
        &format!("{p1}; {p2}; {p3}; {:?}", t.elapsed()),
    );
}

#[test]
fn criterion_2_radial_eigenvalue_measurement() {
    let ctx = FloatCtx::with_digits(60);
    let params = RadialParams {
        depth: 40,
        z0: BigRational::new(1.into(), 2.into()),
        xi: None,
        residual_tol: 5e-2,
    };
    let mut detail = String::new();
    let mut ok = true;
    for (name, target, tol) in [
        ("geometric", 2.0, 1e-6),
        ("stern", 3.0, 1e-2),
        ("baum-sweet", 1.6180339887, 1e-2),
    ] {
        let t = Instant::now();
        let entry = catalog::get(name).unwrap();
        let ev = Evaluator::new(entry.mahler_equation.as_ref().unwrap(), 2048).unwrap();
        let fit = radial_fit(&ev, &ctx, &params).unwrap();
        let err = (fit.lambda_estimate - target).abs();
        let this_ok = err <= tol && within(t.elapsed(), 30);
        detail.push_str(&format!(
            "{name}: lambda_est = {:.8}, err = {err:.2e}, {:?}; ",
            fit.lambda_estimate,
            t.elapsed()
        ));
        ok &= this_ok;
    }
    report("2. radial eigenvalue measurement", ok, &detail);
}

#[test]
fn criterion_3_growth_extraction_stern() {
    let t = Instant::now();
    let rep = catalog::get("stern").unwrap().representation.unwrap();
    let g = growth_constants(&rep, 12).unwrap();
    let exact_three = g
        .alpha
        .exact()
        .and_then(|q| q.as_rational().cloned())
        .map(|r| r == BigRational::from(BigInt::from(3)))
        .unwrap_or(false);
    let ok = exact_three && g.m == 0 && within(t.elapsed(), 5);
    report(
        "3. sigma recurrence gives alpha = 3, m = 0 exactly",
        ok,
        &format!("alpha = {}, m = {}, {:?}", g.alpha.to_f64(), g.m, t.elapsed()),
    );
}

#[test]
fn criterion_4_lambda_equals_alpha() {
    // Stern exactly; Baum-Sweet to 1e-9 after exact root isolation.
    let stern = catalog::get("stern").unwrap();
    let s_lambda = characteristic_polynomial(stern.mahler_equation.as_ref().unwrap());
    let s_alpha = growth_constants(stern.representation.as_ref().unwrap(), 12).unwrap();
    let stern_ok = s_lambda.p == RationalPoly::from_ints(&[-3, 1])
        && s_alpha.alpha.exact().map(|q| q == &QuadraticNumber::from_int(3)) == Some(true);

    let bs = catalog::get("baum-sweet").unwrap();
    let b_alpha = growth_constants(bs.representation.as_ref().unwrap(), 12).unwrap();
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let bs_ok = b_alpha.alpha.exact() == Some(&phi())
        && (b_alpha.alpha.to_f64() - golden).abs() < 1e-9;

    report(
        "4. lambda_F = alpha_f consistency",
        stern_ok && bs_ok,
        &format!(
            "stern exact 3; baum-sweet alpha = {} vs phi",
            b_alpha.alpha.to_f64()
        ),
    );
}

#[test]
fn criterion_5_figure_2_reproduction() {
    let t = Instant::now();
    let rep = catalog::get("stern").unwrap().representation.unwrap();
    let expo = 3f64.log2();
    let hi = weighted_sum_trace(&rep, 1 << 15, 1 << 16, expo, 0);
    let in_band = hi.iter().all(|(_, w)| *w >= 1.0 / 3.0 && *w <= 3.0);

    // Octave drift: compare the two traces on a 256-point multiplicative grid.
    let lo = weighted_sum_trace(&rep, 1 << 14, 1 << 15, expo, 0);
    let grid = 256usize;
    let mut max_drift = 0.0f64;
    for g in 0..grid {
        let frac = g as f64 / grid as f64;
        let n_lo = ((1u64 << 14) as f64 * 2f64.powf(frac)) as usize - (1 << 14);
        let n_hi = ((1u64 << 15) as f64 * 2f64.powf(frac)) as usize - (1 << 15);
        let a = lo[n_lo.min(lo.len() - 1)].1;
        let b = hi[n_hi.min(hi.len() - 1)].1;
        max_drift = max_drift.max((a - b).abs() / b.abs());
    }
    let ok = in_band && max_drift < 0.05 && within(t.elapsed(), 20);
    report(
        "5. weighted Stern trace in [1/3, 3] with < 5% octave drift",
        ok,
        &format!("max drift = {:.4}, {:?}", max_drift, t.elapsed()),
    );
}

#[test]
fn criterion_6_independence_verdicts() {
    let t = Instant::now();
    let cfg = SearchConfig { h: 50, digits: 60 };
    let mk = |els: Vec<Element>| MultiplicativeSet::new(2, els).unwrap();

    let a = independence(&mk(vec![Element::rational_int(3, "a")]), &cfg).unwrap();
    let b = independence(&mk(vec![Element::rational_int(4, "b")]), &cfg).unwrap();
    let c = independence(
        &mk(vec![
            Element::rational_int(3, "c3"),
            Element::rational_int(5, "c5"),
            Element::rational_int(7, "c7"),
        ]),
        &cfg,
    )
    .unwrap();
    let d = independence(&mk(vec![Element::exact(phi(), "d")]), &cfg).unwrap();
    let e = independence(
        &mk(vec![
            Element::rational_int(3, "e3"),
            Element::exact(phi(), "ephi"),
        ]),
        &cfg,
    )
    .unwrap();

    let ok = a.status == Status::Independent
        && a.tier == Tier::Exact
        && b.status == Status::Dependent
        && b.relation.is_some()
        && c.status == Status::Independent
        && d.status == Status::Undecided
        && d.tier == Tier::Quadratic
        && d.relation.is_none()
        && e.status == Status::Undecided
        && e.tier == Tier::Quadratic
        && within(t.elapsed(), 10);
    report(
        "6. independence verdicts for {2,3}, {2,4}, {2,3,5,7}, {2,phi}, {2,3,phi}",
        ok,
        &format!(
            "{:?}/{:?}/{:?}/{:?}/{:?}, {:?}",
            a.status,
            b.status,
            c.status,
            d.status,
            e.status,
            t.elapsed()
        ),
    );
}

#[test]
fn criterion_7_integrality_at_roots_of_unity() {
    let ctx = FloatCtx::with_digits(60);
    let entry = catalog::get("stern").unwrap();
    let ev = Evaluator::new(entry.mahler_equation.as_ref().unwrap(), 2048).unwrap();
    let gamma_ref = 3f64.log2();
    let mut ok = true;
    let mut detail = String::new();
    for (label, xi) in [("-1", (1u64, 1u32)), ("i", (1, 2)), ("-i", (3, 2))] {
        let fit = radial_fit(&ev, &ctx, &stern_params(40, Some(xi)))
            .unwrap()
            .with_reference(gamma_ref);
        let dist = fit.integrality_distance.unwrap();
        detail.push_str(&format!(
            "xi = {label}: m = {}, dist = {:.4}; ",
            fit.m_xi.unwrap(),
            dist
        ));
        ok &= dist < 0.05;
    }
    report(
        "7. log2(3) - gamma_xi integer at xi in {-1, i, -i}",
        ok,
        &detail,
    );
}

#[test]
fn criterion_8_epsilon_bracketing() {
    let ctx = FloatCtx::with_digits(60);
    let mut ok = true;
    let mut detail = String::new();
    for (name, expo) in [
        ("stern", 3f64.log2()),
        ("baum-sweet", ((1.0 + 5f64.sqrt()) / 2.0).log2()),
    ] {
        let entry = catalog::get(name).unwrap();
        let ev = Evaluator::new(entry.mahler_equation.as_ref().unwrap(), 2048).unwrap();
        let fit = radial_fit(&ev, &ctx, &stern_params(40, None)).unwrap();
        // 1/(1-z)^(expo+eps) <= F <= 1/(1-z)^(expo-eps) is exactly
        // |ln F / ln(1/(1-z)) - expo| <= eps at each rung.
        let mut worst = 0.0f64;
        for s in fit.samples.iter().filter(|s| s.m >= 10) {
            let local = s.log_abs_f / -s.one_minus_z.ln();
            worst = worst.max((local - expo).abs());
        }
        detail.push_str(&format!("{name}: max |local - expo| = {worst:.4}; "));
        ok &= worst < 0.05;
    }
    report(
        "8. epsilon bracketing with eps = 0.05 for m >= 10",
        ok,
        &detail,
    );
}

#[test]
fn criterion_9_oracle_equivalence() {
    use mahler_lab::hp::HpComplex;
    let ctx = FloatCtx::with_digits(60);
    let mut ok = true;
    let mut detail = String::new();

    // evaluate() vs direct exact-series summation at |z| <= 0.7.
    let points: [(f64, f64); 3] = [(0.3, 0.0), (-0.5, 0.2), (0.0, 0.7)];
    for name in catalog::NAMES {
        let entry = catalog::get(name).unwrap();
        let Some(eq) = &entry.mahler_equation else {
            continue;
        };
        let terms = 4096usize;
        let coeffs = (entry.oracle)(terms);
        let ev = Evaluator::new(eq, 2048).unwrap();
        for (re, im) in points {
            let z = HpComplex::new(ctx.from_f64(re), ctx.from_f64(im));
            let direct = {
                let mut acc = HpComplex::zero(&ctx);
                let mut pw = HpComplex::one(&ctx);
                for c in &coeffs {
                    acc = acc.add(&pw.scale(&ctx.from_rational(c), &ctx), &ctx);
                    pw = pw.mul(&z, &ctx);
                }
                acc
            };
            let got = ev.evaluate(&z, &ctx, 30).unwrap();
            let err = ctx.to_f64(&got.sub(&direct, &ctx).abs(&ctx));
            if err > 1e-20 {
                ok = false;
                detail.push_str(&format!("{name}@({re},{im}): err = {err:.2e}; "));
            }
        }
    }

    // eval_term vs recurrence oracles on 2^14 terms.
    for name in catalog::NAMES {
        let entry = catalog::get(name).unwrap();
        let Some(rep) = &entry.representation else {
            continue;
        };
        let n = 1 << 14;
        let oracle = (entry.oracle)(n);
        let out = mahler_lab::regular::verify_representation(rep, &oracle);
        if !out.ok {
            ok = false;
            detail.push_str(&format!("{name}: rep mismatch at {:?}; ", out.first_mismatch));
        }
    }
    if detail.is_empty() {
        detail = "all entries agree".into();
    }
    report("9. evaluate and eval_term match independent oracles", ok, &detail);
}
