//! Property tests for the exact-arithmetic and independence invariants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use mahler_lab::catalog;
use mahler_lab::exact::{berlekamp_massey, integer_kernel, IntMatrix};
use mahler_lab::hp::{FloatCtx, HpComplex};
use mahler_lab::independence::{independence, Element, MultiplicativeSet, SearchConfig, Status};
use mahler_lab::mahler::Evaluator;
use mahler_lab::regular::weighted_sum_trace;

fn q(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Berlekamp-Massey output reproduces any sequence built from a known
    /// linear recurrence with the given weights.
    #[test]
    fn berlekamp_massey_recovers_recurrences(
        weights in prop::collection::vec(-4i64..=4, 1..4),
        seeds in prop::collection::vec(-5i64..=5, 4),
        extra in 4usize..10,
    ) {
        let order = weights.len();
        let mut terms: Vec<BigRational> = seeds.iter().take(order).map(|&s| q(s)).collect();
        let total = 2 * (order + extra);
        while terms.len() < total {
            let n = terms.len();
            let next: BigRational = weights
                .iter()
                .enumerate()
                .map(|(i, &w)| q(w) * &terms[n - 1 - i])
                .fold(BigRational::zero(), |a, b| a + b);
            terms.push(next);
        }
        let fit = berlekamp_massey(&terms).unwrap();
        prop_assert!(fit.order <= order);
        prop_assert!(fit.reproduces(&terms));
    }

    /// Every vector returned by integer_kernel satisfies M x = 0 and is
    /// nonzero; a matrix with an explicitly duplicated column always has a
    /// nontrivial kernel.
    #[test]
    fn kernel_vectors_annihilate(
        entries in prop::collection::vec(-6i64..=6, 12),
    ) {
        let m = IntMatrix::new(3, 4, entries.iter().map(|&x| BigInt::from(x)).collect());
        for v in integer_kernel(&m) {
            prop_assert!(v.iter().any(|x| !x.is_zero()));
            prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }

        // Duplicate column 0 into column 3.
        let mut dup = entries.clone();
        for r in 0..3 {
            dup[r * 4 + 3] = dup[r * 4];
        }
        let m2 = IntMatrix::new(3, 4, dup.iter().map(|&x| BigInt::from(x)).collect());
        prop_assert!(!integer_kernel(&m2).is_empty());
    }

    /// Constructed multiplicative relations are always detected, and the
    /// verdict is invariant under permuting the elements.
    #[test]
    fn constructed_relations_detected_and_permutation_invariant(
        e1 in 1i64..=4,
        e2 in -3i64..=3,
        extra in 2u32..6,
    ) {
        let cfg = SearchConfig { h: 50, digits: 60 };
        // lambda = 2^e1 * 3^e2 is dependent with {2, 3}.
        let lam_num = BigInt::from(2).pow(e1.unsigned_abs() as u32)
            * BigInt::from(3).pow(e2.max(0) as u32);
        let lam_den = BigInt::from(3).pow((-e2).max(0) as u32);
        let lam = BigRational::new(lam_num, lam_den);
        let elements = vec![
            Element::rational_int(3, "three"),
            Element {
                value: mahler_lab::exact::ExactOrInterval::Exact(
                    mahler_lab::exact::QuadraticNumber::rational(lam),
                ),
                provenance: "built".into(),
                weight: 1,
            },
            Element::rational_int(extra as i64 * 2 + 1, "odd"),
        ];
        let v1 = independence(
            &MultiplicativeSet::new(2, elements.clone()).unwrap(),
            &cfg,
        )
        .unwrap();
        prop_assert_eq!(v1.status, Status::Dependent);

        let mut permuted = elements;
        permuted.reverse();
        let v2 = independence(&MultiplicativeSet::new(2, permuted).unwrap(), &cfg).unwrap();
        prop_assert_eq!(v2.status, Status::Dependent);
    }

    /// Raising the search bound H never flips an exact verdict.
    #[test]
    fn verdict_monotone_in_search_bound(n in 2i64..40) {
        let set = MultiplicativeSet::new(2, vec![Element::rational_int(n, "n")]).unwrap();
        let small = independence(&set, &SearchConfig { h: 10, digits: 60 }).unwrap();
        let large = independence(&set, &SearchConfig { h: 80, digits: 60 }).unwrap();
        prop_assert_eq!(small.status, large.status);
    }

    /// The evaluator's output satisfies the defining functional equation
    /// sum a_i(z) F(z^(k^i)) = 0 at random interior points.
    #[test]
    fn evaluator_satisfies_functional_equation(
        re in -0.6f64..0.6,
        im in -0.4f64..0.4,
    ) {
        prop_assume!((re * re + im * im).sqrt() < 0.7);
        let ctx = FloatCtx::with_digits(50);
        for name in ["stern", "baum-sweet", "geometric"] {
            let entry = catalog::get(name).unwrap();
            let eq = entry.mahler_equation.unwrap();
            let ev = Evaluator::new(&eq, 1024).unwrap();
            let z = HpComplex::new(ctx.from_f64(re), ctx.from_f64(im));
            let mut acc = HpComplex::zero(&ctx);
            let mut zi = z.clone();
            for i in 0..=eq.degree() {
                let ai = eval_poly(eq.a(i).coeffs(), &z, &ctx);
                let fi = ev.evaluate(&zi, &ctx, 30).unwrap();
                acc = acc.add(&ai.mul(&fi, &ctx), &ctx);
                if i < eq.degree() {
                    zi = zi.powi(eq.k, &ctx);
                }
            }
            let resid = ctx.to_f64(&acc.abs(&ctx));
            prop_assert!(resid < 1e-20, "{name}: residual {resid}");
        }
    }
}

fn eval_poly(coeffs: &[BigRational], z: &HpComplex, ctx: &FloatCtx) -> HpComplex {
    let mut acc = HpComplex::zero(ctx);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, ctx).add(
            &HpComplex::real(ctx, ctx.from_rational(c)),
            ctx,
        );
    }
    acc
}

/// Growth-theorem bracket over four octaves: the weighted trace stays within
/// [0.95 / alpha, 1.05 * alpha] for nonnegative catalog sequences.
#[test]
fn growth_bracket_over_octaves() {
    for (name, alpha) in [("stern", 3.0f64), ("all-ones", 2.0), ("geometric", 2.0)] {
        let rep = catalog::get(name).unwrap().representation.unwrap();
        let trace = weighted_sum_trace(&rep, 1 << 12, 1 << 16, alpha.log2(), 0);
        for (n, w) in trace {
            assert!(
                w >= 0.95 / alpha && w <= 1.05 * alpha,
                "{name}: trace {w} at N = {n} outside bracket"
            );
        }
    }
}
