//! Arbitrary-precision exact arithmetic foundation: rationals, polynomials,
//! integer-lattice kernels, real-root isolation, quadratic-field elements,
//! and exact linear-recurrence detection.

pub mod kernel;
pub mod poly;
pub mod quadratic;
pub mod recurrence;
pub mod roots;

pub use kernel::{integer_kernel, IntMatrix};
pub use poly::{cyclotomic, parse_rational, rational_to_string, RationalPoly};
pub use quadratic::{quadratic_from_poly, QuadraticNumber};
pub use recurrence::{berlekamp_massey, RecurrenceFit};
pub use roots::{isolate_real_roots, rational_to_f64, IsolatedRoot, RootIsolation};

/// A real algebraic number, exact when it lives in degree <= 2 over Q,
/// otherwise a certified isolating interval.
#[derive(Debug, Clone)]
pub enum ExactOrInterval {
    Exact(QuadraticNumber),
    Interval(IsolatedRoot),
}

impl ExactOrInterval {
    pub fn to_f64(&self) -> f64 {
        match self {
            ExactOrInterval::Exact(q) => q.to_f64(),
            ExactOrInterval::Interval(r) => r.to_f64(),
        }
    }

    pub fn exact(&self) -> Option<&QuadraticNumber> {
        match self {
            ExactOrInterval::Exact(q) => Some(q),
            ExactOrInterval::Interval(_) => None,
        }
    }
}

/// Pin down a root of `p` bracketed by `root` exactly when possible: exact
/// rational endpoints, or a quadratic surd once rational roots are peeled off.
pub fn sharpen_root(p: &RationalPoly, root: &IsolatedRoot) -> ExactOrInterval {
    use num_traits::One;
    if root.is_exact() {
        return ExactOrInterval::Exact(QuadraticNumber::rational(root.low.clone()));
    }
    // The bracketed root may itself be rational without the bisection having
    // landed on it; otherwise deflating every rational root may drop the
    // remaining factor to degree 2.
    let rationals = poly::rational_roots(p);
    for r in &rationals {
        if *r >= root.low && *r <= root.high {
            return ExactOrInterval::Exact(QuadraticNumber::rational(r.clone()));
        }
    }
    let mut q = p.clone();
    for r in &rationals {
        let lin = RationalPoly::new(vec![-r.clone(), num_rational::BigRational::one()]);
        loop {
            let (quot, rem) = q.div_rem(&lin);
            if rem.is_zero() && quot.degree() >= 1 {
                q = quot;
            } else {
                break;
            }
        }
    }
    if q.degree() == 2 {
        if let Ok(x) = quadratic_from_poly(&q) {
            for cand in [x.clone(), QuadraticNumber::new(x.a.clone(), -x.b.clone(), x.d)] {
                let v = cand.to_f64();
                let lo = rational_to_f64(&root.low);
                let hi = rational_to_f64(&root.high);
                if v >= lo - 1e-9 && v <= hi + 1e-9 {
                    return ExactOrInterval::Exact(cand);
                }
            }
        }
    }
    ExactOrInterval::Interval(root.clone())
}
