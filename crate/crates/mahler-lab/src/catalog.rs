//! Built-in inventory of worked examples, each shipped in every applicable
//! form (recurrence oracle, linear representation, functional equation) with
//! the expected constants recorded next to them.
//!
//! The catalog doubles as a regression suite: tests re-derive every expected
//! constant through the analysis pipeline and cross-validate all forms
//! term by term.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{MahlerError, Result};
use crate::exact::poly::RationalPoly;
use crate::exact::QuadraticNumber;
use crate::mahler::MahlerEquation;
use crate::regular::LinearRepresentation;

/// Expected analysis outputs, for regression checks and report annotation.
#[derive(Debug, Clone)]
pub struct ExpectedConstants {
    /// Mahler eigenvalue lambda_F, when the equation has one.
    pub lambda: Option<QuadraticNumber>,
    /// Growth constant alpha_f of the partial sums, when defined.
    pub alpha: Option<QuadraticNumber>,
    /// Log-power m_f.
    pub m: Option<usize>,
    /// Where the constants come from.
    pub provenance: String,
}

/// One catalog example. The oracle generates the first n+1 series terms by a
/// route independent of both the equation solver and the representation.
pub struct CatalogEntry {
    pub name: String,
    pub mahler_equation: Option<MahlerEquation>,
    pub representation: Option<LinearRepresentation>,
    pub oracle: Box<dyn Fn(usize) -> Vec<BigRational> + Send + Sync>,
    pub expected: ExpectedConstants,
    pub notes: String,
}

pub const NAMES: &[&str] = &[
    "stern",
    "baum-sweet",
    "thue-morse",
    "dilcher-stolarsky",
    "dilcher-stolarsky-k2",
    "geometric",
    "all-ones",
];

/// Look up a built-in entry. `cyclotomic:p` or `cyclotomic:p:k` routes to the
/// family generator (k defaults to 2).
pub fn get(name: &str) -> Result<CatalogEntry> {
    if let Some(rest) = name.strip_prefix("cyclotomic:") {
        let mut it = rest.split(':');
        let p: u64 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| MahlerError::UnknownEntry(name.to_string()))?;
        let k: u64 = match it.next() {
            Some(s) => s
                .parse()
                .map_err(|_| MahlerError::UnknownEntry(name.to_string()))?,
            None => 2,
        };
        return cyclotomic_product(p, k);
    }
    match name {
        "stern" => Ok(stern()),
        "baum-sweet" => Ok(baum_sweet()),
        "thue-morse" => Ok(thue_morse()),
        "dilcher-stolarsky" => Ok(dilcher_stolarsky()),
        "dilcher-stolarsky-k2" => Ok(dilcher_stolarsky_k2()),
        "geometric" => Ok(geometric()),
        "all-ones" => Ok(all_ones()),
        _ => Err(MahlerError::UnknownEntry(name.to_string())),
    }
}

fn qi(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn golden_ratio() -> QuadraticNumber {
    QuadraticNumber::new(
        BigRational::new(BigInt::from(1), BigInt::from(2)),
        BigRational::new(BigInt::from(1), BigInt::from(2)),
        5,
    )
}

/// s(0)=0, s(1)=1, s(2n)=s(n), s(2n+1)=s(n)+s(n+1).
pub fn stern_oracle(n_max: usize) -> Vec<BigRational> {
    let mut s = vec![BigInt::zero(), BigInt::one()];
    for n in 2..=n_max {
        let v = if n % 2 == 0 {
            s[n / 2].clone()
        } else {
            &s[n / 2] + &s[n / 2 + 1]
        };
        s.push(v);
    }
    s.truncate(n_max + 1);
    s.into_iter().map(BigRational::from).collect()
}

/// b(0)=1, b(2n+1)=b(n), b(4n)=b(n), b(4n+2)=0.
pub fn baum_sweet_oracle(n_max: usize) -> Vec<BigRational> {
    let mut b = vec![1i64];
    for n in 1..=n_max {
        let v = if n % 2 == 1 {
            b[n / 2]
        } else if n % 4 == 0 {
            b[n / 4]
        } else {
            0
        };
        b.push(v);
    }
    b.truncate(n_max + 1);
    b.into_iter().map(qi).collect()
}

/// t(n) = (-1)^(binary digit sum of n).
pub fn thue_morse_oracle(n_max: usize) -> Vec<BigRational> {
    (0..=n_max as u64)
        .map(|n| qi(if n.count_ones() % 2 == 0 { 1 } else { -1 }))
        .collect()
}

fn stern() -> CatalogEntry {
    let eq = MahlerEquation::new(
        2,
        vec![
            RationalPoly::from_ints(&[0, 1]),
            RationalPoly::from_ints(&[-1, -1, -1]),
        ],
        vec![qi(0), qi(1)],
    )
    .unwrap();
    let rep = LinearRepresentation::from_ints(
        2,
        &[1, 0],
        &[0, 1],
        &[&[&[1, 0], &[1, 1]], &[&[1, 1], &[0, 1]]],
    )
    .unwrap();
    CatalogEntry {
        name: "stern".into(),
        mahler_equation: Some(eq),
        representation: Some(rep),
        oracle: Box::new(stern_oracle),
        expected: ExpectedConstants {
            lambda: Some(QuadraticNumber::from_int(3)),
            alpha: Some(QuadraticNumber::from_int(3)),
            m: Some(0),
            provenance: "char poly lambda - 3; sigma recurrence gives alpha = 3, m = 0".into(),
        },
        notes: "diatomic sequence; representation re-derived against the \
                recurrence oracle (the textbook w = v = [1 0] form evaluates \
                to s(n+1), an off-by-one this catalog avoids)"
            .into(),
    }
}

fn baum_sweet() -> CatalogEntry {
    let eq = MahlerEquation::new(
        2,
        vec![
            RationalPoly::from_ints(&[1]),
            RationalPoly::from_ints(&[0, -1]),
            RationalPoly::from_ints(&[-1]),
        ],
        vec![qi(1)],
    )
    .unwrap();
    let rep = LinearRepresentation::from_ints(
        2,
        &[1, 0],
        &[1, 1],
        &[&[&[0, 1], &[1, 0]], &[&[1, 0], &[0, 0]]],
    )
    .unwrap();
    CatalogEntry {
        name: "baum-sweet".into(),
        mahler_equation: Some(eq),
        representation: Some(rep),
        oracle: Box::new(baum_sweet_oracle),
        expected: ExpectedConstants {
            lambda: Some(golden_ratio()),
            alpha: Some(golden_ratio()),
            m: Some(0),
            provenance: "char poly lambda^2 - lambda - 1; dominant root is the golden ratio"
                .into(),
        },
        notes: "indicator of binary expansions without odd-length zero blocks".into(),
    }
}

fn thue_morse() -> CatalogEntry {
    let eq = MahlerEquation::new(
        2,
        vec![
            RationalPoly::from_ints(&[1]),
            RationalPoly::from_ints(&[-1, 1]),
        ],
        vec![qi(1)],
    )
    .unwrap();
    let rep = LinearRepresentation::from_ints(
        2,
        &[1, 0],
        &[1, -1],
        &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]]],
    )
    .unwrap();
    CatalogEntry {
        name: "thue-morse".into(),
        mahler_equation: Some(eq),
        representation: Some(rep),
        oracle: Box::new(thue_morse_oracle),
        expected: ExpectedConstants {
            lambda: None,
            alpha: None,
            m: None,
            provenance: "a_1(1) = 0 degenerates the characteristic polynomial to lambda; \
                         no eigenvalue, and the +-1 values break the growth hypothesis"
                .into(),
        },
        notes: "+-1 Thue-Morse; exercises the degenerate-zero eigenvalue path".into(),
    }
}

fn dilcher_stolarsky() -> CatalogEntry {
    // F(z) - (1+z+z^2) F(z^4) + z^4 F(z^16) = 0 over k = 4.
    let eq = MahlerEquation::new(
        4,
        vec![
            RationalPoly::from_ints(&[1]),
            RationalPoly::from_ints(&[-1, -1, -1]),
            RationalPoly::from_ints(&[0, 0, 0, 0, 1]),
        ],
        vec![qi(1)],
    )
    .unwrap();
    CatalogEntry {
        name: "dilcher-stolarsky".into(),
        mahler_equation: Some(eq),
        representation: None,
        oracle: Box::new(dilcher_stolarsky_oracle),
        expected: ExpectedConstants {
            lambda: Some(QuadraticNumber::new(
                BigRational::new(BigInt::from(3), BigInt::from(2)),
                BigRational::new(BigInt::from(1), BigInt::from(2)),
                5,
            )),
            alpha: None,
            m: None,
            provenance: "char poly lambda^2 - 3 lambda + 1; dominant root (3 + sqrt 5)/2"
                .into(),
        },
        notes: "0,1-coefficient property asserted on the computed prefix only, \
                not proved here"
            .into(),
    }
}

fn dilcher_stolarsky_k2() -> CatalogEntry {
    // The same function as a 2-Mahler equation of degree 4 (a_1 = a_3 = 0):
    // z^4 = z^(2^2), z^16 = z^(2^4).
    let eq = MahlerEquation::new(
        2,
        vec![
            RationalPoly::from_ints(&[1]),
            RationalPoly::from_ints(&[0]),
            RationalPoly::from_ints(&[-1, -1, -1]),
            RationalPoly::from_ints(&[0]),
            RationalPoly::from_ints(&[0, 0, 0, 0, 1]),
        ],
        vec![qi(1)],
    )
    .unwrap();
    CatalogEntry {
        name: "dilcher-stolarsky-k2".into(),
        mahler_equation: Some(eq),
        representation: None,
        oracle: Box::new(dilcher_stolarsky_oracle),
        expected: ExpectedConstants {
            // Rebasing k = 4 -> k = 2 takes the square root of the eigenvalue.
            lambda: Some(golden_ratio()),
            alpha: None,
            m: None,
            provenance: "char poly lambda^4 - 3 lambda^2 + 1 = \
                         (lambda^2 - lambda - 1)(lambda^2 + lambda - 1); \
                         dominant root is the golden ratio, the square root of the k = 4 eigenvalue"
                .into(),
        },
        notes: "cross-base twin of dilcher-stolarsky for rescaling tests".into(),
    }
}

fn geometric() -> CatalogEntry {
    // F(z) = (1+z) F(z^2), the rational control 1/(1-z).
    let eq = MahlerEquation::new(
        2,
        vec![
            RationalPoly::from_ints(&[1]),
            RationalPoly::from_ints(&[-1, -1]),
        ],
        vec![qi(1)],
    )
    .unwrap();
    CatalogEntry {
        name: "geometric".into(),
        mahler_equation: Some(eq),
        representation: Some(LinearRepresentation::all_ones(2)),
        oracle: Box::new(|n_max| vec![qi(1); n_max + 1]),
        expected: ExpectedConstants {
            lambda: Some(QuadraticNumber::from_int(2)),
            alpha: Some(QuadraticNumber::from_int(2)),
            m: Some(0),
            provenance: "1/(1-z): eigenvalue 2 = k, multiplicatively dependent with the base"
                .into(),
        },
        notes: "rational control case with a pole, not a natural boundary".into(),
    }
}

fn all_ones() -> CatalogEntry {
    CatalogEntry {
        name: "all-ones".into(),
        mahler_equation: None,
        representation: Some(LinearRepresentation::all_ones(2)),
        oracle: Box::new(|n_max| vec![qi(1); n_max + 1]),
        expected: ExpectedConstants {
            lambda: None,
            alpha: Some(QuadraticNumber::from_int(2)),
            m: Some(0),
            provenance: "sigma(r) = 2^r + 1, so alpha = k = 2 and m = 0".into(),
        },
        notes: "representation-only control sequence".into(),
    }
}

/// F_p(z) = prod over n >= 0 of Phi_p(z^(k^n)) as a degree-1 equation
/// F_p(z) - Phi_p(z) F_p(z^k) = 0, with eigenvalue Phi_p(1) = p.
pub fn cyclotomic_product(p: u64, k: u64) -> Result<CatalogEntry> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(MahlerError::NotOddPrime(p));
    }
    if k < 2 {
        return Err(MahlerError::InvalidInput(format!("k = {k} must be >= 2")));
    }
    if k % p == 0 {
        return Err(MahlerError::NotCoprime { p, k });
    }
    // Phi_p(z) = 1 + z + ... + z^(p-1) for prime p.
    let phi: Vec<i64> = vec![1; p as usize];
    let eq = MahlerEquation::new(
        k,
        vec![
            RationalPoly::from_ints(&[1]),
            RationalPoly::new(phi.iter().map(|&c| qi(-c)).collect()),
        ],
        vec![qi(1)],
    )
    .unwrap();
    let oracle = move |n_max: usize| truncated_product(p, k, n_max);
    Ok(CatalogEntry {
        name: format!("cyclotomic:{p}:{k}"),
        mahler_equation: Some(eq),
        representation: None,
        oracle: Box::new(oracle),
        expected: ExpectedConstants {
            lambda: Some(QuadraticNumber::from_int(p as i64)),
            alpha: None,
            m: None,
            provenance: format!("char poly lambda - {p}; Phi_{p}(1) = {p}"),
        },
        notes: "cyclotomic product family".into(),
    })
}

/// Multiply out prod over j of Phi_p(z^(k^j)) truncated to degree n_max.
fn truncated_product(p: u64, k: u64, n_max: usize) -> Vec<BigRational> {
    let mut acc = vec![BigRational::one()];
    let mut step = 1usize;
    while step <= n_max {
        // Factor 1 + z^step + z^(2 step) + ... + z^((p-1) step).
        let mut next = vec![BigRational::zero(); n_max + 1];
        for (i, c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for e in 0..p as usize {
                let deg = i + e * step;
                if deg > n_max {
                    break;
                }
                next[deg] += c;
            }
        }
        acc = next;
        match step.checked_mul(k as usize) {
            Some(s) => step = s,
            None => break,
        }
    }
    acc.resize(n_max + 1, BigRational::zero());
    acc
}

/// Fixed-point iteration of F <- (1+z+z^2) F(z^4) - z^4 F(z^16), truncated.
/// Independent of the generic triangular solver.
fn dilcher_stolarsky_oracle(n_max: usize) -> Vec<BigRational> {
    let mut f = vec![BigRational::one()];
    let rounds = (n_max.max(1) as f64).log(4.0).ceil() as usize + 2;
    for _ in 0..rounds {
        let mut next = vec![BigRational::zero(); n_max + 1];
        // (1 + z + z^2) * F(z^4)
        for (i, c) in f.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for off in 0..3usize {
                if let Some(deg) = i.checked_mul(4).map(|d| d + off) {
                    if deg <= n_max {
                        next[deg] += c;
                    }
                }
            }
        }
        // - z^4 * F(z^16)
        for (i, c) in f.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(deg) = i.checked_mul(16).map(|d| d + 4) {
                if deg <= n_max {
                    next[deg] -= c;
                }
            }
        }
        f = next;
    }
    f.resize(n_max + 1, BigRational::zero());
    f
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
