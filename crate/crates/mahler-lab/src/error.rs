use thiserror::Error;

/// Errors surfaced by the analysis pipeline.
#[derive(Debug, Error)]
pub enum MahlerError {
    /// Recurrence detection needs more terms than were supplied.
    #[error("insufficient data: minimal recurrence of order {order} cannot be confirmed from {terms} terms")]
    InsufficientData { order: usize, terms: usize },

    /// The polynomial is not of degree <= 2 or has no real root.
    #[error("polynomial is not quadratic over Q: {0}")]
    NotQuadratic(String),

    /// The coefficient recurrence needs more seed values than supplied.
    #[error("underdetermined series: seed values required for indices {0:?}")]
    UnderdeterminedSeries(Vec<usize>),

    /// Supplied seed values contradict the functional equation.
    #[error("inconsistent seed at coefficient index {index}")]
    InconsistentSeed { index: usize },

    /// a_0 vanishes at a point required by the evaluation pullback.
    #[error("a_0 vanishes at pullback point ({re}, {im})")]
    PoleOnPath { re: f64, im: f64 },

    /// The tail bound cannot reach the requested precision.
    #[error("precision loss: tail bound cannot reach 10^-{requested} (best: 10^-{achieved})")]
    PrecisionLoss { requested: u32, achieved: i64 },

    /// Some a_i vanishes at the chosen root of unity; raise the degree n.
    #[error("coefficient a_{index} vanishes at the chosen root of unity of degree {degree}")]
    CoefficientVanishesAtXi { index: usize, degree: u64 },

    /// The ratio estimator did not stabilise.
    #[error("radial fit did not converge: residual {residual}")]
    NoConvergence { residual: f64 },

    /// No root of the characteristic polynomial matches the measured growth.
    #[error("no characteristic root matches measured eigenvalue modulus {measured}")]
    NoMatchingRoot { measured: f64 },

    /// Two or more roots match the measured growth.
    #[error("ambiguous eigenvalue: {candidates} roots match measured modulus {measured}")]
    AmbiguousMatch { measured: f64, candidates: usize },

    /// Multiplicative-set element is zero or negative.
    #[error("non-positive element in multiplicative set: {0}")]
    NonPositiveElement(String),

    /// Two different quadratic fields appear in one multiplicative set.
    #[error("mixed quadratic fields: sqrt({0}) and sqrt({1})")]
    MixedFields(u64, u64),

    /// Bases are not all powers of a common k0.
    #[error("incommensurable bases: {0} and {1} share no common base")]
    IncommensurableBases(u64, u64),

    /// Dominant-root selection failed.
    #[error("no unique dominant positive real root: {0}")]
    NoDominantRealRoot(String),

    /// The sequence is not nonnegative (or eventually zero) on the inspected window.
    #[error("sequence hypothesis violated: {0}")]
    SequenceHypothesis(String),

    /// Catalog lookup failed.
    #[error("unknown catalog entry: {0}")]
    UnknownEntry(String),

    /// cyclotomic_product preconditions.
    #[error("p = {p} and k = {k} are not coprime")]
    NotCoprime { p: u64, k: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    /// Element could not be factored over small primes.
    #[error("cannot factor {0} over primes below the trial-division bound")]
    Unfactorable(String),

    /// Malformed input file or equation data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, MahlerError>;
