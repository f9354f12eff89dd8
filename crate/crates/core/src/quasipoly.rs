//! Quasipolynomials: exact fitting from counted samples, minimal periods,
//! evaluation at any integer, and the degree-2 Ehrhart series numerator.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{rational_matrix_str, rational_str, Rational};
use crate::counting::{count_rational_params, count_triangle, count_triangle_interior};
use crate::linalg;
use crate::polytopes::{AdmissiblePair, RationalTriangleParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuasipolyError {
    #[error("residue {residue} mod {period} has {have} samples, need {need}")]
    InsufficientSamples {
        residue: u64,
        period: u64,
        have: usize,
        need: usize,
    },
    #[error("period must be positive")]
    ZeroPeriod,
    #[error("coefficient table is not period × (degree + 1)")]
    Shape,
    #[error("guaranteed period {0} is too large to sample")]
    PeriodTooLarge(String),
    #[error("fit at the guaranteed period failed: {0}")]
    FitFailure(Box<Mismatch>),
}

/// A polynomial in `t` whose coefficients depend on `t mod period`.
/// `coeffs[z][j]` is the coefficient of `t^j` on the residue class `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawQuasipolynomial")]
pub struct Quasipolynomial {
    period: u64,
    degree: usize,
    #[serde(with = "rational_matrix_str")]
    coeffs: Vec<Vec<Rational>>,
}

#[derive(Deserialize)]
struct RawQuasipolynomial {
    period: u64,
    degree: usize,
    #[serde(with = "rational_matrix_str")]
    coeffs: Vec<Vec<Rational>>,
}

impl TryFrom<RawQuasipolynomial> for Quasipolynomial {
    type Error = QuasipolyError;
    fn try_from(raw: RawQuasipolynomial) -> Result<Self, Self::Error> {
        Self::new(raw.period, raw.degree, raw.coeffs)
    }
}

impl Quasipolynomial {
    pub fn new(period: u64, degree: usize, coeffs: Vec<Vec<Rational>>) -> Result<Self, QuasipolyError> {
        if period == 0 {
            return Err(QuasipolyError::ZeroPeriod);
        }
        if coeffs.len() as u64 != period || coeffs.iter().any(|c| c.len() != degree + 1) {
            return Err(QuasipolyError::Shape);
        }
        Ok(Self {
            period,
            degree,
            coeffs,
        })
    }

    /// A single polynomial, i.e. period 1.
    pub fn polynomial(coeffs: Vec<Rational>) -> Self {
        let degree = coeffs.len().saturating_sub(1);
        Self {
            period: 1,
            degree,
            coeffs: vec![coeffs],
        }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Vec<Rational>] {
        &self.coeffs
    }

    /// Coefficients of the constituent used for `t ≡ z (mod period)`.
    pub fn constituent(&self, z: u64) -> &[Rational] {
        &self.coeffs[(z % self.period) as usize]
    }

    /// `c_z(t)` with `z = t mod period` taken in `[0, period)`, including
    /// for negative `t`.
    pub fn evaluate(&self, t: i64) -> Rational {
        let z = i128::from(t).rem_euclid(i128::from(self.period)) as u64;
        let t = Rational::from_integer(BigInt::from(t));
        self.constituent(z)
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &t + c)
    }

    /// Least divisor `π'` of the period such that every constituent equals
    /// the constituent of its residue mod `π'`.
    pub fn minimal_period(&self) -> u64 {
        divisors(self.period)
            .into_iter()
            .find(|&d| {
                (0..self.period).all(|z| self.coeffs[z as usize] == self.coeffs[(z % d) as usize])
            })
            .expect("the period divides itself")
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal_period() == self.period
    }

    /// The same function written with its minimal period.
    pub fn reduced(&self) -> Self {
        let m = self.minimal_period();
        Self {
            period: m,
            degree: self.degree,
            coeffs: self.coeffs[..m as usize].to_vec(),
        }
    }

    /// Whether every constituent has integer coefficients.
    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_integer())
    }
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The first sample the interpolated quasipolynomial failed to reproduce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub t: i64,
    #[serde(with = "rational_str")]
    pub expected: Rational,
    #[serde(with = "rational_str")]
    pub predicted: Rational,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at t = {}: sample {} but fit gives {}", self.t, self.expected, self.predicted)
    }
}

/// Outcome of a fit. A failed verification is an answer, not an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fit {
    Found(Quasipolynomial),
    NoFit(Mismatch),
}

impl Fit {
    pub fn found(self) -> Option<Quasipolynomial> {
        match self {
            Fit::Found(qp) => Some(qp),
            Fit::NoFit(_) => None,
        }
    }
}

/// Interpolates each residue class from its `degree + 1` smallest sample
/// points, then checks every other sample exactly.
pub fn fit_quasipolynomial(
    samples: &[(i64, Rational)],
    period: u64,
    degree: usize,
) -> Result<Fit, QuasipolyError> {
    if period == 0 {
        return Err(QuasipolyError::ZeroPeriod);
    }
    let need = degree + 1;
    let mut by_residue: Vec<BTreeMap<i64, &Rational>> = vec![BTreeMap::new(); period as usize];
    for (t, value) in samples {
        let z = i128::from(*t).rem_euclid(i128::from(period)) as usize;
        if let Some(prev) = by_residue[z].insert(*t, value) {
            if prev != value {
                return Ok(Fit::NoFit(Mismatch {
                    t: *t,
                    expected: value.clone(),
                    predicted: prev.clone(),
                }));
            }
        }
    }
    let mut coeffs = Vec::with_capacity(period as usize);
    for (z, class) in by_residue.iter().enumerate() {
        if class.len() < need {
            return Err(QuasipolyError::InsufficientSamples {
                residue: z as u64,
                period,
                have: class.len(),
                need,
            });
        }
        let (vander, rhs): (Vec<Vec<Rational>>, Vec<Rational>) = class
            .iter()
            .take(need)
            .map(|(&t, &v)| (powers(t, degree), v.clone()))
            .unzip();
        let c = linalg::solve(&vander, &rhs).expect("distinct nodes give a nonsingular Vandermonde system");
        coeffs.push(c);
    }
    let qp = Quasipolynomial {
        period,
        degree,
        coeffs,
    };
    let mut sorted: Vec<&(i64, Rational)> = samples.iter().collect();
    sorted.sort_by_key(|(t, _)| *t);
    for (t, value) in sorted {
        let predicted = qp.evaluate(*t);
        if &predicted != value {
            return Ok(Fit::NoFit(Mismatch {
                t: *t,
                expected: value.clone(),
                predicted,
            }));
        }
    }
    Ok(Fit::Found(qp))
}

fn powers(t: i64, degree: usize) -> Vec<Rational> {
    let t = Rational::from_integer(BigInt::from(t));
    let mut out = Vec::with_capacity(degree + 1);
    let mut acc = Rational::from_integer(BigInt::from(1));
    for _ in 0..=degree {
        out.push(acc.clone());
        acc *= &t;
    }
    out
}

/// A lattice-point counting function with a period known in advance.
pub trait PeriodicCount: Sync {
    /// A period the counting function provably has.
    fn guaranteed_period(&self) -> Result<u64, QuasipolyError>;
    fn count(&self, t: u64) -> u64;
}

impl PeriodicCount for RationalTriangleParams {
    /// The denominator `lcm(q, s)`.
    fn guaranteed_period(&self) -> Result<u64, QuasipolyError> {
        let d = self.denominator();
        d.to_u64().ok_or_else(|| QuasipolyError::PeriodTooLarge(d.to_string()))
    }

    fn count(&self, t: u64) -> u64 {
        count_rational_params(self, t)
    }
}

impl PeriodicCount for AdmissiblePair {
    /// `alpha`.
    fn guaranteed_period(&self) -> Result<u64, QuasipolyError> {
        Ok(self.alpha())
    }

    fn count(&self, t: u64) -> u64 {
        count_triangle(&self.triangle(), t)
    }
}

/// Counts `t = 0..n` in parallel, returned in `t` order.
pub fn count_samples<C: PeriodicCount + ?Sized>(source: &C, n: u64) -> Vec<(i64, Rational)> {
    (0..n)
        .into_par_iter()
        .map(|t| (t as i64, Rational::from_integer(BigInt::from(source.count(t)))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodResult {
    /// The fitted function written with its minimal period.
    pub quasipolynomial: Quasipolynomial,
    pub guaranteed_period: u64,
    pub minimal_period: u64,
}

/// Fits at the guaranteed period from `t = 0 .. (degree + 2)·P` (one spare
/// sample per residue for verification) and reads off the least period by
/// comparing constituents.
pub fn minimal_period<C: PeriodicCount + ?Sized>(
    source: &C,
    degree: usize,
) -> Result<PeriodResult, QuasipolyError> {
    let period = source.guaranteed_period()?;
    if period == 0 {
        return Err(QuasipolyError::ZeroPeriod);
    }
    let n = period
        .checked_mul(degree as u64 + 2)
        .ok_or_else(|| QuasipolyError::PeriodTooLarge(period.to_string()))?;
    let samples = count_samples(source, n);
    match fit_quasipolynomial(&samples, period, degree)? {
        Fit::Found(qp) => {
            let reduced = qp.reduced();
            Ok(PeriodResult {
                minimal_period: reduced.period(),
                quasipolynomial: reduced,
                guaranteed_period: period,
            })
        }
        Fit::NoFit(m) => Err(QuasipolyError::FitFailure(Box::new(m))),
    }
}

/// Numerator `a0 + a1·z + a2·z²` of `Σ I(t) z^t = g(z) / (1 − z)³` for a
/// triangle with a polynomial count and `I(0) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesNumerator {
    pub a0: i64,
    pub a1: i64,
    pub a2: i64,
}

impl SeriesNumerator {
    pub fn as_array(&self) -> [i64; 3] {
        [self.a0, self.a1, self.a2]
    }

    /// Coefficientwise `≤`.
    pub fn le(&self, other: &Self) -> bool {
        self.as_array().iter().zip(other.as_array()).all(|(a, b)| *a <= b)
    }
}

/// From `i1 = I(1)` and `i2 = I(2)`: `(1, i1 − 3, 3 − 3·i1 + i2)`.
pub fn series_numerator(i1: i64, i2: i64) -> SeriesNumerator {
    SeriesNumerator {
        a0: 1,
        a1: i1 - 3,
        a2: 3 - 3 * i1 + i2,
    }
}

/// `I(−t)` against the interior count of `t·T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReciprocityReport {
    pub t: u64,
    #[serde(with = "rational_str")]
    pub lhs: Rational,
    pub interior: u64,
    #[serde(with = "rational_str")]
    pub mu_observed: Rational,
    pub alpha_divides_t: bool,
}

/// Records `evaluate(qp, −t) − interior(t)`; asserts nothing.
pub fn reciprocity_report(pair: &AdmissiblePair, qp: &Quasipolynomial, t: u64) -> ReciprocityReport {
    let lhs = qp.evaluate(-(t as i64));
    let interior = count_triangle_interior(&pair.triangle(), t);
    let mu_observed = &lhs - Rational::from_integer(BigInt::from(interior));
    ReciprocityReport {
        t,
        lhs,
        interior,
        mu_observed,
        alpha_divides_t: t.is_multiple_of(pair.alpha()),
    }
}
