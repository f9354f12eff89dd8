//! Parameter objects for the polytopes we count: right triangles with legs
//! on the axes, axis simplices in any dimension, intervals, and general
//! rational triangles in the plane.

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{rational_str, ArithError, QuadNumber, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("({alpha}, {beta}) does not give an irrational pair: u/v is rational or u, v are not real")]
    NotIrrational { alpha: u64, beta: u64 },
    #[error("parameter must be positive: {0}")]
    NotPositive(String),
    #[error("{0} and {1} are not coprime")]
    NotLowestTerms(BigInt, BigInt),
    #[error("degenerate triangle (zero area)")]
    Degenerate,
    #[error("empty interval: lower end is not below upper end")]
    EmptyInterval,
    #[error("McAllister-Woods construction needs p >= 2, got {0}")]
    SmallP(u64),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Whether `x` is a positive value.
fn require_positive(x: &QuadNumber, what: &str) -> Result<(), GeometryError> {
    if x.sign() == Sign::Plus {
        Ok(())
    } else {
        Err(GeometryError::NotPositive(format!("{what} = {x}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairClass {
    Rational,
    Admissible,
    Other,
}

/// The triangle with vertices `(0,0)`, `(1/u, 0)` and `(0, 1/v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrianglePair {
    u: QuadNumber,
    v: QuadNumber,
    class: PairClass,
}

impl TrianglePair {
    /// Validates positivity and a shared quadratic field, then classifies.
    pub fn new(u: QuadNumber, v: QuadNumber) -> Result<Self, GeometryError> {
        require_positive(&u, "u")?;
        require_positive(&v, "v")?;
        u.common_radicand(&v)?;
        let class = classify_pair(&u, &v);
        Ok(Self { u, v, class })
    }

    pub fn from_params(params: &RationalTriangleParams) -> Self {
        Self::new(params.u().into(), params.v().into())
            .expect("lowest-terms parameters are positive rationals")
    }

    pub fn u(&self) -> &QuadNumber {
        &self.u
    }

    pub fn v(&self) -> &QuadNumber {
        &self.v
    }

    pub fn class(&self) -> PairClass {
        self.class
    }

    /// Leg lengths `(1/u, 1/v)` along the x and y axes.
    pub fn legs(&self) -> (QuadNumber, QuadNumber) {
        (
            self.u.recip().expect("u > 0"),
            self.v.recip().expect("v > 0"),
        )
    }

    /// The mirror triangle `T_{v,u}`.
    pub fn swapped(&self) -> Self {
        Self {
            u: self.v.clone(),
            v: self.u.clone(),
            class: self.class,
        }
    }

    /// `T_{u,v} ⊆ T_{u',v'}` iff both legs are no longer, i.e. `u ≥ u'` and
    /// `v ≥ v'`. `None` when the two live in different quadratic fields.
    pub fn is_contained_in(&self, other: &Self) -> Option<bool> {
        let u_ok = self.u.partial_cmp(&other.u)?.is_ge();
        let v_ok = self.v.partial_cmp(&other.v)?.is_ge();
        Some(u_ok && v_ok)
    }
}

impl<'de> Deserialize<'de> for TrianglePair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            u: QuadNumber,
            v: QuadNumber,
        }
        let raw = Raw::deserialize(d)?;
        // The class field is recomputed rather than trusted.
        Self::new(raw.u, raw.v).map_err(serde::de::Error::custom)
    }
}

fn classify_pair(u: &QuadNumber, v: &QuadNumber) -> PairClass {
    if u.is_rational() && v.is_rational() {
        return PairClass::Rational;
    }
    let sum = u + v;
    let rsum = u.recip().expect("u > 0") + v.recip().expect("v > 0");
    let ratio_irrational = !(u / v).is_rational();
    if ratio_irrational && sum.is_integer() && rsum.is_integer() {
        PairClass::Admissible
    } else {
        PairClass::Other
    }
}

/// `u = q/p`, `v = s/r`, both in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct RationalTriangleParams {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    s: BigInt,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    p: String,
    q: String,
    r: String,
    s: String,
}

impl TryFrom<RawParams> for RationalTriangleParams {
    type Error = String;
    fn try_from(raw: RawParams) -> Result<Self, String> {
        let int = |s: &str| s.parse::<BigInt>().map_err(|e| e.to_string());
        Self::new(int(&raw.p)?, int(&raw.q)?, int(&raw.r)?, int(&raw.s)?).map_err(|e| e.to_string())
    }
}

impl From<RationalTriangleParams> for RawParams {
    fn from(x: RationalTriangleParams) -> Self {
        Self {
            p: x.p.to_string(),
            q: x.q.to_string(),
            r: x.r.to_string(),
            s: x.s.to_string(),
        }
    }
}

impl RationalTriangleParams {
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        s: impl Into<BigInt>,
    ) -> Result<Self, GeometryError> {
        let (p, q, r, s) = (p.into(), q.into(), r.into(), s.into());
        for (name, x) in [("p", &p), ("q", &q), ("r", &r), ("s", &s)] {
            if !x.is_positive() {
                return Err(GeometryError::NotPositive(format!("{name} = {x}")));
            }
        }
        if !p.gcd(&q).is_one() {
            return Err(GeometryError::NotLowestTerms(q, p));
        }
        if !r.gcd(&s).is_one() {
            return Err(GeometryError::NotLowestTerms(s, r));
        }
        Ok(Self { p, q, r, s })
    }

    /// Builds the parameters for `u`, `v` given as positive rationals.
    pub fn from_uv(u: &Rational, v: &Rational) -> Result<Self, GeometryError> {
        Self::new(
            u.denom().clone(),
            u.numer().clone(),
            v.denom().clone(),
            v.numer().clone(),
        )
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }
    pub fn r(&self) -> &BigInt {
        &self.r
    }
    pub fn s(&self) -> &BigInt {
        &self.s
    }

    pub fn u(&self) -> Rational {
        Rational::new(self.q.clone(), self.p.clone())
    }

    pub fn v(&self) -> Rational {
        Rational::new(self.s.clone(), self.r.clone())
    }

    /// `lcm(q, s)`: the vertices are `(p/q, 0)` and `(0, r/s)`.
    pub fn denominator(&self) -> BigInt {
        self.q.lcm(&self.s)
    }

    pub fn as_u64(&self) -> Option<[u64; 4]> {
        Some([
            self.p.to_u64()?,
            self.q.to_u64()?,
            self.r.to_u64()?,
            self.s.to_u64()?,
        ])
    }
}

/// `u = 1/p`, `v = p/(p-1)`: the triangle with vertices `(0,0)`, `(p,0)`,
/// `(0,(p-1)/p)`.
pub fn mcallister_woods_pair(p: u64) -> Result<RationalTriangleParams, GeometryError> {
    if p < 2 {
        return Err(GeometryError::SmallP(p));
    }
    RationalTriangleParams::new(p, 1u64, p - 1, p)
}

/// The `t`-dilate of the triangle with vertices `(0,0)`, `(p,0)`,
/// `(1,(p-1)/p)`, the unimodular image of the McAllister-Woods axis triangle.
pub fn mcallister_woods_image(p: u64, t: u64) -> Result<RationalTriangle2D, GeometryError> {
    if p < 2 {
        return Err(GeometryError::SmallP(p));
    }
    let t = Rational::from_integer(BigInt::from(t));
    let p = Rational::from_integer(BigInt::from(p));
    let apex_y = (&p - Rational::one()) / &p;
    RationalTriangle2D::new([
        (Rational::zero(), Rational::zero()),
        (&p * &t, Rational::zero()),
        (t.clone(), apex_y * t),
    ])
}

/// Positive `u > v` with `u + v = alpha` and `1/u + 1/v = beta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissiblePair {
    alpha: u64,
    beta: u64,
    u: QuadNumber,
    v: QuadNumber,
}

impl AdmissiblePair {
    /// Roots of `βx² − αβx + α = 0`, i.e. `(αβ ± √(αβ(αβ−4))) / 2β`.
    pub fn from_alpha_beta(alpha: u64, beta: u64) -> Result<Self, GeometryError> {
        let not_irrational = GeometryError::NotIrrational { alpha, beta };
        if alpha == 0 || beta == 0 {
            return Err(GeometryError::NotPositive(format!("alpha = {alpha}, beta = {beta}")));
        }
        let ab = u128::from(alpha) * u128::from(beta);
        if ab <= 4 {
            return Err(not_irrational);
        }
        let disc = ab * (ab - 4);
        if disc.sqrt() * disc.sqrt() == disc {
            return Err(not_irrational);
        }
        let disc = u64::try_from(disc).map_err(|_| not_irrational.clone())?;
        let two_beta = Rational::from_integer(BigInt::from(2 * beta));
        let mid = Rational::from_integer(BigInt::from(ab)) / &two_beta;
        let half_width = Rational::one() / two_beta;
        let u = QuadNumber::new(mid.clone(), half_width.clone(), disc);
        let v = QuadNumber::new(mid, -half_width, disc);
        Ok(Self { alpha, beta, u, v })
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn u(&self) -> &QuadNumber {
        &self.u
    }

    pub fn v(&self) -> &QuadNumber {
        &self.v
    }

    pub fn triangle(&self) -> TrianglePair {
        TrianglePair::new(self.u.clone(), self.v.clone()).expect("admissible roots are positive")
    }
}

/// The two roots of `x² − αx + α/β = 0` for rational `alpha = u + v` and
/// `beta = 1/u + 1/v`, larger first. Fails unless both roots are positive
/// and their ratio is irrational.
pub fn pair_from_sums(alpha: &Rational, beta: &Rational) -> Result<TrianglePair, GeometryError> {
    let bad = || GeometryError::NotPositive(format!("no irrational pair for sums {alpha}, {beta}"));
    if !alpha.is_positive() || !beta.is_positive() {
        return Err(bad());
    }
    // Roots are α/2 ± √(α²/4 − α/β).
    let disc: Rational = alpha * alpha / Rational::from_integer(4.into()) - alpha / beta;
    if !disc.is_positive() {
        return Err(bad());
    }
    // √(P/Q) = √(PQ)/Q.
    let pq = (disc.numer() * disc.denom()).to_u64().ok_or_else(bad)?;
    let root = QuadNumber::new(Rational::zero(), Rational::new(1.into(), disc.denom().clone()), pq);
    if root.is_rational() {
        return Err(bad());
    }
    let half = QuadNumber::from_rational(alpha / Rational::from_integer(2.into()));
    TrianglePair::new(&half + &root, &half - &root)
}

/// Smallest `m ≥ 1` with `T_{u,v} = m·T_{u',v'}` for an admissible pair
/// `(u', v') = (m·u, m·v)`, given `alpha = u + v` and `beta = 1/u + 1/v`.
/// The scaled sums are `m·alpha` and `beta/m`, so only `m ≤ beta` can work.
pub fn admissible_scaling(alpha: &Rational, beta: &Rational) -> Option<u64> {
    let max_m = beta.floor().to_integer().to_u64()?;
    (1..=max_m).find(|&m| {
        let m = Rational::from_integer(BigInt::from(m));
        (alpha * &m).is_integer() && (beta / &m).is_integer()
    })
}

/// Right simplex with its vertex on axis `i` at distance `legs[i]`:
/// lattice points at scale `t` satisfy `Σ x_i / L_i ≤ t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxisSimplex {
    dim: usize,
    legs: Vec<QuadNumber>,
}

impl AxisSimplex {
    pub fn new(legs: Vec<QuadNumber>) -> Result<Self, GeometryError> {
        if legs.is_empty() {
            return Err(GeometryError::NotPositive("dimension = 0".into()));
        }
        let mut field = 0u64;
        for (i, leg) in legs.iter().enumerate() {
            require_positive(leg, &format!("leg {i}"))?;
            match (field, leg.radicand()) {
                (_, 0) => {}
                (0, d) => field = d,
                (f, d) if f != d => return Err(ArithError::RadicandMismatch(f, d).into()),
                _ => {}
            }
        }
        Ok(Self {
            dim: legs.len(),
            legs,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn legs(&self) -> &[QuadNumber] {
        &self.legs
    }
}

impl<'de> Deserialize<'de> for AxisSimplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            legs: Vec<QuadNumber>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.dim != raw.legs.len() {
            return Err(serde::de::Error::custom("dim does not match number of legs"));
        }
        Self::new(raw.legs).map_err(serde::de::Error::custom)
    }
}

/// Closed interval `[lo, hi]` on the line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    lo: QuadNumber,
    hi: QuadNumber,
}

impl Interval {
    pub fn new(lo: QuadNumber, hi: QuadNumber) -> Result<Self, GeometryError> {
        if hi.checked_sub(&lo)?.sign() != Sign::Plus {
            return Err(GeometryError::EmptyInterval);
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> &QuadNumber {
        &self.lo
    }

    pub fn hi(&self) -> &QuadNumber {
        &self.hi
    }

    pub fn length(&self) -> QuadNumber {
        &self.hi - &self.lo
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point2 {
    #[serde(with = "rational_str")]
    pub x: Rational,
    #[serde(with = "rational_str")]
    pub y: Rational,
}

/// Non-degenerate triangle with rational vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalTriangle2D {
    vertices: [Point2; 3],
}

impl RationalTriangle2D {
    pub fn new(vertices: [(Rational, Rational); 3]) -> Result<Self, GeometryError> {
        let vertices = vertices.map(|(x, y)| Point2 { x, y });
        let tri = Self { vertices };
        if tri.doubled_area().is_zero() {
            return Err(GeometryError::Degenerate);
        }
        Ok(tri)
    }

    pub fn vertices(&self) -> &[Point2; 3] {
        &self.vertices
    }

    /// Twice the signed area.
    pub fn doubled_area(&self) -> Rational {
        let [a, b, c] = &self.vertices;
        (&b.x - &a.x) * (&c.y - &a.y) - (&c.x - &a.x) * (&b.y - &a.y)
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        Self {
            vertices: self.vertices.clone().map(|p| Point2 {
                x: p.x * t,
                y: p.y * t,
            }),
        }
    }
}

impl<'de> Deserialize<'de> for RationalTriangle2D {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            vertices: [Point2; 3],
        }
        let raw = Raw::deserialize(d)?;
        Self::new(raw.vertices.map(|p| (p.x, p.y))).map_err(serde::de::Error::custom)
    }
}
