//! Exact lattice-point counts.
//!
//! Every count is a column sum: fix one coordinate, then count the rest of
//! the fibre with a single exact floor. Boundary membership is decided by
//! [`QuadNumber::sign`]; there is no tolerance anywhere in this module except
//! [`asymptotic_deficit`], which reports a float on purpose.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{QuadNumber, Rational};
use crate::polytopes::{
    AdmissiblePair, AxisSimplex, Interval, RationalTriangle2D, RationalTriangleParams,
    TrianglePair,
};

fn to_count(n: BigInt) -> u64 {
    n.to_u64().expect("lattice count does not fit in u64")
}

/// `#{(x, y) ∈ ℤ²≥0 : u·x + v·y ≤ scale}` for real `scale`.
fn count_below(u: &QuadNumber, v: &QuadNumber, scale: &QuadNumber) -> u64 {
    if scale.is_positive() || scale.is_zero() {
        let x_max = to_count((scale / u).floor());
        // Column x has ⌊(scale − u·x)/v⌋ + 1 points; step the numerator down
        // by u/v each column.
        let step = u / v;
        let mut fibre = scale / v;
        let mut total = 0u64;
        for _ in 0..=x_max {
            total += to_count(fibre.floor()) + 1;
            fibre = &fibre - &step;
        }
        total
    } else {
        0
    }
}

/// `I(t) = #{(x, y) ∈ ℤ²≥0 : u·x + v·y ≤ t}`.
pub fn count_triangle(pair: &TrianglePair, t: u64) -> u64 {
    count_below(pair.u(), pair.v(), &QuadNumber::from(t))
}

/// `#{(x, y) ∈ ℤ²>0 : u·x + v·y < t}`: lattice points strictly inside `t·T`.
pub fn count_triangle_interior(pair: &TrianglePair, t: u64) -> u64 {
    let (u, v) = (pair.u(), pair.v());
    let t = QuadNumber::from(t);
    let step = u / v;
    // (t − u·x)/v starting at x = 1; positive y < w are 1..⌈w⌉−1.
    let mut fibre = (&t - u) / v;
    let mut total = 0u64;
    while fibre.is_positive() {
        total += to_count(fibre.ceil()) - 1;
        fibre = &fibre - &step;
    }
    total
}

/// `Σ_{i=0}^{n−1} ⌊(a·i + b)/m⌋` for `a, b ≥ 0`, `m > 0`, in `O(log)` steps.
pub fn floor_sum(n: &BigInt, m: &BigInt, a: &BigInt, b: &BigInt) -> BigInt {
    let (mut n, mut m, mut a, mut b) = (n.clone(), m.clone(), a.clone(), b.clone());
    let mut total = BigInt::zero();
    while n.is_positive() {
        if a >= m {
            let (quot, rem) = a.div_rem(&m);
            total += &n * (&n - 1u32) / 2u32 * quot;
            a = rem;
        }
        if b >= m {
            let (quot, rem) = b.div_rem(&m);
            total += &n * quot;
            b = rem;
        }
        let top = &a * &n + &b;
        if top < m {
            break;
        }
        let (next_n, next_b) = top.div_rem(&m);
        n = next_n;
        b = next_b;
        std::mem::swap(&mut m, &mut a);
    }
    total
}

/// Count for `u = q/p`, `v = s/r` with integer arithmetic only. With
/// `N = ⌊tp/q⌋` and `c = tp − qN` the column sum
/// `Σ_{x=0}^{N} (⌊r(tp − qx)/(ps)⌋ + 1)`, read from the right, is
/// `N + 1 + Σ_{y=0}^{N} ⌊(rq·y + rc)/(ps)⌋`.
pub fn count_rational_params(params: &RationalTriangleParams, t: u64) -> u64 {
    let (p, q, r, s) = (params.p(), params.q(), params.r(), params.s());
    let tp = BigInt::from(t) * p;
    let (n, c) = tp.div_rem(q);
    let n1 = n + 1u32;
    to_count(&n1 + floor_sum(&n1, &(p * s), &(r * q), &(r * c)))
}

/// `#{x ∈ ℤ^n≥0 : Σ x_i / L_i ≤ scale}`, recursing on the first coordinate.
fn count_simplex_at(legs: &[QuadNumber], scale: &QuadNumber) -> u64 {
    if scale.sign() == num_bigint::Sign::Minus {
        return 0;
    }
    match legs {
        [] => 1,
        [leg] => to_count((scale * leg).floor()) + 1,
        [a, b] => count_below(
            &a.recip().expect("legs are positive"),
            &b.recip().expect("legs are positive"),
            scale,
        ),
        [first, rest @ ..] => {
            let x_max = to_count((scale * first).floor());
            let step = first.recip().expect("legs are positive");
            let mut residual = scale.clone();
            let mut total = 0;
            for _ in 0..=x_max {
                total += count_simplex_at(rest, &residual);
                residual = &residual - &step;
            }
            total
        }
    }
}

/// Lattice points of `t·S` for an axis simplex `S`.
pub fn count_axis_simplex(simplex: &AxisSimplex, t: u64) -> u64 {
    count_simplex_at(simplex.legs(), &QuadNumber::from(t))
}

/// `#([t·lo, t·hi] ∩ ℤ) = ⌊t·hi⌋ − ⌊t·lo⌋ + [t·lo ∈ ℤ]`.
pub fn count_interval(interval: &Interval, t: u64) -> u64 {
    let t = QuadNumber::from(t);
    let lo = &t * interval.lo();
    let hi = &t * interval.hi();
    let closed_lo = if lo.is_integer() { 1 } else { 0 };
    to_count(hi.floor() - lo.floor() + closed_lo)
}

/// Row scan: for each integer `y` between the extreme vertex heights, count
/// the integers between the left and right edge crossings (inclusive).
pub fn count_rational_triangle2d(tri: &RationalTriangle2D) -> u64 {
    let vs = tri.vertices();
    let y_lo = vs.iter().map(|p| &p.y).min().expect("three vertices").ceil().to_integer();
    let y_hi = vs.iter().map(|p| &p.y).max().expect("three vertices").floor().to_integer();
    let edges = [(0, 1), (1, 2), (2, 0)];
    let mut total = BigInt::zero();
    let mut y = y_lo;
    while y <= y_hi {
        let yr = Rational::from_integer(y.clone());
        let mut crossings: Vec<Rational> = Vec::with_capacity(4);
        for (i, j) in edges {
            let (a, b) = (&vs[i], &vs[j]);
            let (lo, hi) = if a.y <= b.y { (a, b) } else { (b, a) };
            if yr < lo.y || yr > hi.y {
                continue;
            }
            if lo.y == hi.y {
                crossings.push(lo.x.clone());
                crossings.push(hi.x.clone());
            } else {
                crossings.push(&lo.x + (&yr - &lo.y) * (&hi.x - &lo.x) / (&hi.y - &lo.y));
            }
        }
        let left = crossings.iter().min().expect("row meets the triangle");
        let right = crossings.iter().max().expect("row meets the triangle");
        let n = right.floor().to_integer() - left.ceil().to_integer() + 1;
        if n > BigInt::zero() {
            total += n;
        }
        y += 1;
    }
    to_count(total)
}

/// Residue data for the closed form: `z = t mod α ∈ [0, α)` and
/// `σ = 1` iff `α | t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedFormContext {
    pub z: u64,
    pub sigma: u64,
}

impl ClosedFormContext {
    pub fn new(alpha: u64, t: i64) -> Self {
        let z = i128::from(t).rem_euclid(i128::from(alpha)) as u64;
        Self {
            z,
            sigma: u64::from(z == 0),
        }
    }
}

/// `(t²β + tαβ + zβ(α − z) + 2ασ) / 2α`, with `z`, `σ` from the residue of
/// `t` in `[0, α)`. Defined for negative `t` too.
pub fn closed_form_admissible(pair: &AdmissiblePair, t: i64) -> Rational {
    let (alpha, beta) = (BigInt::from(pair.alpha()), BigInt::from(pair.beta()));
    let ctx = ClosedFormContext::new(pair.alpha(), t);
    let (z, sigma, t) = (BigInt::from(ctx.z), BigInt::from(ctx.sigma), BigInt::from(t));
    let num = &t * &t * &beta
        + &t * &alpha * &beta
        + &z * &beta * (&alpha - &z)
        + BigInt::from(2) * &alpha * sigma;
    Rational::new(num, BigInt::from(2) * alpha)
}

/// `|I(t) − t²/(2uv) − (1/u + 1/v)·t/2| / t`.
///
/// The difference is formed exactly and only the final value is rounded.
pub fn asymptotic_deficit(pair: &TrianglePair, t: u64) -> f64 {
    let (u, v) = (pair.u(), pair.v());
    let count = QuadNumber::from(count_triangle(pair, t));
    let tq = QuadNumber::from(t);
    let half = QuadNumber::from(Rational::new(1.into(), 2.into()));
    let quadratic = &tq * &tq * &half / (u * v);
    let linear = (u.recip().expect("u > 0") + v.recip().expect("v > 0")) * &tq * &half;
    let deficit = count - quadratic - linear;
    deficit.to_f64().abs() / t as f64
}
