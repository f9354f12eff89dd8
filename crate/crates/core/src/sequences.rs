//! k-Fibonacci numbers, the tetrahedron sequence `a_n`, and the triangle and
//! tetrahedron families built from them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{QuadNumber, Rational};
use crate::polytopes::{AxisSimplex, RationalTriangleParams};

/// `F_n(k)` with `F_0 = 0`, `F_1 = 1`, `F_n = k·F_{n−1} + F_{n−2}`.
pub fn k_fib(k: u64, n: u64) -> BigInt {
    k_fib_pair(k, n).1
}

/// `(F_{n−1}(k), F_n(k))`, with `F_{−1} = 1` so that the recurrence holds
/// at `n = 1`.
fn k_fib_pair(k: u64, n: u64) -> (BigInt, BigInt) {
    let k = BigInt::from(k);
    let (mut prev, mut cur) = (BigInt::one(), BigInt::zero());
    for _ in 0..n {
        let next = &k * &cur + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    (prev, cur)
}

/// The two coprimality statements about `F_n(k)`, evaluated separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FibCoprimality {
    /// `gcd(F_n, F_{n−1}) = 1`; true for every `k, n`.
    pub consecutive_coprime: bool,
    /// `gcd(F_n, k) = 1`. Since `F_n ≡ F_{n−2} (mod k)` this holds exactly
    /// when `n` is odd or `k = 1`.
    pub coprime_to_k: bool,
}

pub fn fib_coprimality(k: u64, n: u64) -> FibCoprimality {
    let (prev, cur) = k_fib_pair(k, n);
    FibCoprimality {
        consecutive_coprime: cur.gcd(&prev).is_one(),
        coprime_to_k: cur.gcd(&BigInt::from(k)).is_one(),
    }
}

/// `F_n² − k·F_{n−1}·F_n − F_{n−1}² + (−1)^n = 0`.
pub fn verify_fact2(k: u64, n: u64) -> bool {
    let (prev, cur) = k_fib_pair(k, n);
    let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    (&cur * &cur - BigInt::from(k) * &prev * &cur - &prev * &prev + sign).is_zero()
}

/// Triangle with legs `F_n/F_{n−1}` and `F_{n−1}/F_n`, i.e. parameters
/// `(F_{n−1}, F_n, F_n, F_{n−1})`. `None` if `F_{n−1} = 0`.
pub fn fib_triangle(k: u64, n: u64) -> Option<RationalTriangleParams> {
    if n < 2 {
        return None;
    }
    let (prev, cur) = k_fib_pair(k, n);
    RationalTriangleParams::new(prev.clone(), cur.clone(), cur, prev).ok()
}

/// `a_1..a_4 = 2, 3, 10, 17` and `a_n = 6·a_{n−2} − a_{n−4}`.
/// `n = 0` is outside the sequence and panics.
pub fn a_sequence(n: u64) -> BigInt {
    assert!(n >= 1, "the sequence starts at n = 1");
    let mut window: [BigInt; 4] = [2, 3, 10, 17].map(BigInt::from);
    if n <= 4 {
        return window[n as usize - 1].clone();
    }
    for _ in 5..=n {
        let next = BigInt::from(6) * &window[2] - &window[0];
        window.rotate_left(1);
        window[3] = next;
    }
    debug_assert!(window[3].is_positive());
    window[3].clone()
}

/// Tetrahedron with legs `1/2`, `a_{2n+1}/a_{2n}` and `2·a_{2n}/a_{2n+1}`.
pub fn tetra_family(n: u64) -> AxisSimplex {
    assert!(n >= 1, "the family starts at n = 1");
    let even = a_sequence(2 * n);
    let odd = a_sequence(2 * n + 1);
    let legs = vec![
        QuadNumber::from(Rational::new(1.into(), 2.into())),
        QuadNumber::from(Rational::new(odd.clone(), even.clone())),
        QuadNumber::from(Rational::new(BigInt::from(2) * even, odd)),
    ];
    AxisSimplex::new(legs).expect("legs are positive rationals")
}

/// The limit of [`tetra_family`]: legs `1/2`, `2 + √2`, `2 − √2`.
pub fn limit_tetrahedron() -> AxisSimplex {
    let two = || Rational::from_integer(2.into());
    let legs = vec![
        QuadNumber::from(Rational::new(1.into(), 2.into())),
        QuadNumber::new(two(), Rational::one(), 2),
        QuadNumber::new(two(), -Rational::one(), 2),
    ];
    AxisSimplex::new(legs).expect("legs are positive in the same field")
}
