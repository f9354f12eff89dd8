//! Exact rationals and real quadratic irrationals.
//!
//! A [`QuadNumber`] is a value `a + b·√d` with rational `a`, `b` and a
//! squarefree radicand `d`. Rational values are stored with `b = 0` and
//! `d = 0`, so equality of canonical fields is equality of values.
//!
//! Every comparison, sign and floor in this crate goes through
//! [`QuadNumber::sign`], which decides the sign with integer arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("radicand mismatch: cannot combine values in Q(√{0}) and Q(√{1})")]
    RadicandMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse number {0:?}")]
    Parse(String),
}

/// Builds a rational from an integer numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_sign(x: &Rational) -> Sign {
    if x.is_zero() {
        Sign::NoSign
    } else if x.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Renders a rational as `"num/den"`, always with the slash.
pub fn rational_to_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"n"`, `"-n"` or `"num/den"`.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let s = s.trim();
    let err = || ArithError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// Splits `d` into `(k, r)` with `d = k²·r` and `r` squarefree.
fn squarefree_split(mut d: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        let pp = p * p;
        while d.is_multiple_of(pp) {
            d /= pp;
            k *= p;
        }
        p += 1;
    }
    (k, d)
}

/// Exact sign of `a + b·√d` for squarefree `d` (or `d ∈ {0, 1}` with the
/// usual meaning).
fn sign_of(a: &Rational, b: &Rational, d: u64) -> Sign {
    let sa = rational_sign(a);
    let sb = if d == 0 { Sign::NoSign } else { rational_sign(b) };
    match (sa, sb) {
        (_, Sign::NoSign) => sa,
        (Sign::NoSign, _) => sb,
        _ if sa == sb => sa,
        _ => {
            // Opposite signs: the term with the larger square wins.
            let lhs = a * a;
            let rhs = b * b * Rational::from_integer(BigInt::from(d));
            match lhs.cmp(&rhs) {
                Ordering::Greater => sa,
                Ordering::Less => sb,
                Ordering::Equal => Sign::NoSign,
            }
        }
    }
}

/// The real number `a + b·√d` with `a`, `b` rational and `d` squarefree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadNumber {
    /// Canonicalizes `a + b·√d`: square factors of `d` move into `b`, and
    /// rational values end up with `b = 0`, `d = 0`.
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        let (k, r) = squarefree_split(d);
        let b = b * Rational::from_integer(BigInt::from(k));
        match r {
            0 => Self::from_rational(a),
            1 => Self::from_rational(a + b),
            _ if b.is_zero() => Self::from_rational(a),
            _ => Self { a, b, d: r },
        }
    }

    /// Builds from parts whose radicand is already squarefree.
    fn with_radicand(a: Rational, b: Rational, d: u64) -> Self {
        if d == 0 || b.is_zero() {
            Self::from_rational(a)
        } else {
            Self { a, b, d }
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `√d` itself.
    pub fn sqrt(d: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `√d`.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Squarefree radicand, `0` for rational values.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    /// `a - b·√d`.
    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// `(a + b√d)(a - b√d) = a² - b²d`, always rational.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.d))
    }

    /// The radicand two operands would share, if any.
    pub fn common_radicand(&self, other: &Self) -> Result<u64, ArithError> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(ArithError::RadicandMismatch(d, e)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(other)?;
        Ok(Self::with_radicand(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(other)?;
        Ok(Self::with_radicand(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(other)?;
        let dd = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::with_radicand(a, b, d))
    }

    /// `(a + b√d)⁻¹ = (a - b√d) / (a² - b²d)`.
    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::with_radicand(&self.a / &n, -(&self.b / &n), self.d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.common_radicand(other)?;
        self.checked_mul(&other.recip()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::with_radicand(&self.a * k, &self.b * k, self.d)
    }

    /// Exact sign, decided by integer cross-multiplication.
    pub fn sign(&self) -> Sign {
        sign_of(&self.a, &self.b, self.d)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Plus
    }

    /// Exact comparison; fails only for operands in different fields.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering, ArithError> {
        let diff = self.checked_sub(other)?;
        Ok(match diff.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        })
    }

    /// Floating approximation, for display and for seeding [`Self::floor`].
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.d == 0 {
            return a;
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Integer within a couple of units of the floor, without floating point.
    fn coarse_floor(&self) -> BigInt {
        // b√d = ±√(P/Q) with b²d = P/Q, and ⌊√(P/Q)⌋ = ⌊isqrt(PQ) / Q⌋.
        let sq = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
        let root = (sq.numer() * sq.denom()).sqrt().div_floor(sq.denom());
        let irr = if self.b.is_negative() { -root } else { root };
        self.a.floor().to_integer() + irr
    }

    /// The unique integer `n` with `n ≤ x < n + 1`.
    ///
    /// Starts from a floating estimate and corrects it with exact sign tests,
    /// so the result is certified even when the estimate is off.
    pub fn floor(&self) -> BigInt {
        if self.d == 0 {
            return self.a.floor().to_integer();
        }
        let est = self.to_f64();
        let mut n = if est.is_finite() && est.abs() < 9.0e15 {
            BigInt::from(est.floor() as i64)
        } else {
            self.coarse_floor()
        };
        loop {
            let shifted = &self.a - Rational::from_integer(n.clone());
            if sign_of(&shifted, &self.b, self.d) == Sign::Minus {
                n -= 1;
                continue;
            }
            let above = shifted - Rational::one();
            if sign_of(&above, &self.b, self.d) != Sign::Minus {
                n += 1;
                continue;
            }
            return n;
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }
}

impl Default for QuadNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialOrd for QuadNumber {
    /// `None` for operands in different quadratic fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl From<Rational> for QuadNumber {
    fn from(a: Rational) -> Self {
        Self::from_rational(a)
    }
}

impl From<BigInt> for QuadNumber {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl From<i64> for QuadNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<u64> for QuadNumber {
    fn from(n: u64) -> Self {
        Self::from_integer(n)
    }
}

impl Neg for &QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        QuadNumber {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
}

impl Neg for QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        -&self
    }
}

// Operator forms panic on mixed radicands; the validated geometric types
// never mix fields, and the checked_* methods cover untrusted input.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadNumber> for &QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: &QuadNumber) -> QuadNumber {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("QuadNumber::{}: {e}", stringify!($method)))
            }
        }
        impl $tr<QuadNumber> for QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: QuadNumber) -> QuadNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QuadNumber> for QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: &QuadNumber) -> QuadNumber {
                (&self).$method(rhs)
            }
        }
        impl $tr<QuadNumber> for &QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: QuadNumber) -> QuadNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            return write!(f, "{}", self.a);
        }
        let (sign, b) = if self.b.is_negative() {
            ("-", -&self.b)
        } else {
            ("+", self.b.clone())
        };
        let coeff = if b.is_one() {
            String::new()
        } else {
            format!("{b}*")
        };
        if self.a.is_zero() {
            let lead = if sign == "-" { "-" } else { "" };
            write!(f, "{lead}{coeff}sqrt({})", self.d)
        } else {
            write!(f, "{} {sign} {coeff}sqrt({})", self.a, self.d)
        }
    }
}

impl FromStr for QuadNumber {
    type Err = ArithError;

    /// Accepts a rational (`"3"`, `"-7/2"`), a comma-separated triple
    /// `"a,b,d"` meaning `a + b·√d`, or the display form
    /// (`"3/2 + 1/2*sqrt(5)"`, `"-sqrt(2)"`, `"1+2√5"`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.contains("sqrt(") || s.contains('√') {
            return parse_surd(s);
        }
        let parts: Vec<&str> = s.split(',').collect();
        match parts.as_slice() {
            [a] => Ok(Self::from_rational(parse_rational(a)?)),
            [a, b, d] => {
                let d: u64 = d
                    .trim()
                    .parse()
                    .map_err(|_| ArithError::Parse(s.to_string()))?;
                Ok(Self::new(parse_rational(a)?, parse_rational(b)?, d))
            }
            _ => Err(ArithError::Parse(s.to_string())),
        }
    }
}

fn parse_surd(s: &str) -> Result<QuadNumber, ArithError> {
    let err = || ArithError::Parse(s.to_string());
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (head, rest) = match compact.split_once("sqrt(") {
        Some((head, rest)) => (head.to_string(), rest.strip_suffix(')').ok_or_else(err)?.to_string()),
        None => {
            // "2√5" is a product; "2*√5" is accepted too.
            let (head, rest) = compact.split_once('√').ok_or_else(err)?;
            let head = match head.chars().last() {
                Some(c) if c.is_ascii_digit() => format!("{head}*"),
                _ => head.to_string(),
            };
            (head, rest.to_string())
        }
    };
    let d: u64 = rest.parse().map_err(|_| err())?;
    let (a, b) = match head.strip_suffix('*') {
        Some(h) => match h.char_indices().rev().find(|&(i, c)| i > 0 && (c == '+' || c == '-')) {
            Some((i, _)) => (&h[..i], h[i..].to_string()),
            None => ("", h.to_string()),
        },
        None => match head.chars().last() {
            None => ("", "1".to_string()),
            Some('+') => (&head[..head.len() - 1], "1".to_string()),
            Some('-') => (&head[..head.len() - 1], "-1".to_string()),
            Some(_) => return Err(err()),
        },
    };
    let a = if a.is_empty() {
        Rational::zero()
    } else {
        parse_rational(a)?
    };
    let b = parse_rational(b.trim_start_matches('+'))?;
    Ok(QuadNumber::new(a, b, d))
}

#[derive(Serialize, Deserialize)]
struct QuadRecord {
    a_num: String,
    a_den: String,
    b_num: String,
    b_den: String,
    d: String,
}

impl Serialize for QuadNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QuadRecord {
            a_num: self.a.numer().to_string(),
            a_den: self.a.denom().to_string(),
            b_num: self.b.numer().to_string(),
            b_den: self.b.denom().to_string(),
            d: self.d.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let rec = QuadRecord::deserialize(deserializer)?;
        let int = |s: &str| s.parse::<BigInt>().map_err(D::Error::custom);
        let (a_den, b_den) = (int(&rec.a_den)?, int(&rec.b_den)?);
        if a_den.is_zero() || b_den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        let d: u64 = rec.d.parse().map_err(D::Error::custom)?;
        Ok(Self::new(
            Rational::new(int(&rec.a_num)?, a_den),
            Rational::new(int(&rec.b_num)?, b_den),
            d,
        ))
    }
}

/// Serde adapter rendering a [`Rational`] as a `"num/den"` string.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a matrix of rationals rendered as `"num/den"` strings.
pub mod rational_matrix_str {
    use super::*;

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m
            .iter()
            .map(|row| row.iter().map(rational_to_string).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: Rational, b: Rational, d: u64) -> QuadNumber {
        QuadNumber::new(a, b, d)
    }

    fn golden_sq() -> QuadNumber {
        q(rat(3, 2), rat(1, 2), 5)
    }

    #[test]
    fn normalize_absorbs_square_factors() {
        let x = q(rat(0, 1), rat(1, 1), 8);
        assert_eq!((x.a().clone(), x.b().clone(), x.radicand()), (rat(0, 1), rat(2, 1), 2));

        let x = q(rat(3, 1), rat(0, 1), 17);
        assert_eq!((x.a().clone(), x.b().clone(), x.radicand()), (rat(3, 1), rat(0, 1), 0));

        let x = q(rat(1, 1), rat(1, 2), 12);
        assert_eq!((x.a().clone(), x.b().clone(), x.radicand()), (rat(1, 1), rat(1, 1), 3));

        // Perfect squares fold into the rational part.
        assert_eq!(q(rat(1, 1), rat(2, 1), 9), QuadNumber::from_integer(7));
        assert_eq!(q(rat(1, 1), rat(5, 1), 1), QuadNumber::from_integer(6));
    }

    #[test]
    fn conjugate_products_and_sums() {
        let x = golden_sq();
        assert_eq!(&x * &x.conjugate(), QuadNumber::one());
        let s = q(rat(1, 1), rat(1, 2), 2) + q(rat(1, 1), rat(-1, 2), 2);
        assert_eq!(s, QuadNumber::from_integer(2));
        assert_eq!(x.recip().unwrap(), golden_sq().conjugate());
        assert_eq!(&x * &x.recip().unwrap(), QuadNumber::one());
    }

    #[test]
    fn field_errors() {
        let r2 = QuadNumber::sqrt(2);
        let r3 = QuadNumber::sqrt(3);
        assert_eq!(r2.checked_mul(&r3), Err(ArithError::RadicandMismatch(2, 3)));
        assert_eq!(r2.checked_add(&r3), Err(ArithError::RadicandMismatch(2, 3)));
        assert_eq!(r2.checked_div(&QuadNumber::zero()), Err(ArithError::DivisionByZero));
        assert_eq!(r2.partial_cmp(&r3), None);
        // Rational operands mix with anything.
        assert!(r2.checked_mul(&QuadNumber::from_integer(3)).is_ok());
    }

    #[test]
    fn signs() {
        assert_eq!(q(rat(10, 1), rat(-5, 1), 2).sign(), Sign::Plus);
        assert_eq!(q(rat(1, 1), rat(-1, 1), 2).sign(), Sign::Minus);
        assert_eq!(QuadNumber::zero().sign(), Sign::NoSign);
        assert_eq!(q(rat(-1, 1), rat(1, 1), 2).sign(), Sign::Plus);
        assert_eq!(q(rat(-2, 1), rat(1, 1), 3).sign(), Sign::Minus);
    }

    #[test]
    fn floors() {
        assert_eq!(QuadNumber::sqrt(2).floor(), BigInt::from(1));
        assert_eq!(golden_sq().floor(), BigInt::from(2));
        assert_eq!((-QuadNumber::sqrt(2)).floor(), BigInt::from(-2));
        assert_eq!(QuadNumber::from(rat(-7, 2)).floor(), BigInt::from(-4));
        assert_eq!((-QuadNumber::sqrt(2)).ceil(), BigInt::from(-1));
    }

    #[test]
    fn floor_of_huge_values_uses_exact_seed() {
        // 10^40 + √2: far beyond f64 integer precision.
        let big = BigInt::from(10u32).pow(40);
        let x = QuadNumber::new(Rational::from_integer(big.clone()), rat(1, 1), 2);
        assert_eq!(x.floor(), &big + 1);
        let y = QuadNumber::new(Rational::from_integer(big.clone()), rat(-1, 1), 2);
        assert_eq!(y.floor(), &big - 2);
    }

    #[test]
    fn parse_and_display() {
        let x: QuadNumber = "3/2,1/2,5".parse().unwrap();
        assert_eq!(x, golden_sq());
        assert_eq!(x.to_string(), "3/2 + 1/2*sqrt(5)");
        let y: QuadNumber = "-7/2".parse().unwrap();
        assert_eq!(y, QuadNumber::from(rat(-7, 2)));
        assert_eq!(QuadNumber::sqrt(8).to_string(), "2*sqrt(2)");
        assert!("1,2".parse::<QuadNumber>().is_err());
        assert!("x/2".parse::<QuadNumber>().is_err());
        assert_eq!("1/0".parse::<QuadNumber>(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn parse_display_form() {
        let q = |a, b, d| QuadNumber::new(a, b, d);
        assert_eq!("3/2 + 1/2*sqrt(5)".parse::<QuadNumber>().unwrap(), golden_sq());
        assert_eq!("2 - sqrt(2)".parse::<QuadNumber>().unwrap(), q(rat(2, 1), rat(-1, 1), 2));
        assert_eq!("-sqrt(3)".parse::<QuadNumber>().unwrap(), q(rat(0, 1), rat(-1, 1), 3));
        assert_eq!("-3/4*sqrt(7)".parse::<QuadNumber>().unwrap(), q(rat(0, 1), rat(-3, 4), 7));
        assert_eq!("1+2√5".parse::<QuadNumber>().unwrap(), q(rat(1, 1), rat(2, 1), 5));
        assert_eq!("√8".parse::<QuadNumber>().unwrap(), QuadNumber::sqrt(8));
        assert!("2sqrt(3)".parse::<QuadNumber>().is_err());
        assert!("sqrt(3".parse::<QuadNumber>().is_err());
        for x in [golden_sq(), q(rat(-5, 3), rat(-7, 2), 11), QuadNumber::sqrt(2), QuadNumber::from(rat(4, 9))] {
            assert_eq!(x.to_string().parse::<QuadNumber>().unwrap(), x);
        }
    }

    #[test]
    fn json_record() {
        let x = golden_sq();
        let js = serde_json::to_value(&x).unwrap();
        assert_eq!(
            js,
            serde_json::json!({"a_num":"3","a_den":"2","b_num":"1","b_den":"2","d":"5"})
        );
        let back: QuadNumber = serde_json::from_value(js).unwrap();
        assert_eq!(back, x);
        // Non-canonical input is normalized on the way in.
        let raw = serde_json::json!({"a_num":"0","a_den":"1","b_num":"1","b_den":"1","d":"8"});
        let y: QuadNumber = serde_json::from_value(raw).unwrap();
        assert_eq!(y, QuadNumber::new(rat(0, 1), rat(2, 1), 2));
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-2000i64..2000, 1i64..200).prop_map(|(n, d)| rat(n, d))
    }

    fn quad_in(d: u64) -> impl Strategy<Value = QuadNumber> {
        (small_rat(), small_rat()).prop_map(move |(a, b)| QuadNumber::new(a, b, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn floor_brackets_value(a in small_rat(), b in small_rat(), d in 0u64..200) {
            let x = QuadNumber::new(a, b, d);
            let n = QuadNumber::from_integer(x.floor());
            prop_assert_ne!((&x - &n).sign(), Sign::Minus);
            prop_assert_eq!((&x - &n - QuadNumber::one()).sign(), Sign::Minus);
        }
    }

    proptest! {
        #[test]
        fn field_axioms(
            (x, y, z) in prop::sample::select(vec![2u64, 3, 5, 6, 7, 10, 13])
                .prop_flat_map(|d| (quad_in(d), quad_in(d), quad_in(d)))
        ) {
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.recip().unwrap(), QuadNumber::one());
                prop_assert_eq!((&y / &x) * &x, y.clone());
            }
        }

        #[test]
        fn sign_agrees_with_float_when_margin_is_clear(x in quad_in(7)) {
            let f = x.to_f64();
            if f.abs() > 2f64.powi(-20) {
                let expected = if f > 0.0 { Sign::Plus } else { Sign::Minus };
                prop_assert_eq!(x.sign(), expected);
            }
        }
    }
}
