//! Divisibility criteria that predict period collapse, and the
//! classification of admissible pairs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polytopes::{AdmissiblePair, RationalTriangleParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriterionError {
    #[error("{0} and {1} must be positive and coprime")]
    NotCoprime(BigInt, BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CollapsePredicted,
    PseudoIntegralPredicted,
    NoPrediction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub conditions: Vec<Condition>,
    /// Present exactly when every condition holds.
    #[serde(with = "opt_int_str")]
    pub predicted_period_divisor: Option<BigInt>,
    pub verdict: Verdict,
}

impl CriterionReport {
    fn build(conditions: Vec<Condition>, divisor: BigInt, verdict: Verdict) -> Self {
        let all = conditions.iter().all(|c| c.holds);
        Self {
            conditions,
            predicted_period_divisor: all.then_some(divisor),
            verdict: if all { verdict } else { Verdict::NoPrediction },
        }
    }

    pub fn holds(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }
}

/// Integers travel as decimal strings so that size is unbounded.
mod opt_int_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(n) => s.serialize_some(&n.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

fn cond(name: &str, holds: bool) -> Condition {
    Condition {
        name: name.to_owned(),
        holds,
    }
}

fn divides(a: &BigInt, b: &BigInt) -> bool {
    !a.is_zero() && b.is_multiple_of(a)
}

/// `[a | c, c | (b·d + 1), gcd((b·d + 1)/c, a) = 1]`.
fn divisor_chain(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt, names: [&str; 3]) -> Vec<Condition> {
    let m = b * d + 1;
    let second = divides(c, &m);
    let third = second && (&m / c).gcd(a).is_one();
    vec![cond(names[0], divides(a, c)), cond(names[1], second), cond(names[2], third)]
}

/// `s | p`, `p | (r·q + 1)` and `gcd((r·q + 1)/p, s) = 1` predict that the
/// period divides `q`.
pub fn check_collapse_criterion(params: &RationalTriangleParams) -> CriterionReport {
    let (p, q, r, s) = (params.p(), params.q(), params.r(), params.s());
    let conditions = divisor_chain(s, r, p, q, ["s | p", "p | (rq+1)", "gcd((rq+1)/p, s) = 1"]);
    CriterionReport::build(conditions, q.clone(), Verdict::CollapsePredicted)
}

/// The collapse conditions together with their mirror image
/// `q | r`, `r | (s·p + 1)`, `gcd((s·p + 1)/r, q) = 1`. Both together
/// predict a single polynomial.
pub fn check_pseudo_integral_criterion(params: &RationalTriangleParams) -> CriterionReport {
    let (p, q, r, s) = (params.p(), params.q(), params.r(), params.s());
    let mut conditions = divisor_chain(s, r, p, q, ["s | p", "p | (rq+1)", "gcd((rq+1)/p, s) = 1"]);
    conditions.extend(divisor_chain(q, s, r, p, ["q | r", "r | (sp+1)", "gcd((sp+1)/r, q) = 1"]));
    CriterionReport::build(conditions, BigInt::one(), Verdict::PseudoIntegralPredicted)
}

/// For the triangle with legs `q/p` and `p/q`: `q` is a quasiperiod exactly
/// when `p | (q² + 1)` and `gcd((q² + 1)/p, p) = 1`.
pub fn check_reciprocal_criterion(p: &BigInt, q: &BigInt) -> Result<CriterionReport, CriterionError> {
    if p <= &BigInt::zero() || q <= &BigInt::zero() || !p.gcd(q).is_one() {
        return Err(CriterionError::NotCoprime(p.clone(), q.clone()));
    }
    let m = q * q + 1;
    let first = divides(p, &m);
    let second = first && (&m / p).gcd(p).is_one();
    let conditions = vec![cond("p | (q^2+1)", first), cond("gcd((q^2+1)/p, p) = 1", second)];
    Ok(CriterionReport::build(conditions, q.clone(), Verdict::CollapsePredicted))
}

/// Triangle parameters with legs `q/p` and `p/q`.
pub fn reciprocal_params(p: &BigInt, q: &BigInt) -> RationalTriangleParams {
    RationalTriangleParams::new(p.clone(), q.clone(), q.clone(), p.clone())
        .expect("caller checked that p and q are positive and coprime")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdmissibleClass {
    PseudoIntegral,
    PseudoRationalOnly,
    NotAdmissible,
}

pub fn classify_admissible(alpha: u64, beta: u64) -> AdmissibleClass {
    if AdmissiblePair::from_alpha_beta(alpha, beta).is_err() {
        AdmissibleClass::NotAdmissible
    } else if alpha == 1 || matches!((alpha, beta), (3, 3) | (2, 4)) {
        AdmissibleClass::PseudoIntegral
    } else {
        AdmissibleClass::PseudoRationalOnly
    }
}

/// Integer solutions of `β = 2α/(α − 1)` with `1 < α ≤ bound`, by scanning.
pub fn solve_beta_equation(bound: u64) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = (2..=bound)
        .filter(|a| (2 * a) % (a - 1) == 0)
        .map(|a| (a, 2 * a / (a - 1)))
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, q: u64, r: u64, s: u64) -> RationalTriangleParams {
        RationalTriangleParams::new(p, q, r, s).unwrap()
    }

    #[test]
    fn collapse_examples() {
        let mw = check_collapse_criterion(&params(3, 1, 2, 3));
        assert!(mw.holds());
        assert_eq!(mw.predicted_period_divisor, Some(BigInt::from(1)));
        assert_eq!(mw.verdict, Verdict::CollapsePredicted);
        let fib = check_collapse_criterion(&params(2, 3, 3, 2));
        assert_eq!(fib.predicted_period_divisor, Some(BigInt::from(3)));
        let unit = check_collapse_criterion(&params(1, 1, 1, 1));
        assert_eq!(unit.predicted_period_divisor, Some(BigInt::from(1)));
        let miss = check_collapse_criterion(&params(1, 2, 1, 3));
        assert!(!miss.holds());
        assert_eq!(miss.predicted_period_divisor, None);
        assert_eq!(miss.verdict, Verdict::NoPrediction);
    }

    #[test]
    fn pseudo_integral_examples() {
        assert!(check_pseudo_integral_criterion(&params(1, 2, 2, 1)).holds());
        assert!(check_pseudo_integral_criterion(&params(3, 1, 2, 3)).holds());
        let fib = check_pseudo_integral_criterion(&params(2, 3, 3, 2));
        assert!(!fib.holds());
        assert!(!fib.conditions[4].holds);
        assert_eq!(fib.verdict, Verdict::NoPrediction);
    }

    #[test]
    fn reciprocal_examples() {
        let b = |x: i64| BigInt::from(x);
        assert!(check_reciprocal_criterion(&b(2), &b(5)).unwrap().holds());
        assert!(!check_reciprocal_criterion(&b(3), &b(2)).unwrap().holds());
        assert!(check_reciprocal_criterion(&b(1), &b(1)).unwrap().holds());
        assert!(check_reciprocal_criterion(&b(2), &b(4)).is_err());
        assert!(check_reciprocal_criterion(&b(0), &b(1)).is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_admissible(3, 3), AdmissibleClass::PseudoIntegral);
        assert_eq!(classify_admissible(1, 7), AdmissibleClass::PseudoIntegral);
        assert_eq!(classify_admissible(4, 2), AdmissibleClass::PseudoRationalOnly);
        assert_eq!(classify_admissible(2, 2), AdmissibleClass::NotAdmissible);
        assert_eq!(classify_admissible(1, 4), AdmissibleClass::NotAdmissible);
    }

    #[test]
    fn beta_equation() {
        assert_eq!(solve_beta_equation(100), vec![(2, 4), (3, 3)]);
        assert_eq!(solve_beta_equation(2), vec![(2, 4)]);
        assert_eq!(solve_beta_equation(1), vec![]);
    }

    #[test]
    fn report_json() {
        let js = serde_json::to_value(check_collapse_criterion(&params(2, 3, 3, 2))).unwrap();
        assert_eq!(js["verdict"], "collapse-predicted");
        assert_eq!(js["predicted_period_divisor"], "3");
        assert_eq!(js["conditions"][0], serde_json::json!({"name": "s | p", "holds": true}));
    }
}
