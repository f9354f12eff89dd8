//! Self-checks runnable from the command line. Each check compares a
//! computed quantity against an independent prediction and reports the
//! first disagreement as a JSON payload.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{rat, QuadNumber, Rational};
use crate::counting::{
    closed_form_admissible, count_axis_simplex, count_rational_params, count_rational_triangle2d,
    count_triangle,
};
use crate::criteria::{
    check_collapse_criterion, check_pseudo_integral_criterion, check_reciprocal_criterion,
    classify_admissible, reciprocal_params, solve_beta_equation, AdmissibleClass,
};
use crate::polytopes::{
    admissible_scaling, mcallister_woods_image, mcallister_woods_pair, pair_from_sums,
    AdmissiblePair, PairClass, RationalTriangleParams,
};
use crate::precursive::{guess_recurrence, required_length};
use crate::quasipoly::{
    count_samples, fit_quasipolynomial, minimal_period, reciprocity_report, series_numerator, Fit,
    PeriodicCount,
};
use crate::search::SearchBounds;
use crate::sequences::{fib_triangle, k_fib, limit_tetrahedron, tetra_family, fib_coprimality, verify_fact2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Arith,
    ClosedForm,
    Criteria,
    Fibonacci,
    Tetrahedra,
    Reciprocity,
    Recurrence,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "arith",
        "closed-form",
        "criteria",
        "fibonacci",
        "tetrahedra",
        "reciprocity",
        "recurrence",
        "all",
    ];

    const SINGLE: [Suite; 7] = [
        Suite::Arith,
        Suite::ClosedForm,
        Suite::Criteria,
        Suite::Fibonacci,
        Suite::Tetrahedra,
        Suite::Reciprocity,
        Suite::Recurrence,
    ];

    pub fn name(self) -> &'static str {
        Self::NAMES[self as usize]
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::SINGLE
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}; expected one of {}", Self::NAMES.join(", ")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub tag: String,
    pub passed: bool,
    pub counterexample: Option<Value>,
}

/// Runs the checks of `suite` (every suite for [`Suite::All`]) in a fixed
/// order.
pub fn run_verify(suite: Suite) -> Vec<CheckResult> {
    let checks = match suite {
        Suite::All => return Suite::SINGLE.into_iter().flat_map(run_verify).collect(),
        Suite::Arith => arith_checks(),
        Suite::ClosedForm => closed_form_checks(),
        Suite::Criteria => criteria_checks(),
        Suite::Fibonacci => fibonacci_checks(),
        Suite::Tetrahedra => tetrahedra_checks(),
        Suite::Reciprocity => reciprocity_checks(),
        Suite::Recurrence => recurrence_checks(),
    };
    checks
        .into_iter()
        .map(|(tag, failure)| CheckResult {
            suite,
            tag: tag.to_owned(),
            passed: failure.is_none(),
            counterexample: failure,
        })
        .collect()
}

type Check = (&'static str, Option<Value>);

/// First counterexample produced by `cases`, if any.
fn first_failure(cases: impl IntoIterator<Item = Option<Value>>) -> Option<Value> {
    cases.into_iter().flatten().next()
}

fn admissible_pairs(max_product: u64) -> impl Iterator<Item = AdmissiblePair> {
    (1..=max_product).flat_map(move |a| {
        (1..=max_product / a).filter_map(move |b| AdmissiblePair::from_alpha_beta(a, b).ok())
    })
}

fn arith_checks() -> Vec<Check> {
    let grid = || {
        [2u64, 3, 5, 7, 10].into_iter().flat_map(|d| {
            (-6i64..=6).flat_map(move |a| (-6i64..=6).map(move |b| QuadNumber::new(rat(a, 3), rat(b, 2), d)))
        })
    };
    vec![
        (
            "normalize",
            first_failure([
                (QuadNumber::new(rat(0, 1), rat(1, 1), 8) != QuadNumber::new(rat(0, 1), rat(2, 1), 2))
                    .then(|| json!({"input": "sqrt(8)"})),
                (QuadNumber::new(rat(1, 1), rat(1, 2), 12) != QuadNumber::new(rat(1, 1), rat(1, 1), 3))
                    .then(|| json!({"input": "1 + 1/2*sqrt(12)"})),
            ]),
        ),
        (
            "floor-bracket",
            first_failure(grid().map(|x| {
                let f = QuadNumber::from(Rational::from_integer(x.floor()));
                let ok = (&x - &f).sign() != num_bigint::Sign::Minus && (&f + &QuadNumber::one() - &x).is_positive();
                (!ok).then(|| json!({"x": x.to_string(), "floor": x.floor().to_string()}))
            })),
        ),
        (
            "field-inverse",
            first_failure(grid().filter(|x| !x.is_zero()).map(|x| {
                let inv = x.recip().expect("nonzero");
                (&x * &inv != QuadNumber::one()).then(|| json!({"x": x.to_string()}))
            })),
        ),
    ]
}

fn closed_form_checks() -> Vec<Check> {
    let polynomial = |alpha, beta, f: fn(u64) -> u64| {
        let tri = AdmissiblePair::from_alpha_beta(alpha, beta).expect("admissible").triangle();
        first_failure((0..=200).map(|t| {
            let got = count_triangle(&tri, t);
            (got != f(t)).then(|| json!({"t": t, "count": got, "expected": f(t)}))
        }))
    };
    vec![
        ("golden-polynomial", polynomial(3, 3, |t| (t + 1) * (t + 2) / 2)),
        ("two-four-polynomial", polynomial(2, 4, |t| (t + 1) * (t + 1))),
        (
            "explicit-form",
            first_failure(admissible_pairs(60).flat_map(|pair| {
                let tri = pair.triangle();
                (0..=6 * pair.alpha() as i64)
                    .map(|t| {
                        let count = count_triangle(&tri, t as u64);
                        let formula = closed_form_admissible(&pair, t);
                        (Rational::from_integer(count.into()) != formula).then(|| {
                            json!({"alpha": pair.alpha(), "beta": pair.beta(), "t": t,
                                   "count": count, "formula": formula.to_string()})
                        })
                    })
                    .collect::<Vec<_>>()
            })),
        ),
        (
            "period-divides-alpha",
            first_failure(admissible_pairs(60).map(|pair| match minimal_period(&pair, 2) {
                Ok(res) if pair.alpha() % res.minimal_period == 0 => None,
                Ok(res) => Some(json!({"alpha": pair.alpha(), "beta": pair.beta(), "minimal_period": res.minimal_period})),
                Err(e) => Some(json!({"alpha": pair.alpha(), "beta": pair.beta(), "error": e.to_string()})),
            })),
        ),
    ]
}

fn period_of(params: &RationalTriangleParams) -> Result<u64, Value> {
    minimal_period(params, 2)
        .map(|r| r.minimal_period)
        .map_err(|e| json!({"params": params, "error": e.to_string()}))
}

fn criteria_checks() -> Vec<Check> {
    let tuples = || {
        SearchBounds::uniform(12)
            .tuples()
            .map(|[p, q, r, s]| RationalTriangleParams::new(p, q, r, s).expect("lowest terms"))
    };
    vec![
        (
            "collapse-soundness",
            first_failure(tuples().filter(|pr| check_collapse_criterion(pr).holds()).map(|pr| {
                match period_of(&pr) {
                    Ok(m) if pr.q().is_multiple_of(&BigInt::from(m)) => None,
                    Ok(m) => Some(json!({"params": pr, "minimal_period": m})),
                    Err(e) => Some(e),
                }
            })),
        ),
        (
            "pseudo-integral-soundness",
            first_failure(tuples().filter(|pr| check_pseudo_integral_criterion(pr).holds()).map(|pr| {
                match period_of(&pr) {
                    Ok(1) => None,
                    Ok(m) => Some(json!({"params": pr, "minimal_period": m})),
                    Err(e) => Some(e),
                }
            })),
        ),
        (
            "reciprocal-iff",
            first_failure((1..=12u64).flat_map(|p| (1..=12u64).map(move |q| (p, q))).filter(|(p, q)| p.gcd(q) == 1).map(
                |(p, q)| {
                    let (bp, bq) = (BigInt::from(p), BigInt::from(q));
                    let predicted = check_reciprocal_criterion(&bp, &bq).expect("coprime").holds();
                    match period_of(&reciprocal_params(&bp, &bq)) {
                        Ok(m) if (q % m == 0) == predicted => None,
                        Ok(m) => Some(json!({"p": p, "q": q, "criterion": predicted, "minimal_period": m})),
                        Err(e) => Some(e),
                    }
                },
            )),
        ),
        (
            "mcallister-woods",
            first_failure((2..=50u64).map(|p| {
                let params = mcallister_woods_pair(p).expect("p >= 2");
                let report = check_collapse_criterion(&params);
                let predicted_one = report.predicted_period_divisor == Some(BigInt::one());
                let denominator_ok = params.denominator() == BigInt::from(p);
                let period = if p <= 15 { period_of(&params).ok() } else { Some(1) };
                let image_ok = p > 15
                    || (1..=20u64).all(|t| {
                        let image = mcallister_woods_image(p, t).expect("p >= 2");
                        count_rational_triangle2d(&image) == count_rational_params(&params, t)
                    });
                (!(predicted_one && denominator_ok && period == Some(1) && image_ok)).then(|| {
                    json!({"p": p, "predicted_one": predicted_one, "denominator_ok": denominator_ok,
                           "minimal_period": period, "image_counts_agree": image_ok})
                })
            })),
        ),
        (
            "classification",
            first_failure(admissible_pairs(60).map(|pair| {
                let class = classify_admissible(pair.alpha(), pair.beta());
                match minimal_period(&pair, 2) {
                    Ok(res) => {
                        let computed = res.minimal_period == 1;
                        (computed != (class == AdmissibleClass::PseudoIntegral)).then(|| {
                            json!({"alpha": pair.alpha(), "beta": pair.beta(), "class": class,
                                   "minimal_period": res.minimal_period})
                        })
                    }
                    Err(e) => Some(json!({"alpha": pair.alpha(), "beta": pair.beta(), "error": e.to_string()})),
                }
            })),
        ),
        (
            "beta-equation",
            (solve_beta_equation(100) != [(2, 4), (3, 3)]).then(|| json!({"solutions": solve_beta_equation(100)})),
        ),
    ]
}

/// Whether `period` is a period of the count of `params`: a fit at
/// `period` reproducing `3·D` consecutive counts, `D` the denominator,
/// pins every constituent of the true period-`D` function.
pub fn is_verified_quasiperiod(params: &RationalTriangleParams, period: u64) -> Result<bool, String> {
    let d = params.guaranteed_period().map_err(|e| e.to_string())?;
    let samples = count_samples(params, 3 * d.max(period));
    match fit_quasipolynomial(&samples, period, 2).map_err(|e| e.to_string())? {
        Fit::Found(_) => Ok(true),
        Fit::NoFit(_) => Ok(false),
    }
}

fn fibonacci_checks() -> Vec<Check> {
    let kn = || (1..=6u64).flat_map(|k| (1..=30u64).map(move |n| (k, n)));
    let even_cases = || {
        (1..=6u64).flat_map(|k| {
            (2..)
                .step_by(2)
                .take_while(move |&n| k_fib(k, n) <= BigInt::from(30))
                .map(move |n| (k, n))
        })
    };
    vec![
        (
            "consecutive-coprime",
            first_failure(kn().map(|(k, n)| (!fib_coprimality(k, n).consecutive_coprime).then(|| json!({"k": k, "n": n})))),
        ),
        (
            "coprime-to-k-iff-odd-index",
            first_failure(kn().map(|(k, n)| {
                let got = fib_coprimality(k, n).coprime_to_k;
                (got != (k == 1 || n % 2 == 1)).then(|| json!({"k": k, "n": n, "coprime_to_k": got}))
            })),
        ),
        ("cassini-identity", first_failure(kn().map(|(k, n)| (!verify_fact2(k, n)).then(|| json!({"k": k, "n": n}))))),
        (
            "common-quasiperiod",
            first_failure(even_cases().flat_map(|(k, n)| {
                let period = k_fib(k, n).to_u64().expect("at most 30");
                [n, n + 1].map(|m| {
                    let params = fib_triangle(k, m).expect("n >= 2");
                    match is_verified_quasiperiod(&params, period) {
                        Ok(true) => None,
                        Ok(false) => Some(json!({"k": k, "n": m, "period": period})),
                        Err(e) => Some(json!({"k": k, "n": m, "error": e})),
                    }
                })
            })),
        ),
        (
            "reciprocal-consistency",
            first_failure(even_cases().map(|(k, n)| {
                let fib = |m| k_fib(k, m);
                let ok = [fib(n - 1), fib(n + 1)]
                    .iter()
                    .all(|p| check_reciprocal_criterion(p, &fib(n)).is_ok_and(|r| r.holds()));
                (!ok).then(|| json!({"k": k, "n": n}))
            })),
        ),
    ]
}

fn tetra_polynomial(t: u64) -> u64 {
    (t * t * t + 6 * t * t + 11 * t + 6) / 6
}

fn tetrahedra_checks() -> Vec<Check> {
    vec![
        (
            "tetrahedron-family",
            first_failure((1..=3u64).flat_map(|n| {
                let simplex = tetra_family(n);
                (0..=40u64)
                    .map(|t| {
                        let got = count_axis_simplex(&simplex, t);
                        (got != tetra_polynomial(t)).then(|| json!({"n": n, "t": t, "count": got}))
                    })
                    .collect::<Vec<_>>()
            })),
        ),
        (
            "limit-tetrahedron",
            first_failure((0..=40u64).map(|t| {
                let got = count_axis_simplex(&limit_tetrahedron(), t);
                (got != tetra_polynomial(t)).then(|| json!({"t": t, "count": got}))
            })),
        ),
    ]
}

fn reciprocity_checks() -> Vec<Check> {
    let pairs = [(3, 3), (2, 4), (1, 5), (4, 2), (5, 1)];
    let numerator = |a, b| {
        let tri = AdmissiblePair::from_alpha_beta(a, b).expect("admissible").triangle();
        series_numerator(count_triangle(&tri, 1) as i64, count_triangle(&tri, 2) as i64)
    };
    let (golden, sq2) = (numerator(3, 3), numerator(2, 4));
    vec![
        (
            "reciprocity-pattern",
            first_failure(pairs.into_iter().flat_map(|(a, b)| {
                let pair = AdmissiblePair::from_alpha_beta(a, b).expect("admissible");
                let qp = match minimal_period(&pair, 2) {
                    Ok(res) => res.quasipolynomial,
                    Err(e) => return vec![Some(json!({"alpha": a, "beta": b, "error": e.to_string()}))],
                };
                (1..=50u64)
                    .map(|t| {
                        let report = reciprocity_report(&pair, &qp, t);
                        let expected = if report.alpha_divides_t { 1 } else { 0 };
                        (report.mu_observed != rat(expected, 1))
                            .then(|| json!({"alpha": a, "beta": b, "report": report}))
                    })
                    .collect()
            })),
        ),
        (
            "series-numerators",
            (golden.as_array() != [1, 0, 0] || sq2.as_array() != [1, 1, 0])
                .then(|| json!({"golden": golden, "two_four": sq2})),
        ),
        ("series-monotone", (!golden.le(&sq2)).then(|| json!({"golden": golden, "two_four": sq2}))),
    ]
}

fn recurrence_checks() -> Vec<Check> {
    let counts = |f: &dyn Fn(u64) -> u64, n: u64| -> Vec<BigInt> { (0..=n).map(|t| BigInt::from(f(t))).collect() };
    let golden = AdmissiblePair::from_alpha_beta(3, 3).expect("admissible").triangle();
    let (alpha, beta) = (rat(2, 1), rat(5, 2));
    vec![
        (
            "golden-recurrence",
            match guess_recurrence(&counts(&|t| count_triangle(&golden, t), 60), 3, 0) {
                Ok(Some(rec)) if rec.order <= 3 && rec.degree == 0 => None,
                other => Some(json!({"result": format!("{other:?}")})),
            },
        ),
        (
            "quasipolynomial-recurrence",
            first_failure([(2u64, 3u64, 3u64, 2u64), (1, 2, 1, 3), (3, 4, 2, 5)].map(|(p, q, r, s)| {
                let params = RationalTriangleParams::new(p, q, r, s).expect("lowest terms");
                let res = match minimal_period(&params, 2) {
                    Ok(res) => res,
                    Err(e) => return Some(json!({"params": params, "error": e.to_string()})),
                };
                let bound = 3 * res.minimal_period as usize;
                let values = counts(&|t| count_rational_params(&params, t), required_length(bound, 0) as u64 + 20);
                match guess_recurrence(&values, bound, 0) {
                    Ok(Some(rec)) if rec.order <= bound => None,
                    other => Some(json!({"params": params, "result": format!("{other:?}")})),
                }
            })),
        ),
        (
            "non-admissible-hypothesis",
            match pair_from_sums(&alpha, &beta) {
                Ok(tri) if tri.class() != PairClass::Rational && admissible_scaling(&alpha, &beta).is_none() => None,
                other => Some(json!({"result": format!("{other:?}")})),
            },
        ),
        (
            "non-admissible-no-recurrence",
            match pair_from_sums(&alpha, &beta) {
                Ok(tri) => match guess_recurrence(&counts(&|t| count_triangle(&tri, t), 400), 4, 4) {
                    Ok(None) => None,
                    other => Some(json!({"result": format!("{other:?}")})),
                },
                Err(e) => Some(json!({"error": e.to_string()})),
            },
        ),
    ]
}
