//! Guessing linear recurrences with polynomial coefficients from finitely
//! many terms of an integer sequence.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{rational_matrix_str, Rational};
use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GuessError {
    #[error("{have} values given, bounds need at least {need}")]
    InsufficientData { have: usize, need: usize },
}

/// `Σ_j p_j(n + j)·f(n + j) = 0` for all `n`, with `polys[j][i]` the
/// coefficient of `x^i` in `p_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recurrence {
    pub order: usize,
    pub degree: usize,
    #[serde(with = "rational_matrix_str")]
    pub polys: Vec<Vec<Rational>>,
}

impl Recurrence {
    /// `(S − 1)^order`, which annihilates every polynomial of degree below
    /// `order`.
    pub fn difference(order: usize) -> Self {
        let mut row = vec![BigInt::one()];
        for _ in 0..order {
            let mut next = vec![BigInt::zero(); row.len() + 1];
            for (i, c) in row.iter().enumerate() {
                next[i] -= c;
                next[i + 1] += c;
            }
            row = next;
        }
        Self {
            order,
            degree: 0,
            polys: row.into_iter().map(|c| vec![Rational::from_integer(c)]).collect(),
        }
    }

    fn residual(&self, values: &[BigInt], n: usize) -> Rational {
        (0..=self.order)
            .map(|j| {
                let x = Rational::from_integer(BigInt::from(n + j));
                let p = self.polys[j]
                    .iter()
                    .rev()
                    .fold(Rational::zero(), |acc, c| acc * &x + c);
                p * Rational::from_integer(values[n + j].clone())
            })
            .sum()
    }
}

/// Whether the relation holds at every `n` with `n + order` in range.
pub fn verify_recurrence(rec: &Recurrence, values: &[BigInt]) -> bool {
    values.len() > rec.order && (0..values.len() - rec.order).all(|n| rec.residual(values, n).is_zero())
}

/// Least number of values accepted for the given bounds.
pub fn required_length(max_order: usize, max_degree: usize) -> usize {
    2 * (max_order + 1) * (max_degree + 1) + max_order + 1
}

/// Scans order, then degree, in increasing order. Each candidate is solved
/// on the first half of the data and checked on all of it. `None` only
/// means nothing was found within the bounds.
pub fn guess_recurrence(
    values: &[BigInt],
    max_order: usize,
    max_degree: usize,
) -> Result<Option<Recurrence>, GuessError> {
    let need = required_length(max_order, max_degree);
    if values.len() < need {
        return Err(GuessError::InsufficientData {
            have: values.len(),
            need,
        });
    }
    let half = values.len().div_ceil(2);
    for order in 0..=max_order {
        for degree in 0..=max_degree {
            if let Some(rec) = try_shape(values, half, order, degree) {
                return Ok(Some(rec));
            }
        }
    }
    Ok(None)
}

fn try_shape(values: &[BigInt], half: usize, order: usize, degree: usize) -> Option<Recurrence> {
    let width = (order + 1) * (degree + 1);
    let rows: Vec<Vec<BigInt>> = (0..half.saturating_sub(order))
        .map(|n| {
            let mut row = Vec::with_capacity(width);
            for j in 0..=order {
                let x = BigInt::from(n + j);
                let mut term = values[n + j].clone();
                for _ in 0..=degree {
                    row.push(term.clone());
                    term *= &x;
                }
            }
            row
        })
        .collect();
    linalg::integer_nullspace(rows, width).into_iter().find_map(|v| {
        let ints = linalg::primitive_integer_vector(&v);
        let polys = ints
            .chunks(degree + 1)
            .map(|c| c.iter().cloned().map(Rational::from_integer).collect())
            .collect();
        let rec = Recurrence {
            order,
            degree,
            polys,
        };
        verify_recurrence(&rec, values).then_some(rec)
    })
}
