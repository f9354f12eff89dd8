//! Sweep over small rational triangles recording where the period is smaller
//! than the denominator.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::check_collapse_criterion;
use crate::polytopes::RationalTriangleParams;
use crate::quasipoly::{minimal_period, QuasipolyError};

/// Inclusive upper bounds on `p, q, r, s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_p: u64,
    pub max_q: u64,
    pub max_r: u64,
    pub max_s: u64,
}

impl SearchBounds {
    pub fn uniform(bound: u64) -> Self {
        Self {
            max_p: bound,
            max_q: bound,
            max_r: bound,
            max_s: bound,
        }
    }

    /// Lowest-term tuples in lexicographic order.
    pub fn tuples(self) -> impl Iterator<Item = [u64; 4]> {
        let coprime = |bound_a: u64, bound_b: u64| {
            (1..=bound_a).flat_map(move |a| (1..=bound_b).filter(move |b| a.gcd(b) == 1).map(move |b| (a, b)))
        };
        coprime(self.max_p, self.max_q)
            .flat_map(move |(p, q)| coprime(self.max_r, self.max_s).map(move |(r, s)| [p, q, r, s]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub params: RationalTriangleParams,
    pub denominator: u64,
    pub minimal_period: u64,
    pub criterion_predicted: bool,
    /// `minimal_period < denominator`.
    pub collapse: bool,
}

impl SearchRecord {
    pub fn compute(params: RationalTriangleParams) -> Result<Self, QuasipolyError> {
        let result = minimal_period(&params, 2)?;
        Ok(Self {
            criterion_predicted: check_collapse_criterion(&params).holds(),
            denominator: result.guaranteed_period,
            minimal_period: result.minimal_period,
            collapse: result.minimal_period < result.guaranteed_period,
            params,
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError<E> {
    #[error(transparent)]
    Quasipoly(#[from] QuasipolyError),
    #[error("sink: {0}")]
    Sink(E),
}

const CHUNK: usize = 256;

/// Computes records in parallel chunks on the current rayon pool and hands
/// them to `sink` in enumeration order. Returns the number of records.
pub fn run_search<E>(
    bounds: &SearchBounds,
    mut sink: impl FnMut(&SearchRecord) -> Result<(), E>,
) -> Result<usize, SearchError<E>> {
    let mut tuples = bounds.tuples().peekable();
    let mut emitted = 0;
    while tuples.peek().is_some() {
        let chunk: Vec<[u64; 4]> = tuples.by_ref().take(CHUNK).collect();
        let records = chunk
            .into_par_iter()
            .map(|[p, q, r, s]| {
                let params = RationalTriangleParams::new(p, q, r, s).expect("enumerated in lowest terms");
                SearchRecord::compute(params)
            })
            .collect::<Result<Vec<_>, _>>()?;
        for record in &records {
            sink(record).map_err(SearchError::Sink)?;
        }
        emitted += records.len();
    }
    Ok(emitted)
}
