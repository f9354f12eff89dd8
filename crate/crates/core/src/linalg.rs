//! Exact linear algebra over ℚ and ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// columns. Pivots are the first nonzero entry found scanning down, so the
/// result depends only on the input.
pub(crate) fn rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let piv = rows[next][col].clone();
        for x in rows[next].iter_mut() {
            *x = &*x / &piv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

/// Unique solution of `a·x = b`, or `None` if `a` is singular.
pub(crate) fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().cloned().chain([rhs.clone()]).collect())
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    // Inconsistent rows would show a pivot in the augmented column.
    if aug[n..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some(aug[..n].iter().map(|row| row[n].clone()).collect())
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Fraction-free row echelon form of an integer matrix; returns the nonzero
/// rows only (at most `ncols` of them).
fn integer_echelon(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    for row in rows.iter_mut() {
        remove_content(row);
    }
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let (head, tail) = rows.split_at_mut(next + 1);
        let pivot_row = &head[next];
        let piv = &pivot_row[col];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = piv.gcd(&row[col]);
            let (mp, mr) = (piv / &g, &row[col] / &g);
            for (x, p) in row.iter_mut().zip(pivot_row) {
                *x = &*x * &mp - p * &mr;
            }
            remove_content(row);
        }
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    rows
}

/// Basis of `{x : a·x = 0}` for an integer matrix, one vector per free
/// column in increasing column order, each with that free variable set to 1
/// and the other free variables set to 0.
pub(crate) fn integer_nullspace(a: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<Rational>> {
    let echelon = integer_echelon(a, ncols);
    let mut rows: Vec<Vec<Rational>> = echelon
        .into_iter()
        .map(|row| row.into_iter().map(Rational::from_integer).collect())
        .collect();
    let pivots = rref(&mut rows, ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][free].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to coprime integers with a positive last
/// nonzero entry.
pub(crate) fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    remove_content(&mut ints);
    if ints.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    ints
}
