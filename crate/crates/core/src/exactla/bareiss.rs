use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scalar::Rational;

/// Row echelon form of an integer matrix by fraction-free elimination.
///
/// Every entry stays an integer minor of the input, so coefficients grow
/// linearly in the dimension instead of through repeated reduction.
pub(crate) struct IntegerEchelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

/// Clears the denominators of a rational row.
pub(crate) fn integer_row(row: &[(usize, Rational)], cols: usize) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut out = vec![BigInt::zero(); cols];
    for (c, v) in row {
        out[*c] = v.numer() * (&l / v.denom());
    }
    out
}

pub(crate) fn eliminate(mut a: Vec<Vec<BigInt>>, cols: usize) -> IntegerEchelon {
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                // the update still rescales the row
                for j in c + 1..cols {
                    if !row[j].is_zero() {
                        row[j] = &(&row[j] * piv) / &prev;
                    }
                }
                continue;
            }
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &row[j] * piv - &lead * &pivot_row[j];
                row[j] = if v.is_zero() { v } else { &v / &prev };
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    IntegerEchelon { rows: a, pivots, cols }
}

impl IntegerEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One null vector per free column, equal to 1 there and 0 on the other
    /// free columns; the same vectors a reduced echelon form yields.
    pub fn kernel(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|c| !is_pivot[*c])
            .map(|free| {
                let mut x: Vec<Rational> = vec![Rational::zero(); self.cols];
                x[free] = Rational::one();
                for (r, &p) in self.pivots.iter().enumerate().rev() {
                    let row = &self.rows[r];
                    let mut s = Rational::zero();
                    for j in p + 1..self.cols {
                        if !row[j].is_zero() && !x[j].is_zero() {
                            s += &x[j] * Rational::from_integer(row[j].clone());
                        }
                    }
                    x[p] = -s / Rational::from_integer(row[p].clone());
                }
                x.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect()
    }
}
