use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use super::scalar::Rational;

/// Rank of a sparse rational matrix by elimination that always pivots on the
/// sparsest remaining row, and within it on the sparsest column, preferring
/// entries of absolute value 1. Fill-in stays low on incidence-like matrices
/// where dense elimination is hopeless.
pub(crate) fn sparse_rank(rows: Vec<Vec<(usize, Rational)>>, cols: usize) -> usize {
    let mut rows: Vec<Vec<(usize, Rational)>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r {
            col_rows[*c].insert(i);
        }
    }
    let mut active: Vec<usize> = (0..rows.len()).collect();
    let mut rank = 0;
    loop {
        active.retain(|&i| !rows[i].is_empty());
        let Some(&pr) = active.iter().min_by_key(|&&i| (rows[i].len(), i)) else { break };
        let (pc, pv) = rows[pr]
            .iter()
            .min_by_key(|(c, v)| (!v.abs().is_one(), col_rows[*c].len(), *c))
            .map(|(c, v)| (*c, v.clone()))
            .expect("row is nonempty");
        let pivot_row = std::mem::take(&mut rows[pr]);
        for (c, _) in &pivot_row {
            col_rows[*c].remove(&pr);
        }
        let mut targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        targets.sort_unstable();
        for j in targets {
            let lead = rows[j].iter().find(|(c, _)| *c == pc).expect("indexed entry").1.clone();
            let factor = lead / &pv;
            let old = std::mem::take(&mut rows[j]);
            let merged = axpy_row(&old, &factor, &pivot_row);
            for (c, _) in &old {
                col_rows[*c].remove(&j);
            }
            for (c, _) in &merged {
                col_rows[*c].insert(j);
            }
            rows[j] = merged;
        }
        rank += 1;
    }
    rank
}

/// `a − f·b` for rows sorted by column.
fn axpy_row(a: &[(usize, Rational)], f: &Rational, b: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |x| x.0);
        let cb = b.get(j).map_or(usize::MAX, |x| x.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
