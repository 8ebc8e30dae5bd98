use std::collections::HashMap;

use crate::calculus::Braiding;
use crate::error::{Error, Result};
use crate::exactla::{ExactMatrix, Rational, Scalar, SparseVec};

/// Index tuples are stored as base-`m` integers, first slot most significant,
/// so numeric order is lexicographic order.
pub fn encode(t: &[usize], m: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * m + x)
}

pub fn decode(mut code: usize, k: usize, m: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in t.iter_mut().rev() {
        *slot = code % m;
        code /= m;
    }
    t
}

/// An element of the `k`-fold tensor power of the one-forms.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector {
    pub k: usize,
    pub m: usize,
    pub coeffs: SparseVec<Rational>,
}

impl TensorVector {
    /// The single tensor `θ^{t₁} ⊗ ... ⊗ θ^{t_k}`.
    pub fn basis(t: &[usize], m: usize) -> Self {
        TensorVector { k: t.len(), m, coeffs: SparseVec::unit(encode(t, m)) }
    }

    /// `(tuple, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> {
        self.coeffs.iter().map(|(c, v)| (decode(*c, self.k, self.m), v))
    }
}

/// Integer accumulator for signed sums of tuples.
pub(crate) struct Accum {
    map: HashMap<usize, i64>,
}

impl Accum {
    pub fn with_capacity(n: usize) -> Self {
        Accum { map: HashMap::with_capacity(n) }
    }

    pub fn add(&mut self, code: usize, v: i64) {
        *self.map.entry(code).or_insert(0) += v;
    }

    pub fn finish(self) -> SparseVec<Rational> {
        SparseVec::from_sorted({
            let mut e: Vec<(usize, Rational)> = self
                .map
                .into_iter()
                .filter(|(_, v)| *v != 0)
                .map(|(c, v)| (c, Rational::from_integer(v.into())))
                .collect();
            e.sort_unstable_by_key(|x| x.0);
            e
        })
    }
}

fn as_i64(r: &Rational) -> i64 {
    assert!(r.is_integer(), "tensor representatives are integral");
    i64::try_from(r.to_integer()).expect("representative coefficient fits in i64")
}

/// Representative of `θ^i ∧ Θ` from the representative `r` of a `k`-form `Θ`:
/// `Σ_j (−1)^j` of `θ^i ⊗ r` with the first factor braided `j` slots to the right.
pub fn left_wedge_rep(br: &Braiding, i: usize, r: &SparseVec<Rational>, k: usize) -> SparseVec<Rational> {
    let m = br.m();
    let mut acc = Accum::with_capacity(r.nnz() * (k + 1));
    let mut t = vec![0; k + 1];
    for (code, c) in r.iter() {
        let c = as_i64(c);
        t[0] = i;
        t[1..].copy_from_slice(&decode(*code, k, m));
        let mut sign = 1;
        acc.add(encode(&t, m), c);
        for j in 0..k {
            let (x, y) = br.apply(t[j], t[j + 1]);
            t[j] = x;
            t[j + 1] = y;
            sign = -sign;
            acc.add(encode(&t, m), sign * c);
        }
    }
    acc.finish()
}

/// Representative of `Θ ∧ θ^i`: the last factor braided `j` slots to the left, signed.
pub fn right_wedge_rep(br: &Braiding, r: &SparseVec<Rational>, k: usize, i: usize) -> SparseVec<Rational> {
    let m = br.m();
    let mut acc = Accum::with_capacity(r.nnz() * (k + 1));
    let mut t = vec![0; k + 1];
    for (code, c) in r.iter() {
        let c = as_i64(c);
        t[..k].copy_from_slice(&decode(*code, k, m));
        t[k] = i;
        let mut sign = 1;
        acc.add(encode(&t, m), c);
        for j in (0..k).rev() {
            let (x, y) = br.apply(t[j], t[j + 1]);
            t[j] = x;
            t[j + 1] = y;
            sign = -sign;
            acc.add(encode(&t, m), sign * c);
        }
    }
    acc.finish()
}

/// Representative of an arbitrary monomial, built by left wedging from the right end.
pub fn monomial_rep(br: &Braiding, t: &[usize]) -> SparseVec<Rational> {
    let mut r = SparseVec::unit(0);
    for (k, &i) in t.iter().rev().enumerate() {
        r = left_wedge_rep(br, i, &r, k);
    }
    r
}

/// The antisymmetrizer `A_{1..k}` as an `m^k × m^k` matrix, from the recursion
/// `A_{1..k} = [1 − Λ_{k−1,k} + Λ_{k−2,k−1}Λ_{k−1,k} − ...] A_{1..k−1}`.
///
/// Row `I` holds the representative of the monomial `I`. This is the direct
/// definition; the form tower never builds it.
pub fn antisymmetrizer(br: &Braiding, k: usize, budget: usize) -> Result<ExactMatrix> {
    let m = br.m();
    let size = (m as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if k == 0 || size > budget as u64 {
        return Err(Error::DegreeBudgetExceeded { degree: k, size, budget: budget as u64 });
    }
    // rows of A_{1..j}, grown one slot at a time
    let mut rows: Vec<HashMap<usize, i64>> = (0..m).map(|x| HashMap::from([(x, 1)])).collect();
    for j in 2..=k {
        let mut next = Vec::with_capacity(rows.len() * m);
        for code in 0..rows.len() * m {
            let t = decode(code, j, m);
            let mut out: HashMap<usize, i64> = HashMap::new();
            // bracket first: move slot j−1−s to the end through s braidings
            for s in 0..j {
                let mut u = t.clone();
                for q in (j - 1 - s)..(j - 1) {
                    let (x, y) = br.apply(u[q], u[q + 1]);
                    u[q] = x;
                    u[q + 1] = y;
                }
                let sign = if s % 2 == 0 { 1 } else { -1 };
                let last = u[j - 1];
                for (pc, v) in &rows[encode(&u[..j - 1], m)] {
                    *out.entry(pc * m + last).or_insert(0) += sign * v;
                }
            }
            out.retain(|_, v| *v != 0);
            next.push(out);
        }
        rows = next;
    }
    let n = rows.len();
    Ok(ExactMatrix::from_triplets(
        n,
        n,
        rows.into_iter()
            .enumerate()
            .flat_map(|(r, row)| row.into_iter().map(move |(c, v)| (r, c, Scalar::int(v)))),
    ))
}
