use std::collections::HashMap;

use super::scalar::Field;

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from arbitrary pairs, summing duplicates and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (usize, F)>>(pairs: I) -> Self {
        let mut acc: HashMap<usize, F> = HashMap::new();
        for (i, v) in pairs {
            if v.is_zero() {
                continue;
            }
            acc.entry(i)
                .and_modify(|x| *x = x.add_ref(&v))
                .or_insert(v);
        }
        Self::from_map(acc)
    }

    pub(crate) fn from_map(acc: HashMap<usize, F>) -> Self {
        let mut entries: Vec<(usize, F)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        entries.sort_unstable_by_key(|e| e.0);
        SparseVec { entries }
    }

    /// Builds from entries already sorted by strictly increasing index.
    pub fn from_sorted(entries: Vec<(usize, F)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec {
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[F]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn get(&self, i: usize) -> Option<&F> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    /// Leading (smallest-index) entry.
    pub fn first(&self) -> Option<&(usize, F)> {
        self.entries.first()
    }

    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return Self::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.mul_ref(a))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.neg_ref())).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.conj())).collect(),
        }
    }

    /// `self + a·other`, by a sorted merge.
    pub fn axpy(&self, a: &F, other: &Self) -> Self {
        if a.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut p, mut q) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while p < x.len() || q < y.len() {
            if q == y.len() || (p < x.len() && x[p].0 < y[q].0) {
                out.push(x[p].clone());
                p += 1;
            } else if p == x.len() || y[q].0 < x[p].0 {
                out.push((y[q].0, y[q].1.mul_ref(a)));
                q += 1;
            } else {
                let v = x[p].1.add_ref(&y[q].1.mul_ref(a));
                if !v.is_zero() {
                    out.push((x[p].0, v));
                }
                p += 1;
                q += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&F::one().neg_ref(), other)
    }

    /// Bilinear dot product (no conjugation).
    pub fn dot(&self, other: &Self) -> F {
        let (mut p, mut q) = (0, 0);
        let mut acc = F::zero();
        let (x, y) = (&self.entries, &other.entries);
        while p < x.len() && q < y.len() {
            match x[p].0.cmp(&y[q].0) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    acc = acc.add_ref(&x[p].1.mul_ref(&y[q].1));
                    p += 1;
                    q += 1;
                }
            }
        }
        acc
    }

    /// Applies `f` to every coefficient, e.g. to change fields.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseVec<G> {
        SparseVec::from_sorted(self.entries.iter().map(|(i, v)| (*i, f(v))).collect())
    }

    /// Relabels indices through `f` (summing collisions).
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }
}

/// Sums `Σ coeff·vec` through a hash accumulator.
pub fn linear_combination<'a, F: Field + 'a>(
    terms: impl IntoIterator<Item = (&'a F, &'a SparseVec<F>)>,
) -> SparseVec<F> {
    let mut acc: HashMap<usize, F> = HashMap::new();
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (i, x) in v.iter() {
            let t = x.mul_ref(c);
            acc.entry(*i)
                .and_modify(|y| *y = y.add_ref(&t))
                .or_insert(t);
        }
    }
    SparseVec::from_map(acc)
}
