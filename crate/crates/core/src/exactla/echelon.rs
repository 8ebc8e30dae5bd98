use super::scalar::Field;
use super::sparse::{linear_combination, SparseVec};

/// Outcome of offering a vector to an [`Echelon`].
#[derive(Clone, Debug, PartialEq)]
pub enum Insert<F> {
    /// The vector was new; it became basis vector number `.0`.
    Independent(usize),
    /// The vector lies in the span; coefficients over the accepted basis vectors.
    Dependent(SparseVec<F>),
}

/// Incremental reduced row echelon form.
///
/// Rows are kept fully reduced with leading coefficient 1, pivots chosen at
/// the first nonzero column. Optionally tracks, for each row, the combination
/// of accepted input vectors it came from, so dependent inputs can be
/// expressed in terms of earlier accepted inputs.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
    combos: Option<Vec<SparseVec<F>>>,
    accepted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: Vec::new(), combos: None, accepted: 0 }
    }

    /// Like [`Echelon::new`], but remembers how each row was assembled.
    pub fn tracking() -> Self {
        Echelon { combos: Some(Vec::new()), ..Self::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `(pivot column, row)` pairs in insertion order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec<F>)> {
        self.pivots.iter().copied().zip(self.rows.iter())
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` against the rows, and the leftover part.
    fn split(&self, v: &SparseVec<F>) -> (Vec<(usize, F)>, SparseVec<F>) {
        let coords: Vec<(usize, F)> = self
            .pivots
            .iter()
            .enumerate()
            .filter_map(|(j, p)| v.get(*p).map(|x| (j, x.clone())))
            .collect();
        if coords.is_empty() {
            return (coords, v.clone());
        }
        let minus: Vec<F> = coords.iter().map(|(_, c)| c.neg_ref()).collect();
        let one = F::one();
        let terms = std::iter::once((&one, v))
            .chain(coords.iter().zip(&minus).map(|((j, _), c)| (c, &self.rows[*j])));
        let residual = linear_combination(terms);
        (coords, residual)
    }

    /// Reduces `v` modulo the current rows.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.split(v).1
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` over the accepted vectors, or `None` if outside the span.
    /// Needs a tracking echelon.
    pub fn express(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        let combos = self.combos.as_ref().expect("express needs a tracking echelon");
        let (coords, residual) = self.split(v);
        residual
            .is_zero()
            .then(|| linear_combination(coords.iter().map(|(j, c)| (c, &combos[*j]))))
    }

    /// Offers `v`; accepted vectors are numbered from 0 in acceptance order.
    pub fn insert(&mut self, v: &SparseVec<F>) -> Insert<F> {
        let (coords, residual) = self.split(v);
        if residual.is_zero() {
            let dep = match &self.combos {
                Some(combos) => linear_combination(coords.iter().map(|(j, c)| (c, &combos[*j]))),
                None => SparseVec::from_sorted(coords),
            };
            return Insert::Dependent(dep);
        }
        let (piv, lead) = residual.first().cloned().expect("nonzero residual");
        let inv = lead.inv().expect("nonzero pivot");
        let row = residual.scale(&inv);
        let tag = self.accepted;
        self.accepted += 1;

        // combination for the new row: (v - Σ c_j row_j) / lead
        let combo = self.combos.as_ref().map(|combos| {
            let one = F::one();
            let unit = SparseVec::unit(tag);
            let minus: Vec<F> = coords.iter().map(|(_, c)| c.neg_ref()).collect();
            let terms = std::iter::once((&one, &unit))
                .chain(coords.iter().zip(&minus).map(|((j, _), c)| (c, &combos[*j])));
            linear_combination(terms).scale(&inv)
        });

        // clear the new pivot column from the existing rows
        for j in 0..self.rows.len() {
            if let Some(x) = self.rows[j].get(piv).cloned() {
                let f = x.neg_ref();
                self.rows[j] = self.rows[j].axpy(&f, &row);
                if let (Some(combos), Some(c)) = (self.combos.as_mut(), combo.as_ref()) {
                    combos[j] = combos[j].axpy(&f, c);
                }
            }
        }
        self.rows.push(row);
        self.pivots.push(piv);
        if let (Some(combos), Some(c)) = (self.combos.as_mut(), combo) {
            combos.push(c);
        }
        Insert::Independent(tag)
    }

    /// Rows sorted by pivot column.
    pub fn sorted_rows(&self) -> Vec<(usize, SparseVec<F>)> {
        let mut out: Vec<(usize, SparseVec<F>)> =
            self.pivots.iter().copied().zip(self.rows.iter().cloned()).collect();
        out.sort_by_key(|r| r.0);
        out
    }
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::scalar::{rat, Rational};

    fn v(p: &[i64]) -> SparseVec<Rational> {
        SparseVec::from_dense(&p.iter().map(|&x| rat(x)).collect::<Vec<_>>())
    }

    #[test]
    fn dependent_expressed_in_accepted_inputs() {
        let mut e = Echelon::tracking();
        assert_eq!(e.insert(&v(&[1, 2, 0])), Insert::Independent(0));
        assert_eq!(e.insert(&v(&[0, 1, 1])), Insert::Independent(1));
        // 2·first − 3·second
        match e.insert(&v(&[2, 1, -3])) {
            Insert::Dependent(c) => {
                assert_eq!(c.get(0), Some(&rat(2)));
                assert_eq!(c.get(1), Some(&rat(-3)));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn rows_are_reduced() {
        let mut e = Echelon::new();
        e.insert(&v(&[0, 1, 1]));
        e.insert(&v(&[1, 1, 0]));
        for (p, row) in e.rows() {
            assert_eq!(row.get(p), Some(&rat(1)));
            for (q, _) in e.rows() {
                if q != p {
                    assert!(row.get(q).is_none());
                }
            }
        }
    }
}
