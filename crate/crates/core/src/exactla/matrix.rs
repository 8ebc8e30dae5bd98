use std::fmt;

use super::bareiss::{eliminate, integer_row, IntegerEchelon};
use super::markowitz::sparse_rank;
use super::echelon::Echelon;
use super::scalar::{Field, Rational, Scalar};
use super::sparse::{linear_combination, SparseVec};
use crate::error::{Error, Result};

/// Sparse matrix stored as rows. No stored zeros.
#[derive(Clone, PartialEq)]
pub struct ExactMatrix<F = Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F>>,
}

/// Result of [`ExactMatrix::solve`].
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<F> {
    /// One solution, with every free variable set to zero.
    pub x: Vec<F>,
    /// True when the solution is not unique.
    pub underdetermined: bool,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Self {
        let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            buckets[r].push((c, v));
        }
        ExactMatrix {
            rows,
            cols,
            data: buckets.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec<F>>) -> Self {
        debug_assert!(data.iter().all(|r| r.iter().all(|(c, _)| *c < cols)));
        ExactMatrix { rows: data.len(), cols, data }
    }

    /// Builds from columns, given as sparse vectors over the row index.
    pub fn from_columns(rows: usize, columns: &[SparseVec<F>]) -> Self {
        let trip = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v.clone())));
        Self::from_triplets(rows, columns.len(), trip)
    }

    pub fn from_dense(values: &[Vec<F>]) -> Self {
        let cols = values.first().map_or(0, |r| r.len());
        ExactMatrix {
            rows: values.len(),
            cols,
            data: values.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec<F> {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.data[r].get(c).cloned().unwrap_or_else(F::zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    /// `(row, col, value)` for every stored entry, row-major.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v.clone())))
    }

    /// Entrywise conjugate of the transpose.
    pub fn conjugate_transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v.conj())))
    }

    pub fn scale(&self, a: &F) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.scale(a)).collect(),
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| linear_combination(row.iter().map(|(k, a)| (a, &other.data[*k]))))
            .collect();
        Ok(ExactMatrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn mul_sparse(&self, v: &SparseVec<F>) -> SparseVec<F> {
        SparseVec::from_sorted(
            self.data
                .iter()
                .enumerate()
                .map(|(r, row)| (r, row.dot(v)))
                .collect(),
        )
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self.mul_sparse(&SparseVec::from_dense(v)).to_dense(self.rows))
    }

    fn echelon(&self) -> Echelon<F> {
        let mut e = Echelon::new();
        for row in &self.data {
            if !row.is_zero() {
                e.insert(row);
            }
        }
        e
    }

    /// The rows as rational vectors, when every entry is rational.
    fn rational_rows(&self) -> Option<Vec<Vec<(usize, Rational)>>> {
        self.data
            .iter()
            .filter(|row| !row.is_zero())
            .map(|row| row.iter().map(|(c, v)| v.as_rational().map(|q| (*c, q))).collect())
            .collect()
    }

    /// Fraction-free elimination, available when every entry is rational.
    fn integer_echelon(&self) -> Option<IntegerEchelon> {
        let rows = self.rational_rows()?.iter().map(|r| integer_row(r, self.cols)).collect();
        Some(eliminate(rows, self.cols))
    }

    /// Rank by sparse elimination for rational matrices, by the reduced
    /// echelon form otherwise.
    pub fn rank(&self) -> usize {
        match self.rational_rows() {
            Some(rows) => sparse_rank(rows, self.cols),
            None => self.echelon().rank(),
        }
    }

    /// Rank by dense fraction-free elimination (rational matrices only).
    pub fn rank_fraction_free(&self) -> Option<usize> {
        self.integer_echelon().map(|e| e.rank())
    }

    /// Rank through the reduced row echelon form.
    pub fn rank_reduced(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of the null space: one vector per free column, in column order,
    /// with a 1 in that column and 0 in the other free columns.
    pub fn kernel_basis(&self) -> Vec<SparseVec<F>> {
        if let Some(e) = self.integer_echelon() {
            return e
                .kernel()
                .into_iter()
                .map(|v| SparseVec::from_sorted(v.into_iter().map(|(c, q)| (c, F::from_rational(q))).collect()))
                .collect();
        }
        self.reduced_kernel_basis()
    }

    /// [`ExactMatrix::kernel_basis`] through the reduced row echelon form.
    pub fn reduced_kernel_basis(&self) -> Vec<SparseVec<F>> {
        let rows = self.echelon().sorted_rows();
        let mut is_pivot = vec![false; self.cols];
        for (p, _) in &rows {
            is_pivot[*p] = true;
        }
        (0..self.cols)
            .filter(|c| !is_pivot[*c])
            .map(|free| {
                let mut entries = vec![(free, F::one())];
                for (p, row) in &rows {
                    if let Some(x) = row.get(free) {
                        entries.push((*p, x.neg_ref()));
                    }
                }
                SparseVec::from_pairs(entries)
            })
            .collect()
    }

    /// Solves `M x = b`.
    pub fn solve(&self, b: &[F]) -> Result<Solution<F>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        let n = self.cols;
        let mut e = Echelon::new();
        for (row, rhs) in self.data.iter().zip(b) {
            let mut entries = row.entries().to_vec();
            if !rhs.is_zero() {
                entries.push((n, rhs.clone()));
            }
            let aug = SparseVec::from_sorted(entries);
            if !aug.is_zero() {
                e.insert(&aug);
            }
        }
        let mut x = vec![F::zero(); n];
        for (p, row) in e.rows() {
            if p == n {
                return Err(Error::NoSolution);
            }
            if let Some(v) = row.get(n) {
                x[p] = v.clone();
            }
        }
        Ok(Solution { x, underdetermined: e.rank() < n })
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "inverse of non-square {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut e = Echelon::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut entries = row.entries().to_vec();
            entries.push((n + r, F::one()));
            e.insert(&SparseVec::from_sorted(entries));
        }
        let rows = e.sorted_rows();
        if rows.len() < n || rows.iter().any(|(p, _)| *p >= n) {
            return Err(Error::Singular);
        }
        let data = rows
            .into_iter()
            .map(|(_, row)| {
                SparseVec::from_sorted(
                    row.iter().filter(|(c, _)| *c >= n).map(|(c, v)| (c - n, v.clone())).collect(),
                )
            })
            .collect();
        Ok(ExactMatrix { rows: n, cols: n, data })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let shift = self.cols;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut e = a.entries().to_vec();
                e.extend(b.iter().map(|(c, v)| (c + shift, v.clone())));
                SparseVec::from_sorted(e)
            })
            .collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols + other.cols, data })
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> ExactMatrix<G> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.map(&f)).collect(),
        }
    }

    /// True when equal to its conjugate transpose.
    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && *self == self.conjugate_transpose()
    }
}

impl<F: Field> ExactMatrix<F> {
    /// `self ⊗ id_n` with row and column index `i·n + g`.
    pub fn kron_identity(&self, n: usize) -> Self {
        let data = self
            .data
            .iter()
            .flat_map(|row| {
                (0..n).map(move |g| SparseVec::from_sorted(row.iter().map(|(c, v)| (c * n + g, v.clone())).collect()))
            })
            .collect();
        ExactMatrix { rows: self.rows * n, cols: self.cols * n, data }
    }

    /// Column `c` as a sparse vector.
    pub fn column(&self, c: usize) -> SparseVec<F> {
        SparseVec::from_sorted(
            self.data.iter().enumerate().filter_map(|(r, row)| row.get(c).map(|v| (r, v.clone()))).collect(),
        )
    }

    pub fn columns(&self) -> Vec<SparseVec<F>> {
        self.transpose().data
    }
}

impl ExactMatrix<Scalar> {
    /// Checks a Hermitian matrix for positive definiteness by elimination
    /// without pivoting. On failure returns the size of the first leading
    /// principal minor that is not positive.
    pub fn positive_definite(&self) -> std::result::Result<(), usize> {
        if !self.is_hermitian() {
            return Err(0);
        }
        let n = self.rows;
        let mut a = self.to_dense();
        for j in 0..n {
            // a[j][j] is the ratio of consecutive leading minors
            if !a[j][j].is_positive_real() {
                return Err(j + 1);
            }
            let inv = a[j][j].inv().expect("positive pivot");
            for r in j + 1..n {
                if a[r][j].is_zero() {
                    continue;
                }
                let f = a[r][j].mul_ref(&inv);
                for c in j..n {
                    let t = f.mul_ref(&a[j][c]);
                    a[r][c] = a[r][c].sub_ref(&t);
                }
            }
        }
        Ok(())
    }
}

impl<F: Field + fmt::Display> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::scalar::rat;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_dense(
            &rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn identity_rank() {
        let i = ExactMatrix::<Scalar>::identity(3);
        assert_eq!(i.rank(), 3);
        assert!(i.kernel_basis().is_empty());
    }

    #[test]
    fn kernel_vectors_are_null() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = a.kernel_basis();
        assert_eq!(a.rank() + k.len(), 4);
        for v in &k {
            assert!(a.mul_sparse(v).is_zero());
        }
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), ExactMatrix::identity(2));
        let s = a.solve(&[Scalar::int(3), Scalar::int(2)]).unwrap();
        assert_eq!(s.x, vec![Scalar::int(1), Scalar::int(1)]);
        assert!(!s.underdetermined);
        let sing = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse(), Err(Error::Singular));
        assert_eq!(sing.solve(&[Scalar::int(1), Scalar::int(0)]), Err(Error::NoSolution));
        assert!(sing.solve(&[Scalar::int(1), Scalar::int(2)]).unwrap().underdetermined);
    }

    #[test]
    fn conjugate_transpose_of_i() {
        let a = ExactMatrix::from_dense(&[vec![Scalar::i()]]);
        assert_eq!(a.conjugate_transpose().get(0, 0), Scalar::new(rat(0), rat(-1)));
    }
}
