//! Row-major sparse matrices over an exact field.
//!
//! Rows store `(column, value)` pairs sorted by column with no explicit zeros, so two
//! matrices are equal exactly when their entries are.

use super::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, E)>>,
}

impl<E: Clone + PartialEq> SparseMatrix<E> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, dim: usize) -> Self {
        let data = (0..dim).map(|i| vec![(i, field.one())]).collect();
        SparseMatrix { rows: dim, cols: dim, data }
    }

    /// Builds from `(row, col, value)` triples, summing duplicates and dropping zeros.
    pub fn from_triples<F: Field<Elem = E>>(
        field: &F,
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Self {
        let mut m = SparseMatrix::zero(rows, cols);
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            m.add_entry(field, r, c, &v);
        }
        m
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, dense: &[Vec<E>], cols: usize) -> Self {
        let data = dense
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, v)| !field.is_zero(v)).map(|(c, v)| (c, v.clone())).collect())
            .collect();
        SparseMatrix { rows: dense.len(), cols, data }
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut out = vec![vec![field.zero(); self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, E)] {
        &self.data[r]
    }

    /// Iterates over nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn get<F: Field<Elem = E>>(&self, field: &F, r: usize, c: usize) -> E {
        match self.data[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(pos) => self.data[r][pos].1.clone(),
            Err(_) => field.zero(),
        }
    }

    pub fn add_entry<F: Field<Elem = E>>(&mut self, field: &F, r: usize, c: usize, v: &E) {
        if field.is_zero(v) {
            return;
        }
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |(col, _)| *col) {
            Ok(pos) => {
                let s = field.add(&row[pos].1, v);
                if field.is_zero(&s) {
                    row.remove(pos);
                } else {
                    row[pos].1 = s;
                }
            }
            Err(pos) => row.insert(pos, (c, v.clone())),
        }
    }

    /// `self * other`.
    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &SparseMatrix<E>) -> SparseMatrix<E> {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut acc: Vec<Option<E>> = vec![None; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let prod = field.mul(a, b);
                    match &mut acc[*c] {
                        Some(v) => *v = field.add(v, &prod),
                        slot @ None => {
                            *slot = Some(prod);
                            touched.push(*c);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out_row = Vec::with_capacity(touched.len());
            for c in touched.drain(..) {
                let v = acc[c].take().expect("touched column holds a value");
                if !field.is_zero(&v) {
                    out_row.push((c, v));
                }
            }
            data.push(out_row);
        }
        SparseMatrix { rows: self.rows, cols: other.cols, data }
    }

    /// `self + scale * other`.
    pub fn add_scaled<F: Field<Elem = E>>(&self, field: &F, scale: &E, other: &SparseMatrix<E>) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shapes differ");
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_entry(field, r, c, &field.mul(scale, v));
        }
        out
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, s: &E) -> Self {
        if field.is_zero(s) {
            return SparseMatrix::zero(self.rows, self.cols);
        }
        let data = self.data.iter().map(|row| row.iter().map(|(c, v)| (*c, field.mul(s, v))).collect()).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Matrix-vector product with a dense column vector.
    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols, "vector length differs from column count");
        self.data
            .iter()
            .map(|row| {
                row.iter().fold(
                    field.zero(),
                    |acc, (c, a)| {
                        if field.is_zero(&v[*c]) {
                            acc
                        } else {
                            field.add(&acc, &field.mul(a, &v[*c]))
                        }
                    },
                )
            })
            .collect()
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn direct_sum(&self, other: &SparseMatrix<E>) -> Self {
        let mut data = self.data.clone();
        data.extend(other.data.iter().map(|row| row.iter().map(|(c, v)| (c + self.cols, v.clone())).collect()));
        SparseMatrix { rows: self.rows + other.rows, cols: self.cols + other.cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(usize, E)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            data[c].push((r, v.clone()));
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::{PrimeField, Rationals};

    #[test]
    fn product_matches_dense_definition() {
        let f = PrimeField::new(7).unwrap();
        let a = SparseMatrix::from_dense(&f, &[vec![1, 2], vec![0, 3]], 2);
        let b = SparseMatrix::from_dense(&f, &[vec![4, 0], vec![5, 6]], 2);
        let ab = a.mul(&f, &b);
        // [[1*4+2*5, 12], [15, 18]] mod 7
        assert_eq!(ab.to_dense(&f), vec![vec![0, 5], vec![1, 4]]);
        assert_eq!(ab.nnz(), 3);
    }

    #[test]
    fn cancellation_drops_entries() {
        let q = Rationals;
        let a = SparseMatrix::identity(&q, 2);
        let z = a.add_scaled(&q, &q.from_i64(-1), &a);
        assert!(z.is_zero());
    }

    #[test]
    fn direct_sum_places_blocks() {
        let f = PrimeField::new(5).unwrap();
        let a = SparseMatrix::from_dense(&f, &[vec![1]], 1);
        let b = SparseMatrix::from_dense(&f, &[vec![0, 2], vec![3, 0]], 2);
        let s = a.direct_sum(&b);
        assert_eq!(s.to_dense(&f), vec![vec![1, 0, 0], vec![0, 0, 2], vec![0, 3, 0]]);
        assert_eq!(s.transpose().get(&f, 1, 2), 3);
    }
}
