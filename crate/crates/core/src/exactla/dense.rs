//! Dense echelon forms, subspaces and linear solves.
//!
//! Pivot rule: the leftmost nonzero entry of a row, rows kept ordered by pivot column,
//! every pivot equal to one and cleared from all other rows.

use super::field::Field;

/// Reduced row echelon form of `rows` (each of length `cols`); returns the nonzero rows
/// and their pivot columns.
pub fn rref<F: Field>(field: &F, rows: &[Vec<F::Elem>], cols: usize) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut echelon = Echelon::new(field.clone(), cols);
    for r in rows {
        echelon.insert(r.clone());
    }
    let pivots = echelon.pivots.clone();
    (echelon.rows, pivots)
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>], cols: usize) -> usize {
    rref(field, rows, cols).1.len()
}

/// Incrementally maintained reduced echelon basis.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, cols: usize) -> Self {
        Echelon { field, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (j, x) in row.iter().enumerate().skip(p) {
                if !f.is_zero(x) {
                    v[j] = f.sub(&v[j], &f.mul(&c, x));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns `true` when the rank grew.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.cols, "vector length differs from ambient dimension");
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("pivot is nonzero");
        for x in v.iter_mut().skip(p) {
            *x = f.mul(x, &inv);
        }
        for row in &mut self.rows {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (j, x) in v.iter().enumerate().skip(p) {
                if !f.is_zero(x) {
                    row[j] = f.sub(&row[j], &f.mul(&c, x));
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, v);
        true
    }
}

/// A subspace of `F^ambient`, stored by its canonical reduced echelon basis.
#[derive(Debug, Clone)]
pub struct Subspace<F: Field> {
    echelon: Echelon<F>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.echelon.cols == other.echelon.cols && self.echelon.rows == other.echelon.rows
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { echelon: Echelon::new(field, ambient) }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let mut s = Subspace::zero(field.clone(), ambient);
        for i in 0..ambient {
            let mut e = vec![field.zero(); ambient];
            e[i] = field.one();
            s.insert(e);
        }
        s
    }

    pub fn span(field: F, ambient: usize, vectors: impl IntoIterator<Item = Vec<F::Elem>>) -> Self {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.echelon.cols
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        self.echelon.rows()
    }

    pub fn pivots(&self) -> &[usize] {
        self.echelon.pivots()
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.echelon.contains(v)
    }

    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        self.echelon.insert(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots().iter().map(|&p| v[p].clone()).collect())
    }
}

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution<E> {
    /// A particular solution (free variables set to zero).
    Consistent(Vec<E>),
    /// No solution: `rank(A) < rank([A | b])`.
    Inconsistent { rank: usize, augmented_rank: usize },
}

/// Solves `A x = b` where `a` has `unknowns` columns.
pub fn solve<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[F::Elem], unknowns: usize) -> Solution<F::Elem> {
    assert_eq!(a.len(), b.len(), "row count differs from right-hand side length");
    let mut ech = Echelon::new(field.clone(), unknowns + 1);
    for (row, rhs) in a.iter().zip(b) {
        let mut aug = row.clone();
        aug.push(rhs.clone());
        ech.insert(aug);
    }
    solve_augmented(field, &ech, unknowns)
}

/// Reads the solution off an echelon form of the augmented matrix `[A | b]`.
pub fn solve_augmented<F: Field>(field: &F, ech: &Echelon<F>, unknowns: usize) -> Solution<F::Elem> {
    if ech.pivots().last() == Some(&unknowns) {
        return Solution::Inconsistent { rank: ech.rank() - 1, augmented_rank: ech.rank() };
    }
    let mut x = vec![field.zero(); unknowns];
    for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
        x[p] = row[unknowns].clone();
    }
    Solution::Consistent(x)
}

/// Basis of the null space `{x : A x = 0}`.
pub fn nullspace<F: Field>(field: &F, a: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let (rows, pivots) = rref(field, a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![field.zero(); cols];
            x[fc] = field.one();
            for (row, &p) in rows.iter().zip(&pivots) {
                x[p] = field.neg(&row[fc]);
            }
            x
        })
        .collect()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = m.len();
    let mut ech = Echelon::new(field.clone(), 2 * n);
    for (i, row) in m.iter().enumerate() {
        let mut aug = row.clone();
        aug.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
        ech.insert(aug);
    }
    if ech.rank() != n || ech.pivots().iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(ech.rows().iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    (0..inner).fold(
                        field.zero(),
                        |acc, k| {
                            if field.is_zero(&row[k]) {
                                acc
                            } else {
                                field.add(&acc, &field.mul(&row[k], &b[k][c]))
                            }
                        },
                    )
                })
                .collect()
        })
        .collect()
}
