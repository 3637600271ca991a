//! Submodule computations on explicit representations.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::dense::{nullspace, Echelon, Solution, Subspace};
use super::{solve_augmented, Field, SparseMatrix};
use crate::error::{KlrError, Result};
use crate::presentation::Letter;
use crate::repmodels::Representation;
use crate::tableaux::ResidueSequence;

/// Smallest subspace containing `seeds` and stable under every generator.
pub fn invariant_closure<F: Field>(rep: &Representation<F>, seeds: impl IntoIterator<Item = Vec<F::Elem>>) -> Subspace<F> {
    let f = rep.field();
    let gens = rep.generators();
    let mut space = Subspace::zero(f.clone(), rep.dim());
    let mut queue: VecDeque<Vec<F::Elem>> = seeds.into_iter().collect();
    while let Some(v) = queue.pop_front() {
        if space.contains(&v) {
            continue;
        }
        for (_, g) in &gens {
            let image = g.apply(f, &v);
            if image.iter().any(|x| !f.is_zero(x)) {
                queue.push_back(image);
            }
        }
        space.insert(v);
        if space.dim() == rep.dim() {
            break;
        }
    }
    space
}

/// Subspace spanned by the columns of `m`.
pub fn column_space<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Subspace<F> {
    Subspace::span(field.clone(), m.rows(), m.transpose().to_dense(field))
}

fn kernel<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Subspace<F> {
    Subspace::span(field.clone(), m.cols(), nullspace(field, &m.to_dense(field), m.cols()))
}

/// Intersection of two subspaces of the same ambient space.
pub fn intersect<F: Field>(field: &F, a: &Subspace<F>, b: &Subspace<F>) -> Subspace<F> {
    let d = a.ambient();
    let (ka, kb) = (a.dim(), b.dim());
    if ka == 0 || kb == 0 {
        return Subspace::zero(field.clone(), d);
    }
    // Solve sum x_p a_p - sum y_q b_q = 0 and map x back.
    let rows: Vec<Vec<F::Elem>> =
        (0..d).map(|c| a.basis().iter().map(|v| v[c].clone()).chain(b.basis().iter().map(|v| field.neg(&v[c]))).collect()).collect();
    let sols = nullspace(field, &rows, ka + kb);
    Subspace::span(
        field.clone(),
        d,
        sols.into_iter().map(|s| {
            let mut v = vec![field.zero(); d];
            for (coef, basis) in s[..ka].iter().zip(a.basis()) {
                if field.is_zero(coef) {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(basis) {
                    *x = field.add(x, &field.mul(coef, y));
                }
            }
            v
        }),
    )
}

/// Whether `g` maps `space` into itself.
pub fn is_stable<F: Field>(field: &F, g: &SparseMatrix<F::Elem>, space: &Subspace<F>) -> bool {
    space.basis().iter().all(|b| space.contains(&g.apply(field, b)))
}

pub fn is_invariant<F: Field>(rep: &Representation<F>, space: &Subspace<F>) -> bool {
    rep.generators().iter().all(|(_, g)| is_stable(rep.field(), g, space))
}

/// Every vector of `space` spans an invariant line and every invariant line lies in
/// some family. A family of dimension one is a single line; a larger one is a pencil.
#[derive(Debug, Clone)]
pub struct LineFamily<F: Field> {
    pub weight: ResidueSequence,
    pub space: Subspace<F>,
}

impl<F: Field> LineFamily<F> {
    pub fn is_single_line(&self) -> bool {
        self.space.dim() == 1
    }
}

fn undecided(msg: String) -> KlrError {
    KlrError::Undecided(msg)
}

/// All one-dimensional invariant subspaces, grouped by weight.
///
/// An invariant line is a common eigenvector of every generator. The idempotents force it
/// into a single weight space `E_i`. On `E_i`, `psi_r` carries `E_i` into `E_{s_r i}`, and
/// when `s_r i = i` it squares to zero there, so its eigenvalue is zero; each `x_r`
/// restricted to `E_i` is nilpotent. The lines in `E_i` are then exactly the lines of
/// `E_i` killed by every `x_r` and `psi_r`. Each of these facts is checked on the
/// matrices; if one fails the answer is [`KlrError::Undecided`].
pub fn invariant_lines<F: Field>(rep: &Representation<F>) -> Result<Vec<LineFamily<F>>> {
    let f = rep.field();
    let d = rep.dim();
    let support: Vec<ResidueSequence> = rep.support().cloned().collect();

    let mut sum = SparseMatrix::zero(d, d);
    for i in &support {
        let e = rep.idempotent(i);
        sum = sum.add_scaled(f, &f.one(), e);
        for j in &support {
            let prod = e.mul(f, rep.idempotent(j));
            let expected = if i == j { e.clone() } else { SparseMatrix::zero(d, d) };
            if prod != expected {
                return Err(undecided(format!("e({i}) and e({j}) are not orthogonal idempotents")));
            }
        }
    }
    if sum != SparseMatrix::identity(f, d) {
        return Err(undecided("the idempotents do not sum to the identity".into()));
    }

    let mut families = Vec::new();
    for i in &support {
        let e = rep.idempotent(i);
        let weight_space = column_space(f, e);
        if weight_space.dim() == 0 {
            continue;
        }
        let mut k = weight_space.clone();
        for r in 1..rep.n() {
            let psi_e = rep.psi(r).mul(f, e);
            let j = i.swap(r);
            if &j == i {
                if !rep.psi(r).mul(f, &psi_e).is_zero() {
                    return Err(undecided(format!("psi{r} does not square to zero on e({i})")));
                }
            } else if rep.idempotent(&j).mul(f, &psi_e) != psi_e {
                return Err(undecided(format!("psi{r} does not map e({i}) into e({j})")));
            }
            k = intersect(f, &k, &kernel(f, rep.psi(r)));
        }
        for r in 1..=rep.n() {
            let xe = rep.x(r).mul(f, e);
            let mut power = xe.clone();
            for _ in 1..weight_space.dim() {
                power = xe.mul(f, &power);
            }
            if !power.is_zero() {
                return Err(undecided(format!("x{r} is not nilpotent on e({i})")));
            }
            k = intersect(f, &k, &kernel(f, rep.x(r)));
        }
        if k.dim() > 0 {
            families.push(LineFamily { weight: i.clone(), space: k });
        }
    }
    Ok(families)
}

/// Matrix of `g` restricted to the invariant subspace `sub`, in the echelon basis of `sub`.
fn restrict<F: Field>(field: &F, g: &SparseMatrix<F::Elem>, sub: &Subspace<F>) -> Result<Vec<Vec<F::Elem>>> {
    let k = sub.dim();
    let mut m = vec![vec![field.zero(); k]; k];
    for (col, b) in sub.basis().iter().enumerate() {
        let coords = sub.coordinates(&g.apply(field, b)).ok_or(KlrError::NonInvariant)?;
        for (row, c) in coords.into_iter().enumerate() {
            m[row][col] = c;
        }
    }
    Ok(m)
}

/// Outcome of searching for a module map `sigma: V -> U` with `sigma|_U = id`.
#[derive(Debug, Clone)]
pub enum Retraction<F: Field> {
    /// `sigma` as a `dim U x dim V` matrix in the echelon basis of `U`, with its kernel,
    /// an invariant complement to `U`.
    Exists { sigma: Vec<Vec<F::Elem>>, complement: Subspace<F> },
    /// The linear system for `sigma` is inconsistent.
    Obstructed(RetractionCertificate),
}

impl<F: Field> Retraction<F> {
    pub fn exists(&self) -> bool {
        matches!(self, Retraction::Exists { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractionCertificate {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub augmented_rank: usize,
}

/// Decides whether the invariant subspace `sub` is a direct summand of `rep`.
///
/// Unknown `S` with `S B = I` (columns of `B` a basis of `U`) and `S G = G_U S` for every
/// generator `G`; `G_U` is the action on `U`. A solution is re-checked: its kernel must
/// be invariant and complementary to `U`.
pub fn equivariant_retraction_exists<F: Field>(rep: &Representation<F>, sub: &Subspace<F>) -> Result<Retraction<F>> {
    let f = rep.field();
    let d = rep.dim();
    let k = sub.dim();
    if sub.ambient() != d {
        return Err(KlrError::DimensionMismatch(format!("subspace of F^{} in a module of dimension {d}", sub.ambient())));
    }
    let gens = rep.generators();
    let restricted = gens.iter().map(|(_, g)| restrict(f, g, sub)).collect::<Result<Vec<_>>>()?;

    let unknowns = k * d;
    let var = |a: usize, c: usize| a * d + c;
    let mut ech = Echelon::new(f.clone(), unknowns + 1);
    let mut equations = 0;
    for (j, b) in sub.basis().iter().enumerate() {
        for a in 0..k {
            let mut row = vec![f.zero(); unknowns + 1];
            for (c, x) in b.iter().enumerate() {
                row[var(a, c)] = x.clone();
            }
            row[unknowns] = if a == j { f.one() } else { f.zero() };
            equations += 1;
            ech.insert(row);
        }
    }
    for ((_, g), gu) in gens.iter().zip(&restricted) {
        let gt = g.transpose();
        for a in 0..k {
            for c in 0..d {
                // (S G)_{a,c} - (G_U S)_{a,c}
                let mut row = vec![f.zero(); unknowns + 1];
                let mut nonzero = false;
                for (m, x) in gt.row(c) {
                    let slot = &mut row[var(a, *m)];
                    *slot = f.add(slot, x);
                    nonzero = true;
                }
                for (b, coef) in gu[a].iter().enumerate() {
                    if !f.is_zero(coef) {
                        let slot = &mut row[var(b, c)];
                        *slot = f.sub(slot, coef);
                        nonzero = true;
                    }
                }
                if nonzero {
                    equations += 1;
                    ech.insert(row);
                }
            }
        }
    }
    let x = match solve_augmented(f, &ech, unknowns) {
        Solution::Inconsistent { rank, augmented_rank } => {
            return Ok(Retraction::Obstructed(RetractionCertificate { unknowns, equations, rank, augmented_rank }));
        }
        Solution::Consistent(x) => x,
    };
    let sigma: Vec<Vec<F::Elem>> = (0..k).map(|a| x[a * d..(a + 1) * d].to_vec()).collect();

    let sigma_sparse = SparseMatrix::from_dense(f, &sigma, d);
    for (j, b) in sub.basis().iter().enumerate() {
        let image = sigma_sparse.apply(f, b);
        if image.iter().enumerate().any(|(a, v)| *v != if a == j { f.one() } else { f.zero() }) {
            return Err(KlrError::WitnessFailed("retraction does not restrict to the identity".into()));
        }
    }
    for ((letter, g), gu) in gens.iter().zip(&restricted) {
        let lhs = sigma_sparse.mul(f, g);
        let rhs = SparseMatrix::from_dense(f, &gu.clone(), k).mul(f, &sigma_sparse);
        if lhs != rhs {
            return Err(KlrError::WitnessFailed(format!("retraction does not commute with {letter}")));
        }
    }
    let complement = Subspace::span(f.clone(), d, nullspace(f, &sigma, d));
    if !is_invariant(rep, &complement) {
        return Err(KlrError::WitnessFailed("kernel of the retraction is not invariant".into()));
    }
    let total = Subspace::span(f.clone(), d, sub.basis().iter().chain(complement.basis()).cloned());
    if complement.dim() + k != d || total.dim() != d {
        return Err(KlrError::WitnessFailed("kernel of the retraction is not a complement".into()));
    }
    Ok(Retraction::Exists { sigma, complement })
}

/// Letters whose matrices fail to preserve `space`.
pub fn unstable_generators<F: Field>(rep: &Representation<F>, space: &Subspace<F>) -> Vec<Letter> {
    rep.generators().into_iter().filter(|(_, g)| !is_stable(rep.field(), g, space)).map(|(l, _)| l).collect()
}
