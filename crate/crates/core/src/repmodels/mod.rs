//! Explicit representations: the irreducibles of the semisimple case, their matrix units,
//! and the two-dimensional uniserial modules that witness non-semisimplicity.

mod representation;

use std::collections::HashMap;

use serde::Serialize;

pub use representation::{AlgebraContext, AnyRepresentation, Representation};

use crate::criterion::is_semisimple;
use crate::error::{KlrError, Result};
use crate::exactla::module_ops::invariant_closure;
use crate::exactla::{column_space, Field, SparseMatrix};
use crate::presentation::{verify_representation, word_matrix, Letter, VerificationReport};
use crate::root_data::{generator_degree, Generator, LieRank, Multicharge, Residue, WeightVector};
use crate::tableaux::{
    enumerate_multipartitions, enumerate_standard, residue, tableau_word, Multipartition, Node, ResidueSequence, Tableau,
};

fn require_semisimple(kappa: &Multicharge, n: usize, rank: LieRank) -> Result<()> {
    let report = is_semisimple(kappa, n, rank);
    if report.verdict {
        Ok(())
    } else {
        Err(KlrError::CriterionViolated(format!("ell = {rank}, charge = {kappa}, n = {n}")))
    }
}

/// `S^lambda`: basis `v^t` for standard `t`, `x_r = 0` and `psi_r v^t = v^{s_r t}` (zero
/// when `s_r t` is not standard).
pub fn build_irreducible<F: Field>(lambda: &Multipartition, kappa: &Multicharge, rank: LieRank, field: F) -> Result<Representation<F>> {
    if lambda.level() != kappa.level() {
        return Err(KlrError::SizeMismatch(format!(
            "shape {lambda} has level {}, charge {kappa} has level {}",
            lambda.level(),
            kappa.level()
        )));
    }
    let n = lambda.size();
    require_semisimple(kappa, n, rank)?;
    let tableaux = enumerate_standard(lambda);
    let dim = tableaux.len();
    let index: HashMap<&Tableau, usize> = tableaux.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let weights: Vec<ResidueSequence> = tableaux.iter().map(|t| t.residue_sequence(kappa, rank)).collect();
    let psi = (1..n)
        .map(|r| {
            let mut m = SparseMatrix::zero(dim, dim);
            for (col, t) in tableaux.iter().enumerate() {
                let s = t.swap(r);
                if s.is_standard() {
                    m.add_entry(&field, index[&s], col, &field.one());
                }
            }
            m
        })
        .collect();
    let x = vec![SparseMatrix::zero(dim, dim); n];
    let labels = tableaux.iter().map(Tableau::to_string).collect();
    Ok(Representation::with_weight_basis(field, n, labels, &weights, x, psi)?.with_context(rank, kappa.clone()))
}

/// Nonzero entries of `psi_r e(i)` sitting in nonzero degree, as `(letter, row, col, degree)`.
pub fn degree_violations<F: Field>(rep: &Representation<F>, rank: LieRank) -> Vec<(Letter, usize, usize, i32)> {
    let mut out = Vec::new();
    for i in rep.support() {
        let e = rep.idempotent(i);
        for r in 1..rep.n() {
            let deg = generator_degree(Generator::Psi(r), i.entries(), rank);
            if deg == 0 {
                continue;
            }
            for (row, col, _) in rep.psi(r).mul(rep.field(), e).entries() {
                out.push((Letter::Psi(r), row, col, deg));
            }
        }
        for r in 1..=rep.n() {
            let deg = generator_degree(Generator::X(r), i.entries(), rank);
            if deg == 0 {
                continue;
            }
            for (row, col, _) in rep.x(r).mul(rep.field(), e).entries() {
                out.push((Letter::X(r), row, col, deg));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixUnitBlock {
    pub shape: Multipartition,
    pub standard_tableaux: usize,
}

/// Outcome of realising `e_{st}` inside the sum of all irreducibles.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixUnitReport {
    pub n: usize,
    pub blocks: Vec<MatrixUnitBlock>,
    /// `sum_lambda |Std(lambda)|^2`.
    pub dimension: usize,
    pub module_violations: usize,
    pub units_checked: usize,
    pub products_checked: usize,
    pub failures: Vec<String>,
}

impl MatrixUnitReport {
    pub fn passed(&self) -> bool {
        self.module_violations == 0 && self.failures.is_empty()
    }
}

/// Products are multiplied out as matrices up to this many quadruples; beyond it the law is
/// read off the verified single-entry positions.
const FULL_PRODUCT_LIMIT: usize = 200_000;

/// Evaluates `e_{st} = psi_{w^s} e(i^lambda) psi_{(w^t)^{-1}}` in `sum_lambda S^lambda`
/// and checks that it is the elementary matrix at `(s, t)` of block `lambda`, then checks
/// `e_{st} e_{uv} = delta_{tu} e_{sv}`.
pub fn matrix_units<F: Field>(kappa: &Multicharge, n: usize, rank: LieRank, field: F) -> Result<MatrixUnitReport> {
    require_semisimple(kappa, n, rank)?;
    let shapes = enumerate_multipartitions(n, kappa.level());
    let mut module: Option<Representation<F>> = None;
    let mut blocks = Vec::new();
    let mut offsets = Vec::new();
    let mut tableaux_per_block = Vec::new();
    for lambda in &shapes {
        let rep = build_irreducible(lambda, kappa, rank, field.clone())?;
        offsets.push(module.as_ref().map_or(0, Representation::dim));
        blocks.push(MatrixUnitBlock { shape: lambda.clone(), standard_tableaux: rep.dim() });
        tableaux_per_block.push(enumerate_standard(lambda));
        module = Some(match module {
            None => rep,
            Some(m) => m.direct_sum(&rep)?,
        });
    }
    let module = module.expect("at least one multipartition");
    let module_violations = verify_representation(&module, &kappa.weight(rank), rank)?.violations.len();
    let dim = module.dim();

    let psi_word = |word: &[usize]| -> Vec<Letter> { word.iter().map(|&r| Letter::Psi(r)).collect() };
    let mut failures = Vec::new();
    let mut units_checked = 0;
    let mut products_checked = 0;
    let total_quads: usize = blocks.iter().map(|b| b.standard_tableaux.pow(4)).sum();

    for ((lambda, tabs), &offset) in shapes.iter().zip(&tableaux_per_block).zip(&offsets) {
        let i_lambda = Tableau::initial(lambda).residue_sequence(kappa, rank);
        let words: Vec<Vec<usize>> = tabs.iter().map(|t| tableau_word(t).word).collect();
        let mut left = Vec::with_capacity(tabs.len());
        let mut right = Vec::with_capacity(tabs.len());
        for word in &words {
            let mut letters = psi_word(word);
            letters.push(Letter::E(i_lambda.clone()));
            left.push(word_matrix(&module, &letters)?);
            let reversed: Vec<usize> = word.iter().rev().copied().collect();
            right.push(word_matrix(&module, &psi_word(&reversed))?);
        }
        let k = tabs.len();
        let mut units = vec![Vec::with_capacity(k); k];
        for s in 0..k {
            for t in 0..k {
                let e = left[s].mul(&field, &right[t]);
                let expected = SparseMatrix::from_triples(&field, dim, dim, [(offset + s, offset + t, field.one())]);
                units_checked += 1;
                if e != expected {
                    failures.push(format!("e_(s,t) for s = {}, t = {} in block {lambda} is not the unit at ({s}, {t})", tabs[s], tabs[t]));
                }
                units[s].push(e);
            }
        }
        if !failures.is_empty() {
            continue;
        }
        if total_quads <= FULL_PRODUCT_LIMIT {
            let zero = SparseMatrix::zero(dim, dim);
            for s in 0..k {
                for t in 0..k {
                    for u in 0..k {
                        for v in 0..k {
                            let prod = units[s][t].mul(&field, &units[u][v]);
                            let expected = if t == u { &units[s][v] } else { &zero };
                            products_checked += 1;
                            if &prod != expected {
                                failures.push(format!("matrix-unit law fails for ({s},{t})({u},{v}) in block {lambda}"));
                            }
                        }
                    }
                }
            }
        } else {
            // Each unit is a verified single entry 1 at (offset + s, offset + t), so the
            // product of two of them is determined by those positions.
            products_checked += k.pow(4);
        }
    }
    // Units of different blocks live in disjoint blocks of the direct sum.
    Ok(MatrixUnitReport {
        n,
        dimension: blocks.iter().map(|b| b.standard_tableaux.pow(2)).sum(),
        blocks,
        module_violations,
        units_checked,
        products_checked,
        failures,
    })
}

fn one_row(kappa: &Multicharge, j: usize, n: usize) -> Result<Multipartition> {
    if j == 0 || j > kappa.level() {
        return Err(KlrError::Precondition(format!("component {j} out of range for charge {kappa}")));
    }
    Multipartition::single(kappa.level(), j, vec![n])
}

/// Residues of the first row of component `j` under the folded charge.
fn row_residues(kappa: &Multicharge, j: usize, n: usize, rank: LieRank) -> ResidueSequence {
    let folded = kappa.folded(rank);
    ResidueSequence::new((1..=n).map(|c| residue(Node::new(1, c, j), &folded, rank)).collect())
}

/// Two-dimensional module on `{u, v}` with `e(i) = 1`, `psi = 0`, `x_r u = 0` and
/// `x_r v = signs[r-1] u`.
fn two_dimensional<F: Field>(field: F, i: ResidueSequence, signs: &[i64], rank: LieRank, kappa: &Multicharge) -> Result<Representation<F>> {
    let n = i.len();
    let x = signs.iter().map(|&c| SparseMatrix::from_triples(&field, 2, 2, [(0, 1, field.from_i64(c))])).collect();
    let psi = vec![SparseMatrix::zero(2, 2); n.saturating_sub(1)];
    let rep = Representation::with_weight_basis(field, n, vec!["u".into(), "v".into()], &[i.clone(), i], x, psi)?;
    Ok(rep.with_context(rank, kappa.clone()))
}

/// Sign of `x_r v` in the boundary module (`r` is 1-based).
pub fn boundary_sign(r: usize, rank: LieRank) -> i64 {
    let parity = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
    match rank.ell() {
        None => {
            if r == 1 {
                0
            } else {
                parity(r)
            }
        }
        Some(l) => {
            let l = l as usize;
            let q = (r - 1) % (2 * l) + 1;
            if q == 1 || q == l + 1 {
                0
            } else if q <= l {
                parity(q)
            } else {
                parity(q + 1)
            }
        }
    }
}

/// Uniserial module for a boundary charge `bar(kappa_j) in {0, ell}`.
pub fn build_boundary_uniserial<F: Field>(kappa: &Multicharge, j: usize, n: usize, rank: LieRank, field: F) -> Result<Representation<F>> {
    one_row(kappa, j, n)?;
    let c = kappa.bar(rank)[j - 1];
    let boundary = c.0 == 0 || rank.ell() == Some(c.0);
    if !boundary || n < 2 {
        return Err(KlrError::Precondition(format!("boundary module needs bar(kappa_{j}) in {{0, ell}} and n > 1 (got {c}, n = {n})")));
    }
    let signs: Vec<i64> = (1..=n).map(|r| boundary_sign(r, rank)).collect();
    two_dimensional(field, row_residues(kappa, j, n, rank), &signs, rank, kappa)
}

/// Sign of `x_r v` in the repeated-charge module; `p = ell - bar(kappa_j) + 1`.
pub fn repeat_sign(r: usize, charge: Residue, n: usize, rank: LieRank) -> i64 {
    let p = rank.ell().map(|l| (l - charge.0) as usize + 1);
    let parity = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
    match p {
        // n = 1 with a charge at ell: the vanishing position would be x_1 itself.
        Some(1) if n == 1 => 1,
        Some(p) if r == p => 0,
        Some(p) if r > p => parity(r),
        _ => parity(r + 1),
    }
}

/// Uniserial module for a repeated folded charge.
pub fn build_repeat_uniserial<F: Field>(kappa: &Multicharge, j: usize, n: usize, rank: LieRank, field: F) -> Result<Representation<F>> {
    one_row(kappa, j, n)?;
    let bars = kappa.bar(rank);
    let c = bars[j - 1];
    let repeated = bars.iter().enumerate().any(|(k, &b)| k != j - 1 && b == c);
    let (ss2, _) = crate::criterion::ss2_check(kappa, n, rank);
    if !ss2 || !repeated {
        return Err(KlrError::Precondition(format!(
            "repeat module needs SS2 and bar(kappa_{j}) = {c} repeated (SS2 holds: {ss2}, repeated: {repeated})"
        )));
    }
    let signs: Vec<i64> = (1..=n).map(|r| repeat_sign(r, c, n, rank)).collect();
    two_dimensional(field, row_residues(kappa, j, n, rank), &signs, rank, kappa)
}

#[derive(Debug, Clone)]
pub enum OneDimensional<F: Field> {
    Accepted(Representation<F>),
    Rejected(VerificationReport),
}

/// The one-dimensional candidate with `e(i) = 1` and every `x_r`, `psi_r` zero.
pub fn build_one_dimensional<F: Field>(i: &ResidueSequence, w: &WeightVector, rank: LieRank, field: F) -> Result<OneDimensional<F>> {
    if i.is_empty() || !i.in_rank(rank) {
        return Err(KlrError::InvalidSupport(format!("({i}) is not a nonempty sequence of residues")));
    }
    let n = i.len();
    let rep = Representation::with_weight_basis(
        field,
        n,
        vec![format!("e({i})")],
        std::slice::from_ref(i),
        vec![SparseMatrix::zero(1, 1); n],
        vec![SparseMatrix::zero(1, 1); n - 1],
    )?;
    let report = verify_representation(&rep, w, rank)?;
    Ok(if report.passed() { OneDimensional::Accepted(rep) } else { OneDimensional::Rejected(report) })
}

/// Irreducibility test. A weight vector generating a proper submodule settles the answer
/// negatively; when every weight space is at most one-dimensional, a module in which each
/// weight vector generates everything is irreducible.
pub fn is_irreducible<F: Field>(rep: &Representation<F>, w: &WeightVector, rank: LieRank) -> Result<bool> {
    let report = verify_representation(rep, w, rank)?;
    if !report.passed() {
        return Err(KlrError::Unverified(report.violations.len()));
    }
    if rep.dim() == 0 {
        return Ok(false);
    }
    let f = rep.field();
    let mut largest = (0, None);
    for i in rep.support() {
        let space = column_space(f, rep.idempotent(i));
        if space.dim() > largest.0 {
            largest = (space.dim(), Some(i.clone()));
        }
        for v in space.basis() {
            if invariant_closure(rep, [v.clone()]).dim() < rep.dim() {
                return Ok(false);
            }
        }
    }
    match largest {
        (d, Some(i)) if d > 1 => Err(KlrError::Undecided(format!("weight space of ({i}) has dimension {d}"))),
        _ => Ok(true),
    }
}
