//! Defining relations of `R^Lambda_n` instantiated on a finite set of residue sequences.
//!
//! A relation is a formal sum `sum c_k w_k = 0` of words in the generators. Words are read
//! as products left to right and act on column vectors, so the rightmost letter acts
//! first. Apart from completeness, every term ends in the idempotent `e(i)` the instance
//! is attached to. Idempotents outside the declared support act as zero. With that
//! convention the relation `psi_r e(i) = e(s_r i) psi_r` is imposed in the one-sided form
//! `psi_r e(i) = e(s_r i) psi_r e(i)` for `i` in the support, which together with
//! completeness implies the two-sided relation for every `i`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{KlrError, Result};
use crate::exactla::{Field, SparseMatrix};
use crate::repmodels::Representation;
use crate::root_data::{bilinear_form, weight_pairing, LieRank, Residue, WeightVector};
use crate::tableaux::ResidueSequence;

/// A generator letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    E(ResidueSequence),
    /// `x_r`, 1-based.
    X(usize),
    /// `psi_r`, 1-based.
    Psi(usize),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E(i) => write!(f, "e({i})"),
            Letter::X(r) => write!(f, "x{r}"),
            Letter::Psi(r) => write!(f, "psi{r}"),
        }
    }
}

impl FromStr for Letter {
    type Err = KlrError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || KlrError::Parse(format!("unknown generator '{s}'"));
        if let Some(body) = s.strip_prefix("e(").and_then(|b| b.strip_suffix(')')) {
            return body.parse().map(Letter::E);
        }
        if let Some(r) = s.strip_prefix("psi") {
            return r.parse().map(Letter::Psi).map_err(|_| bad());
        }
        if let Some(r) = s.strip_prefix('x') {
            return r.parse().map(Letter::X).map_err(|_| bad());
        }
        Err(bad())
    }
}

/// `coeff * w_1 w_2 ... w_k`; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenWord {
    pub coeff: i64,
    pub letters: Vec<Letter>,
}

impl GenWord {
    fn new(coeff: i64, letters: Vec<Letter>) -> Self {
        GenWord { coeff, letters }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadraticCase {
    /// `(0,1)` or `(ell, ell-1)`: `x_r + x_{r+1}^2`.
    LongShort,
    /// `(1,0)` or `(ell-1, ell)`: `x_r^2 + x_{r+1}`.
    ShortLong,
    /// Adjacent short residues: `x_r + x_{r+1}`.
    Short,
    Equal,
    Distant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BraidCase {
    /// `(1,0,1)` or `(ell-1, ell, ell-1)`: error term `x_r + x_{r+2}`.
    Polynomial,
    /// `i_r = i_{r+2} = i_{r+1} ± 1` with `i_{r+1}` not an endpoint: error term `1`.
    Unit,
    Plain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum RelationTag {
    IdempotentSquare,
    IdempotentOrthogonal {
        other: ResidueSequence,
    },
    Completeness,
    XIdempotent {
        r: usize,
    },
    PsiIdempotent {
        r: usize,
    },
    XCommute {
        r: usize,
        s: usize,
    },
    PsiXCommute {
        r: usize,
        s: usize,
    },
    PsiCommute {
        r: usize,
        s: usize,
    },
    /// `x_r psi_r e(i) = (psi_r x_{r+1} - delta) e(i)`.
    XPsiLeft {
        r: usize,
    },
    /// `x_{r+1} psi_r e(i) = (psi_r x_r + delta) e(i)`.
    XPsiRight {
        r: usize,
    },
    Quadratic {
        r: usize,
        case: QuadraticCase,
    },
    Braid {
        r: usize,
        case: BraidCase,
    },
    Cyclotomic {
        exponent: u32,
    },
}

impl RelationTag {
    /// Relations that hold automatically on any space graded by residue sequences.
    pub fn is_idempotent_bookkeeping(&self) -> bool {
        matches!(
            self,
            RelationTag::IdempotentSquare
                | RelationTag::IdempotentOrthogonal { .. }
                | RelationTag::Completeness
                | RelationTag::XIdempotent { .. }
                | RelationTag::PsiIdempotent { .. }
        )
    }
}

/// One instantiated relation `sum terms = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub tag: RelationTag,
    pub idempotent: Option<ResidueSequence>,
    pub terms: Vec<GenWord>,
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            let sign = if t.coeff < 0 { "-" } else { "+" };
            if k == 0 {
                if t.coeff < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if t.coeff.abs() != 1 {
                write!(f, "{}*", t.coeff.abs())?;
            }
            if t.letters.is_empty() {
                write!(f, "1")?;
            } else {
                let w: Vec<String> = t.letters.iter().map(|l| l.to_string()).collect();
                write!(f, "{}", w.join(" "))?;
            }
        }
        write!(f, " = 0")
    }
}

pub fn quadratic_case(a: Residue, b: Residue, rank: LieRank) -> QuadraticCase {
    let ell = rank.ell();
    let is = |x: Residue, v: Option<u32>| v == Some(x.0);
    let end = |x: Residue| rank.is_endpoint(x);
    if a == b {
        QuadraticCase::Equal
    } else if (a.0 == 0 && b.0 == 1) || (is(a, ell) && is(b, ell.map(|l| l - 1))) {
        QuadraticCase::LongShort
    } else if (a.0 == 1 && b.0 == 0) || (is(a, ell.map(|l| l - 1)) && is(b, ell)) {
        QuadraticCase::ShortLong
    } else if a.0.abs_diff(b.0) == 1 && !end(a) && !end(b) {
        QuadraticCase::Short
    } else {
        QuadraticCase::Distant
    }
}

/// Case of `psi_{r+1} psi_r psi_{r+1} e(i)` for `(i_r, i_{r+1}, i_{r+2}) = (a, b, c)`.
pub fn braid_case(a: Residue, b: Residue, c: Residue, rank: LieRank) -> BraidCase {
    let ell = rank.ell();
    let one_zero_one = a.0 == 1 && b.0 == 0 && c.0 == 1;
    let top = ell.is_some_and(|l| a.0 + 1 == l && b.0 == l && c.0 + 1 == l);
    if one_zero_one || top {
        BraidCase::Polynomial
    } else if a == c && a.0.abs_diff(b.0) == 1 && !rank.is_endpoint(b) {
        BraidCase::Unit
    } else {
        BraidCase::Plain
    }
}

/// Every relation family attached to `e(i)`. Orthogonality is listed against `others`.
pub fn relations_at<'a>(
    i: &ResidueSequence,
    w: &WeightVector,
    rank: LieRank,
    others: impl IntoIterator<Item = &'a ResidueSequence>,
) -> Vec<RelationInstance> {
    use Letter::{Psi, X};
    let n = i.len();
    let e = Letter::E(i.clone());
    let mut out = Vec::new();
    let mut push = |tag: RelationTag, terms: Vec<GenWord>| {
        out.push(RelationInstance { tag, idempotent: Some(i.clone()), terms });
    };
    let with_e = |mut letters: Vec<Letter>| {
        letters.push(e.clone());
        letters
    };

    push(RelationTag::IdempotentSquare, vec![GenWord::new(1, vec![e.clone(), e.clone()]), GenWord::new(-1, vec![e.clone()])]);
    for j in others {
        if j != i {
            push(RelationTag::IdempotentOrthogonal { other: j.clone() }, vec![GenWord::new(1, vec![Letter::E(j.clone()), e.clone()])]);
        }
    }
    for r in 1..=n {
        push(RelationTag::XIdempotent { r }, vec![GenWord::new(1, with_e(vec![X(r)])), GenWord::new(-1, with_e(vec![e.clone(), X(r)]))]);
    }
    for r in 1..n {
        push(
            RelationTag::PsiIdempotent { r },
            vec![GenWord::new(1, with_e(vec![Psi(r)])), GenWord::new(-1, with_e(vec![Letter::E(i.swap(r)), Psi(r)]))],
        );
    }
    for r in 1..=n {
        for s in r + 1..=n {
            push(
                RelationTag::XCommute { r, s },
                vec![GenWord::new(1, with_e(vec![X(r), X(s)])), GenWord::new(-1, with_e(vec![X(s), X(r)]))],
            );
        }
    }
    for r in 1..n {
        for s in (1..=n).filter(|&s| s != r && s != r + 1) {
            push(
                RelationTag::PsiXCommute { r, s },
                vec![GenWord::new(1, with_e(vec![Psi(r), X(s)])), GenWord::new(-1, with_e(vec![X(s), Psi(r)]))],
            );
        }
        for s in r + 2..n {
            push(
                RelationTag::PsiCommute { r, s },
                vec![GenWord::new(1, with_e(vec![Psi(r), Psi(s)])), GenWord::new(-1, with_e(vec![Psi(s), Psi(r)]))],
            );
        }
    }
    for r in 1..n {
        let delta = i.at(r) == i.at(r + 1);
        let mut left = vec![GenWord::new(1, with_e(vec![X(r), Psi(r)])), GenWord::new(-1, with_e(vec![Psi(r), X(r + 1)]))];
        let mut right = vec![GenWord::new(1, with_e(vec![X(r + 1), Psi(r)])), GenWord::new(-1, with_e(vec![Psi(r), X(r)]))];
        if delta {
            left.push(GenWord::new(1, vec![e.clone()]));
            right.push(GenWord::new(-1, vec![e.clone()]));
        }
        push(RelationTag::XPsiLeft { r }, left);
        push(RelationTag::XPsiRight { r }, right);
    }
    for r in 1..n {
        let case = quadratic_case(i.at(r), i.at(r + 1), rank);
        let mut terms = vec![GenWord::new(1, with_e(vec![Psi(r), Psi(r)]))];
        match case {
            QuadraticCase::LongShort => {
                terms.push(GenWord::new(-1, with_e(vec![X(r)])));
                terms.push(GenWord::new(-1, with_e(vec![X(r + 1), X(r + 1)])));
            }
            QuadraticCase::ShortLong => {
                terms.push(GenWord::new(-1, with_e(vec![X(r), X(r)])));
                terms.push(GenWord::new(-1, with_e(vec![X(r + 1)])));
            }
            QuadraticCase::Short => {
                terms.push(GenWord::new(-1, with_e(vec![X(r)])));
                terms.push(GenWord::new(-1, with_e(vec![X(r + 1)])));
            }
            QuadraticCase::Equal => {}
            QuadraticCase::Distant => terms.push(GenWord::new(-1, vec![e.clone()])),
        }
        push(RelationTag::Quadratic { r, case }, terms);
    }
    for r in 1..n.saturating_sub(1) {
        let case = braid_case(i.at(r), i.at(r + 1), i.at(r + 2), rank);
        let mut terms =
            vec![GenWord::new(1, with_e(vec![Psi(r + 1), Psi(r), Psi(r + 1)])), GenWord::new(-1, with_e(vec![Psi(r), Psi(r + 1), Psi(r)]))];
        match case {
            BraidCase::Polynomial => {
                terms.push(GenWord::new(-1, with_e(vec![X(r)])));
                terms.push(GenWord::new(-1, with_e(vec![X(r + 2)])));
            }
            BraidCase::Unit => terms.push(GenWord::new(-1, vec![e.clone()])),
            BraidCase::Plain => {}
        }
        push(RelationTag::Braid { r, case }, terms);
    }
    if n >= 1 {
        let exponent = weight_pairing(w, i.at(1));
        push(RelationTag::Cyclotomic { exponent }, vec![GenWord::new(1, with_e(vec![X(1); exponent as usize]))]);
    }
    out
}

/// The relations of `R^Lambda_n` on a finite support, generated lazily per idempotent.
#[derive(Debug, Clone)]
pub struct RelationSet {
    pub n: usize,
    pub weight: WeightVector,
    pub rank: LieRank,
    pub support: Vec<ResidueSequence>,
}

impl RelationSet {
    pub fn new(n: usize, weight: WeightVector, rank: LieRank, support: impl IntoIterator<Item = ResidueSequence>) -> Result<Self> {
        let support: BTreeSet<ResidueSequence> = support.into_iter().collect();
        for i in &support {
            if i.len() != n || !i.in_rank(rank) {
                return Err(KlrError::InvalidSupport(format!("({i}) is not a residue sequence of length {n} for ell = {rank}")));
            }
        }
        Ok(RelationSet { n, weight, rank, support: support.into_iter().collect() })
    }

    pub fn completeness(&self) -> RelationInstance {
        let mut terms: Vec<GenWord> = self.support.iter().map(|i| GenWord::new(1, vec![Letter::E(i.clone())])).collect();
        terms.push(GenWord::new(-1, Vec::new()));
        RelationInstance { tag: RelationTag::Completeness, idempotent: None, terms }
    }

    pub fn at(&self, i: &ResidueSequence) -> Vec<RelationInstance> {
        relations_at(i, &self.weight, self.rank, &self.support)
    }

    pub fn iter(&self) -> impl Iterator<Item = RelationInstance> + '_ {
        std::iter::once(self.completeness()).chain(self.support.iter().flat_map(move |i| self.at(i)))
    }

    pub fn count(&self) -> usize {
        self.iter().count()
    }
}

/// Eager list of every relation on `support`.
pub fn instantiate_relations(
    n: usize,
    w: &WeightVector,
    rank: LieRank,
    support: impl IntoIterator<Item = ResidueSequence>,
) -> Result<Vec<RelationInstance>> {
    Ok(RelationSet::new(n, w.clone(), rank, support)?.iter().collect())
}

/// Matrix of a word; the empty word is the identity.
pub fn word_matrix<F: Field>(rep: &Representation<F>, letters: &[Letter]) -> Result<SparseMatrix<F::Elem>> {
    let f = rep.field();
    let mut acc: Option<SparseMatrix<F::Elem>> = None;
    for letter in letters.iter().rev() {
        if acc.as_ref().is_some_and(|a| a.is_zero()) {
            break;
        }
        let m = rep.matrix(letter)?;
        acc = Some(match acc.take() {
            None => m.clone(),
            Some(a) => m.mul(f, &a),
        });
    }
    Ok(acc.unwrap_or_else(|| SparseMatrix::identity(f, rep.dim())))
}

/// Matrix of `sum c_k w_k` in `rep`.
pub fn evaluate<F: Field>(rep: &Representation<F>, rel: &RelationInstance) -> Result<SparseMatrix<F::Elem>> {
    let f = rep.field();
    let mut total = SparseMatrix::zero(rep.dim(), rep.dim());
    for term in &rel.terms {
        let value = word_matrix(rep, &term.letters)?;
        total = total.add_scaled(f, &f.from_i64(term.coeff), &value);
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub tag: RelationTag,
    pub idempotent: Option<ResidueSequence>,
    pub relation: String,
    pub residual_nonzeros: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates every relation exactly; the report lists each relation whose matrix is nonzero.
pub fn verify_relations<F: Field>(
    rep: &Representation<F>,
    rels: impl IntoParallelIterator<Item = RelationInstance>,
) -> Result<VerificationReport> {
    let results: Vec<Result<Option<Violation>>> = rels
        .into_par_iter()
        .map(|rel| {
            let m = evaluate(rep, &rel)?;
            Ok((!m.is_zero()).then(|| Violation {
                relation: rel.to_string(),
                residual_nonzeros: m.nnz(),
                tag: rel.tag,
                idempotent: rel.idempotent,
            }))
        })
        .collect();
    let checked = results.len();
    let mut violations = Vec::new();
    for r in results {
        if let Some(v) = r? {
            violations.push(v);
        }
    }
    Ok(VerificationReport { checked, violations })
}

/// Checks `rep` against every defining relation of `R^Lambda_n` on its own support.
pub fn verify_representation<F: Field>(rep: &Representation<F>, w: &WeightVector, rank: LieRank) -> Result<VerificationReport> {
    let set = RelationSet::new(rep.n(), w.clone(), rank, rep.support().cloned())?;
    let rels: Vec<RelationInstance> = std::iter::once(set.completeness()).collect();
    let mut report = verify_relations(rep, rels)?;
    let per_idempotent: Vec<Result<VerificationReport>> = set.support.par_iter().map(|i| verify_relations(rep, set.at(i))).collect();
    for r in per_idempotent {
        let r = r?;
        report.checked += r.checked;
        report.violations.extend(r.violations);
    }
    Ok(report)
}

/// Degree of a word ending in `e(i)`; `None` when the word is zero for residue reasons.
pub fn word_degree(letters: &[Letter], rank: LieRank) -> Option<i32> {
    let (Letter::E(start), rest) = letters.split_last()? else {
        return None;
    };
    let mut seq = start.clone();
    let mut deg = 0;
    for letter in rest.iter().rev() {
        match letter {
            Letter::E(j) => {
                if *j != seq {
                    return None;
                }
            }
            Letter::X(r) => deg += bilinear_form(seq.at(*r), seq.at(*r), rank),
            Letter::Psi(r) => {
                deg -= bilinear_form(seq.at(*r), seq.at(*r + 1), rank);
                seq = seq.swap(*r);
            }
        }
    }
    Some(deg)
}

/// Relations whose nonzero terms do not all have the same degree.
pub fn homogeneity_check<'a>(rels: impl IntoIterator<Item = &'a RelationInstance>, rank: LieRank) -> (bool, Vec<RelationInstance>) {
    let offending: Vec<RelationInstance> = rels
        .into_iter()
        .filter(|rel| rel.tag != RelationTag::Completeness)
        .filter(|rel| {
            let degrees: BTreeSet<i32> = rel.terms.iter().filter_map(|t| word_degree(&t.letters, rank)).collect();
            degrees.len() > 1
        })
        .cloned()
        .collect();
    (offending.is_empty(), offending)
}
