//! Specht modules from their cyclic presentation, by linear vector enumeration, and the
//! one-dimensional non-split submodules that certify non-semisimplicity.
//!
//! Vectors are created as images of generators and identified through linear relations,
//! in the manner of coset enumeration. A coincidence always retires the newest vector it
//! involves, replacing it by older ones, and the images it carried become new equations.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::criterion::{is_semisimple, ss2_check, Ss2Side, Witness};
use crate::error::{KlrError, Result};
use crate::exactla::{
    equivariant_retraction_exists, inverse, is_invariant, Field, Retraction, RetractionCertificate, SparseMatrix, Subspace,
};
use crate::presentation::{relations_at, verify_representation, Letter, VerificationReport};
use crate::repmodels::Representation;
use crate::root_data::{LieRank, Multicharge};
use crate::tableaux::{
    enumerate_standard, garnir_nodes, garnir_tableau, least_dominant, residue_sequences_of_level, row_strict_dominates,
    row_strict_with_residues, tableau_dominates, tableau_word, Multipartition, Node, ResidueSequence, Tableau,
};

/// No row-strict tableau strictly dominating `g^A` shares its residue sequence, for every
/// Garnir node `A`; the Garnir relation is then the single word `psi_{w^{g^A}}`.
pub fn garnir_simple(lambda: &Multipartition, kappa: &Multicharge, rank: LieRank) -> bool {
    garnir_nodes(lambda).into_iter().all(|a| {
        let g = garnir_tableau(lambda, a).expect("Garnir node");
        let target = g.residue_sequence(kappa, rank);
        row_strict_with_residues(lambda, &target, kappa, rank).iter().all(|s| s == &g || !row_strict_dominates(s, &g))
    })
}

/// The cyclic presentation of `S^lambda` on `z`.
#[derive(Debug, Clone)]
pub struct SpechtPresentation {
    pub shape: Multipartition,
    pub charge: Multicharge,
    pub rank: LieRank,
    /// `i^lambda`, the weight of `z`.
    pub weight: ResidueSequence,
    /// `r` with `r`, `r + 1` in one row of `t^lambda`.
    pub row_pairs: Vec<usize>,
    /// Garnir nodes with the reduced word of `w^{g^A}`.
    pub garnir: Vec<(Node, Vec<usize>)>,
}

impl SpechtPresentation {
    pub fn new(shape: &Multipartition, charge: &Multicharge, rank: LieRank) -> Result<Self> {
        if shape.level() != charge.level() {
            return Err(KlrError::SizeMismatch(format!(
                "shape {shape} has level {}, charge {charge} has level {}",
                shape.level(),
                charge.level()
            )));
        }
        if shape.size() == 0 {
            return Err(KlrError::Precondition("empty shape".into()));
        }
        let initial = Tableau::initial(shape);
        let nodes = shape.nodes();
        let row_pairs = (1..shape.size())
            .filter(|&r| {
                let (a, b) = (nodes[r - 1], nodes[r]);
                a.comp == b.comp && a.row == b.row
            })
            .collect();
        let garnir =
            garnir_nodes(shape).into_iter().map(|a| (a, tableau_word(&garnir_tableau(shape, a).expect("Garnir node")).word)).collect();
        Ok(SpechtPresentation {
            shape: shape.clone(),
            charge: charge.clone(),
            rank,
            weight: initial.residue_sequence(charge, rank),
            row_pairs,
            garnir,
        })
    }

    pub fn n(&self) -> usize {
        self.shape.size()
    }

    /// The presentation relations as words applied to `z`.
    pub fn annihilator_words(&self) -> Vec<Vec<Letter>> {
        let mut out: Vec<Vec<Letter>> = (1..=self.n()).map(|r| vec![Letter::X(r)]).collect();
        out.extend(self.row_pairs.iter().map(|&r| vec![Letter::Psi(r)]));
        out.extend(self.garnir.iter().map(|(_, w)| w.iter().map(|&r| Letter::Psi(r)).collect()));
        out
    }
}

type Comb<E> = BTreeMap<usize, E>;

enum Pending<E> {
    Zero(Comb<E>),
    /// `g` applied to `source` must equal `image`.
    Image {
        g: usize,
        source: Comb<E>,
        image: Comb<E>,
    },
}

struct Enumerator<'a, F: Field> {
    f: F,
    n: usize,
    allowed: &'a BTreeSet<ResidueSequence>,
    weights: Vec<ResidueSequence>,
    replacement: Vec<Option<Comb<F::Elem>>>,
    /// Generator slots: `0..n` are `x_1..x_n`, then `psi_1..psi_{n-1}`.
    images: Vec<Vec<Option<Comb<F::Elem>>>>,
    pending: VecDeque<Pending<F::Elem>>,
    cap: usize,
}

impl<'a, F: Field> Enumerator<'a, F> {
    fn slots(&self) -> usize {
        2 * self.n - 1
    }

    fn slot(&self, letter: &Letter) -> Option<usize> {
        match letter {
            Letter::X(r) => Some(r - 1),
            Letter::Psi(r) => Some(self.n + r - 1),
            Letter::E(_) => None,
        }
    }

    fn new_vector(&mut self, weight: ResidueSequence) -> Result<usize> {
        if self.weights.len() >= self.cap {
            return Err(KlrError::NonTermination(self.cap));
        }
        self.weights.push(weight);
        self.replacement.push(None);
        self.images.push(vec![None; self.slots()]);
        Ok(self.weights.len() - 1)
    }

    fn add_into(&self, acc: &mut Comb<F::Elem>, c: &F::Elem, other: &Comb<F::Elem>) {
        for (k, v) in other {
            let entry = acc.entry(*k).or_insert_with(|| self.f.zero());
            *entry = self.f.add(entry, &self.f.mul(c, v));
            if self.f.is_zero(entry) {
                acc.remove(k);
            }
        }
    }

    fn normalize(&self, mut c: Comb<F::Elem>) -> Comb<F::Elem> {
        let mut out = Comb::new();
        while let Some((k, v)) = c.pop_last() {
            match &self.replacement[k] {
                None => {
                    out.insert(k, v);
                }
                Some(rep) => self.add_into(&mut c, &v, rep),
            }
        }
        out
    }

    fn image(&mut self, k: usize, g: usize) -> Result<Comb<F::Elem>> {
        if let Some(img) = &self.images[k][g] {
            return Ok(img.clone());
        }
        let weight = if g < self.n { self.weights[k].clone() } else { self.weights[k].swap(g - self.n + 1) };
        let img = if self.allowed.contains(&weight) {
            let m = self.new_vector(weight)?;
            Comb::from([(m, self.f.one())])
        } else {
            Comb::new()
        };
        self.images[k][g] = Some(img.clone());
        Ok(img)
    }

    fn apply_slot(&mut self, g: usize, c: &Comb<F::Elem>) -> Result<Comb<F::Elem>> {
        let c = self.normalize(c.clone());
        let mut out = Comb::new();
        for (k, v) in &c {
            let img = self.image(*k, g)?;
            self.add_into(&mut out, v, &img);
        }
        Ok(self.normalize(out))
    }

    fn apply_word(&mut self, letters: &[Letter], c: &Comb<F::Elem>) -> Result<Comb<F::Elem>> {
        let mut cur = self.normalize(c.clone());
        for letter in letters.iter().rev() {
            cur = match self.slot(letter) {
                Some(g) => self.apply_slot(g, &cur)?,
                None => {
                    let Letter::E(i) = letter else { unreachable!() };
                    cur.into_iter().filter(|(k, _)| &self.weights[*k] == i).collect()
                }
            };
        }
        Ok(cur)
    }

    fn coincide(&mut self, eq: Comb<F::Elem>) {
        let eq = self.normalize(eq);
        let mut by_weight: BTreeMap<ResidueSequence, Comb<F::Elem>> = BTreeMap::new();
        for (k, v) in eq {
            by_weight.entry(self.weights[k].clone()).or_default().insert(k, v);
        }
        for part in by_weight.into_values() {
            let part = self.normalize(part);
            let Some((&top, c)) = part.last_key_value() else {
                continue;
            };
            let scale = self.f.neg(&self.f.inv(c).expect("nonzero coefficient"));
            let mut rep = Comb::new();
            for (k, v) in part.iter().filter(|(k, _)| **k != top) {
                rep.insert(*k, self.f.mul(&scale, v));
            }
            self.replacement[top] = Some(rep.clone());
            for g in 0..self.slots() {
                if let Some(image) = self.images[top][g].take() {
                    self.pending.push_back(Pending::Image { g, source: rep.clone(), image });
                }
            }
        }
    }

    fn drain(&mut self) -> Result<()> {
        while let Some(p) = self.pending.pop_front() {
            let eq = match p {
                Pending::Zero(eq) => eq,
                Pending::Image { g, source, image } => {
                    let mut lhs = self.apply_slot(g, &source)?;
                    self.add_into(&mut lhs, &self.f.neg(&self.f.one()), &image);
                    lhs
                }
            };
            self.coincide(eq);
        }
        Ok(())
    }

    fn alive(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&k| self.replacement[k].is_none()).collect()
    }
}

/// `S^lambda` in the basis `v^t = psi_{w^t} z`, `t` standard.
#[derive(Debug, Clone)]
pub struct SpechtModule<F: Field> {
    pub presentation: SpechtPresentation,
    pub tableaux: Vec<Tableau>,
    pub rep: Representation<F>,
    pub vectors_defined: usize,
}

/// Nonzero entries breaking the triangular action on the `v^t` basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangularityFailure {
    pub generator: String,
    pub column: String,
    pub row: String,
}

impl<F: Field> SpechtModule<F> {
    /// `x_r v^t` lies in the span of `v^s` with `s` strictly dominating `t` and `i^s = i^t`;
    /// `psi_r v^t` lies in the span of `v^s` with `s` strictly dominating `t` and
    /// `i^s = s_r i^t`, unless `s_r t` is standard and `s_r w^t` is longer than `w^t`.
    pub fn triangularity_failures(&self) -> Vec<TriangularityFailure> {
        let (kappa, rank) = (&self.presentation.charge, self.presentation.rank);
        let weights: Vec<ResidueSequence> = self.tableaux.iter().map(|t| t.residue_sequence(kappa, rank)).collect();
        let lengths: Vec<usize> = self.tableaux.iter().map(|t| tableau_word(t).word.len()).collect();
        let index: HashMap<&Tableau, usize> = self.tableaux.iter().enumerate().map(|(k, t)| (t, k)).collect();
        let strictly = |s: usize, t: usize| s != t && tableau_dominates(&self.tableaux[s], &self.tableaux[t]).expect("same shape");
        let mut out = Vec::new();
        let n = self.presentation.n();
        let mut check =
            |letter: Letter, m: &SparseMatrix<F::Elem>, exempt: &dyn Fn(usize) -> bool, target: &dyn Fn(usize) -> ResidueSequence| {
                for (row, col, _) in m.entries() {
                    if exempt(col) {
                        continue;
                    }
                    if !(strictly(row, col) && weights[row] == target(col)) {
                        out.push(TriangularityFailure {
                            generator: letter.to_string(),
                            column: self.tableaux[col].to_string(),
                            row: self.tableaux[row].to_string(),
                        });
                    }
                }
            };
        for r in 1..=n {
            check(Letter::X(r), self.rep.x(r), &|_| false, &|c| weights[c].clone());
        }
        for r in 1..n {
            let exempt = |c: usize| {
                let s = self.tableaux[c].swap(r);
                s.is_standard() && index.get(&s).is_some_and(|&k| lengths[k] == lengths[c] + 1)
            };
            check(Letter::Psi(r), self.rep.psi(r), &exempt, &|c| weights[c].swap(r));
        }
        out
    }

    /// Presentation relations that fail on `z = v^{t^lambda}`.
    pub fn presentation_failures(&self) -> Result<Vec<String>> {
        let z = self.tableaux.iter().position(|t| t == &Tableau::initial(&self.presentation.shape)).expect("initial tableau is standard");
        let f = self.rep.field();
        let mut out = Vec::new();
        for word in self.presentation.annihilator_words() {
            let m = crate::presentation::word_matrix(&self.rep, &word)?;
            if m.entries().any(|(_, c, _)| c == z) {
                let w: Vec<String> = word.iter().map(Letter::to_string).collect();
                out.push(format!("{} z != 0", w.join(" ")));
            }
        }
        if f.is_zero(&self.rep.idempotent(&self.presentation.weight).get(f, z, z)) {
            out.push(format!("e({}) z != z", self.presentation.weight));
        }
        Ok(out)
    }
}

/// Iteration cap for the enumeration: `50 |Std(lambda)| n` vector definitions.
pub fn enumeration_cap(standard: usize, n: usize) -> usize {
    50 * standard * n
}

/// Builds `S^lambda` by vector enumeration and rewrites it in the basis `v^t`.
pub fn build_specht<F: Field>(p: &SpechtPresentation, field: F) -> Result<SpechtModule<F>> {
    if !garnir_simple(&p.shape, &p.charge, p.rank) {
        return Err(KlrError::Precondition(format!("{} has a Garnir node whose relation needs lower-order terms", p.shape)));
    }
    let n = p.n();
    let tableaux = enumerate_standard(&p.shape);
    let bound = tableaux.len();
    let w = p.charge.weight(p.rank);
    let allowed = residue_sequences_of_level(n, &p.charge, p.rank);
    let mut en = Enumerator {
        f: field.clone(),
        n,
        allowed: &allowed,
        weights: Vec::new(),
        replacement: Vec::new(),
        images: Vec::new(),
        pending: VecDeque::new(),
        cap: enumeration_cap(bound, n),
    };
    let z = en.new_vector(p.weight.clone())?;
    let zc = Comb::from([(z, field.one())]);
    for r in 1..=n {
        en.images[z][r - 1] = Some(Comb::new());
    }
    for &r in &p.row_pairs {
        en.images[z][n + r - 1] = Some(Comb::new());
    }
    for (_, word) in &p.garnir {
        let letters: Vec<Letter> = word.iter().map(|&r| Letter::Psi(r)).collect();
        let eq = en.apply_word(&letters, &zc)?;
        en.pending.push_back(Pending::Zero(eq));
    }
    en.drain()?;

    let mut k = 0;
    while k < en.weights.len() {
        if en.replacement[k].is_none() {
            for g in 0..en.slots() {
                en.image(k, g)?;
            }
            let weight = en.weights[k].clone();
            let kc = Comb::from([(k, field.one())]);
            for rel in relations_at(&weight, &w, p.rank, std::iter::empty()) {
                if rel.tag.is_idempotent_bookkeeping() {
                    continue;
                }
                let mut eq = Comb::new();
                for term in &rel.terms {
                    let value = en.apply_word(&term.letters, &kc)?;
                    en.add_into(&mut eq, &field.from_i64(term.coeff), &value);
                }
                en.pending.push_back(Pending::Zero(eq));
                en.drain()?;
                if en.replacement[k].is_some() {
                    break;
                }
            }
        }
        k += 1;
    }

    let alive = en.alive();
    let dim = alive.len();
    if dim > bound {
        return Err(KlrError::ClosureBoundExceeded { bound, reached: dim });
    }
    let position: HashMap<usize, usize> = alive.iter().enumerate().map(|(a, &k)| (k, a)).collect();
    let to_dense = |c: &Comb<F::Elem>| -> Vec<F::Elem> {
        let mut v = vec![field.zero(); dim];
        for (k, x) in c {
            v[position[k]] = x.clone();
        }
        v
    };

    // Columns of `basis` are the vectors v^t in enumeration coordinates.
    let mut columns = Vec::with_capacity(bound);
    for t in &tableaux {
        let letters: Vec<Letter> = tableau_word(t).word.iter().map(|&r| Letter::Psi(r)).collect();
        let c = en.apply_word(&letters, &zc)?;
        columns.push(to_dense(&c));
    }
    if en.alive().len() != dim {
        return Err(KlrError::WitnessFailed("enumeration reopened while reading off v^t".into()));
    }
    let matrix: Vec<Vec<F::Elem>> = (0..dim).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let inv = if dim == bound { inverse(&field, &matrix) } else { None };
    let Some(inv) = inv else {
        let rank = Subspace::span(field.clone(), dim, columns.clone()).dim();
        return Err(KlrError::WitnessFailed(format!(
            "the vectors v^t span {rank} dimensions in a module of dimension {dim}; {bound} standard tableaux"
        )));
    };
    let basis = SparseMatrix::from_dense(&field, &matrix, bound);
    let inv = SparseMatrix::from_dense(&field, &inv, bound);
    let action = |g: usize, en: &mut Enumerator<F>| -> Result<SparseMatrix<F::Elem>> {
        let mut triples = Vec::new();
        for (a, &k) in alive.iter().enumerate() {
            let img = en.apply_slot(g, &Comb::from([(k, field.one())]))?;
            for (j, x) in img {
                triples.push((position[&j], a, x));
            }
        }
        let m = SparseMatrix::from_triples(&field, dim, dim, triples);
        Ok(inv.mul(&field, &m.mul(&field, &basis)))
    };
    let x = (0..n).map(|g| action(g, &mut en)).collect::<Result<Vec<_>>>()?;
    let psi = (n..2 * n - 1).map(|g| action(g, &mut en)).collect::<Result<Vec<_>>>()?;
    if en.alive().len() != dim {
        return Err(KlrError::WitnessFailed("enumeration reopened while reading off the action".into()));
    }
    let weights: Vec<ResidueSequence> = tableaux.iter().map(|t| t.residue_sequence(&p.charge, p.rank)).collect();
    let labels = tableaux.iter().map(Tableau::to_string).collect();
    let rep = Representation::with_weight_basis(field, n, labels, &weights, x, psi)?.with_context(p.rank, p.charge.clone());
    let module = SpechtModule { presentation: p.clone(), tableaux, rep, vectors_defined: en.weights.len() };

    let report = verify_representation(&module.rep, &w, p.rank)?;
    if !report.passed() {
        return Err(KlrError::Unverified(report.violations.len()));
    }
    let failures = module.presentation_failures()?;
    if !failures.is_empty() {
        return Err(KlrError::WitnessFailed(failures.join("; ")));
    }
    Ok(module)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NonsplitCase {
    Ss2Fail,
    Ss1Fail,
}

/// Shape, charge used for the Specht module, and the failing component(s).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonsplitSetup {
    pub case: NonsplitCase,
    pub shape: Multipartition,
    pub charge: Multicharge,
    pub component: usize,
    /// The second component for the SS1 case.
    pub partner: Option<usize>,
}

/// Chooses the shape for a non-split witness, checking the hypotheses of the case.
pub fn nonsplit_setup(case: NonsplitCase, kappa: &Multicharge, n: usize, rank: LieRank) -> Result<NonsplitSetup> {
    let bars = kappa.bar(rank);
    let level = kappa.level();
    let folded = kappa.folded(rank);
    let ell = rank.ell();
    if n < 2 {
        return Err(KlrError::Precondition("non-split witnesses need n > 1".into()));
    }
    match case {
        NonsplitCase::Ss2Fail => {
            if bars.iter().any(|c| c.0 == 0 || ell == Some(c.0)) {
                return Err(KlrError::Precondition("a folded charge is 0 or ell; use the boundary module".into()));
            }
            let (_, witnesses) = ss2_check(kappa, n, rank);
            let Some(Witness::Ss2 { component, charge, side }) = witnesses.into_iter().next() else {
                return Err(KlrError::Precondition("SS2 holds".into()));
            };
            let c = charge.0 as usize;
            let (parts, charge) = match side {
                Ss2Side::Lower => {
                    let mut parts = vec![n - 2 * c];
                    parts.extend(std::iter::repeat_n(1, 2 * c));
                    (parts, folded)
                }
                Ss2Side::Upper => {
                    let l = ell.expect("upper failure needs finite rank") as usize;
                    let d = l - c;
                    let mut parts = vec![n - 2 * d];
                    parts.extend(std::iter::repeat_n(1, 2 * d));
                    let hat = Multicharge::new(bars.iter().map(|b| 2 * l as i64 - b.0 as i64).collect())?;
                    (parts, hat)
                }
            };
            Ok(NonsplitSetup { case, shape: Multipartition::single(level, component, parts)?, charge, component, partner: None })
        }
        NonsplitCase::Ss1Fail => {
            let report = is_semisimple(kappa, n, rank);
            let distinct = bars.iter().collect::<BTreeSet<_>>().len() == level;
            if !report.ss2 || !distinct || report.ss1 {
                return Err(KlrError::Precondition(format!(
                    "needs SS2, distinct folded charges and SS1 failing (SS2: {}, distinct: {distinct}, SS1: {})",
                    report.ss2, report.ss1
                )));
            }
            let mut best: Option<(usize, usize, usize)> = None;
            for j in 0..level {
                for jp in 0..level {
                    let (a, b) = (bars[j].0 as usize, bars[jp].0 as usize);
                    if b > a && b - a < n {
                        let cand = (b - a, j + 1, jp + 1);
                        if best.is_none_or(|x| cand < x) {
                            best = Some(cand);
                        }
                    }
                }
            }
            let (k, j, jp) = best.ok_or_else(|| KlrError::Precondition("no pair of charges within a window".into()))?;
            let mut comps = vec![Vec::new(); level];
            if j < jp {
                comps[j - 1] = vec![1; n - k];
                comps[jp - 1] = vec![1; k];
            } else {
                comps[j - 1] = vec![k];
                comps[jp - 1] = vec![n - k];
            }
            Ok(NonsplitSetup { case, shape: Multipartition::new(comps)?, charge: folded, component: j, partner: Some(jp) })
        }
    }
}

/// A one-dimensional submodule `span(v^t)` of `S^lambda` with no invariant complement.
#[derive(Debug, Clone)]
pub struct NonsplitWitness<F: Field> {
    pub setup: NonsplitSetup,
    pub module: SpechtModule<F>,
    /// Least dominant standard tableau.
    pub tableau: Tableau,
    pub vector: Vec<F::Elem>,
    pub certificate: RetractionCertificate,
    pub verification: VerificationReport,
}

pub fn nonsplit_witness<F: Field>(
    case: NonsplitCase,
    kappa: &Multicharge,
    n: usize,
    rank: LieRank,
    field: F,
) -> Result<NonsplitWitness<F>> {
    let setup = nonsplit_setup(case, kappa, n, rank)?;
    let p = SpechtPresentation::new(&setup.shape, &setup.charge, rank)?;
    let module = build_specht(&p, field.clone())?;
    let tableau = least_dominant(&setup.shape)?;
    let idx = module.tableaux.iter().position(|t| t == &tableau).expect("standard tableau");
    let dim = module.rep.dim();
    let mut vector = vec![field.zero(); dim];
    vector[idx] = field.one();

    for (letter, g) in module.rep.generators() {
        if matches!(letter, Letter::E(_)) {
            continue;
        }
        if g.apply(&field, &vector).iter().any(|x| !field.is_zero(x)) {
            return Err(KlrError::WitnessFailed(format!("{letter} does not kill v^t for t = {tableau}")));
        }
    }
    let line = Subspace::span(field.clone(), dim, [vector.clone()]);
    if !is_invariant(&module.rep, &line) {
        return Err(KlrError::WitnessFailed("span(v^t) is not invariant".into()));
    }
    let certificate = match equivariant_retraction_exists(&module.rep, &line)? {
        Retraction::Obstructed(c) => c,
        Retraction::Exists { .. } => return Err(KlrError::WitnessFailed("span(v^t) is a direct summand".into())),
    };
    let verification = verify_representation(&module.rep, &setup.charge.weight(rank), rank)?;
    Ok(NonsplitWitness { setup, module, tableau, vector, certificate, verification })
}
