use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::multipartition::Multipartition;
use crate::error::{KlrError, Result};
use crate::root_data::{bar_residue, weight_pairing, LieRank, Multicharge, Residue, WeightVector};

/// `(i_1, ..., i_n)`; text form `"i_1,...,i_n"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ResidueSequence(Vec<Residue>);

impl ResidueSequence {
    pub fn new(entries: Vec<Residue>) -> Self {
        ResidueSequence(entries)
    }

    pub fn from_values(values: &[u32]) -> Self {
        ResidueSequence(values.iter().map(|&v| Residue(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Residue] {
        &self.0
    }

    /// `i_r`, 1-based.
    pub fn at(&self, r: usize) -> Residue {
        self.0[r - 1]
    }

    /// Place permutation by `s_r`.
    pub fn swap(&self, r: usize) -> ResidueSequence {
        let mut v = self.0.clone();
        v.swap(r - 1, r);
        ResidueSequence(v)
    }

    pub fn prefix(&self, r: usize) -> ResidueSequence {
        ResidueSequence(self.0[..r].to_vec())
    }

    pub fn in_rank(&self, rank: LieRank) -> bool {
        self.0.iter().all(|&i| rank.contains(i))
    }
}

impl fmt::Display for ResidueSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for ResidueSequence {
    type Err = KlrError;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Ok(ResidueSequence(Vec::new()));
        }
        body.split(',')
            .map(|p| p.trim().parse::<u32>().map(Residue).map_err(|_| KlrError::Parse(format!("bad residue '{p}' in '{s}'"))))
            .collect::<Result<Vec<_>>>()
            .map(ResidueSequence)
    }
}

impl From<ResidueSequence> for String {
    fn from(s: ResidueSequence) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for ResidueSequence {
    type Error = KlrError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

fn grow(
    shape: &Multipartition,
    n: usize,
    kappa: &Multicharge,
    rank: LieRank,
    prefix: &mut Vec<Residue>,
    out: &mut BTreeSet<ResidueSequence>,
) {
    if prefix.len() == n {
        out.insert(ResidueSequence(prefix.clone()));
        return;
    }
    for node in shape.addable_nodes() {
        let next = shape.with_node(node).expect("addable node");
        prefix.push(super::residue(node, kappa, rank));
        grow(&next, n, kappa, rank, prefix, out);
        prefix.pop();
    }
}

/// `I^n_Lambda` by brute force: the residue sequences of every standard tableau of every
/// `l`-multipartition of `n` (each standard tableau is a path of addable nodes from the
/// empty multipartition).
pub fn residue_sequences_of_level(n: usize, kappa: &Multicharge, rank: LieRank) -> BTreeSet<ResidueSequence> {
    let mut out = BTreeSet::new();
    grow(&Multipartition::empty(kappa.level()), n, kappa, rank, &mut Vec::new(), &mut out);
    out
}

/// Largest residue that can occur on a diagram of size `n`: `ell`, or `max(bar kappa) + n`
/// when `ell` is infinite.
pub fn residue_bound(n: usize, kappa: &Multicharge, rank: LieRank) -> u32 {
    match rank.ell() {
        Some(l) => l,
        None => kappa.bar(rank).iter().map(|r| r.0).max().unwrap_or(0) + n as u32,
    }
}

/// Every sequence in `{0..=bound}^n`, lexicographic.
pub fn all_sequences(n: usize, bound: u32) -> impl Iterator<Item = ResidueSequence> {
    let base = bound as u64 + 1;
    let total = base.checked_pow(n as u32).expect("sequence space too large");
    (0..total).map(move |mut code| {
        let mut v = vec![Residue(0); n];
        for slot in v.iter_mut().rev() {
            *slot = Residue((code % base) as u32);
            code /= base;
        }
        ResidueSequence(v)
    })
}

/// The three residue conditions characterising `I^n_Lambda` when both semisimplicity
/// conditions hold. For `ell = 2` the residues `1` and `ell - 1` coincide; two equal
/// `1`s then need a `0` or a `2` between them.
pub fn neighbourres_check(i: &ResidueSequence, w: &WeightVector, rank: LieRank) -> bool {
    let seq = i.entries();
    let Some(&first) = seq.first() else {
        return true;
    };
    if weight_pairing(w, first) == 0 {
        return false;
    }
    let neighbours = |x: Residue| [bar_residue(x.0 as i64 - 1, rank), bar_residue(x.0 as i64 + 1, rank)];
    let ell = rank.ell();
    for r in 1..seq.len() {
        let x = seq[r];
        if weight_pairing(w, x) == 0 {
            let [a, b] = neighbours(x);
            if !seq[..r].contains(&a) && !seq[..r].contains(&b) {
                return false;
            }
        }
        for s in 0..r {
            if seq[s] != x {
                continue;
            }
            let between = &seq[s + 1..r];
            let is_one = x.0 == 1;
            let is_penultimate = ell.is_some_and(|l| x.0 + 1 == l);
            let ok = match (is_one, is_penultimate) {
                (true, true) => between.contains(&Residue(0)) || between.contains(&Residue(2)),
                (true, false) => between.contains(&Residue(0)),
                (false, true) => between.contains(&Residue(ell.expect("finite rank"))),
                (false, false) => neighbours(x).iter().all(|y| between.contains(y)),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}
