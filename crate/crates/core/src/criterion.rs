//! The two residue conditions that decide semisimplicity of `R^Lambda_n`.
//!
//! SS1: every window pairing `<Lambda, alpha_{i,n}^vee>` is at most one.
//! SS2: `(n-1)/2 <= bar(kappa_j) <= ell - (n-1)/2` for every component, compared after
//! doubling so that no half-integer is ever rounded.

use serde::{Deserialize, Serialize};

use crate::root_data::{interval_coroot_pairing, LieRank, Multicharge, Residue, WeightVector};

/// Which side of the SS2 interval a charge falls off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ss2Side {
    /// `bar(kappa_j) < (n-1)/2`.
    Lower,
    /// `bar(kappa_j) > ell - (n-1)/2`.
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Witness {
    Ss1 {
        residue: Residue,
        pairing: u32,
    },
    /// `component` is 1-based.
    Ss2 {
        component: usize,
        charge: Residue,
        side: Ss2Side,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemisimplicityReport {
    pub ell: LieRank,
    pub charge: Multicharge,
    pub n: usize,
    pub ss1: bool,
    pub ss2: bool,
    pub verdict: bool,
    pub witnesses: Vec<Witness>,
    /// Set for `n = 1`, where the verdict reduces to SS1 (`R^Lambda_1` is a product of
    /// truncated polynomial rings `F[x]/(x^m)`).
    pub outside_theorem_range: bool,
}

/// Residues whose length-`n` window pairing exceeds one.
pub fn ss1_check(w: &WeightVector, n: usize, rank: LieRank) -> (bool, Vec<Witness>) {
    assert!(n >= 1, "n must be positive");
    let starts: Vec<Residue> = match rank.ell() {
        Some(l) => (0..=l).map(Residue).collect(),
        // No wrap: only windows meeting a charge can pair nontrivially.
        None => {
            let top = w.max_residue().map_or(0, |r| r.0);
            (0..=top).map(Residue).collect()
        }
    };
    let witnesses: Vec<Witness> = starts
        .into_iter()
        .filter_map(|i| {
            let pairing = interval_coroot_pairing(w, i, n as u32, rank);
            (pairing > 1).then_some(Witness::Ss1 { residue: i, pairing })
        })
        .collect();
    (witnesses.is_empty(), witnesses)
}

pub fn ss2_check(kappa: &Multicharge, n: usize, rank: LieRank) -> (bool, Vec<Witness>) {
    assert!(n >= 1, "n must be positive");
    let twice_low = n as i64 - 1;
    let witnesses: Vec<Witness> = kappa
        .bar(rank)
        .into_iter()
        .enumerate()
        .filter_map(|(j, c)| {
            let doubled = 2 * c.0 as i64;
            let side = if doubled < twice_low {
                Some(Ss2Side::Lower)
            } else {
                rank.ell().filter(|&l| doubled > 2 * l as i64 - twice_low).map(|_| Ss2Side::Upper)
            };
            side.map(|side| Witness::Ss2 { component: j + 1, charge: c, side })
        })
        .collect();
    (witnesses.is_empty(), witnesses)
}

pub fn is_semisimple(kappa: &Multicharge, n: usize, rank: LieRank) -> SemisimplicityReport {
    let (ss1, mut witnesses) = ss1_check(&kappa.weight(rank), n, rank);
    let (ss2, w2) = ss2_check(kappa, n, rank);
    witnesses.extend(w2);
    SemisimplicityReport { ell: rank, charge: kappa.clone(), n, ss1, ss2, verdict: ss1 && ss2, witnesses, outside_theorem_range: n == 1 }
}
