//! Type C root data: the index set, the folding map `k -> bar(k)`, weights and the
//! symmetric bilinear form that drives the grading.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KlrError, Result};

/// `ell` in `{2, 3, ...} ∪ {∞}`; the index set is `Z/(ell+1)Z` or `Z_{>=0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum LieRank {
    Finite(u32),
    Infinite,
}

impl LieRank {
    pub fn finite(ell: u32) -> Result<Self> {
        if ell < 2 {
            return Err(KlrError::InvalidRank(format!("ell must be at least 2, got {ell}")));
        }
        Ok(LieRank::Finite(ell))
    }

    pub fn ell(&self) -> Option<u32> {
        match self {
            LieRank::Finite(l) => Some(*l),
            LieRank::Infinite => None,
        }
    }

    /// Number of residues, `ell + 1`, or `None` for the infinite case.
    pub fn num_residues(&self) -> Option<u32> {
        self.ell().map(|l| l + 1)
    }

    pub fn contains(&self, r: Residue) -> bool {
        match self {
            LieRank::Finite(l) => r.0 <= *l,
            LieRank::Infinite => true,
        }
    }

    /// True for the residues whose simple roots are long (`0` and `ell`).
    pub fn is_endpoint(&self, r: Residue) -> bool {
        r.0 == 0 || self.ell() == Some(r.0)
    }
}

impl fmt::Display for LieRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieRank::Finite(l) => write!(f, "{l}"),
            LieRank::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for LieRank {
    type Err = KlrError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(LieRank::Infinite);
        }
        let l: u32 = s.parse().map_err(|_| KlrError::InvalidRank(format!("expected an integer or 'inf', got '{s}'")))?;
        LieRank::finite(l)
    }
}

impl From<LieRank> for String {
    fn from(r: LieRank) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for LieRank {
    type Error = KlrError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// An element of the index set `I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Residue(pub u32);

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The type C fold: `k mod 2ell`, reflected into `{0..ell}`; `|k|` when `ell` is infinite.
pub fn bar_residue(k: i64, rank: LieRank) -> Residue {
    match rank {
        LieRank::Infinite => Residue(k.unsigned_abs() as u32),
        LieRank::Finite(l) => {
            let l = l as i64;
            let m = k.rem_euclid(2 * l);
            Residue(if m <= l { m } else { 2 * l - m } as u32)
        }
    }
}

/// Ordered integer charges `(kappa_1, ..., kappa_l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multicharge(Vec<i64>);

impl Multicharge {
    pub fn new(charges: Vec<i64>) -> Result<Self> {
        if charges.is_empty() {
            return Err(KlrError::Parse("a multicharge needs at least one charge".into()));
        }
        Ok(Multicharge(charges))
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn charges(&self) -> &[i64] {
        &self.0
    }

    /// `kappa_j` for 1-based `j`.
    pub fn charge(&self, j: usize) -> i64 {
        self.0[j - 1]
    }

    /// `(bar(kappa_1), ..., bar(kappa_l))`.
    pub fn bar(&self, rank: LieRank) -> Vec<Residue> {
        self.0.iter().map(|&k| bar_residue(k, rank)).collect()
    }

    /// The multicharge `bar(kappa)` itself, used as a representative for `Lambda_kappa`.
    pub fn folded(&self, rank: LieRank) -> Multicharge {
        Multicharge(self.bar(rank).into_iter().map(|r| r.0 as i64).collect())
    }

    /// The reflected multicharge `(2ell - bar(kappa_1), ...)`; same weight as `kappa`.
    pub fn reflected(&self, rank: LieRank) -> Result<Multicharge> {
        let l = rank.ell().ok_or_else(|| KlrError::Precondition("reflection needs a finite rank".into()))?;
        Ok(Multicharge(self.bar(rank).into_iter().map(|r| 2 * l as i64 - r.0 as i64).collect()))
    }

    /// `Lambda_kappa = Lambda_{bar kappa_1} + ... + Lambda_{bar kappa_l}`.
    pub fn weight(&self, rank: LieRank) -> WeightVector {
        WeightVector::from_residues(self.bar(rank))
    }
}

impl fmt::Display for Multicharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Multicharge {
    type Err = KlrError;

    fn from_str(s: &str) -> Result<Self> {
        let charges = s
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| KlrError::Parse(format!("bad charge '{p}' in '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        Multicharge::new(charges)
    }
}

/// A dominant weight as multiplicities of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct WeightVector {
    multiplicities: BTreeMap<Residue, u32>,
}

impl WeightVector {
    pub fn from_residues(residues: impl IntoIterator<Item = Residue>) -> Self {
        let mut multiplicities = BTreeMap::new();
        for r in residues {
            *multiplicities.entry(r).or_insert(0) += 1;
        }
        WeightVector { multiplicities }
    }

    pub fn level(&self) -> u32 {
        self.multiplicities.values().sum()
    }

    pub fn multiplicities(&self) -> &BTreeMap<Residue, u32> {
        &self.multiplicities
    }

    /// Largest residue with nonzero multiplicity.
    pub fn max_residue(&self) -> Option<Residue> {
        self.multiplicities.keys().next_back().copied()
    }
}

/// `<Lambda, alpha_i^vee>`: the multiplicity of `Lambda_i` in `w`.
pub fn weight_pairing(w: &WeightVector, i: Residue) -> u32 {
    w.multiplicities.get(&i).copied().unwrap_or(0)
}

/// `<Lambda, alpha_i^vee + ... + alpha_{i+k-1}^vee>` with indices mod `ell + 1`.
/// Windows longer than `ell + 1` wrap and count residues more than once.
pub fn interval_coroot_pairing(w: &WeightVector, i: Residue, k: u32, rank: LieRank) -> u32 {
    (0..k)
        .map(|step| {
            let idx = match rank.num_residues() {
                Some(m) => (i.0 + step) % m,
                None => i.0 + step,
            };
            weight_pairing(w, Residue(idx))
        })
        .sum()
}

/// `(alpha_i, alpha_j)`, normalized so that short roots have squared length 2.
pub fn bilinear_form(i: Residue, j: Residue, rank: LieRank) -> i32 {
    if i == j {
        return if rank.is_endpoint(i) { 4 } else { 2 };
    }
    let (lo, hi) = if i.0 < j.0 { (i.0, j.0) } else { (j.0, i.0) };
    if hi - lo != 1 {
        return 0;
    }
    if lo == 0 || rank.ell() == Some(hi) {
        -2
    } else {
        -1
    }
}

/// A generator symbol of the algebra, stripped of its idempotent label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Idempotent,
    /// `x_r`, 1-based.
    X(usize),
    /// `psi_r`, 1-based.
    Psi(usize),
}

/// Degree of `g e(i)`: `deg e(i) = 0`, `deg x_r e(i) = (alpha_{i_r}, alpha_{i_r})` and
/// `deg psi_r e(i) = -(alpha_{i_r}, alpha_{i_{r+1}})`.
pub fn generator_degree(g: Generator, i: &[Residue], rank: LieRank) -> i32 {
    match g {
        Generator::Idempotent => 0,
        Generator::X(r) => bilinear_form(i[r - 1], i[r - 1], rank),
        Generator::Psi(r) => -bilinear_form(i[r - 1], i[r], rank),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(v: u32) -> Residue {
        Residue(v)
    }

    #[test]
    fn bar_examples() {
        let l3 = LieRank::Finite(3);
        assert_eq!(bar_residue(4, l3), r(2));
        assert_eq!(bar_residue(0, l3), r(0));
        assert_eq!(bar_residue(0, LieRank::Infinite), r(0));
        assert_eq!(bar_residue(7, l3), r(1));
        assert_eq!(bar_residue(-3, LieRank::Infinite), r(3));
        assert_eq!(bar_residue(-1, LieRank::Finite(2)), r(1));
    }

    #[test]
    fn rank_parsing() {
        assert_eq!("inf".parse::<LieRank>().unwrap(), LieRank::Infinite);
        assert_eq!("4".parse::<LieRank>().unwrap(), LieRank::Finite(4));
        assert!("1".parse::<LieRank>().is_err());
        assert!("x".parse::<LieRank>().is_err());
    }

    #[test]
    fn pairing_examples() {
        let w11 = WeightVector::from_residues([r(1), r(1)]);
        assert_eq!(weight_pairing(&w11, r(1)), 2);
        let w12 = WeightVector::from_residues([r(1), r(2)]);
        assert_eq!(weight_pairing(&w12, r(0)), 0);
        let kappa: Multicharge = "1,4".parse().unwrap();
        assert_eq!(weight_pairing(&kappa.weight(LieRank::Finite(3)), r(2)), 1);
    }

    #[test]
    fn interval_pairing_examples() {
        let w12 = WeightVector::from_residues([r(1), r(2)]);
        assert_eq!(interval_coroot_pairing(&w12, r(1), 2, LieRank::Finite(4)), 2);
        let w0 = WeightVector::from_residues([r(0)]);
        assert_eq!(interval_coroot_pairing(&w0, r(1), 1, LieRank::Finite(3)), 0);
        let w2 = WeightVector::from_residues([r(2)]);
        assert_eq!(interval_coroot_pairing(&w2, r(3), 3, LieRank::Finite(3)), 0);
        assert_eq!(interval_coroot_pairing(&w2, r(1), 3, LieRank::Finite(3)), 1);
        // a window longer than I wraps onto itself
        let w1 = WeightVector::from_residues([r(1)]);
        assert_eq!(interval_coroot_pairing(&w1, r(0), 5, LieRank::Finite(2)), 2);
    }

    #[test]
    fn form_examples() {
        assert_eq!(bilinear_form(r(0), r(0), LieRank::Finite(3)), 4);
        assert_eq!(bilinear_form(r(3), r(3), LieRank::Finite(3)), 4);
        assert_eq!(bilinear_form(r(1), r(2), LieRank::Finite(4)), -1);
        assert_eq!(bilinear_form(r(0), r(2), LieRank::Finite(3)), 0);
        assert_eq!(bilinear_form(r(0), r(1), LieRank::Finite(3)), -2);
        assert_eq!(bilinear_form(r(2), r(3), LieRank::Finite(3)), -2);
        assert_eq!(bilinear_form(r(0), r(3), LieRank::Finite(3)), 0);
        assert_eq!(bilinear_form(r(5), r(6), LieRank::Infinite), -1);
        assert_eq!(bilinear_form(r(5), r(5), LieRank::Infinite), 2);
    }

    #[test]
    fn multicharge_variants_share_weight() {
        let rank = LieRank::Finite(3);
        let k: Multicharge = "1,4,-2".parse().unwrap();
        assert_eq!(k.folded(rank).charges(), &[1, 2, 2]);
        assert_eq!(k.reflected(rank).unwrap().charges(), &[5, 4, 4]);
        assert_eq!(k.weight(rank), k.reflected(rank).unwrap().weight(rank));
        assert_eq!(k.weight(rank).level(), 3);
    }

    #[test]
    fn degree_examples() {
        let l2 = LieRank::Finite(2);
        let i = [r(0), r(1)];
        assert_eq!(generator_degree(Generator::X(1), &i, l2), 4);
        assert_eq!(generator_degree(Generator::Psi(1), &i, l2), 2);
        assert_eq!(generator_degree(Generator::Idempotent, &i, l2), 0);
        // equal residues: deg x_r + deg psi_r = 0
        let same = [r(1), r(1)];
        assert_eq!(generator_degree(Generator::X(1), &same, l2) + generator_degree(Generator::Psi(1), &same, l2), 0);
    }

    proptest! {
        #[test]
        fn bar_is_idempotent_on_index_set(l in 2u32..9, i in 0u32..9) {
            prop_assume!(i <= l);
            prop_assert_eq!(bar_residue(i as i64, LieRank::Finite(l)), Residue(i));
        }

        #[test]
        fn bar_reflection_symmetry(l in 2u32..9, k in -60i64..60) {
            let rank = LieRank::Finite(l);
            let l = l as i64;
            prop_assert_eq!(bar_residue(k, rank), bar_residue(2 * l - k, rank));
            prop_assert_eq!(bar_residue(k, rank), bar_residue(k + 2 * l, rank));
        }

        #[test]
        fn pairings_sum_to_level(l in 2u32..7, charges in proptest::collection::vec(-20i64..20, 1..5)) {
            let rank = LieRank::Finite(l);
            let w = Multicharge::new(charges.clone()).unwrap().weight(rank);
            let total: u32 = (0..=l).map(|i| weight_pairing(&w, Residue(i))).sum();
            prop_assert_eq!(total as usize, charges.len());
        }

        #[test]
        fn multicharge_text_round_trip(charges in proptest::collection::vec(-50i64..50, 1..6)) {
            let k = Multicharge::new(charges).unwrap();
            prop_assert_eq!(k.to_string().parse::<Multicharge>().unwrap(), k);
        }
    }
}
