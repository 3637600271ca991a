use std::fmt;

use serde::{Deserialize, Serialize};

use super::multipartition::{lex_key, rows_dominate, Multipartition, Node};
use super::sequences::ResidueSequence;
use crate::error::{KlrError, Result};
use crate::root_data::{LieRank, Multicharge};

/// A bijective filling of `[shape]` by `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TableauRepr", into = "TableauRepr")]
pub struct Tableau {
    shape: Multipartition,
    /// `rows[comp][row][col]`, 0-based indices.
    rows: Vec<Vec<Vec<usize>>>,
    /// `positions[m - 1]` is the node holding `m`.
    positions: Vec<Node>,
}

#[derive(Serialize, Deserialize)]
struct TableauRepr {
    shape: Multipartition,
    rows: Vec<Vec<Vec<usize>>>,
}

impl TryFrom<TableauRepr> for Tableau {
    type Error = KlrError;
    fn try_from(r: TableauRepr) -> Result<Self> {
        Tableau::from_rows(r.rows).and_then(|t| {
            if t.shape == r.shape {
                Ok(t)
            } else {
                Err(KlrError::Parse(format!("rows do not have shape {}", r.shape)))
            }
        })
    }
}

impl From<Tableau> for TableauRepr {
    fn from(t: Tableau) -> Self {
        TableauRepr { shape: t.shape, rows: t.rows }
    }
}

impl Tableau {
    /// Builds a tableau from its rows; the shape is read off the row lengths.
    pub fn from_rows(rows: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let shape = Multipartition::new(rows.iter().map(|c| c.iter().map(Vec::len).collect()).collect())?;
        let n = shape.size();
        let mut positions = vec![None; n];
        for (t, comp) in rows.iter().enumerate() {
            for (r, row) in comp.iter().enumerate() {
                for (c, &m) in row.iter().enumerate() {
                    if m == 0 || m > n || positions[m - 1].is_some() {
                        return Err(KlrError::Parse(format!("filling is not a bijection onto 1..={n}")));
                    }
                    positions[m - 1] = Some(Node::new(r + 1, c + 1, t + 1));
                }
            }
        }
        let positions = positions.into_iter().map(|p| p.expect("bijection checked")).collect();
        Ok(Tableau { shape, rows, positions })
    }

    fn from_positions(shape: &Multipartition, positions: Vec<Node>) -> Self {
        let mut rows: Vec<Vec<Vec<usize>>> = shape.components().iter().map(|c| c.iter().map(|&len| vec![0; len]).collect()).collect();
        for (m, node) in positions.iter().enumerate() {
            rows[node.comp - 1][node.row - 1][node.col - 1] = m + 1;
        }
        Tableau { shape: shape.clone(), rows, positions }
    }

    /// `t^lambda`: rows filled left to right, top to bottom, components in order.
    pub fn initial(shape: &Multipartition) -> Self {
        Tableau::from_positions(shape, shape.nodes())
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.positions.len()
    }

    pub fn rows(&self) -> &[Vec<Vec<usize>>] {
        &self.rows
    }

    /// The node holding `m` (1-based).
    pub fn node_of(&self, m: usize) -> Node {
        self.positions[m - 1]
    }

    pub fn entry(&self, node: Node) -> Option<usize> {
        self.rows.get(node.comp.checked_sub(1)?)?.get(node.row.checked_sub(1)?)?.get(node.col.checked_sub(1)?).copied()
    }

    pub fn is_row_strict(&self) -> bool {
        self.rows.iter().flatten().all(|row| row.windows(2).all(|w| w[0] < w[1]))
    }

    pub fn is_standard(&self) -> bool {
        self.is_row_strict()
            && self.rows.iter().all(|comp| comp.windows(2).all(|pair| pair[1].iter().zip(&pair[0]).all(|(below, above)| above < below)))
    }

    pub fn residue_sequence(&self, kappa: &Multicharge, rank: LieRank) -> ResidueSequence {
        ResidueSequence::new(self.positions.iter().map(|&a| super::residue(a, kappa, rank)).collect())
    }

    /// Row lengths of `t↓m`; a multipartition when `t` is standard.
    pub fn restriction_rows(&self, m: usize) -> Vec<Vec<usize>> {
        self.rows.iter().map(|comp| comp.iter().map(|row| row.iter().filter(|&&e| e <= m).count()).collect()).collect()
    }

    /// `s_r t`: entries `r` and `r + 1` exchanged.
    pub fn swap(&self, r: usize) -> Tableau {
        let mut positions = self.positions.clone();
        positions.swap(r - 1, r);
        Tableau::from_positions(&self.shape, positions)
    }

    /// `w t` for a permutation in one-line notation (`w[m-1] = w(m)`).
    pub fn permute(&self, w: &[usize]) -> Tableau {
        let mut positions = self.positions.clone();
        for (m, node) in self.positions.iter().enumerate() {
            positions[w[m] - 1] = *node;
        }
        Tableau::from_positions(&self.shape, positions)
    }

    /// Key whose descending order is the canonical order of tableaux of one shape.
    fn order_key(&self) -> Vec<usize> {
        let pad = self.shape.components().iter().map(Vec::len).max().unwrap_or(0);
        (1..=self.size()).flat_map(|m| lex_key(&self.restriction_rows(m), pad)).collect()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .rows
            .iter()
            .map(|comp| {
                if comp.is_empty() {
                    "-".to_string()
                } else {
                    comp.iter().map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join("/")
                }
            })
            .collect();
        write!(f, "{}", comps.join("|"))
    }
}

fn fill_standard(shape: &Multipartition, m: usize, current: &mut Vec<Node>, filled: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
    if m > shape.size() {
        out.push(Tableau::from_positions(shape, current.clone()));
        return;
    }
    for (t, comp) in shape.components().iter().enumerate() {
        for (r, &len) in comp.iter().enumerate() {
            let c = filled[t][r];
            let above_ok = r == 0 || filled[t][r - 1] > c;
            if c < len && above_ok {
                filled[t][r] += 1;
                current.push(Node::new(r + 1, c + 1, t + 1));
                fill_standard(shape, m + 1, current, filled, out);
                current.pop();
                filled[t][r] -= 1;
            }
        }
    }
}

/// All standard tableaux of shape `lambda`, most dominant first (descending lexicographic
/// order of the restriction shapes).
pub fn enumerate_standard(lambda: &Multipartition) -> Vec<Tableau> {
    let mut filled: Vec<Vec<usize>> = lambda.components().iter().map(|c| vec![0; c.len()]).collect();
    let mut out = Vec::new();
    fill_standard(lambda, 1, &mut Vec::new(), &mut filled, &mut out);
    out.sort_by_cached_key(|t| std::cmp::Reverse(t.order_key()));
    out
}

/// `s ⊵ t`: every restriction of `s` dominates the corresponding restriction of `t`.
pub fn tableau_dominates(s: &Tableau, t: &Tableau) -> Result<bool> {
    if s.shape != t.shape {
        return Err(KlrError::SizeMismatch(format!("tableaux of shapes {} and {}", s.shape, t.shape)));
    }
    Ok((1..=s.size()).all(|m| rows_dominate(&s.restriction_rows(m), &t.restriction_rows(m))))
}

/// The unique standard tableau dominated by every standard tableau of its shape.
pub fn least_dominant(lambda: &Multipartition) -> Result<Tableau> {
    let all = enumerate_standard(lambda);
    let least: Vec<&Tableau> = all.iter().filter(|t| all.iter().all(|s| tableau_dominates(s, t).expect("same shape"))).collect();
    match least.as_slice() {
        [t] => Ok((*t).clone()),
        _ => Err(KlrError::AmbiguousMinimum),
    }
}

/// `w^t` together with its leftmost-descent reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauWord {
    /// One-line notation, `permutation[m-1] = w(m)`.
    pub permutation: Vec<usize>,
    /// `w = s_{word[0]} s_{word[1]} ...`.
    pub word: Vec<usize>,
}

pub fn inversions(w: &[usize]) -> usize {
    (0..w.len()).map(|a| (a + 1..w.len()).filter(|&b| w[a] > w[b]).count()).sum()
}

/// Repeatedly strips the smallest left descent: `w = s_r (s_r w)` with `l(s_r w) < l(w)`.
pub fn leftmost_descent_word(w: &[usize]) -> Vec<usize> {
    let n = w.len();
    let mut inv = vec![0; n];
    for (m, &v) in w.iter().enumerate() {
        inv[v - 1] = m;
    }
    let mut word = Vec::new();
    while let Some(r) = (0..n.saturating_sub(1)).find(|&r| inv[r] > inv[r + 1]) {
        word.push(r + 1);
        inv.swap(r, r + 1);
    }
    word
}

/// Composes `s_{word[0]} ... s_{word[k]}` into one-line notation.
pub fn word_to_permutation(word: &[usize], n: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (1..=n).collect();
    for &r in word.iter().rev() {
        for v in w.iter_mut() {
            if *v == r {
                *v = r + 1;
            } else if *v == r + 1 {
                *v = r;
            }
        }
    }
    w
}

pub fn tableau_word(t: &Tableau) -> TableauWord {
    let initial = t.shape.nodes();
    let permutation: Vec<usize> = initial.iter().map(|&a| t.entry(a).expect("node of shape")).collect();
    let word = leftmost_descent_word(&permutation);
    TableauWord { permutation, word }
}

/// `(r+1, c, t)` lies in the diagram.
pub fn is_garnir_node(lambda: &Multipartition, a: Node) -> bool {
    lambda.contains(a) && lambda.contains(Node::new(a.row + 1, a.col, a.comp))
}

pub fn garnir_nodes(lambda: &Multipartition) -> Vec<Node> {
    lambda.nodes().into_iter().filter(|&a| is_garnir_node(lambda, a)).collect()
}

/// The belt `B^A` listed as row `r+1` left to right, then row `r` left to right.
pub fn garnir_belt(lambda: &Multipartition, a: Node) -> Result<Vec<Node>> {
    if !is_garnir_node(lambda, a) {
        return Err(KlrError::NotGarnir(a.to_string()));
    }
    let lower = (1..=a.col).map(|c| Node::new(a.row + 1, c, a.comp));
    let upper = (a.col..=lambda.part(a.comp, a.row)).map(|c| Node::new(a.row, c, a.comp));
    Ok(lower.chain(upper).collect())
}

/// `g^A`: agrees with `t^lambda` off the belt; the belt entries, sorted, run along row
/// `r+1` and then row `r`.
pub fn garnir_tableau(lambda: &Multipartition, a: Node) -> Result<Tableau> {
    let belt = garnir_belt(lambda, a)?;
    let initial = Tableau::initial(lambda);
    let mut values: Vec<usize> = belt.iter().map(|&b| initial.entry(b).expect("belt node")).collect();
    values.sort_unstable();
    let mut positions = initial.positions.clone();
    for (node, v) in belt.iter().zip(values) {
        positions[v - 1] = *node;
    }
    Ok(Tableau::from_positions(lambda, positions))
}

fn fill_row_strict(
    shape: &Multipartition,
    target: &[crate::root_data::Residue],
    kappa: &Multicharge,
    rank: LieRank,
    current: &mut Vec<Node>,
    filled: &mut Vec<Vec<usize>>,
    out: &mut Vec<Tableau>,
) {
    let m = current.len();
    if m == target.len() {
        out.push(Tableau::from_positions(shape, current.clone()));
        return;
    }
    for (t, comp) in shape.components().iter().enumerate() {
        for (r, &len) in comp.iter().enumerate() {
            let c = filled[t][r];
            if c == len {
                continue;
            }
            let node = Node::new(r + 1, c + 1, t + 1);
            if super::residue(node, kappa, rank) != target[m] {
                continue;
            }
            filled[t][r] += 1;
            current.push(node);
            fill_row_strict(shape, target, kappa, rank, current, filled, out);
            current.pop();
            filled[t][r] -= 1;
        }
    }
}

/// Row-strict `lambda`-tableaux whose residue sequence is `target`.
pub fn row_strict_with_residues(lambda: &Multipartition, target: &ResidueSequence, kappa: &Multicharge, rank: LieRank) -> Vec<Tableau> {
    if target.len() != lambda.size() {
        return Vec::new();
    }
    let mut filled: Vec<Vec<usize>> = lambda.components().iter().map(|c| vec![0; c.len()]).collect();
    let mut out = Vec::new();
    fill_row_strict(lambda, target.entries(), kappa, rank, &mut Vec::new(), &mut filled, &mut out);
    out
}

/// Row-strict dominance `s ⊵ t` (restrictions compared as compositions).
pub fn row_strict_dominates(s: &Tableau, t: &Tableau) -> bool {
    s.shape == t.shape && (1..=s.size()).all(|m| rows_dominate(&s.restriction_rows(m), &t.restriction_rows(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::multipartition::enumerate_multipartitions;
    use proptest::prelude::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    #[test]
    fn initial_tableaux() {
        assert_eq!(Tableau::initial(&mp("2,1")).rows(), &[vec![vec![1, 2], vec![3]]]);
        assert_eq!(Tableau::initial(&mp("1|1")).rows(), &[vec![vec![1]], vec![vec![2]]]);
        assert_eq!(Tableau::initial(&mp("2|1,1")).rows(), &[vec![vec![1, 2]], vec![vec![3], vec![4]]]);
    }

    #[test]
    fn standard_counts_match_hook_formula() {
        assert_eq!(enumerate_standard(&mp("4")).len(), 1);
        assert_eq!(enumerate_standard(&mp("2,1")).len(), 2);
        assert_eq!(enumerate_standard(&mp("2,1,1")).len(), 3);
        assert_eq!(enumerate_standard(&mp("3,2")).len(), 5);
        assert_eq!(enumerate_standard(&mp("2,2,2")).len(), 5);
        assert_eq!(enumerate_standard(&mp("1|1")).len(), 2);
        assert_eq!(enumerate_standard(&mp("2,1|1")).len(), 8);
    }

    #[test]
    fn residue_sequences_of_initial_tableaux() {
        let k0: Multicharge = "0".parse().unwrap();
        let k1: Multicharge = "1".parse().unwrap();
        let l2 = LieRank::Finite(2);
        assert_eq!(Tableau::initial(&mp("3")).residue_sequence(&k0, l2).to_string(), "0,1,2");
        assert_eq!(Tableau::initial(&mp("2,1,1")).residue_sequence(&k1, l2).to_string(), "1,2,0,1");
        let k14: Multicharge = "1,4".parse().unwrap();
        let seq = Tableau::initial(&mp("8,3,2|5,3,1")).residue_sequence(&k14, LieRank::Finite(3));
        assert!(seq.to_string().starts_with("1,2,3,2,1,0,1,2,"));
    }

    #[test]
    fn word_examples() {
        let lam = mp("2,1");
        let w = tableau_word(&Tableau::initial(&lam));
        assert_eq!(w.permutation, vec![1, 2, 3]);
        assert!(w.word.is_empty());

        let t = Tableau::from_rows(vec![vec![vec![2]], vec![vec![1]]]).unwrap();
        let w = tableau_word(&t);
        assert_eq!(w.permutation, vec![2, 1]);
        assert_eq!(w.word, vec![1]);

        let t = Tableau::initial(&lam).swap(2);
        assert_eq!(tableau_word(&t).word, vec![2]);
    }

    #[test]
    fn garnir_examples() {
        let g = garnir_tableau(&mp("1,1"), Node::new(1, 1, 1)).unwrap();
        assert_eq!(g.rows(), &[vec![vec![2], vec![1]]]);
        let belt = garnir_belt(&mp("2,2"), Node::new(1, 2, 1)).unwrap();
        assert_eq!(belt, vec![Node::new(2, 1, 1), Node::new(2, 2, 1), Node::new(1, 2, 1)]);
        assert!(matches!(garnir_tableau(&mp("2"), Node::new(1, 1, 1)), Err(KlrError::NotGarnir(_))));
        assert!(garnir_nodes(&mp("3|2")).is_empty());
        let g = garnir_tableau(&mp("2,2"), Node::new(1, 2, 1)).unwrap();
        assert_eq!(g.rows(), &[vec![vec![1, 4], vec![2, 3]]]);
        assert!(g.is_row_strict() && !g.is_standard());
    }

    #[test]
    fn tableau_dominance_examples() {
        let lam = mp("2,1");
        let all = enumerate_standard(&lam);
        let initial = Tableau::initial(&lam);
        assert_eq!(all[0], initial);
        for t in &all {
            assert!(tableau_dominates(t, t).unwrap());
            assert!(tableau_dominates(&initial, t).unwrap());
        }
        let column_first = Tableau::from_rows(vec![vec![vec![1, 3], vec![2]]]).unwrap();
        assert_eq!(least_dominant(&lam).unwrap(), column_first);
        assert!(tableau_dominates(&initial, &Tableau::initial(&mp("3"))).is_err());
    }

    #[test]
    fn least_dominant_of_hook_is_column_first() {
        let t = least_dominant(&mp("2,1,1")).unwrap();
        assert_eq!(t.rows(), &[vec![vec![1, 4], vec![2], vec![3]]]);
        let t = least_dominant(&mp("1|1")).unwrap();
        assert_eq!(t.rows(), &[vec![vec![2]], vec![vec![1]]]);
    }

    #[test]
    fn words_reconstruct_tableaux_at_desk_scale() {
        for level in 1..=2 {
            for n in 1..=5 {
                for lam in enumerate_multipartitions(n, level) {
                    let initial = Tableau::initial(&lam);
                    for t in enumerate_standard(&lam) {
                        assert!(t.is_standard());
                        let w = tableau_word(&t);
                        assert_eq!(initial.permute(&w.permutation), t);
                        assert_eq!(w.word.len(), inversions(&w.permutation));
                        assert_eq!(word_to_permutation(&w.word, n), w.permutation);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn leftmost_word_is_reduced(perm in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle()) {
            let word = leftmost_descent_word(&perm);
            prop_assert_eq!(word.len(), inversions(&perm));
            prop_assert_eq!(word_to_permutation(&word, 6), perm);
        }
    }
}
