use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KlrError, Result};
use crate::root_data::{bar_residue, LieRank, Multicharge, Residue};

/// A node `(row, col, comp)` of a Young diagram; all coordinates 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
    pub comp: usize,
}

impl Node {
    pub fn new(row: usize, col: usize, comp: usize) -> Self {
        Node { row, col, comp }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.comp)
    }
}

/// `res A = bar(kappa_t + c - r)`.
pub fn residue(node: Node, kappa: &Multicharge, rank: LieRank) -> Residue {
    bar_residue(kappa.charge(node.comp) + node.col as i64 - node.row as i64, rank)
}

/// An `l`-tuple of partitions. Components are stored without trailing zero parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Multipartition {
    components: Vec<Vec<usize>>,
}

impl Multipartition {
    pub fn new(mut components: Vec<Vec<usize>>) -> Result<Self> {
        if components.is_empty() {
            return Err(KlrError::Parse("a multipartition needs at least one component".into()));
        }
        for c in &mut components {
            while c.last() == Some(&0) {
                c.pop();
            }
            if c.windows(2).any(|w| w[0] < w[1]) || c.contains(&0) {
                return Err(KlrError::Parse(format!("parts {c:?} are not weakly decreasing")));
            }
        }
        Ok(Multipartition { components })
    }

    /// The multipartition with a single nonempty component `comp` (1-based).
    pub fn single(level: usize, comp: usize, parts: Vec<usize>) -> Result<Self> {
        let mut components = vec![Vec::new(); level];
        components[comp - 1] = parts;
        Multipartition::new(components)
    }

    pub fn empty(level: usize) -> Self {
        Multipartition { components: vec![Vec::new(); level] }
    }

    pub fn level(&self) -> usize {
        self.components.len()
    }

    pub fn size(&self) -> usize {
        self.components.iter().flatten().sum()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// `lambda^{(comp)}_row`, zero outside the diagram.
    pub fn part(&self, comp: usize, row: usize) -> usize {
        self.components.get(comp - 1).and_then(|c| c.get(row - 1)).copied().unwrap_or(0)
    }

    pub fn contains(&self, node: Node) -> bool {
        node.row >= 1 && node.col >= 1 && node.col <= self.part(node.comp, node.row)
    }

    /// Nodes in the order `t^lambda` fills them: along rows, components in order.
    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::with_capacity(self.size());
        for (t, comp) in self.components.iter().enumerate() {
            for (r, &len) in comp.iter().enumerate() {
                out.extend((1..=len).map(|c| Node::new(r + 1, c, t + 1)));
            }
        }
        out
    }

    /// Addable nodes, row-reading order within each component.
    pub fn addable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (t, comp) in self.components.iter().enumerate() {
            for r in 0..=comp.len() {
                let len = comp.get(r).copied().unwrap_or(0);
                let above = if r == 0 { usize::MAX } else { comp[r - 1] };
                if len < above {
                    out.push(Node::new(r + 1, len + 1, t + 1));
                }
            }
        }
        out
    }

    pub fn with_node(&self, node: Node) -> Result<Multipartition> {
        let mut components = self.components.clone();
        let comp = &mut components[node.comp - 1];
        if node.row == comp.len() + 1 && node.col == 1 {
            comp.push(1);
        } else if node.row <= comp.len() && comp[node.row - 1] + 1 == node.col {
            comp[node.row - 1] += 1;
        } else {
            return Err(KlrError::Precondition(format!("{node} is not addable")));
        }
        Multipartition::new(components)
    }

    /// Row lengths of every component; the shape as a "composition" for dominance checks.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.components.clone()
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| if c.is_empty() { "-".to_string() } else { c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",") })
            .collect();
        write!(f, "{}", comps.join("|"))
    }
}

impl FromStr for Multipartition {
    type Err = KlrError;

    fn from_str(s: &str) -> Result<Self> {
        let components = s
            .split('|')
            .map(|c| {
                let c = c.trim();
                if c == "-" || c.is_empty() {
                    return Ok(Vec::new());
                }
                c.split(',').map(|p| p.trim().parse::<usize>().map_err(|_| KlrError::Parse(format!("bad part '{p}' in '{s}'")))).collect()
            })
            .collect::<Result<Vec<_>>>()?;
        Multipartition::new(components)
    }
}

impl From<Multipartition> for String {
    fn from(m: Multipartition) -> String {
        m.to_string()
    }
}

impl TryFrom<String> for Multipartition {
    type Error = KlrError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

fn partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for p in (1..=n.min(max)).rev() {
        prefix.push(p);
        partitions(n - p, p, prefix, out);
        prefix.pop();
    }
}

/// All partitions of `n`, lexicographically descending.
pub fn enumerate_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut out);
    out
}

/// Lexicographic key of the component-wise padded parts. Descending order of this key is
/// a linear extension of dominance.
pub(crate) fn lex_key(rows: &[Vec<usize>], pad: usize) -> Vec<usize> {
    let mut key = Vec::with_capacity(rows.len() * pad);
    for comp in rows {
        key.extend((0..pad).map(|r| comp.get(r).copied().unwrap_or(0)));
    }
    key
}

/// All `l`-multipartitions of `n`, sorted so that more dominant shapes come first
/// (descending lexicographic order of the padded parts).
pub fn enumerate_multipartitions(n: usize, level: usize) -> Vec<Multipartition> {
    assert!(level >= 1, "level must be positive");
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    let mut sizes: Vec<usize> = vec![0];
    for _ in 0..level {
        let mut next = Vec::new();
        let mut next_sizes = Vec::new();
        for (prefix, used) in out.iter().zip(&sizes) {
            for k in (0..=n - used).rev() {
                for p in enumerate_partitions(k) {
                    let mut m = prefix.clone();
                    m.push(p);
                    next.push(m);
                    next_sizes.push(used + k);
                }
            }
        }
        out = next;
        sizes = next_sizes;
    }
    let mut all: Vec<Multipartition> =
        out.into_iter().zip(sizes).filter(|(_, s)| *s == n).map(|(c, _)| Multipartition { components: c }).collect();
    all.sort_by_key(|m| std::cmp::Reverse(lex_key(&m.components, n)));
    all
}

/// Dominance of row-length data (shapes or row-strict restrictions) of equal size and level:
/// every cumulative sum of `a` is at least the corresponding one of `b`.
pub(crate) fn rows_dominate(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let depth = a.iter().chain(b).map(Vec::len).max().unwrap_or(0);
    let (mut sa, mut sb) = (0usize, 0usize);
    for (ca, cb) in a.iter().zip(b) {
        for r in 0..depth {
            sa += ca.get(r).copied().unwrap_or(0);
            sb += cb.get(r).copied().unwrap_or(0);
            if sa < sb {
                return false;
            }
        }
    }
    true
}

/// `lambda ⊵ mu`.
pub fn dominates(lambda: &Multipartition, mu: &Multipartition) -> Result<bool> {
    if lambda.size() != mu.size() || lambda.level() != mu.level() {
        return Err(KlrError::SizeMismatch(format!(
            "cannot compare {lambda} (level {}, size {}) with {mu} (level {}, size {})",
            lambda.level(),
            lambda.size(),
            mu.level(),
            mu.size()
        )));
    }
    Ok(rows_dominate(&lambda.components, &mu.components))
}
