//! Root data for products of simple Dynkin types.
//!
//! Simple roots follow Bourbaki numbering inside each factor and factors are
//! concatenated in the order given. Roots are integer coefficient vectors in
//! the basis of simple roots. The Cartan matrix stores
//! `cartan[i][j] = <alpha_i^vee, alpha_j>`, so
//! `s_i(r) = r - <r, alpha_i^vee> alpha_i`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest total rank accepted by [`RootSystem::parse`].
pub const MAX_RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("type {letter}{rank} is not a valid simple type")]
    InvalidRank { letter: char, rank: usize },
    #[error("total rank {total} exceeds the cap of {cap}")]
    RankCap { total: usize, cap: usize },
    #[error("node index {index} out of range for rank {rank}")]
    NodeOutOfRange { index: usize, rank: usize },
}

/// A set of simple roots, stored as a bitmask over 0-based node indices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeSubset(pub u32);

impl NodeSubset {
    pub const EMPTY: NodeSubset = NodeSubset(0);

    pub fn full(rank: usize) -> Self {
        NodeSubset(((1u64 << rank) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        NodeSubset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(NodeSubset::EMPTY, |s, i| s.with(i))
    }

    pub fn with(self, i: usize) -> Self {
        NodeSubset(self.0 | (1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: NodeSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: NodeSubset) -> Self {
        NodeSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSubset) -> Self {
        NodeSubset(self.0 & other.0)
    }

    pub fn difference(self, other: NodeSubset) -> Self {
        NodeSubset(self.0 & !other.0)
    }

    /// Ascending 0-based node indices.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// All subsets of `self`, ordered by size and then by bitmask.
    pub fn subsets(self) -> Vec<NodeSubset> {
        let mut out = Vec::new();
        let mut m = self.0;
        loop {
            out.push(NodeSubset(m));
            if m == 0 {
                break;
            }
            m = (m - 1) & self.0;
        }
        out.sort_by_key(|s| (s.len(), s.0));
        out
    }
}

/// Displays 1-based indices, e.g. `{1,3}`.
impl fmt::Display for NodeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl FromStr for NodeSubset {
    type Err = RootDataError;

    /// Parses `{1,3}` or `{}` with 1-based indices.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| RootDataError::Parse { pos: 0, msg: format!("expected {{...}}, got {t:?}") })?;
        let mut set = NodeSubset::EMPTY;
        let mut pos = 1;
        for part in inner.split(',') {
            let p = part.trim();
            if !p.is_empty() {
                let k: usize = p
                    .parse()
                    .map_err(|_| RootDataError::Parse { pos, msg: format!("bad node index {p:?}") })?;
                if k == 0 || k > 32 {
                    return Err(RootDataError::Parse { pos, msg: format!("node index {k} out of range") });
                }
                set = set.with(k - 1);
            }
            pos += part.len() + 1;
        }
        Ok(set)
    }
}

/// A root as integer coefficients over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root(c)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().any(|&c| c != 0) && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().any(|&c| c != 0) && self.0.iter().all(|&c| c <= 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    /// Index `i` if this root is `alpha_i`.
    pub fn simple_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    /// Nodes with nonzero coefficient.
    pub fn support(&self) -> NodeSubset {
        NodeSubset::from_indices(self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub letter: char,
    pub rank: usize,
    /// Index of the first node of this factor in the concatenated numbering.
    pub offset: usize,
}

/// Root data of a product of simple types.
#[derive(Debug, Clone)]
pub struct RootSystem {
    components: Vec<Component>,
    cartan: Vec<Vec<i32>>,
    positive: Vec<Root>,
    positive_support: Vec<NodeSubset>,
    positive_index: HashMap<Root, usize>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan
    }
}

impl Eq for RootSystem {}

fn simple_cartan(letter: char, n: usize) -> Result<Vec<Vec<i32>>, RootDataError> {
    let valid = match letter {
        'A' => n >= 1,
        'B' | 'C' => n >= 2,
        'D' => n >= 4,
        'E' => (6..=8).contains(&n),
        'F' => n == 4,
        'G' => n == 2,
        _ => false,
    };
    if !valid {
        return Err(RootDataError::InvalidRank { letter, rank: n });
    }
    let mut a = vec![vec![0; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut bond = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match letter {
        'A' | 'B' | 'C' | 'F' | 'G' => {
            for i in 1..n {
                bond(i - 1, i);
            }
        }
        'D' => {
            for i in 1..n - 1 {
                bond(i - 1, i);
            }
            bond(n - 3, n - 1);
        }
        'E' => {
            bond(0, 2);
            bond(1, 3);
            for i in 3..n {
                bond(i - 1, i);
            }
        }
        _ => unreachable!(),
    }
    match letter {
        // alpha_n short
        'B' => a[n - 1][n - 2] = -2,
        // alpha_n long
        'C' => a[n - 2][n - 1] = -2,
        // alpha_3, alpha_4 short
        'F' => a[2][1] = -2,
        // alpha_1 short
        'G' => a[0][1] = -3,
        _ => {}
    }
    Ok(a)
}

impl RootSystem {
    /// Parses a product such as `A2`, `b2`, `A1xA1`.
    pub fn parse(s: &str) -> Result<RootSystem, RootDataError> {
        let mut comps = Vec::new();
        let mut pos = 0;
        for part in s.split(['x', 'X']) {
            let p = part.trim();
            let mut chars = p.chars();
            let letter = chars
                .next()
                .ok_or_else(|| RootDataError::Parse { pos, msg: "empty factor".into() })?
                .to_ascii_uppercase();
            if !('A'..='G').contains(&letter) {
                return Err(RootDataError::Parse { pos, msg: format!("unknown type letter {letter:?}") });
            }
            let digits = chars.as_str();
            let n: usize = digits
                .parse()
                .map_err(|_| RootDataError::Parse { pos: pos + 1, msg: format!("bad rank {digits:?}") })?;
            comps.push((letter, n));
            pos += part.len() + 1;
        }
        let total: usize = comps.iter().map(|c| c.1).sum();
        if total > MAX_RANK {
            return Err(RootDataError::RankCap { total, cap: MAX_RANK });
        }
        RootSystem::from_components(&comps)
    }

    pub fn from_components(comps: &[(char, usize)]) -> Result<RootSystem, RootDataError> {
        let rank: usize = comps.iter().map(|c| c.1).sum();
        let mut cartan = vec![vec![0; rank]; rank];
        let mut components = Vec::new();
        let mut offset = 0;
        for &(letter, n) in comps {
            let block = simple_cartan(letter, n)?;
            for i in 0..n {
                for j in 0..n {
                    cartan[offset + i][offset + j] = block[i][j];
                }
            }
            components.push(Component { letter, rank: n, offset });
            offset += n;
        }
        let positive = positive_roots(&cartan);
        let positive_support = positive.iter().map(Root::support).collect();
        let positive_index = positive.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        Ok(RootSystem { components, cartan, positive, positive_support, positive_index })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// `<alpha_i^vee, alpha_j>`.
    pub fn pairing(&self, i: usize, j: usize) -> i32 {
        self.cartan[i][j]
    }

    pub fn all_nodes(&self) -> NodeSubset {
        NodeSubset::full(self.rank())
    }

    pub fn simple_root(&self, i: usize) -> Root {
        Root::simple(self.rank(), i)
    }

    /// `s_i(r) = r - <r, alpha_i^vee> alpha_i`; `i` is 0-based.
    pub fn reflect(&self, r: &Root, i: usize) -> Result<Root, RootDataError> {
        if i >= self.rank() || r.0.len() != self.rank() {
            return Err(RootDataError::NodeOutOfRange { index: i, rank: self.rank() });
        }
        let mut out = r.clone();
        out.0[i] -= self.coroot_pairing(r, i);
        Ok(out)
    }

    /// `<r, alpha_i^vee>`.
    pub fn coroot_pairing(&self, r: &Root, i: usize) -> i32 {
        self.cartan[i].iter().zip(&r.0).map(|(a, c)| a * c).sum()
    }

    /// Positive roots sorted by height, then coefficients.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.positive_index.contains_key(r) || self.positive_index.contains_key(&r.neg())
    }

    /// `|Phi^+_S|`: positive roots supported on `s`.
    pub fn pos_roots_in_span(&self, s: NodeSubset) -> usize {
        self.positive_support.iter().filter(|sup| sup.is_subset(s)).count()
    }

    /// `dim U_S = |Phi^+| - |Phi^+_S|`, the unipotent radical of the standard parabolic.
    pub fn unipotent_radical_dim(&self, s: NodeSubset) -> usize {
        self.positive.len() - self.pos_roots_in_span(s)
    }

    /// Support masks aligned with [`RootSystem::positive_roots`].
    pub fn positive_supports(&self) -> &[NodeSubset] {
        &self.positive_support
    }

    pub fn group_dim(&self) -> usize {
        self.rank() + 2 * self.positive.len()
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str("x")?;
            }
            write!(f, "{}{}", c.letter, c.rank)?;
        }
        Ok(())
    }
}

fn positive_roots(cartan: &[Vec<i32>]) -> Vec<Root> {
    let rank = cartan.len();
    let reflect = |r: &Root, i: usize| {
        let p: i32 = cartan[i].iter().zip(&r.0).map(|(a, c)| a * c).sum();
        let mut out = r.clone();
        out.0[i] -= p;
        out
    };
    let mut seen: std::collections::HashSet<Root> = std::collections::HashSet::new();
    let mut queue: Vec<Root> = (0..rank).map(|i| Root::simple(rank, i)).collect();
    seen.extend(queue.iter().cloned());
    while let Some(r) = queue.pop() {
        for i in 0..rank {
            let t = reflect(&r, i);
            if t.is_positive() && seen.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    let mut out: Vec<Root> = seen.into_iter().collect();
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::parse(s).unwrap()
    }

    #[test]
    fn positive_root_counts_match_classical_formulas() {
        for n in 1..=6 {
            assert_eq!(rs(&format!("A{n}")).num_positive_roots(), n * (n + 1) / 2);
        }
        for n in 2..=6 {
            assert_eq!(rs(&format!("B{n}")).num_positive_roots(), n * n);
            assert_eq!(rs(&format!("C{n}")).num_positive_roots(), n * n);
        }
        for n in 4..=6 {
            assert_eq!(rs(&format!("D{n}")).num_positive_roots(), n * (n - 1));
        }
        assert_eq!(rs("E6").num_positive_roots(), 36);
        assert_eq!(rs("F4").num_positive_roots(), 24);
        assert_eq!(rs("G2").num_positive_roots(), 6);
        assert_eq!(rs("A1xA1xB2").num_positive_roots(), 6);
    }

    #[test]
    fn highest_roots_have_expected_coefficients() {
        let top = |s: &str| rs(s).positive_roots().last().unwrap().0.clone();
        assert_eq!(top("G2"), vec![3, 2]);
        assert_eq!(top("B3"), vec![1, 2, 2]);
        assert_eq!(top("C3"), vec![2, 2, 1]);
        assert_eq!(top("F4"), vec![2, 3, 4, 2]);
        assert_eq!(top("D4"), vec![1, 2, 1, 1]);
        assert_eq!(top("E6"), vec![1, 2, 2, 3, 2, 1]);
    }

    #[test]
    fn reflections_in_a2() {
        let a2 = rs("A2");
        let a1 = a2.simple_root(0);
        let a2r = a2.simple_root(1);
        assert_eq!(a2.reflect(&a1, 1).unwrap(), Root(vec![1, 1]));
        assert_eq!(a2.reflect(&a1, 0).unwrap(), a1.neg());
        let back = a2.reflect(&a2.reflect(&a2r, 1).unwrap(), 1).unwrap();
        assert_eq!(back, a2r);
        assert!(a2.reflect(&a1, 2).is_err());
    }

    #[test]
    fn reflections_permute_roots() {
        for s in ["A3", "B3", "C3", "D4", "G2", "F4", "A1xG2"] {
            let r = rs(s);
            for root in r.positive_roots() {
                for i in 0..r.rank() {
                    let t = r.reflect(root, i).unwrap();
                    assert!(r.is_root(&t));
                    if root.simple_index() != Some(i) {
                        assert!(t.is_positive(), "{s}: s_{i} {root:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(RootSystem::parse("A7"), Err(RootDataError::RankCap { total: 7, cap: 6 })));
        assert!(matches!(RootSystem::parse("B1"), Err(RootDataError::InvalidRank { .. })));
        assert!(matches!(RootSystem::parse("D3"), Err(RootDataError::InvalidRank { .. })));
        assert!(matches!(RootSystem::parse("H3"), Err(RootDataError::Parse { .. })));
        assert!(matches!(RootSystem::parse("Ax"), Err(RootDataError::Parse { .. })));
        assert_eq!(rs("a1xb2").to_string(), "A1xB2");
    }

    #[test]
    fn span_counts() {
        let b3 = rs("B3");
        assert_eq!(b3.pos_roots_in_span(NodeSubset::from_indices([1, 2])), 4);
        assert_eq!(b3.pos_roots_in_span(NodeSubset::from_indices([0, 2])), 2);
        assert_eq!(b3.pos_roots_in_span(NodeSubset::EMPTY), 0);
        assert_eq!(b3.unipotent_radical_dim(NodeSubset::EMPTY), 9);
    }

    #[test]
    fn node_subset_text_round_trip() {
        for m in 0..64u32 {
            let s = NodeSubset(m);
            assert_eq!(s.to_string().parse::<NodeSubset>().unwrap(), s);
        }
        assert!("{0}".parse::<NodeSubset>().is_err());
        assert!("1,2".parse::<NodeSubset>().is_err());
        assert_eq!(NodeSubset::full(3).subsets().len(), 8);
    }
}
