//! `R_A`-stable pieces of the wonderful compactification of an adjoint group.
//!
//! A piece is indexed by `[J, v1, v2]` with `J` a set of simple roots, `v1` in
//! `W^J` and `v2` in `^{A2}W`. The stratum `J` is the orbit of `G x G` whose
//! stabilizer is described by the triple `(J, J, id)`, so each stratum reuses
//! the pair-context machinery with `C = (J, J, id)`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::poset::{ClosurePoset, PosetError};
use crate::rootdata::NodeSubset;
use crate::triples::{PairContext, Triple, TripleError};
use crate::weyl::{Elem, Side, WeylError, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WonderfulError {
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("{0}")]
    Poset(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WonderfulPiece {
    pub j: NodeSubset,
    pub v1: Elem,
    pub v2: Elem,
}

/// Which description of the closure relation to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Criterion {
    /// Bounded by `w0I`, with the length-additivity constraint on `v2 z`.
    First,
    /// Without `y`, with the length-additivity constraint.
    Second,
    /// Without `y` and without the length constraint.
    Third,
}

impl Criterion {
    pub fn from_number(n: u8) -> Option<Criterion> {
        match n {
            1 => Some(Criterion::First),
            2 => Some(Criterion::Second),
            3 => Some(Criterion::Third),
            _ => None,
        }
    }
}

/// `(x, y, z)` realizing a closure relation; `y = e` for the second and third forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureWitness {
    pub x: Elem,
    pub y: Elem,
    pub z: Elem,
}

/// Terms of the dimension formula of a piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WonderfulDim {
    pub flag: i64,
    pub fiber: i64,
    pub affine: i64,
    /// `J(v1, v2)`.
    pub stable: NodeSubset,
}

impl WonderfulDim {
    pub fn total(&self) -> i64 {
        self.flag + self.fiber + self.affine
    }
}

/// A group, a triple `A` on it and the per-stratum contexts.
#[derive(Debug, Clone)]
pub struct WonderfulContext {
    pub g: Arc<WeylGroup>,
    pub a: Triple,
    strata: Vec<PairContext>,
}

impl WonderfulContext {
    pub fn new(g: Arc<WeylGroup>, a: Triple) -> Result<WonderfulContext, WonderfulError> {
        let strata = (0..1u32 << g.rank())
            .map(|m| PairContext::new(g.clone(), g.clone(), a.clone(), Triple::identity_on(NodeSubset(m))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WonderfulContext { g, a, strata })
    }

    /// Context with `C = (J, J, id)`.
    pub fn stratum(&self, j: NodeSubset) -> &PairContext {
        &self.strata[j.0 as usize]
    }

    /// `W_{A1}` with images under `a`.
    pub fn a_pairs(&self) -> &[(Elem, Elem)] {
        self.strata[0].a_pairs()
    }

    pub fn is_canonical(&self, p: WonderfulPiece) -> bool {
        p.j.is_subset(self.g.root_system().all_nodes())
            && self.g.is_min_rep(p.v1, p.j, Side::Right)
            && self.g.is_min_rep(p.v2, self.a.second, Side::Left)
    }

    /// All pieces sorted by `(|J|, l(v1), l(v2), serialization)`.
    pub fn enumerate(&self) -> Vec<WonderfulPiece> {
        let g = &self.g;
        let v2s = g.min_reps(self.a.second, Side::Left);
        let mut out: Vec<WonderfulPiece> = g
            .root_system()
            .all_nodes()
            .subsets()
            .into_iter()
            .flat_map(|j| {
                let v2s = &v2s;
                g.min_reps(j, Side::Right).into_iter().flat_map(move |v1| v2s.iter().map(move |&v2| WonderfulPiece { j, v1, v2 }))
            })
            .collect();
        out.sort_by_cached_key(|&p| (p.j.len(), g.length(p.v1), g.length(p.v2), self.format(p)));
        out
    }

    /// `J={1};v1=s2 s1;v2=e`.
    pub fn format(&self, p: WonderfulPiece) -> String {
        format!("J={};v1={};v2={}", p.j, self.g.format(p.v1), self.g.format(p.v2))
    }

    /// Parses the serialized form and rejects noncanonical indices.
    pub fn parse(&self, s: &str) -> Result<WonderfulPiece, WonderfulError> {
        let (mut j, mut v1, mut v2) = (None, None, None);
        let mut pos = 0;
        for field in s.split(';') {
            let here = pos;
            pos += field.len() + 1;
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| WonderfulError::Parse { pos: here, msg: format!("expected key=value, got {field:?}") })?;
            let at = here + k.len() + 1;
            let shift = |e: WeylError| match e {
                WeylError::Parse { pos, msg } => WonderfulError::Parse { pos: pos + at, msg },
                other => other.into(),
            };
            match k.trim() {
                "J" => {
                    let set: NodeSubset =
                        v.parse().map_err(|e: crate::rootdata::RootDataError| WonderfulError::Parse { pos: at, msg: e.to_string() })?;
                    if !set.is_subset(self.g.root_system().all_nodes()) {
                        return Err(WonderfulError::Parse { pos: at, msg: format!("{set} is not a set of simple roots") });
                    }
                    j = Some(set);
                }
                "v1" => v1 = Some(self.g.parse(v).map_err(shift)?),
                "v2" => v2 = Some(self.g.parse(v).map_err(shift)?),
                other => return Err(WonderfulError::Parse { pos: here, msg: format!("unknown key {other:?}") }),
            }
        }
        let missing = |k: &str| WonderfulError::Parse { pos: s.len(), msg: format!("missing {k}") };
        let p = WonderfulPiece {
            j: j.ok_or_else(|| missing("J"))?,
            v1: v1.ok_or_else(|| missing("v1"))?,
            v2: v2.ok_or_else(|| missing("v2"))?,
        };
        self.g.require_min_rep(p.v1, p.j, Side::Right)?;
        self.g.require_min_rep(p.v2, self.a.second, Side::Left)?;
        Ok(p)
    }

    /// `J(v1, v2)`: the largest subset of `J` mapped into itself by `v2^{-1} a v1`.
    pub fn stable_subset(&self, p: WonderfulPiece) -> NodeSubset {
        self.stratum(p.j).stable_second(p.v1, p.v2)
    }

    pub fn dim_breakdown(&self, p: WonderfulPiece) -> WonderfulDim {
        let rs = self.g.root_system();
        let stable = self.stable_subset(p);
        let a1 = self.g.image_subset(p.v1, stable);
        let flag = rs.pos_roots_in_span(self.a.first) as i64 - rs.pos_roots_in_span(a1) as i64;
        let fiber = (p.j.len() + 2 * rs.pos_roots_in_span(stable)) as i64;
        let affine = rs.unipotent_radical_dim(a1) as i64 - self.g.length(p.v1) as i64 + self.g.length(p.v2) as i64;
        WonderfulDim { flag, fiber, affine, stable }
    }

    pub fn dim(&self, p: WonderfulPiece) -> i64 {
        self.dim_breakdown(p).total()
    }

    /// Dimension of the compactification, `dim G`.
    pub fn total_dim(&self) -> i64 {
        self.g.root_system().group_dim() as i64
    }

    /// `I ⊆ J` and `exists x in W_{A1}, y in W_I, z in W_J^I` with
    /// `l(v2 z) = l(v2) + l(z)`, `x v1' y w0I >= v1 z w0I`, `a(x) v2' y <= v2 z`.
    pub fn closure_first(&self, target: WonderfulPiece, query: WonderfulPiece) -> Option<ClosureWitness> {
        if !query.j.is_subset(target.j) {
            return None;
        }
        let g = &self.g;
        let w0i = g.longest(query.j);
        let wi = g.parabolic(query.j);
        let zs: Vec<(Elem, Elem, Elem)> = g
            .parabolic(target.j)
            .into_iter()
            .filter(|&z| g.is_min_rep(z, query.j, Side::Right))
            .map(|z| (z, g.mul(target.v2, z)))
            .filter(|&(z, v2z)| g.length(v2z) == g.length(target.v2) + g.length(z))
            .map(|(z, v2z)| (z, v2z, g.mul3(target.v1, z, w0i)))
            .collect();
        for &(x, ax) in self.a_pairs() {
            let left = g.mul(x, query.v1);
            let right = g.mul(ax, query.v2);
            for &y in &wi {
                let top = g.mul3(left, y, w0i);
                let bottom = g.mul(right, y);
                for &(z, v2z, floor) in &zs {
                    if g.leq(floor, top) && g.leq(bottom, v2z) {
                        return Some(ClosureWitness { x, y, z });
                    }
                }
            }
        }
        None
    }

    /// `I ⊆ J` and `exists x in W_{A1}, z in W_J` with `x v1' >= v1 z` and
    /// `a(x) v2' <= v2 z`, plus `l(v2 z) = l(v2) + l(z)` when `additive`.
    fn closure_reduced(&self, target: WonderfulPiece, query: WonderfulPiece, additive: bool) -> Option<ClosureWitness> {
        if !query.j.is_subset(target.j) {
            return None;
        }
        let g = &self.g;
        let zs: Vec<(Elem, Elem, Elem)> = g
            .parabolic(target.j)
            .into_iter()
            .map(|z| (z, g.mul(target.v2, z)))
            .filter(|&(z, v2z)| !additive || g.length(v2z) == g.length(target.v2) + g.length(z))
            .map(|(z, v2z)| (z, v2z, g.mul(target.v1, z)))
            .collect();
        for &(x, ax) in self.a_pairs() {
            let left = g.mul(x, query.v1);
            let right = g.mul(ax, query.v2);
            for &(z, v2z, floor) in &zs {
                if g.leq(floor, left) && g.leq(right, v2z) {
                    return Some(ClosureWitness { x, y: Elem::E, z });
                }
            }
        }
        None
    }

    pub fn closure_second(&self, target: WonderfulPiece, query: WonderfulPiece) -> Option<ClosureWitness> {
        self.closure_reduced(target, query, true)
    }

    pub fn closure_third(&self, target: WonderfulPiece, query: WonderfulPiece) -> Option<ClosureWitness> {
        self.closure_reduced(target, query, false)
    }

    pub fn closure(&self, criterion: Criterion, target: WonderfulPiece, query: WonderfulPiece) -> Option<ClosureWitness> {
        match criterion {
            Criterion::First => self.closure_first(target, query),
            Criterion::Second => self.closure_second(target, query),
            Criterion::Third => self.closure_third(target, query),
        }
    }

    /// `I ⊆ J` and `[∅, v1', v2']` lies in the closure of the target.
    pub fn boundary_criterion(&self, target: WonderfulPiece, query: WonderfulPiece) -> bool {
        query.j.is_subset(target.j)
            && self.closure_third(target, WonderfulPiece { j: NodeSubset::EMPTY, ..query }).is_some()
    }

    /// Closure order on all pieces; fails if the relation is not a partial order.
    pub fn poset(&self, criterion: Criterion) -> Result<ClosurePoset<WonderfulPiece>, WonderfulError> {
        let poset = ClosurePoset::from_relation(self.enumerate(), |a, b| self.closure(criterion, *b, *a).is_some());
        self.checked(poset)
    }

    /// Order given by the boundary reformulation.
    pub fn boundary_poset(&self) -> Result<ClosurePoset<WonderfulPiece>, WonderfulError> {
        let poset = ClosurePoset::from_relation(self.enumerate(), |a, b| self.boundary_criterion(*b, *a));
        self.checked(poset)
    }

    fn checked(&self, poset: ClosurePoset<WonderfulPiece>) -> Result<ClosurePoset<WonderfulPiece>, WonderfulError> {
        poset
            .check_partial_order()
            .map_err(|e: PosetError| WonderfulError::Poset(e.describe(|i| self.format(poset.nodes[i]))))?;
        Ok(poset)
    }

    /// Dimensions of all pieces, computed in parallel, in enumeration order.
    pub fn dims(&self, pieces: &[WonderfulPiece]) -> Vec<i64> {
        pieces.par_iter().map(|&p| self.dim(p)).collect()
    }

    pub fn to_dot(&self, poset: &ClosurePoset<WonderfulPiece>) -> String {
        poset.to_dot("closure", |&p| self.format(p), |&p| self.dim(p))
    }

    pub fn to_tsv(&self, poset: &ClosurePoset<WonderfulPiece>) -> String {
        poset.to_tsv(|&p| self.format(p), |&p| self.dim(p))
    }

    pub fn to_json(&self, poset: &ClosurePoset<WonderfulPiece>) -> Value {
        poset.to_json(|&p| {
            json!({
                "J": p.j.to_string(),
                "v1": self.g.format(p.v1),
                "v2": self.g.format(p.v2),
                "dim": self.dim(p),
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootSystem;

    fn ctx(s: &str, triple: &str) -> WonderfulContext {
        let rs = RootSystem::parse(s).unwrap();
        let a = Triple::parse(triple, &rs, &rs).unwrap();
        WonderfulContext::new(Arc::new(WeylGroup::new(rs).unwrap()), a).unwrap()
    }

    #[test]
    fn piece_counts() {
        for (s, t, n) in [("A1", "trivial", 6), ("A1", "diag", 3), ("A2", "trivial", 78), ("A2", "diag", 13), ("G2", "diag", 25), ("G2", "trivial", 300), ("A2", "swap", 39)] {
            assert_eq!(ctx(s, t).enumerate().len(), n, "{s} {t}");
        }
    }

    #[test]
    fn rank_one_diagonal_chain() {
        let w = ctx("A1", "diag");
        let pieces = w.enumerate();
        let labels: Vec<String> = pieces.iter().map(|&p| w.format(p)).collect();
        assert_eq!(labels, ["J={};v1=e;v2=e", "J={};v1=s1;v2=e", "J={1};v1=e;v2=e"]);
        assert_eq!(w.dims(&pieces), [2, 1, 3]);
        let poset = w.poset(Criterion::First).unwrap();
        assert!(poset.lt(1, 0) && poset.lt(0, 2) && poset.lt(1, 2));
        assert_eq!(poset.hasse(), vec![(0, 2), (1, 0)]);
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let w = ctx("A2", "swap");
        for p in w.enumerate() {
            assert_eq!(w.parse(&w.format(p)).unwrap(), p);
        }
        let err = w.parse("J={1};v1=s2 s1;v2=e").unwrap_err();
        assert!(matches!(err, WonderfulError::Weyl(WeylError::NotMinimal { ref normal, .. }) if normal == "s2"));
        assert!(matches!(w.parse("J={1};v1=s7;v2=e"), Err(WonderfulError::Parse { pos: 9, .. })));
        assert!(matches!(w.parse("J={3};v1=e;v2=e"), Err(WonderfulError::Parse { .. })));
    }

    #[test]
    fn unique_open_piece_has_full_dimension() {
        for (s, t) in [("A2", "trivial"), ("B2", "diag"), ("A2", "swap")] {
            let w = ctx(s, t);
            let poset = w.poset(Criterion::Third).unwrap();
            let top = poset.maximal();
            assert_eq!(top.len(), 1);
            assert_eq!(w.dim(poset.nodes[top[0]]), w.total_dim());
        }
    }
}
