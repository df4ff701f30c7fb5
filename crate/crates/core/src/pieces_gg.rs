//! Pieces of `G1 x G2` under `R_A x R_C`, their dimensions and closures.
//!
//! A piece is indexed by `(v1, v2)` with `v1` in `W1^{C1}` and `v2` in
//! `^{A2}W2`. The plus variant uses the stabilizer `R_C`; the minus variant
//! uses `R_C^-`, whose first unipotent factor is opposite.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poset::ClosurePoset;
use crate::triples::{PairContext, Y2Preset};
use crate::weyl::{Elem, Side, WeylError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Plus,
    Minus,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Plus => "plus",
            Variant::Minus => "minus",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GgPiece {
    pub v1: Elem,
    pub v2: Elem,
}

/// Terms of the dimension formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimBreakdown {
    pub flag: i64,
    pub fiber: i64,
    pub affine: i64,
}

impl DimBreakdown {
    pub fn total(&self) -> i64 {
        self.flag + self.fiber + self.affine
    }
}

/// Witness `(x1, y1)` for a closure relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GgWitness {
    pub x1: Elem,
    pub y1: Elem,
}

/// All pieces, ordered by `v1` and then `v2` in canonical order.
pub fn enumerate_gg(ctx: &PairContext) -> Vec<GgPiece> {
    let v1s = ctx.g1.min_reps(ctx.c.first, Side::Right);
    let v2s = ctx.g2.min_reps(ctx.a.second, Side::Left);
    v1s.iter().flat_map(|&v1| v2s.iter().map(move |&v2| GgPiece { v1, v2 })).collect()
}

pub fn format_gg(ctx: &PairContext, p: GgPiece) -> String {
    format!("v1={};v2={}", ctx.g1.format(p.v1), ctx.g2.format(p.v2))
}

/// Parses `v1=...;v2=...` and checks that the index is canonical.
pub fn parse_gg(ctx: &PairContext, s: &str) -> Result<GgPiece, WeylError> {
    let (mut v1, mut v2) = (None, None);
    let mut pos = 0;
    for field in s.split(';') {
        let here = pos;
        pos += field.len() + 1;
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| WeylError::Parse { pos: here, msg: format!("expected key=value, got {field:?}") })?;
        let shift = |e: WeylError| match e {
            WeylError::Parse { pos, msg } => WeylError::Parse { pos: pos + here + k.len() + 1, msg },
            other => other,
        };
        match k.trim() {
            "v1" => v1 = Some(ctx.g1.parse(v).map_err(shift)?),
            "v2" => v2 = Some(ctx.g2.parse(v).map_err(shift)?),
            other => return Err(WeylError::Parse { pos: here, msg: format!("unknown key {other:?}") }),
        }
    }
    let missing = |k: &str| WeylError::Parse { pos: s.len(), msg: format!("missing {k}") };
    let p = GgPiece { v1: v1.ok_or_else(|| missing("v1"))?, v2: v2.ok_or_else(|| missing("v2"))? };
    ctx.require_piece(p.v1, p.v2)?;
    Ok(p)
}

/// `dim Y2` under the preset of `C`.
pub fn y2_dim(ctx: &PairContext) -> i64 {
    let rank2 = ctx.g2.rank() as i64;
    match ctx.c.preset {
        Y2Preset::Identification => rank2 - ctx.c.second.len() as i64,
        Y2Preset::Product => rank2,
    }
}

/// `dim R_C`.
pub fn stabilizer_dim(ctx: &PairContext) -> i64 {
    let rs1 = ctx.g1.root_system();
    let rs2 = ctx.g2.root_system();
    (rs1.rank() + rs1.num_positive_roots() + rs2.num_positive_roots()) as i64 + y2_dim(ctx)
}

/// Dimension of the piece in `(G1 x G2) / R_C` (or `R_C^-`).
pub fn dim_gg(ctx: &PairContext, p: GgPiece, variant: Variant) -> DimBreakdown {
    let rs1 = ctx.g1.root_system();
    let rs2 = ctx.g2.root_system();
    let a1 = ctx.stable_first(p.v1, p.v2);
    let c2 = ctx.stable_second(p.v1, p.v2);
    let flag = rs1.pos_roots_in_span(ctx.a.first) as i64 - rs1.pos_roots_in_span(a1) as i64;
    let fiber = (rs2.rank() + 2 * rs2.pos_roots_in_span(c2)) as i64 - y2_dim(ctx);
    let shifted = match variant {
        Variant::Plus => ctx.unipotent_overlap(p.v1, ctx.c.first),
        Variant::Minus => ctx.g1.length(p.v1),
    };
    let affine = rs1.unipotent_radical_dim(a1) as i64 - shifted as i64 + ctx.g2.length(p.v2) as i64;
    DimBreakdown { flag, fiber, affine }
}

/// Dimension of the preimage in `G1 x G2`.
pub fn ambient_dim(ctx: &PairContext, p: GgPiece, variant: Variant) -> i64 {
    dim_gg(ctx, p, variant).total() + stabilizer_dim(ctx)
}

/// Is `query` in the closure of the plus-piece through `(w1, w2)`?
/// `exists x1 in W_{A1}, y1 in W_{C1}: x1 v1' y1 <= w1, a(x1) v2' c(y1) <= w2`.
pub fn closure_gg(ctx: &PairContext, target: GgPiece, query: GgPiece) -> Option<GgWitness> {
    let (g1, g2) = (&ctx.g1, &ctx.g2);
    for &(x1, ax1) in ctx.a_pairs() {
        let left = g1.mul(x1, query.v1);
        let right = g2.mul(ax1, query.v2);
        for &(y1, cy1) in ctx.c_pairs() {
            if g1.leq(g1.mul(left, y1), target.v1) && g2.leq(g2.mul(right, cy1), target.v2) {
                return Some(GgWitness { x1, y1 });
            }
        }
    }
    None
}

/// Minus variant:
/// `exists x1, y1: x1 v1' y1 w0C >= v1 w0C, a(x1) v2' c(y1) <= v2`.
pub fn closure_gg_minus(ctx: &PairContext, target: GgPiece, query: GgPiece) -> Option<GgWitness> {
    let (g1, g2) = (&ctx.g1, &ctx.g2);
    let w0c = g1.longest(ctx.c.first);
    let floor = g1.mul(target.v1, w0c);
    for &(x1, ax1) in ctx.a_pairs() {
        let left = g1.mul(x1, query.v1);
        let right = g2.mul(ax1, query.v2);
        for &(y1, cy1) in ctx.c_pairs() {
            if g1.leq(floor, g1.mul3(left, y1, w0c)) && g2.leq(g2.mul(right, cy1), target.v2) {
                return Some(GgWitness { x1, y1 });
            }
        }
    }
    None
}

/// Closure relation for `(B x B, R_C)`: is `w` in the closure of `v`?
/// `exists u1 in W_{C1}: w1 u1 <= v1, w2 c(u1) <= v2`.
pub fn bbrc_closure_contains(ctx: &PairContext, v: GgPiece, w: GgPiece) -> Option<Elem> {
    let (g1, g2) = (&ctx.g1, &ctx.g2);
    ctx.c_pairs()
        .iter()
        .find(|&&(u1, cu1)| g1.leq(g1.mul(w.v1, u1), v.v1) && g2.leq(g2.mul(w.v2, cu1), v.v2))
        .map(|p| p.0)
}

/// Closure relation for `(B x B, R_C^-)`: is `w` in the closure of `v`?
/// `exists u1 in W_{C1}: v1 u1^{-1} <= w1, w2 c(u1) <= v2`.
pub fn bbrc_minus_closure_contains(ctx: &PairContext, v: GgPiece, w: GgPiece) -> Option<Elem> {
    let (g1, g2) = (&ctx.g1, &ctx.g2);
    ctx.c_pairs()
        .iter()
        .find(|&&(u1, cu1)| g1.leq(g1.mul(v.v1, g1.inv(u1)), w.v1) && g2.leq(g2.mul(w.v2, cu1), v.v2))
        .map(|p| p.0)
}

/// Closure poset of all pieces for the chosen variant.
pub fn gg_poset(ctx: &PairContext, variant: Variant) -> ClosurePoset<GgPiece> {
    let nodes = enumerate_gg(ctx);
    ClosurePoset::from_relation(nodes, |a, b| match variant {
        Variant::Plus => closure_gg(ctx, *b, *a).is_some(),
        Variant::Minus => closure_gg_minus(ctx, *b, *a).is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{NodeSubset, RootSystem};
    use crate::triples::Triple;
    use crate::weyl::WeylGroup;
    use std::collections::BTreeMap;
    use std::sync::Arc;

    fn group(s: &str) -> Arc<WeylGroup> {
        Arc::new(WeylGroup::new(RootSystem::parse(s).unwrap()).unwrap())
    }

    #[test]
    fn count_with_one_sided_triple() {
        let g = group("A2");
        let a = Triple {
            first: NodeSubset::singleton(0),
            second: NodeSubset::singleton(1),
            map: BTreeMap::from([(0, 1)]),
            preset: Y2Preset::Identification,
        };
        let ctx = PairContext::new(g.clone(), g, a, Triple::trivial()).unwrap();
        assert_eq!(enumerate_gg(&ctx).len(), 18);
    }

    #[test]
    fn double_flag_dims_are_lengths() {
        let g = group("B2");
        let ctx = PairContext::new(g.clone(), g.clone(), Triple::trivial(), Triple::trivial()).unwrap();
        for p in enumerate_gg(&ctx) {
            let want = (g.length(p.v1) + g.length(p.v2)) as i64;
            assert_eq!(dim_gg(&ctx, p, Variant::Plus).total(), want);
            let opp = (g.root_system().num_positive_roots() + g.length(p.v2)) as i64 - g.length(p.v1) as i64;
            assert_eq!(dim_gg(&ctx, p, Variant::Minus).total(), opp);
        }
    }

    #[test]
    fn group_as_diagonal_quotient() {
        // (B x B)-orbits on G = (G x G)/G_diag are double cosets B w B of dimension l(w) + dim B.
        for s in ["A1", "A2", "G2"] {
            let g = group(s);
            let rank = g.rank();
            let ctx = PairContext::new(g.clone(), g.clone(), Triple::trivial(), Triple::diag(rank)).unwrap();
            let dim_b = (rank + g.root_system().num_positive_roots()) as i64;
            for p in enumerate_gg(&ctx) {
                assert_eq!(p.v1, Elem::E);
                assert_eq!(dim_gg(&ctx, p, Variant::Plus).total(), g.length(p.v2) as i64 + dim_b);
            }
        }
    }

    #[test]
    fn full_diagonal_pair_is_one_open_piece() {
        let g = group("A1");
        let ctx = PairContext::new(g.clone(), g, Triple::diag(1), Triple::diag(1)).unwrap();
        let pieces = enumerate_gg(&ctx);
        assert_eq!(pieces.len(), 1);
        assert_eq!(dim_gg(&ctx, pieces[0], Variant::Plus).total(), 3);
        assert_eq!(ambient_dim(&ctx, pieces[0], Variant::Plus), 6);
    }

    #[test]
    fn parse_reports_noncanonical_index() {
        let g = group("A2");
        let ctx = PairContext::new(g.clone(), g, Triple::trivial(), Triple::identity_on(NodeSubset::singleton(0))).unwrap();
        let p = parse_gg(&ctx, "v1=s1 s2;v2=s2").unwrap();
        assert_eq!(format_gg(&ctx, p), "v1=s1 s2;v2=s2");
        let err = parse_gg(&ctx, "v1=s2 s1;v2=e").unwrap_err();
        assert!(matches!(err, WeylError::NotMinimal { ref normal, .. } if normal == "s2"));
        assert!(matches!(parse_gg(&ctx, "v1=s3;v2=e"), Err(WeylError::Parse { pos: 3, .. })));
    }
}
