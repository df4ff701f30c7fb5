//! Admissible triples, pair contexts and the twist machinery built on them.
//!
//! A triple `(A1, A2, a)` pairs node sets of two root systems through a
//! Cartan-preserving bijection `a`. A [`PairContext`] fixes two groups and two
//! triples `A` (the acting subgroup) and `C` (the stabilizer), and carries the
//! extensions of `a` and `c` to the parabolic subgroups `W_{A1}` and `W_{C1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootdata::{NodeSubset, RootSystem};
use crate::weyl::{Elem, Side, WeylError, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("node {node} out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("map is not a bijection {first} -> {second}")]
    NotBijective { first: String, second: String },
    #[error("map breaks the Cartan matrix at nodes ({i},{j}): {lhs} != {rhs}")]
    CartanMismatch { i: usize, j: usize, lhs: i32, rhs: i32 },
    #[error("preset {0} needs identical root systems on both sides")]
    NeedsSameSystem(String),
    #[error("preset swap is only defined for A2")]
    SwapNeedsA2,
    #[error("product preset requires an empty second set, got {0}")]
    ProductNeedsEmpty(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// Dimension convention for the subgroup `Y2` of the second center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Y2Preset {
    /// `dim Y2 = rank - |C2|`.
    Identification,
    /// `dim Y2 = rank`; the full torus.
    Product,
}

impl fmt::Display for Y2Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Y2Preset::Identification => "identification",
            Y2Preset::Product => "product",
        })
    }
}

/// `(first, second, map)` with `map: first -> second` a diagram isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub first: NodeSubset,
    pub second: NodeSubset,
    pub map: BTreeMap<usize, usize>,
    pub preset: Y2Preset,
}

impl Triple {
    pub fn trivial() -> Triple {
        Triple { first: NodeSubset::EMPTY, second: NodeSubset::EMPTY, map: BTreeMap::new(), preset: Y2Preset::Product }
    }

    /// `(J, J, id)`.
    pub fn identity_on(j: NodeSubset) -> Triple {
        Triple { first: j, second: j, map: j.iter().map(|i| (i, i)).collect(), preset: Y2Preset::Identification }
    }

    pub fn diag(rank: usize) -> Triple {
        Triple::identity_on(NodeSubset::full(rank))
    }

    /// `({alpha_1}, {alpha_2}, alpha_1 -> alpha_2)` in `A2`.
    pub fn swap() -> Triple {
        Triple {
            first: NodeSubset::singleton(0),
            second: NodeSubset::singleton(1),
            map: BTreeMap::from([(0, 1)]),
            preset: Y2Preset::Identification,
        }
    }

    pub fn apply(&self, i: usize) -> Option<usize> {
        self.map.get(&i).copied()
    }

    pub fn apply_inverse(&self, j: usize) -> Option<usize> {
        self.map.iter().find(|(_, &v)| v == j).map(|(&k, _)| k)
    }

    pub fn image(&self, s: NodeSubset) -> NodeSubset {
        NodeSubset::from_indices(s.iter().filter_map(|i| self.apply(i)))
    }

    pub fn preimage(&self, s: NodeSubset) -> NodeSubset {
        NodeSubset::from_indices(self.map.iter().filter(|(_, &v)| s.contains(v)).map(|(&k, _)| k))
    }

    /// Same sets and map; the preset is not compared.
    pub fn same_diagram_map(&self, other: &Triple) -> bool {
        self.first == other.first && self.second == other.second && self.map == other.map
    }

    pub fn validate(&self, rs1: &RootSystem, rs2: &RootSystem) -> Result<(), TripleError> {
        for i in self.first.iter() {
            if i >= rs1.rank() {
                return Err(TripleError::NodeOutOfRange { node: i + 1, rank: rs1.rank() });
            }
        }
        for j in self.second.iter() {
            if j >= rs2.rank() {
                return Err(TripleError::NodeOutOfRange { node: j + 1, rank: rs2.rank() });
            }
        }
        let keys = NodeSubset::from_indices(self.map.keys().copied());
        let values = NodeSubset::from_indices(self.map.values().copied());
        if keys != self.first || values != self.second || values.len() != self.map.len() {
            return Err(TripleError::NotBijective { first: self.first.to_string(), second: self.second.to_string() });
        }
        for (&i, &ai) in &self.map {
            for (&j, &aj) in &self.map {
                let (lhs, rhs) = (rs1.pairing(i, j), rs2.pairing(ai, aj));
                if lhs != rhs {
                    return Err(TripleError::CartanMismatch { i: i + 1, j: j + 1, lhs, rhs });
                }
            }
        }
        Ok(())
    }

    /// Parses a preset name (`trivial`, `diag`, `swap`) or a literal
    /// `A1={1};A2={2};a={1->2};preset=identification`, then validates it.
    pub fn parse(s: &str, rs1: &RootSystem, rs2: &RootSystem) -> Result<Triple, TripleError> {
        let t = match s.trim() {
            "trivial" => Triple::trivial(),
            "diag" => {
                if rs1 != rs2 {
                    return Err(TripleError::NeedsSameSystem("diag".into()));
                }
                Triple::diag(rs1.rank())
            }
            "swap" => {
                let a2 = RootSystem::parse("A2").expect("A2 is valid");
                if *rs1 != a2 || *rs2 != a2 {
                    return Err(TripleError::SwapNeedsA2);
                }
                Triple::swap()
            }
            lit => lit.parse()?,
        };
        t.validate(rs1, rs2)?;
        Ok(t)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A1={};A2={};a={{", self.first, self.second)?;
        for (k, (i, j)) in self.map.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}->{}", i + 1, j + 1)?;
        }
        write!(f, "}};preset={}", self.preset)
    }
}

impl FromStr for Triple {
    type Err = TripleError;

    /// Parses the literal form without validating against a root system.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut first = None;
        let mut second = None;
        let mut map = None;
        let mut preset = Y2Preset::Identification;
        let mut pos = 0;
        for field in s.split(';') {
            let here = pos;
            pos += field.len() + 1;
            let field = field.trim();
            if field.is_empty() {
                continue;
            }
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| TripleError::Parse { pos: here, msg: format!("expected key=value, got {field:?}") })?;
            let value = value.trim();
            let at = |e: crate::rootdata::RootDataError| TripleError::Parse { pos: here, msg: e.to_string() };
            match key.trim() {
                "A1" => first = Some(value.parse::<NodeSubset>().map_err(at)?),
                "A2" => second = Some(value.parse::<NodeSubset>().map_err(at)?),
                "a" => map = Some(parse_map(value).map_err(|msg| TripleError::Parse { pos: here, msg })?),
                "preset" => {
                    preset = match value {
                        "identification" => Y2Preset::Identification,
                        "product" => Y2Preset::Product,
                        other => {
                            return Err(TripleError::Parse { pos: here, msg: format!("unknown preset {other:?}") })
                        }
                    }
                }
                other => return Err(TripleError::Parse { pos: here, msg: format!("unknown key {other:?}") }),
            }
        }
        let missing = |k: &str| TripleError::Parse { pos: s.len(), msg: format!("missing field {k}") };
        Ok(Triple {
            first: first.ok_or_else(|| missing("A1"))?,
            second: second.ok_or_else(|| missing("A2"))?,
            map: map.ok_or_else(|| missing("a"))?,
            preset,
        })
    }
}

fn parse_map(s: &str) -> Result<BTreeMap<usize, usize>, String> {
    let inner = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(|| format!("expected {{...}}, got {s:?}"))?;
    let mut map = BTreeMap::new();
    for pair in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (l, r) = pair.split_once("->").ok_or_else(|| format!("expected i->j, got {pair:?}"))?;
        let l: usize = l.trim().parse().map_err(|_| format!("bad node {l:?}"))?;
        let r: usize = r.trim().parse().map_err(|_| format!("bad node {r:?}"))?;
        if l == 0 || r == 0 || l > 32 || r > 32 {
            return Err(format!("node out of range in {pair:?}"));
        }
        if map.insert(l - 1, r - 1).is_some() {
            return Err(format!("node {l} mapped twice"));
        }
    }
    Ok(map)
}

/// Every admissible triple between two root systems, ordered by size, sets and map.
pub fn all_triples(rs1: &RootSystem, rs2: &RootSystem, preset: Y2Preset) -> Vec<Triple> {
    fn extend(
        dom: &[usize],
        targets: &[usize],
        used: &mut Vec<bool>,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<BTreeMap<usize, usize>>,
    ) {
        if acc.len() == dom.len() {
            out.push(acc.iter().copied().collect());
            return;
        }
        for (k, &t) in targets.iter().enumerate() {
            if !used[k] {
                used[k] = true;
                acc.push((dom[acc.len()], t));
                extend(dom, targets, used, acc, out);
                acc.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    for first in rs1.all_nodes().subsets() {
        for second in rs2.all_nodes().subsets().into_iter().filter(|s| s.len() == first.len()) {
            let dom: Vec<usize> = first.iter().collect();
            let targets: Vec<usize> = second.iter().collect();
            let mut maps = Vec::new();
            extend(&dom, &targets, &mut vec![false; targets.len()], &mut Vec::new(), &mut maps);
            for map in maps {
                let t = Triple { first, second, map, preset };
                if t.validate(rs1, rs2).is_ok() {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// One step of the inductive sequence; all data at index `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductiveStep {
    pub triple: Triple,
    pub u1: Elem,
    pub x1: Elem,
    pub x2: Elem,
    pub u2: Elem,
    pub e1: NodeSubset,
}

/// The sequence `(C^(i), u1^(i))` up to the first index where `C2` stabilizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductiveTrace {
    /// Steps `0..=i0`.
    pub steps: Vec<InductiveStep>,
    /// `C^(i0 + 1)`.
    pub final_triple: Triple,
    /// `u1^(i0 + 1)`.
    pub final_u1: Elem,
}

impl InductiveTrace {
    pub fn stop_index(&self) -> usize {
        self.steps.len() - 1
    }
}

/// Two groups with triples `A` and `C` between them.
#[derive(Debug, Clone)]
pub struct PairContext {
    pub g1: Arc<WeylGroup>,
    pub g2: Arc<WeylGroup>,
    pub a: Triple,
    pub c: Triple,
    a_ext: Vec<(Elem, Elem)>,
    c_ext: Vec<(Elem, Elem)>,
}

impl PairContext {
    pub fn new(g1: Arc<WeylGroup>, g2: Arc<WeylGroup>, a: Triple, c: Triple) -> Result<PairContext, TripleError> {
        a.validate(g1.root_system(), g2.root_system())?;
        c.validate(g1.root_system(), g2.root_system())?;
        if c.preset == Y2Preset::Product && !c.second.is_empty() {
            return Err(TripleError::ProductNeedsEmpty(c.second.to_string()));
        }
        let a_ext = extension(&g1, &g2, &a);
        let c_ext = extension(&g1, &g2, &c);
        Ok(PairContext { g1, g2, a, c, a_ext, c_ext })
    }

    /// `W_{A1}` paired with the images under `a`, in canonical order.
    pub fn a_pairs(&self) -> &[(Elem, Elem)] {
        &self.a_ext
    }

    /// `W_{C1}` paired with the images under `c`, in canonical order.
    pub fn c_pairs(&self) -> &[(Elem, Elem)] {
        &self.c_ext
    }

    /// Image of `x` in `W_{A1}` under the extension of `a`.
    pub fn a_of(&self, x: Elem) -> Option<Elem> {
        lookup(&self.a_ext, x)
    }

    /// Image of `y` in `W_{C1}` under the extension of `c`.
    pub fn c_of(&self, y: Elem) -> Option<Elem> {
        lookup(&self.c_ext, y)
    }

    /// `v1` in `W1^{C1}` and `v2` in `^{A2}W2`.
    pub fn require_piece(&self, v1: Elem, v2: Elem) -> Result<(), WeylError> {
        self.g1.require_min_rep(v1, self.c.first, Side::Right)?;
        self.g2.require_min_rep(v2, self.a.second, Side::Left)
    }

    /// `beta -> v2^{-1} a v1 c^{-1} beta` for `beta` in `C2`; `None` unless each
    /// intermediate image is a simple root of the required set.
    pub fn twist_step(&self, v1: Elem, v2: Elem, beta: usize) -> Option<usize> {
        let gamma = self.c.apply_inverse(beta)?;
        let delta = self.g1.simple_image(v1, gamma).filter(|&d| self.a.first.contains(d))?;
        let eps = self.a.apply(delta)?;
        self.g2.simple_image(self.g2.inv(v2), eps).filter(|&e| self.c.second.contains(e))
    }

    /// `alpha -> v1 c^{-1} v2^{-1} a alpha` for `alpha` in `A1`.
    pub fn twist_step_first(&self, v1: Elem, v2: Elem, alpha: usize) -> Option<usize> {
        let eps = self.a.apply(alpha)?;
        let beta = self.g2.simple_image(self.g2.inv(v2), eps).filter(|&b| self.c.second.contains(b))?;
        let gamma = self.c.apply_inverse(beta)?;
        self.g1.simple_image(v1, gamma).filter(|&d| self.a.first.contains(d))
    }

    /// `C2(v1, v2)`: the largest subset of `C2` mapped into itself by the twist.
    pub fn stable_second(&self, v1: Elem, v2: Elem) -> NodeSubset {
        greatest_stable(self.c.second, |b| self.twist_step(v1, v2, b))
    }

    /// `A1(v1, v2)`: the largest subset of `A1` mapped into itself by the twist.
    pub fn stable_first(&self, v1: Elem, v2: Elem) -> NodeSubset {
        greatest_stable(self.a.first, |a| self.twist_step_first(v1, v2, a))
    }

    /// `(A1(v1,v2), C2(v1,v2), c v1^{-1})`.
    pub fn terminal_triple(&self, v1: Elem, v2: Elem) -> Triple {
        let first = self.stable_first(v1, v2);
        let second = self.stable_second(v1, v2);
        let v1inv = self.g1.inv(v1);
        let map = first
            .iter()
            .filter_map(|al| self.g1.simple_image(v1inv, al).and_then(|g| self.c.apply(g)).map(|b| (al, b)))
            .collect();
        Triple { first, second, map, preset: self.c.preset }
    }

    /// `(C1', C2', c')` with `C1' = {alpha in E1 : y1^{-1} alpha in C1}`,
    /// `C2' = c(C1 ∩ y1^{-1} E1)` and `c' = c y1^{-1}`.
    pub fn derived_triple(&self, c: &Triple, e1: NodeSubset, y1: Elem) -> Result<Triple, TripleError> {
        self.g1.require_min_rep(y1, e1, Side::Left)?;
        self.g1.require_min_rep(y1, c.first, Side::Right)?;
        let y1inv = self.g1.inv(y1);
        let first = self.g1.preimage_subset(y1inv, c.first, e1);
        let second = c.image(self.g1.preimage_subset(y1, e1, c.first));
        let map = first
            .iter()
            .map(|al| (al, c.apply(self.g1.simple_image(y1inv, al).expect("first is a preimage set")).expect("in C1")))
            .collect();
        let t = Triple { first, second, map, preset: c.preset };
        t.validate(self.g1.root_system(), self.g2.root_system())?;
        Ok(t)
    }

    /// Iterates `C^(i+1) = derived(C^(i), E1^(i), x1^(i))` from `C^(0) = C`,
    /// `u1^(0) = v1` until `C2` stops shrinking.
    pub fn inductive_sequence(&self, v1: Elem, v2: Elem) -> Result<InductiveTrace, TripleError> {
        self.require_piece(v1, v2)?;
        let mut triple = self.c.clone();
        let mut u1 = v1;
        let mut steps = Vec::new();
        loop {
            let (x2, u2) = self.g2.carter_factor(v2, self.a.second, triple.second)?;
            let reach = self.g2.preimage_subset(self.g2.inv(x2), triple.second, self.a.second);
            let e1 = self.a.preimage(reach);
            let (x1, u1_next) = self.g1.parabolic_factor(u1, e1, Side::Left);
            let next = self.derived_triple(&triple, e1, x1)?;
            let done = next.second == triple.second;
            steps.push(InductiveStep { triple, u1, x1, x2, u2, e1 });
            triple = next;
            u1 = u1_next;
            if done {
                return Ok(InductiveTrace { steps, final_triple: triple, final_u1: u1 });
            }
        }
    }

    /// `#{alpha in Phi^+ \ Phi^+_C : u alpha > 0}`, the dimension of `U1 ∩ Ad_u U_C`.
    pub fn unipotent_overlap(&self, u: Elem, c1: NodeSubset) -> usize {
        let rs = self.g1.root_system();
        rs.positive_roots()
            .iter()
            .zip(rs.positive_supports())
            .filter(|(r, sup)| !sup.is_subset(c1) && self.g1.act(u, r).is_positive())
            .count()
    }

    /// Increments of the unipotent overlap along the inductive sequence.
    pub fn fiber_dim_trace(&self, v1: Elem, v2: Elem) -> Result<Vec<i64>, TripleError> {
        let trace = self.inductive_sequence(v1, v2)?;
        let mut dims: Vec<i64> =
            trace.steps.iter().map(|s| self.unipotent_overlap(s.u1, s.triple.first) as i64).collect();
        dims.push(self.unipotent_overlap(trace.final_u1, trace.final_triple.first) as i64);
        Ok(dims.windows(2).map(|w| w[1] - w[0]).collect())
    }

    /// `(C1*, C2, c (w0 w0C)^{-1})` with `C1* = -w0(C1)`.
    pub fn dual_triple(&self) -> Result<Triple, TripleError> {
        let g = &self.g1;
        let first = g.opposition(self.c.first);
        let shift = self.dual_shift();
        let map = first
            .iter()
            .map(|al| {
                let back = g.simple_image(shift, al).expect("w0C w0 maps C1* onto C1");
                (al, self.c.apply(back).expect("in C1"))
            })
            .collect();
        let t = Triple { first, second: self.c.second, map, preset: self.c.preset };
        t.validate(g.root_system(), self.g2.root_system())?;
        Ok(t)
    }

    /// `(w0 w0C)^{-1}`.
    pub fn dual_shift(&self) -> Elem {
        let g = &self.g1;
        g.inv(g.mul(g.longest(g.root_system().all_nodes()), g.longest(self.c.first)))
    }

    pub fn with_c(&self, c: Triple) -> Result<PairContext, TripleError> {
        PairContext::new(self.g1.clone(), self.g2.clone(), self.a.clone(), c)
    }

    pub fn dual(&self) -> Result<PairContext, TripleError> {
        self.with_c(self.dual_triple()?)
    }
}

fn lookup(pairs: &[(Elem, Elem)], x: Elem) -> Option<Elem> {
    pairs.binary_search_by_key(&x, |p| p.0).ok().map(|k| pairs[k].1)
}

fn extension(g1: &WeylGroup, g2: &WeylGroup, t: &Triple) -> Vec<(Elem, Elem)> {
    g1.parabolic(t.first)
        .into_iter()
        .map(|x| {
            let img: Vec<usize> = g1.word(x).iter().map(|&i| t.apply(i).expect("word inside first")).collect();
            (x, g2.from_word(&img))
        })
        .collect()
}

fn greatest_stable(start: NodeSubset, step: impl Fn(usize) -> Option<usize>) -> NodeSubset {
    let mut s = start;
    loop {
        let keep = NodeSubset::from_indices(s.iter().filter(|&b| step(b).is_some_and(|t| s.contains(t))));
        if keep == s {
            return s;
        }
        s = keep;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn group(s: &str) -> Arc<WeylGroup> {
        Arc::new(WeylGroup::new(RootSystem::parse(s).unwrap()).unwrap())
    }

    fn set(ix: &[usize]) -> NodeSubset {
        NodeSubset::from_indices(ix.iter().copied())
    }

    fn swap_ctx() -> PairContext {
        let g = group("A2");
        let c = Triple { first: set(&[1]), second: set(&[0]), map: BTreeMap::from([(1, 0)]), preset: Y2Preset::Identification };
        PairContext::new(g.clone(), g, Triple::swap(), c).unwrap()
    }

    #[test]
    fn validation_catches_broken_maps() {
        let b2 = RootSystem::parse("B2").unwrap();
        let flip = Triple { first: set(&[0, 1]), second: set(&[0, 1]), map: BTreeMap::from([(0, 1), (1, 0)]), preset: Y2Preset::Identification };
        assert!(matches!(flip.validate(&b2, &b2), Err(TripleError::CartanMismatch { .. })));
        let a2 = RootSystem::parse("A2").unwrap();
        assert!(flip.validate(&a2, &a2).is_ok());
        let short = Triple { first: set(&[0, 1]), second: set(&[0]), map: BTreeMap::from([(0, 0)]), preset: Y2Preset::Identification };
        assert!(matches!(short.validate(&a2, &a2), Err(TripleError::NotBijective { .. })));
        let far = Triple { first: set(&[2]), second: set(&[0]), map: BTreeMap::from([(2, 0)]), preset: Y2Preset::Identification };
        assert!(matches!(far.validate(&a2, &a2), Err(TripleError::NodeOutOfRange { .. })));
    }

    #[test]
    fn presets_parse() {
        let a2 = RootSystem::parse("A2").unwrap();
        let b2 = RootSystem::parse("B2").unwrap();
        assert_eq!(Triple::parse("diag", &a2, &a2).unwrap(), Triple::diag(2));
        assert_eq!(Triple::parse("swap", &a2, &a2).unwrap(), Triple::swap());
        assert!(matches!(Triple::parse("swap", &b2, &b2), Err(TripleError::SwapNeedsA2)));
        assert!(matches!(Triple::parse("diag", &a2, &b2), Err(TripleError::NeedsSameSystem(_))));
        let lit = Triple::parse("A1={1};A2={2};a={1->2};preset=identification", &a2, &a2).unwrap();
        assert_eq!(lit, Triple::swap());
        assert!(matches!("A1={1};A2={2}".parse::<Triple>(), Err(TripleError::Parse { .. })));
        assert!(matches!("A1={1};A2={2};a={1->2};bogus=1".parse::<Triple>(), Err(TripleError::Parse { pos: 23, .. })));
    }

    #[test]
    fn admissible_triple_counts() {
        let a2 = RootSystem::parse("A2").unwrap();
        assert_eq!(all_triples(&a2, &a2, Y2Preset::Identification).len(), 7);
        let b2 = RootSystem::parse("B2").unwrap();
        assert_eq!(all_triples(&b2, &b2, Y2Preset::Identification).len(), 6);
    }

    #[test]
    fn twist_example_in_a2() {
        let ctx = swap_ctx();
        let v1 = ctx.g1.parse("s2 s1").unwrap();
        let v2 = ctx.g2.parse("s1 s2").unwrap();
        ctx.require_piece(v1, v2).unwrap();
        assert_eq!(ctx.twist_step(v1, v2, 0), Some(0));
        assert_eq!(ctx.stable_second(v1, v2), set(&[0]));
        assert_eq!(ctx.stable_first(v1, v2), set(&[0]));
        assert_eq!(ctx.twist_step(Elem::E, Elem::E, 0), None);
    }

    #[test]
    fn product_preset_requires_empty_second_set() {
        let g = group("A1");
        let mut c = Triple::diag(1);
        c.preset = Y2Preset::Product;
        assert!(matches!(PairContext::new(g.clone(), g, Triple::trivial(), c), Err(TripleError::ProductNeedsEmpty(_))));
    }

    #[test]
    fn extensions_are_homomorphisms() {
        let g = group("A2");
        let flip = Triple { first: set(&[0, 1]), second: set(&[0, 1]), map: BTreeMap::from([(0, 1), (1, 0)]), preset: Y2Preset::Identification };
        let ctx = PairContext::new(g.clone(), g.clone(), flip, Triple::diag(2)).unwrap();
        for &(x, ax) in ctx.a_pairs() {
            for &(y, ay) in ctx.a_pairs() {
                assert_eq!(ctx.a_of(g.mul(x, y)), Some(g.mul(ax, ay)));
            }
            assert_eq!(g.length(x), g.length(ax));
        }
    }

    #[test]
    fn dual_triple_of_a2_moves_the_node() {
        let g = group("A2");
        let ctx = PairContext::new(g.clone(), g, Triple::trivial(), Triple::identity_on(set(&[0]))).unwrap();
        let d = ctx.dual_triple().unwrap();
        assert_eq!((d.first, d.second), (set(&[1]), set(&[0])));
    }

    #[test]
    fn inductive_sequence_trivial_case() {
        let g = group("A2");
        let ctx = PairContext::new(g.clone(), g, Triple::diag(2), Triple::diag(2)).unwrap();
        let tr = ctx.inductive_sequence(Elem::E, Elem::E).unwrap();
        assert_eq!(tr.stop_index(), 0);
        assert_eq!(tr.final_u1, Elem::E);
        assert!(tr.steps[0].triple.same_diagram_map(&ctx.terminal_triple(Elem::E, Elem::E)));
    }

    proptest! {
        #[test]
        fn literal_round_trip(first in 0u32..64, perm_seed in 0usize..720, product in any::<bool>()) {
            let first = NodeSubset(first);
            let mut targets: Vec<usize> = (0..6).collect();
            let mut seed = perm_seed;
            for k in (1..6).rev() {
                targets.swap(k, seed % (k + 1));
                seed /= k + 1;
            }
            let map: BTreeMap<usize, usize> = first.iter().zip(targets).collect();
            let t = Triple {
                first,
                second: NodeSubset::from_indices(map.values().copied()),
                map,
                preset: if product { Y2Preset::Product } else { Y2Preset::Identification },
            };
            prop_assert_eq!(t.to_string().parse::<Triple>().unwrap(), t);
        }
    }
}
