//! Weyl groups as explicit finite tables.
//!
//! Every element is enumerated once and addressed by an [`Elem`] index.
//! Indices follow the canonical order: length first, then the
//! lexicographically smallest reduced word. The canonical value of an element
//! is its action table on the simple roots ([`WeylElt`]); all other data
//! (words, products, inverses, the Bruhat order) is derived from it.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootdata::{NodeSubset, Root, RootSystem};

/// Default cap on `|W|`; large enough for `F4` and `B4`.
pub const MAX_GROUP_ORDER: usize = 1152;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("Weyl group of {system} has more than {cap} elements")]
    TooLarge { system: String, cap: usize },
    #[error("elements act on root systems of different rank ({left} vs {right})")]
    MixedRootSystems { left: usize, right: usize },
    #[error("action table does not belong to this Weyl group")]
    Foreign,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{elem} is not a minimal {side} coset representative for {subset}; its representative is {normal}")]
    NotMinimal { elem: String, subset: String, side: Side, normal: String },
    #[error("{lower} is not below {upper} in Bruhat order")]
    NotBelow { lower: String, upper: String },
    #[error("no witness found for {0}")]
    NoWitness(String),
    #[error("inconsistent cached tables: {0}")]
    Inconsistent(String),
}

/// Index of an element in its [`WeylGroup`]; index order is canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(pub u32);

impl Elem {
    pub const E: Elem = Elem(0);

    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Which cosets of `W_J` are represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// `W^J`: minimal in `w W_J`, i.e. `w(alpha) > 0` for `alpha` in `J`.
    Right,
    /// `^J W`: minimal in `W_J w`, i.e. `w^{-1}(alpha) > 0` for `alpha` in `J`.
    Left,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "right",
            Side::Left => "left",
        })
    }
}

/// Canonical value of a Weyl group element: the images of the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElt {
    pub images: Vec<Root>,
    pub length: usize,
}

impl WeylElt {
    pub fn identity(rank: usize) -> WeylElt {
        WeylElt { images: (0..rank).map(|i| Root::simple(rank, i)).collect(), length: 0 }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn act(&self, r: &Root) -> Root {
        act_images(&self.images, r)
    }

    /// `self * other`, acting by `other` first. The length is recomputed against `rs`.
    pub fn compose(&self, other: &WeylElt, rs: &RootSystem) -> Result<WeylElt, WeylError> {
        if self.rank() != other.rank() || self.rank() != rs.rank() {
            return Err(WeylError::MixedRootSystems { left: self.rank(), right: other.rank() });
        }
        let images: Vec<Root> = other.images.iter().map(|r| self.act(r)).collect();
        let length = inversions(&images, rs);
        Ok(WeylElt { images, length })
    }
}

fn act_images(images: &[Root], r: &Root) -> Root {
    let rank = images.len();
    let mut out = vec![0; rank];
    for (c, img) in r.0.iter().zip(images) {
        if *c != 0 {
            for (o, x) in out.iter_mut().zip(&img.0) {
                *o += c * x;
            }
        }
    }
    Root(out)
}

fn inversions(images: &[Root], rs: &RootSystem) -> usize {
    rs.positive_roots().iter().filter(|b| act_images(images, b).is_negative()).count()
}

fn right_reflect_images(images: &[Root], i: usize, rs: &RootSystem) -> Vec<Root> {
    // (w s_i)(alpha_j) = w(alpha_j) - <alpha_i^vee, alpha_j> w(alpha_i)
    let rank = images.len();
    (0..rank)
        .map(|j| {
            let a = rs.pairing(i, j);
            if a == 0 {
                images[j].clone()
            } else {
                Root((0..rank).map(|t| images[j].0[t] - a * images[i].0[t]).collect())
            }
        })
        .collect()
}

/// Which inequality `wwu_witness` searches for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WwuKind {
    /// `u1 <= u` with `w' u1 <= w u`.
    ShrinkLeft,
    /// `u2 <= u` with `w' u <= w u2`.
    ShrinkRight,
}

/// Result of [`WeylGroup::max_below`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxBelow {
    /// First `v <= u` in canonical order achieving the maximum.
    pub u1: Elem,
    /// The maximum of `{v w : v <= u}`.
    pub product: Elem,
}

/// A finite Weyl group with precomputed multiplication and Bruhat tables.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rs: RootSystem,
    elts: Vec<WeylElt>,
    words: Vec<Vec<u8>>,
    supports: Vec<NodeSubset>,
    right: Vec<u32>,
    left: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    bruhat: Vec<u64>,
    row_words: usize,
    index: HashMap<Vec<Root>, u32>,
}

impl WeylGroup {
    pub fn new(rs: RootSystem) -> Result<WeylGroup, WeylError> {
        WeylGroup::with_cap(rs, MAX_GROUP_ORDER)
    }

    /// Enumerates `W` by breadth-first closure, refusing groups larger than `cap`.
    pub fn with_cap(rs: RootSystem, cap: usize) -> Result<WeylGroup, WeylError> {
        let rank = rs.rank();
        let id = WeylElt::identity(rank).images;
        let mut seen: HashMap<Vec<Root>, usize> = HashMap::new();
        let mut all = vec![id.clone()];
        seen.insert(id, 0);
        let mut k = 0;
        while k < all.len() {
            for i in 0..rank {
                let next = right_reflect_images(&all[k], i, &rs);
                if !seen.contains_key(&next) {
                    if all.len() == cap {
                        return Err(WeylError::TooLarge { system: rs.to_string(), cap });
                    }
                    seen.insert(next.clone(), all.len());
                    all.push(next);
                }
            }
            k += 1;
        }
        WeylGroup::assemble(rs, all, None)
    }

    /// Rebuilds a group from reduced words, optionally reusing a Bruhat table.
    pub fn from_words(
        rs: RootSystem,
        words: &[Vec<usize>],
        bruhat: Option<Vec<u64>>,
    ) -> Result<WeylGroup, WeylError> {
        let rank = rs.rank();
        let mut all = Vec::with_capacity(words.len());
        for w in words {
            let mut images = WeylElt::identity(rank).images;
            for &i in w {
                if i >= rank {
                    return Err(WeylError::Inconsistent(format!("letter {i} out of range")));
                }
                images = right_reflect_images(&images, i, &rs);
            }
            all.push(images);
        }
        let g = WeylGroup::assemble(rs, all, bruhat)?;
        for (k, w) in words.iter().enumerate() {
            if g.words[k].iter().map(|&c| c as usize).ne(w.iter().copied()) {
                return Err(WeylError::Inconsistent("words are not in canonical order".into()));
            }
        }
        Ok(g)
    }

    fn assemble(rs: RootSystem, all: Vec<Vec<Root>>, bruhat: Option<Vec<u64>>) -> Result<WeylGroup, WeylError> {
        let rank = rs.rank();
        let n = all.len();
        let seen: HashMap<&Vec<Root>, usize> = all.iter().enumerate().map(|(k, v)| (v, k)).collect();
        if seen.len() != n {
            return Err(WeylError::Inconsistent("duplicate elements".into()));
        }
        let lookup = |v: &Vec<Root>| seen.get(v).copied().ok_or_else(|| WeylError::Inconsistent("not closed".into()));
        let lengths: Vec<usize> = all.iter().map(|im| inversions(im, &rs)).collect();
        let mut left_tmp = vec![0usize; n * rank];
        for (k, im) in all.iter().enumerate() {
            for i in 0..rank {
                let next: Vec<Root> = im.iter().map(|r| rs.reflect(r, i).expect("rank checked")).collect();
                left_tmp[k * rank + i] = lookup(&next)?;
            }
        }
        // lexicographically smallest reduced word: smallest left descent first
        let mut by_len: Vec<usize> = (0..n).collect();
        by_len.sort_by_key(|&k| lengths[k]);
        let mut words_tmp: Vec<Option<Vec<u8>>> = vec![None; n];
        for &k in &by_len {
            if lengths[k] == 0 {
                words_tmp[k] = Some(Vec::new());
                continue;
            }
            let i = (0..rank)
                .find(|&i| lengths[left_tmp[k * rank + i]] < lengths[k])
                .ok_or_else(|| WeylError::Inconsistent("nonidentity without descent".into()))?;
            let rest = words_tmp[left_tmp[k * rank + i]]
                .as_ref()
                .ok_or_else(|| WeylError::Inconsistent("length not additive".into()))?;
            let mut w = vec![i as u8];
            w.extend_from_slice(rest);
            words_tmp[k] = Some(w);
        }
        let words_tmp: Vec<Vec<u8>> = words_tmp.into_iter().map(|w| w.expect("all assigned")).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| lengths[a].cmp(&lengths[b]).then_with(|| words_tmp[a].cmp(&words_tmp[b])));
        let mut pos = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new as u32;
        }
        let mut elts = Vec::with_capacity(n);
        let mut words = Vec::with_capacity(n);
        let mut right = vec![0u32; n * rank];
        let mut left = vec![0u32; n * rank];
        for (new, &old) in order.iter().enumerate() {
            elts.push(WeylElt { images: all[old].clone(), length: lengths[old] });
            words.push(words_tmp[old].clone());
            for i in 0..rank {
                right[new * rank + i] = pos[lookup(&right_reflect_images(&all[old], i, &rs))?];
                left[new * rank + i] = pos[left_tmp[old * rank + i]];
            }
        }
        let supports = words.iter().map(|w| NodeSubset::from_indices(w.iter().map(|&c| c as usize))).collect();
        // u * w = (u * w') s_i where w = w' s_i is the canonical word
        let mut mul = vec![0u32; n * n];
        for u in 0..n {
            mul[u * n] = u as u32;
        }
        for w in 1..n {
            let i = *words[w].last().expect("nonidentity") as usize;
            let wp = right[w * rank + i] as usize;
            for u in 0..n {
                mul[u * n + w] = right[mul[u * n + wp] as usize * rank + i];
            }
        }
        let mut inv = vec![0u32; n];
        for u in 0..n {
            for w in 0..n {
                if mul[u * n + w] == 0 {
                    inv[u] = w as u32;
                    break;
                }
            }
        }
        let index = elts.iter().enumerate().map(|(k, e)| (e.images.clone(), k as u32)).collect();
        let row_words = n.div_ceil(64);
        let mut g = WeylGroup { rs, elts, words, supports, right, left, mul, inv, bruhat: Vec::new(), row_words, index };
        match bruhat {
            Some(b) if b.len() == n * row_words => g.bruhat = b,
            Some(_) => return Err(WeylError::Inconsistent("Bruhat table has wrong size".into())),
            None => g.bruhat = g.compute_bruhat(),
        }
        Ok(g)
    }

    /// Row `w` holds `{u : u <= w}`. For a right descent `s` of `w`:
    /// `u <= w` iff `min(u, us) <= ws`.
    fn compute_bruhat(&self) -> Vec<u64> {
        let n = self.order();
        let rw = self.row_words;
        let mut b = vec![0u64; n * rw];
        b[0] |= 1;
        for w in 1..n {
            let s = *self.words[w].last().expect("nonidentity") as usize;
            let ws = self.right_mul(Elem(w as u32), s).idx();
            for u in 0..=w {
                let us = self.right_mul(Elem(u as u32), s).idx();
                let probe = if self.elts[us].length < self.elts[u].length { us } else { u };
                if b[ws * rw + probe / 64] >> (probe % 64) & 1 == 1 {
                    b[w * rw + u / 64] |= 1 << (u % 64);
                }
            }
        }
        b
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn order(&self) -> usize {
        self.elts.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.elts.len() as u32).map(Elem)
    }

    pub fn elt(&self, w: Elem) -> &WeylElt {
        &self.elts[w.idx()]
    }

    pub fn index_of(&self, e: &WeylElt) -> Result<Elem, WeylError> {
        if e.rank() != self.rank() {
            return Err(WeylError::MixedRootSystems { left: e.rank(), right: self.rank() });
        }
        self.index.get(&e.images).map(|&k| Elem(k)).ok_or(WeylError::Foreign)
    }

    pub fn length(&self, w: Elem) -> usize {
        self.elts[w.idx()].length
    }

    /// Canonical (lexicographically smallest) reduced word, 0-based letters.
    pub fn word(&self, w: Elem) -> Vec<usize> {
        self.words[w.idx()].iter().map(|&c| c as usize).collect()
    }

    /// Nodes occurring in any reduced word of `w`.
    pub fn support(&self, w: Elem) -> NodeSubset {
        self.supports[w.idx()]
    }

    pub fn simple(&self, i: usize) -> Elem {
        self.right_mul(Elem::E, i)
    }

    pub fn right_mul(&self, w: Elem, i: usize) -> Elem {
        Elem(self.right[w.idx() * self.rank() + i])
    }

    pub fn left_mul(&self, i: usize, w: Elem) -> Elem {
        Elem(self.left[w.idx() * self.rank() + i])
    }

    pub fn mul(&self, u: Elem, w: Elem) -> Elem {
        Elem(self.mul[u.idx() * self.order() + w.idx()])
    }

    pub fn mul3(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.mul(self.mul(a, b), c)
    }

    pub fn inv(&self, w: Elem) -> Elem {
        Elem(self.inv[w.idx()])
    }

    pub fn from_word(&self, word: &[usize]) -> Elem {
        word.iter().fold(Elem::E, |w, &i| self.right_mul(w, i))
    }

    pub fn is_right_descent(&self, w: Elem, i: usize) -> bool {
        self.length(self.right_mul(w, i)) < self.length(w)
    }

    pub fn is_left_descent(&self, w: Elem, i: usize) -> bool {
        self.length(self.left_mul(i, w)) < self.length(w)
    }

    /// Bruhat order `u <= w`.
    pub fn leq(&self, u: Elem, w: Elem) -> bool {
        let k = u.idx();
        self.bruhat[w.idx() * self.row_words + k / 64] >> (k % 64) & 1 == 1
    }

    pub fn lt(&self, u: Elem, w: Elem) -> bool {
        u != w && self.leq(u, w)
    }

    pub fn bruhat_rows(&self) -> &[u64] {
        &self.bruhat
    }

    /// The Bruhat interval `[e, u]` in canonical order.
    pub fn below(&self, u: Elem) -> Vec<Elem> {
        self.elements().take(u.idx() + 1).filter(|&v| self.leq(v, u)).collect()
    }

    pub fn act(&self, w: Elem, r: &Root) -> Root {
        self.elts[w.idx()].act(r)
    }

    /// `j` with `w(alpha_i) = alpha_j`, if the image is simple.
    pub fn simple_image(&self, w: Elem, i: usize) -> Option<usize> {
        self.elts[w.idx()].images[i].simple_index()
    }

    /// Nodes of `w(S)` that are simple roots: `{j : w(alpha_i) = alpha_j, i in S}`.
    pub fn image_subset(&self, w: Elem, s: NodeSubset) -> NodeSubset {
        NodeSubset::from_indices(s.iter().filter_map(|i| self.simple_image(w, i)))
    }

    /// `T ∩ w^{-1}(S)`: nodes `i` of `T` with `w(alpha_i)` simple and in `S`.
    pub fn preimage_subset(&self, w: Elem, s: NodeSubset, t: NodeSubset) -> NodeSubset {
        NodeSubset::from_indices(t.iter().filter(|&i| self.simple_image(w, i).is_some_and(|j| s.contains(j))))
    }

    /// Serializes as `s1 s2 s1` (1-based) or `e`.
    pub fn format(&self, w: Elem) -> String {
        let word = &self.words[w.idx()];
        if word.is_empty() {
            return "e".into();
        }
        word.iter().map(|c| format!("s{}", c + 1)).collect::<Vec<_>>().join(" ")
    }

    /// Parses `e`, the empty string, or whitespace-separated `s<k>` letters.
    pub fn parse(&self, s: &str) -> Result<Elem, WeylError> {
        let mut w = Elem::E;
        let mut offset = 0;
        for tok in s.split(' ') {
            let here = offset;
            offset += tok.len() + 1;
            let t = tok.trim();
            if t.is_empty() || (t == "e" && s.trim() == "e") {
                continue;
            }
            let k: usize = t
                .strip_prefix('s')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| WeylError::Parse { pos: here, msg: format!("expected s<k>, got {t:?}") })?;
            if k == 0 || k > self.rank() {
                return Err(WeylError::Parse { pos: here, msg: format!("generator s{k} out of range for rank {}", self.rank()) });
            }
            w = self.right_mul(w, k - 1);
        }
        Ok(w)
    }

    /// `W_J` in canonical order.
    pub fn parabolic(&self, j: NodeSubset) -> Vec<Elem> {
        self.elements().filter(|&w| self.support(w).is_subset(j)).collect()
    }

    pub fn in_parabolic(&self, w: Elem, j: NodeSubset) -> bool {
        self.support(w).is_subset(j)
    }

    /// Longest element `w_{0,J}` of `W_J`.
    pub fn longest(&self, j: NodeSubset) -> Elem {
        // descend greedily: multiplying by any non-descent in J raises length
        let mut w = Elem::E;
        while let Some(i) = j.iter().find(|&i| !self.is_right_descent(w, i)) {
            w = self.right_mul(w, i);
        }
        w
    }

    pub fn is_min_rep(&self, w: Elem, j: NodeSubset, side: Side) -> bool {
        match side {
            Side::Right => j.iter().all(|i| !self.is_right_descent(w, i)),
            Side::Left => j.iter().all(|i| !self.is_left_descent(w, i)),
        }
    }

    /// `W^J` (right) or `^J W` (left) in canonical order.
    pub fn min_reps(&self, j: NodeSubset, side: Side) -> Vec<Elem> {
        self.elements().filter(|&w| self.is_min_rep(w, j, side)).collect()
    }

    /// `^A W^C`.
    pub fn double_min_reps(&self, a: NodeSubset, c: NodeSubset) -> Vec<Elem> {
        self.elements().filter(|&w| self.is_min_rep(w, a, Side::Left) && self.is_min_rep(w, c, Side::Right)).collect()
    }

    /// Right: `w = w^J * w_J`, returns `(w^J, w_J)`.
    /// Left: `w = w_J * ^J w`, returns `(^J w, w_J)`.
    pub fn parabolic_factor(&self, w: Elem, j: NodeSubset, side: Side) -> (Elem, Elem) {
        let mut rep = w;
        let mut part = Elem::E;
        match side {
            Side::Right => {
                while let Some(i) = j.iter().find(|&i| self.is_right_descent(rep, i)) {
                    rep = self.right_mul(rep, i);
                    part = self.left_mul(i, part);
                }
            }
            Side::Left => {
                while let Some(i) = j.iter().find(|&i| self.is_left_descent(rep, i)) {
                    rep = self.left_mul(i, rep);
                    part = self.right_mul(part, i);
                }
            }
        }
        (rep, part)
    }

    pub fn require_min_rep(&self, w: Elem, j: NodeSubset, side: Side) -> Result<(), WeylError> {
        if self.is_min_rep(w, j, side) {
            Ok(())
        } else {
            Err(WeylError::NotMinimal {
                elem: self.format(w),
                subset: j.to_string(),
                side,
                normal: self.format(self.parabolic_factor(w, j, side).0),
            })
        }
    }

    /// For `v` in `^A W`, the unique `v = x u` with `x` in `^A W^C` and
    /// `u` in `^{C ∩ x^{-1}(A)} W_C`.
    pub fn carter_factor(&self, v: Elem, a: NodeSubset, c: NodeSubset) -> Result<(Elem, Elem), WeylError> {
        self.require_min_rep(v, a, Side::Left)?;
        Ok(self.parabolic_factor(v, c, Side::Right))
    }

    /// Demazure-product closure of `{y}` along the canonical reduced word of `z`.
    pub fn demazure_set(&self, y: Elem, z: Elem) -> BTreeSet<Elem> {
        self.demazure_set_along(y, &self.word(z))
    }

    /// Same as [`WeylGroup::demazure_set`] along an explicit word.
    pub fn demazure_set_along(&self, y: Elem, word: &[usize]) -> BTreeSet<Elem> {
        let mut set = BTreeSet::from([y]);
        for &s in word {
            let mut next = BTreeSet::new();
            for &w in &set {
                let ws = self.right_mul(w, s);
                next.insert(ws);
                if self.length(ws) < self.length(w) {
                    next.insert(w);
                }
            }
            set = next;
        }
        set
    }

    /// All reduced words of `w`, lexicographically sorted.
    pub fn reduced_words(&self, w: Elem) -> Vec<Vec<usize>> {
        if w == Elem::E {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 0..self.rank() {
            if self.is_left_descent(w, i) {
                for mut tail in self.reduced_words(self.left_mul(i, w)) {
                    tail.insert(0, i);
                    out.push(tail);
                }
            }
        }
        out
    }

    /// Maximum of `{v w : v <= u}`, with the first `v` attaining it.
    pub fn max_below(&self, u: Elem, w: Elem) -> Result<MaxBelow, WeylError> {
        let cands: Vec<(Elem, Elem)> = self.below(u).into_iter().map(|v| (v, self.mul(v, w))).collect();
        let top = cands
            .iter()
            .map(|c| c.1)
            .find(|&m| cands.iter().all(|&(_, p)| self.leq(p, m)))
            .ok_or_else(|| WeylError::NoWitness(format!("maximum of {{v {} : v <= {}}}", self.format(w), self.format(u))))?;
        let u1 = cands.iter().find(|c| c.1 == top).expect("top is a candidate").0;
        Ok(MaxBelow { u1, product: top })
    }

    /// For `w' <= w`, the first `u_k <= u` with `w' u_k <= w u` (shrink left)
    /// or `w' u <= w u_k` (shrink right).
    pub fn wwu_witness(&self, kind: WwuKind, u: Elem, wp: Elem, w: Elem) -> Result<Elem, WeylError> {
        if !self.leq(wp, w) {
            return Err(WeylError::NotBelow { lower: self.format(wp), upper: self.format(w) });
        }
        self.below(u)
            .into_iter()
            .find(|&uk| match kind {
                WwuKind::ShrinkLeft => self.leq(self.mul(wp, uk), self.mul(w, u)),
                WwuKind::ShrinkRight => self.leq(self.mul(wp, u), self.mul(w, uk)),
            })
            .ok_or_else(|| WeylError::NoWitness(format!("{kind:?} for u={}", self.format(u))))
    }

    /// The diagram involution `-w_0` applied to a node set.
    pub fn opposition(&self, s: NodeSubset) -> NodeSubset {
        let w0 = self.longest(self.rs.all_nodes());
        NodeSubset::from_indices(s.iter().map(|i| {
            self.act(w0, &self.rs.simple_root(i)).neg().simple_index().expect("-w0 permutes simple roots")
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::new(RootSystem::parse(s).unwrap()).unwrap()
    }

    fn set(ix: &[usize]) -> NodeSubset {
        NodeSubset::from_indices(ix.iter().copied())
    }

    #[test]
    fn orders() {
        for (s, n) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("G2", 12), ("B3", 48), ("D4", 192), ("F4", 1152), ("A1xA2", 12)] {
            assert_eq!(group(s).order(), n, "{s}");
        }
        assert!(matches!(WeylGroup::new(RootSystem::parse("E6").unwrap()), Err(WeylError::TooLarge { .. })));
    }

    #[test]
    fn lengths_agree_with_word_lengths_and_breadth_first_depth() {
        for s in ["A3", "B3", "G2", "C3"] {
            let g = group(s);
            for w in g.elements() {
                assert_eq!(g.length(w), g.word(w).len());
                assert_eq!(g.from_word(&g.word(w)), w);
            }
            let w0 = g.longest(g.root_system().all_nodes());
            assert_eq!(g.length(w0), g.root_system().num_positive_roots());
            assert_eq!(w0.idx(), g.order() - 1);
        }
    }

    #[test]
    fn canonical_order_is_length_then_word() {
        let g = group("A2");
        let listed: Vec<String> = g.elements().map(|w| g.format(w)).collect();
        assert_eq!(listed, ["e", "s1", "s2", "s1 s2", "s2 s1", "s1 s2 s1"]);
    }

    #[test]
    fn multiplication_agrees_with_action_tables() {
        for s in ["A3", "B2", "G2", "A1xA1"] {
            let g = group(s);
            for u in g.elements() {
                assert_eq!(g.mul(u, g.inv(u)), Elem::E);
                for w in g.elements() {
                    let composed = g.elt(u).compose(g.elt(w), g.root_system()).unwrap();
                    assert_eq!(g.index_of(&composed).unwrap(), g.mul(u, w));
                    assert_eq!(composed.length, g.length(g.mul(u, w)));
                }
            }
        }
    }

    #[test]
    fn mixed_ranks_are_rejected() {
        let a1 = group("A1");
        let a2 = group("A2");
        let err = a1.elt(Elem::E).compose(a2.elt(Elem::E), a1.root_system());
        assert!(matches!(err, Err(WeylError::MixedRootSystems { .. })));
        assert!(a1.index_of(a2.elt(Elem::E)).is_err());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let g = group("B3");
        for w in g.elements() {
            assert_eq!(g.parse(&g.format(w)).unwrap(), w);
        }
        assert_eq!(g.parse("s1 s1").unwrap(), Elem::E);
        assert!(matches!(g.parse("s1 s4"), Err(WeylError::Parse { pos: 3, .. })));
        assert!(g.parse("t1").is_err());
    }

    #[test]
    fn coset_representatives_in_a2() {
        let g = group("A2");
        let names = |v: Vec<Elem>| v.into_iter().map(|w| g.format(w)).collect::<Vec<_>>();
        assert_eq!(names(g.min_reps(set(&[0]), Side::Right)), ["e", "s2", "s1 s2"]);
        assert_eq!(names(g.min_reps(set(&[0]), Side::Left)), ["e", "s2", "s2 s1"]);
        let w0 = g.longest(set(&[0, 1]));
        let (rep, part) = g.parabolic_factor(w0, set(&[0]), Side::Right);
        assert_eq!((g.format(rep), g.format(part)), ("s1 s2".into(), "s1".into()));
    }

    #[test]
    fn coset_sizes_and_factorizations() {
        for s in ["A3", "B3", "G2"] {
            let g = group(s);
            for j in g.root_system().all_nodes().subsets() {
                let wj = g.parabolic(j).len();
                for side in [Side::Right, Side::Left] {
                    let reps = g.min_reps(j, side);
                    assert_eq!(reps.len() * wj, g.order());
                    for w in g.elements() {
                        let (rep, part) = g.parabolic_factor(w, j, side);
                        assert!(reps.contains(&rep));
                        assert!(g.in_parabolic(part, j));
                        let back = match side {
                            Side::Right => g.mul(rep, part),
                            Side::Left => g.mul(part, rep),
                        };
                        assert_eq!(back, w);
                        assert_eq!(g.length(rep) + g.length(part), g.length(w));
                    }
                }
                let w0j = g.longest(j);
                assert!(g.parabolic(j).iter().all(|&w| g.length(w) <= g.length(w0j)));
            }
        }
    }

    #[test]
    fn carter_factor_example_and_precondition() {
        let g = group("A2");
        let v = g.parse("s1 s2").unwrap();
        let (x, u) = g.carter_factor(v, set(&[1]), set(&[0])).unwrap();
        assert_eq!((x, u), (v, Elem::E));
        let bad = g.parse("s2 s1").unwrap();
        let err = g.carter_factor(bad, set(&[1]), set(&[0])).unwrap_err();
        assert!(matches!(err, WeylError::NotMinimal { ref normal, .. } if normal == "s1"));
    }

    #[test]
    fn carter_factor_lands_in_the_stated_sets() {
        for s in ["A3", "B2", "G2"] {
            let g = group(s);
            let subsets = g.root_system().all_nodes().subsets();
            for &a in &subsets {
                for &c in &subsets {
                    for v in g.min_reps(a, Side::Left) {
                        let (x, u) = g.carter_factor(v, a, c).unwrap();
                        assert_eq!(g.mul(x, u), v);
                        assert!(g.is_min_rep(x, a, Side::Left) && g.is_min_rep(x, c, Side::Right));
                        assert!(g.in_parabolic(u, c));
                        let d = g.preimage_subset(x, a, c);
                        assert!(g.is_min_rep(u, d, Side::Left));
                    }
                }
            }
        }
    }

    #[test]
    fn demazure_set_is_independent_of_reduced_word() {
        for s in ["A3", "B2", "G2"] {
            let g = group(s);
            for y in g.elements() {
                for z in g.elements() {
                    let base = g.demazure_set(y, z);
                    for word in g.reduced_words(z) {
                        assert_eq!(g.demazure_set_along(y, &word), base);
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_word_counts() {
        let g = group("A2");
        assert_eq!(g.reduced_words(g.longest(set(&[0, 1]))), vec![vec![0, 1, 0], vec![1, 0, 1]]);
        let a3 = group("A3");
        assert_eq!(a3.reduced_words(a3.longest(set(&[0, 1, 2]))).len(), 16);
        let b2 = group("B2");
        assert_eq!(b2.reduced_words(b2.longest(set(&[0, 1]))).len(), 2);
    }

    #[test]
    fn max_below_example() {
        let g = group("A2");
        let w0 = g.longest(set(&[0, 1]));
        let m = g.max_below(w0, g.simple(0)).unwrap();
        assert_eq!(m.product, w0);
        assert_eq!(g.format(m.u1), "s1 s2");
    }

    #[test]
    fn wwu_rejects_incomparable_pair() {
        let g = group("A2");
        let err = g.wwu_witness(WwuKind::ShrinkLeft, Elem::E, g.simple(0), g.simple(1));
        assert!(matches!(err, Err(WeylError::NotBelow { .. })));
    }

    #[test]
    fn opposition_involution() {
        assert_eq!(group("A2").opposition(set(&[0])), set(&[1]));
        assert_eq!(group("A3").opposition(set(&[0, 1])), set(&[1, 2]));
        assert_eq!(group("B2").opposition(set(&[0])), set(&[0]));
        assert_eq!(group("D4").opposition(set(&[2])), set(&[2]));
    }

    #[test]
    fn cache_style_rebuild_matches() {
        let g = group("B3");
        let words: Vec<Vec<usize>> = g.elements().map(|w| g.word(w)).collect();
        let h = WeylGroup::from_words(g.root_system().clone(), &words, Some(g.bruhat_rows().to_vec())).unwrap();
        assert_eq!(h.order(), g.order());
        assert!(g.elements().all(|w| g.elt(w) == h.elt(w)));
        let mut shuffled = words.clone();
        shuffled.swap(1, 2);
        assert!(WeylGroup::from_words(g.root_system().clone(), &shuffled, None).is_err());
    }

    proptest! {
        #[test]
        fn length_is_subadditive_and_inverse_preserving(u in 0u32..48, w in 0u32..48) {
            let g = group("B3");
            let (u, w) = (Elem(u), Elem(w));
            prop_assert!(g.length(g.mul(u, w)) <= g.length(u) + g.length(w));
            prop_assert_eq!(g.length(g.inv(u)), g.length(u));
            prop_assert_eq!(g.leq(u, w), g.leq(g.inv(u), g.inv(w)));
        }

        #[test]
        fn bruhat_respects_length(u in 0u32..24, w in 0u32..24) {
            let g = group("A3");
            let (u, w) = (Elem(u), Elem(w));
            if g.lt(u, w) {
                prop_assert!(g.length(u) < g.length(w));
            }
        }
    }
}
