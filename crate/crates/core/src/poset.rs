//! Finite posets given by an explicit order relation, with exports.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation is not reflexive at node {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric on nodes {0} and {1}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive on nodes {0} <= {1} <= {2}")]
    NotTransitive(usize, usize, usize),
}

impl PosetError {
    /// Same error with node indices replaced by labels.
    pub fn describe(&self, label: impl Fn(usize) -> String) -> String {
        match *self {
            PosetError::NotReflexive(a) => format!("relation is not reflexive at {}", label(a)),
            PosetError::NotAntisymmetric(a, b) => {
                format!("relation is not antisymmetric on {} and {}", label(a), label(b))
            }
            PosetError::NotTransitive(a, b, c) => {
                format!("relation is not transitive on {} <= {} <= {}", label(a), label(b), label(c))
            }
        }
    }
}

/// Nodes with a relation `leq[i][j]`, meaning `nodes[i] <= nodes[j]`.
#[derive(Debug, Clone)]
pub struct ClosurePoset<N> {
    pub nodes: Vec<N>,
    n: usize,
    leq: Vec<bool>,
}

impl<N: Sync> ClosurePoset<N> {
    /// Fills the relation in parallel; does not check the axioms.
    pub fn from_relation(nodes: Vec<N>, rel: impl Fn(&N, &N) -> bool + Sync) -> ClosurePoset<N> {
        let n = nodes.len();
        let leq: Vec<bool> = (0..n * n).into_par_iter().map(|k| rel(&nodes[k / n], &nodes[k % n])).collect();
        ClosurePoset { nodes, n, leq }
    }

    /// Like [`ClosurePoset::from_relation`] but fails unless the relation is a partial order.
    pub fn build(nodes: Vec<N>, rel: impl Fn(&N, &N) -> bool + Sync) -> Result<ClosurePoset<N>, PosetError> {
        let p = ClosurePoset::from_relation(nodes, rel);
        p.check_partial_order()?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn same_relation<M>(&self, other: &ClosurePoset<M>) -> bool {
        self.leq == other.leq
    }

    /// First pair `(i, j)` where the two relations differ.
    pub fn first_difference<M>(&self, other: &ClosurePoset<M>) -> Option<(usize, usize)> {
        (0..self.leq.len()).find(|&k| self.leq[k] != other.leq[k]).map(|k| (k / self.n, k % self.n))
    }

    pub fn check_partial_order(&self) -> Result<(), PosetError> {
        let n = self.n;
        if let Some(a) = (0..n).find(|&a| !self.leq(a, a)) {
            return Err(PosetError::NotReflexive(a));
        }
        for a in 0..n {
            for b in a + 1..n {
                if self.leq(a, b) && self.leq(b, a) {
                    return Err(PosetError::NotAntisymmetric(a, b));
                }
            }
        }
        let bad = (0..n).into_par_iter().find_map_first(|a| {
            for b in 0..n {
                if a != b && self.leq(a, b) {
                    for c in 0..n {
                        if self.leq(b, c) && !self.leq(a, c) {
                            return Some(PosetError::NotTransitive(a, b, c));
                        }
                    }
                }
            }
            None
        });
        bad.map_or(Ok(()), Err)
    }

    /// Cover relations `(i, j)` with `i < j`, sorted.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let rows: Vec<Vec<(usize, usize)>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .filter(|&j| self.lt(i, j) && !(0..n).any(|k| k != i && k != j && self.lt(i, k) && self.lt(k, j)))
                    .map(|j| (i, j))
                    .collect()
            })
            .collect();
        rows.into_iter().flatten().collect()
    }

    /// Nodes with nothing strictly above them.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| !(0..self.n).any(|j| self.lt(i, j))).collect()
    }

    /// Strict relations `i < j` with `dim(i) >= dim(j)`.
    pub fn nonmonotone(&self, dim: impl Fn(&N) -> i64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.lt(i, j) && dim(&self.nodes[i]) >= dim(&self.nodes[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Hasse diagram in Graphviz syntax, smaller nodes at the bottom.
    pub fn to_dot(&self, name: &str, label: impl Fn(&N) -> String, dim: impl Fn(&N) -> i64) -> String {
        let mut s = String::new();
        writeln!(s, "digraph \"{name}\" {{").unwrap();
        writeln!(s, "  rankdir=BT;").unwrap();
        writeln!(s, "  node [shape=box];").unwrap();
        for (i, node) in self.nodes.iter().enumerate() {
            writeln!(s, "  n{i} [label=\"{}\\ndim={}\"];", label(node), dim(node)).unwrap();
        }
        for (i, j) in self.hasse() {
            writeln!(s, "  n{i} -> n{j};").unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// Node list with attributes, cover edges and the full relation.
    pub fn to_json(&self, attrs: impl Fn(&N) -> Value) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let mut v = attrs(n);
                if let Value::Object(m) = &mut v {
                    m.insert("id".into(), json!(i));
                }
                v
            })
            .collect();
        let edges: Vec<Value> = self.hasse().into_iter().map(|(i, j)| json!([i, j])).collect();
        let relation: Vec<Value> = (0..self.n)
            .flat_map(|i| (0..self.n).filter(move |&j| self.lt(i, j)).map(move |j| json!([i, j])))
            .collect();
        json!({ "nodes": nodes, "hasse": edges, "less_than": relation })
    }

    /// The 0/1 matrix, rows and columns labelled.
    pub fn to_tsv(&self, label: impl Fn(&N) -> String, dim: impl Fn(&N) -> i64) -> String {
        let labels: Vec<String> = self.nodes.iter().map(&label).collect();
        let mut s = String::from("piece\tdim");
        for l in &labels {
            s.push('\t');
            s.push_str(l);
        }
        s.push('\n');
        for (i, node) in self.nodes.iter().enumerate() {
            write!(s, "{}\t{}", labels[i], dim(node)).unwrap();
            for j in 0..self.n {
                s.push_str(if self.leq(i, j) { "\t1" } else { "\t0" });
            }
            s.push('\n');
        }
        s
    }
}
