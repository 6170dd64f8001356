//! Residues, nodes, multipartitions, tableaux and shapes.
//!
//! Nodes are triples `(component, row, column)`, all 1-based, ordered
//! lexicographically. This is the order in which the initial tableau
//! `t^λ` is filled, so "earlier" and "later" always refer to it.

mod cp;
mod shape;
mod tableau;

pub use cp::{detect_cp_pair, enumerate_cp_pairs, one_row_degree, CpPair};
pub use shape::{Shape, ShapeKind};
pub use tableau::{standard_tableaux, tableaux_with_residues, Tableau};

use crate::error::{invalid, Error, Result};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// The quantum characteristic `e`: a finite value `e >= 2`, or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuantumChar {
    Finite(u32),
    Infinite,
}

/// A residue. For finite `e` it lies in `0..e`; otherwise it is any integer.
pub type Residue = i64;

impl QuantumChar {
    pub fn finite(e: u32) -> Result<Self> {
        if e < 2 {
            return invalid(format!("quantum characteristic must be at least 2, got {e}"));
        }
        Ok(QuantumChar::Finite(e))
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" | "∞" | "0" => Ok(QuantumChar::Infinite),
            t => match t.parse::<u32>() {
                Ok(e) => Self::finite(e),
                Err(_) => invalid(format!("cannot parse quantum characteristic {t:?}")),
            },
        }
    }

    pub fn residue(self, x: i64) -> Residue {
        match self {
            QuantumChar::Finite(e) => x.rem_euclid(e as i64),
            QuantumChar::Infinite => x,
        }
    }

    /// Whether `i = j + 1` in the residue set.
    pub fn is_successor(self, i: Residue, j: Residue) -> bool {
        self.residue(j + 1) == i
    }

    /// Whether `i` and `j` are joined by an edge of the quiver.
    pub fn adjacent(self, i: Residue, j: Residue) -> bool {
        i != j && (self.is_successor(i, j) || self.is_successor(j, i))
    }

    /// The Cartan matrix entry `a_{ij}`.
    pub fn cartan(self, i: Residue, j: Residue) -> i64 {
        if i == j {
            2
        } else if self == QuantumChar::Finite(2) && self.adjacent(i, j) {
            -2
        } else if self.adjacent(i, j) {
            -1
        } else {
            0
        }
    }

    /// Whether a set of residues misses at least one residue.
    pub fn misses_some(self, residues: &BTreeSet<Residue>) -> bool {
        match self {
            QuantumChar::Finite(e) => (residues.len() as u32) < e,
            QuantumChar::Infinite => true,
        }
    }
}

impl fmt::Display for QuantumChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantumChar::Finite(e) => write!(f, "{e}"),
            QuantumChar::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for QuantumChar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            QuantumChar::Finite(e) => s.serialize_u32(*e),
            QuantumChar::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for QuantumChar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let s = match &v {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s.clone(),
            _ => return Err(de::Error::custom("expected a number or \"inf\"")),
        };
        QuantumChar::parse(&s).map_err(de::Error::custom)
    }
}

/// A multicharge `κ = (κ_1, ..., κ_ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multicharge(pub Vec<i64>);

impl Multicharge {
    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let mut out = Vec::new();
        for part in t.split([',', ' ']).filter(|p| !p.is_empty()) {
            match part.parse::<i64>() {
                Ok(v) => out.push(v),
                Err(_) => return invalid(format!("bad multicharge entry {part:?}")),
            }
        }
        if out.is_empty() {
            return invalid("empty multicharge");
        }
        Ok(Multicharge(out))
    }
}

/// A node `(component, row, column)` of a Young diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub comp: usize,
    pub row: usize,
    pub col: usize,
}

impl Node {
    pub const fn new(comp: usize, row: usize, col: usize) -> Self {
        Node { comp, row, col }
    }

    pub fn residue(&self, e: QuantumChar, kappa: &Multicharge) -> Residue {
        e.residue(kappa.0[self.comp - 1] + self.col as i64 - self.row as i64)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.comp, self.row, self.col)
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.comp, self.row, self.col].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [comp, row, col] = <[usize; 3]>::deserialize(d)?;
        if comp == 0 || row == 0 || col == 0 {
            return Err(de::Error::custom("node coordinates are 1-based"));
        }
        Ok(Node { comp, row, col })
    }
}

/// An `ℓ`-multipartition. Components hold their nonzero parts in
/// nonincreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Multipartition(Vec<Vec<usize>>);

impl<'de> Deserialize<'de> for Multipartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let comps = Vec::<Vec<usize>>::deserialize(d)?;
        Multipartition::new(comps).map_err(de::Error::custom)
    }
}

impl Multipartition {
    pub fn new(comps: Vec<Vec<usize>>) -> Result<Self> {
        if comps.is_empty() {
            return invalid("a multipartition needs at least one component");
        }
        let mut out = Vec::with_capacity(comps.len());
        for c in comps {
            let parts: Vec<usize> = c.into_iter().filter(|&p| p > 0).collect();
            if parts.windows(2).any(|w| w[0] < w[1]) {
                return invalid(format!("parts must be nonincreasing: {parts:?}"));
            }
            out.push(parts);
        }
        Ok(Multipartition(out))
    }

    /// Parses `"(;3,2,2;4,3)"`, `"(3,2)"` or a JSON array of arrays.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            let comps: Vec<Vec<usize>> = serde_json::from_str(s)
                .map_err(|e| Error::InvalidInput(format!("bad multipartition {s:?}: {e}")))?;
            return Self::new(comps);
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidInput(format!("multipartition must be parenthesised: {s:?}")))?;
        let mut comps = Vec::new();
        for comp in inner.split(';') {
            let comp = comp.trim().trim_start_matches('(').trim_end_matches(')');
            let mut parts = Vec::new();
            for p in comp.split(',').map(str::trim).filter(|p| !p.is_empty() && *p != "∅") {
                parts.push(
                    p.parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad part {p:?} in {s:?}")))?,
                );
            }
            comps.push(parts);
        }
        Self::new(comps)
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().flatten().sum()
    }

    pub fn row_len(&self, comp: usize, row: usize) -> usize {
        self.0
            .get(comp.wrapping_sub(1))
            .and_then(|c| c.get(row.wrapping_sub(1)))
            .copied()
            .unwrap_or(0)
    }

    pub fn contains(&self, n: Node) -> bool {
        n.col >= 1 && n.col <= self.row_len(n.comp, n.row)
    }

    /// All nodes, in increasing order.
    pub fn nodes(&self) -> Vec<Node> {
        let mut v = Vec::with_capacity(self.size());
        for (m, comp) in self.0.iter().enumerate() {
            for (r, &len) in comp.iter().enumerate() {
                for c in 1..=len {
                    v.push(Node::new(m + 1, r + 1, c));
                }
            }
        }
        v
    }

    /// Position of a node in the increasing list of nodes.
    pub fn node_index(&self, n: Node) -> Option<usize> {
        if !self.contains(n) {
            return None;
        }
        let before: usize = self.0[..n.comp - 1].iter().flatten().sum::<usize>()
            + self.0[n.comp - 1][..n.row - 1].iter().sum::<usize>();
        Some(before + n.col - 1)
    }

    pub fn addable_nodes(&self) -> Vec<Node> {
        let mut v = Vec::new();
        for (m, comp) in self.0.iter().enumerate() {
            for r in 0..=comp.len() {
                let len = comp.get(r).copied().unwrap_or(0);
                let above = if r == 0 { usize::MAX } else { comp[r - 1] };
                if len < above {
                    v.push(Node::new(m + 1, r + 1, len + 1));
                }
            }
        }
        v
    }

    pub fn removable_nodes(&self) -> Vec<Node> {
        let mut v = Vec::new();
        for (m, comp) in self.0.iter().enumerate() {
            for r in 0..comp.len() {
                let below = comp.get(r + 1).copied().unwrap_or(0);
                if comp[r] > below {
                    v.push(Node::new(m + 1, r + 1, comp[r]));
                }
            }
        }
        v
    }

    /// Adds an addable node.
    pub fn with_node(&self, n: Node) -> Result<Self> {
        if !self.addable_nodes().contains(&n) {
            return invalid(format!("{n} is not addable"));
        }
        let mut c = self.0.clone();
        let comp = &mut c[n.comp - 1];
        if n.row > comp.len() {
            comp.push(1);
        } else {
            comp[n.row - 1] += 1;
        }
        Ok(Multipartition(c))
    }

    /// Removes a removable node.
    pub fn without_node(&self, n: Node) -> Result<Self> {
        if !self.removable_nodes().contains(&n) {
            return invalid(format!("{n} is not removable"));
        }
        let mut c = self.0.clone();
        let comp = &mut c[n.comp - 1];
        comp[n.row - 1] -= 1;
        if comp[n.row - 1] == 0 {
            comp.pop();
        }
        Ok(Multipartition(c))
    }

    /// Builds the multipartition with exactly the given nodes, if they form one.
    pub fn from_nodes(level: usize, nodes: &BTreeSet<Node>) -> Result<Self> {
        let mut comps: Vec<Vec<usize>> = vec![Vec::new(); level];
        for n in nodes {
            if n.comp == 0 || n.comp > level {
                return invalid(format!("node {n} outside level {level}"));
            }
            let comp = &mut comps[n.comp - 1];
            if comp.len() < n.row {
                comp.resize(n.row, 0);
            }
            comp[n.row - 1] += 1;
        }
        let mp = Multipartition::new(comps)?;
        let back: BTreeSet<Node> = mp.nodes().into_iter().collect();
        if &back != nodes {
            return invalid("node set is not a Young diagram");
        }
        Ok(mp)
    }

    /// Componentwise row maximum; its diagram is the union of both diagrams.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.level() != other.level() {
            return invalid("level mismatch");
        }
        let comps = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| {
                (0..a.len().max(b.len()))
                    .map(|i| a.get(i).copied().unwrap_or(0).max(b.get(i).copied().unwrap_or(0)))
                    .collect()
            })
            .collect();
        Multipartition::new(comps)
    }

    /// Dominance order on multipartitions of the same size and level.
    pub fn dominates(&self, other: &Self) -> bool {
        if self.level() != other.level() || self.size() != other.size() {
            return false;
        }
        let (mut sa, mut sb) = (0usize, 0usize);
        for m in 0..self.level() {
            let (a, b) = (&self.0[m], &other.0[m]);
            for r in 0..a.len().max(b.len()) {
                sa += a.get(r).copied().unwrap_or(0);
                sb += b.get(r).copied().unwrap_or(0);
                if sa < sb {
                    return false;
                }
            }
        }
        true
    }

    pub fn residue_sequence_of_nodes(&self, e: QuantumChar, kappa: &Multicharge) -> Vec<Residue> {
        self.nodes().iter().map(|n| n.residue(e, kappa)).collect()
    }
}

impl Multipartition {
    /// Labels in the layout of [`Tableau::render`]: rows separated by `/`,
    /// components by `|`, empty components as `∅`.
    pub fn render_with(&self, mut label: impl FnMut(Node) -> String) -> String {
        let comps: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .map(|(m, comp)| {
                if comp.is_empty() {
                    return "∅".to_string();
                }
                comp.iter()
                    .enumerate()
                    .map(|(r, &len)| {
                        (1..=len).map(|c| label(Node::new(m + 1, r + 1, c))).collect::<Vec<_>>().join(" ")
                    })
                    .collect::<Vec<_>>()
                    .join(" / ")
            })
            .collect();
        comps.join(" | ")
    }

    pub fn render_residues(&self, e: QuantumChar, kappa: &Multicharge) -> String {
        self.render_with(|n| n.residue(e, kappa).to_string())
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .0
            .iter()
            .map(|c| c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "({})", comps.join(";"))
    }
}

/// All multipartitions of `n` with the given level.
pub fn multipartitions(n: usize, level: usize) -> Vec<Multipartition> {
    fn partitions(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            acc.push(p);
            partitions(n - p, p, acc, out);
            acc.pop();
        }
    }
    fn go(n: usize, level: usize, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Multipartition>) {
        if level == 1 {
            let mut ps = Vec::new();
            partitions(n, n, &mut Vec::new(), &mut ps);
            for p in ps {
                acc.push(p);
                out.push(Multipartition(acc.clone()));
                acc.pop();
            }
            return;
        }
        for k in 0..=n {
            let mut ps = Vec::new();
            partitions(k, k, &mut Vec::new(), &mut ps);
            for p in ps {
                acc.push(p);
                go(n - k, level - 1, acc, out);
                acc.pop();
            }
        }
    }
    if level == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(n, level, &mut Vec::new(), &mut out);
    out
}
