use super::{Multicharge, Multipartition, Node, QuantumChar, Residue};
use crate::error::{invalid, Error, Result};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A bijective filling of a multipartition by `1..=n`.
///
/// `entries[k]` is the value placed in the `k`-th node of the shape in
/// increasing node order, so the initial tableau has `entries[k] = k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: Multipartition,
    entries: Vec<usize>,
}

impl Tableau {
    pub fn new(shape: Multipartition, entries: Vec<usize>) -> Result<Self> {
        let n = shape.size();
        if entries.len() != n {
            return invalid(format!("expected {n} entries, got {}", entries.len()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v > n || seen[v] {
                return invalid(format!("entries are not a permutation of 1..={n}"));
            }
            seen[v] = true;
        }
        Ok(Tableau { shape, entries })
    }

    /// Builds a tableau from rows given per component.
    pub fn from_rows(rows: &[Vec<Vec<usize>>]) -> Result<Self> {
        let shape = Multipartition::new(
            rows.iter().map(|c| c.iter().map(Vec::len).collect()).collect(),
        )?;
        Tableau::new(shape, rows.iter().flatten().flatten().copied().collect())
    }

    /// The initial tableau `t^λ`, filled along the node order.
    pub fn initial(shape: &Multipartition) -> Self {
        Tableau { shape: shape.clone(), entries: (1..=shape.size()).collect() }
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn value_at(&self, n: Node) -> Option<usize> {
        self.shape.node_index(n).map(|k| self.entries[k])
    }

    /// Node holding each value: `positions()[v - 1]` is the node index of `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.entries.len()];
        for (k, &v) in self.entries.iter().enumerate() {
            pos[v - 1] = k;
        }
        pos
    }

    pub fn node_of(&self, v: usize) -> Option<Node> {
        let k = self.entries.iter().position(|&x| x == v)?;
        Some(self.shape.nodes()[k])
    }

    /// Rows increase to the right and columns increase downwards.
    pub fn is_standard(&self) -> bool {
        let nodes = self.shape.nodes();
        nodes.iter().enumerate().all(|(k, n)| {
            let left_ok = n.col == 1 || self.entries[k - 1] < self.entries[k];
            let up_ok = n.row == 1
                || self.entries[self.shape.node_index(Node::new(n.comp, n.row - 1, n.col)).unwrap()]
                    < self.entries[k];
            left_ok && up_ok
        })
    }

    /// The residue sequence `(res t^{-1}(1), ..., res t^{-1}(n))`.
    pub fn residue_sequence(&self, e: QuantumChar, kappa: &Multicharge) -> Vec<Residue> {
        let nodes = self.shape.nodes();
        self.positions().iter().map(|&k| nodes[k].residue(e, kappa)).collect()
    }

    /// Number of node pairs whose entries are out of node order.
    pub fn length(&self) -> usize {
        let e = &self.entries;
        let mut inv = 0;
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if e[i] > e[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// The subtableau holding `1..=m`. Fails if it is not a diagram.
    pub fn restrict(&self, m: usize) -> Result<Tableau> {
        let nodes = self.shape.nodes();
        let kept: BTreeSet<Node> = nodes
            .iter()
            .zip(&self.entries)
            .filter(|(_, &v)| v <= m)
            .map(|(n, _)| *n)
            .collect();
        let shape = Multipartition::from_nodes(self.shape.level(), &kept)?;
        let entries = nodes
            .iter()
            .zip(&self.entries)
            .filter(|(_, &v)| v <= m)
            .map(|(_, &v)| v)
            .collect();
        Tableau::new(shape, entries)
    }

    /// Shapes of `t↓1, t↓2, ..., t↓n` for a standard tableau.
    fn shape_chain(&self) -> Vec<Multipartition> {
        let nodes = self.shape.nodes();
        let pos = self.positions();
        let mut cur = Multipartition::new(vec![Vec::new(); self.shape.level()]).unwrap();
        let mut out = Vec::with_capacity(pos.len());
        for &k in &pos {
            cur = cur.with_node(nodes[k]).expect("standard tableau");
            out.push(cur.clone());
        }
        out
    }

    /// The graded degree of a standard tableau.
    pub fn degree(&self, e: QuantumChar, kappa: &Multicharge) -> Result<i64> {
        if !self.is_standard() {
            return Err(Error::NotStandard(self.render()));
        }
        let nodes = self.shape.nodes();
        let pos = self.positions();
        let mut deg = 0i64;
        for (v, sh) in self.shape_chain().iter().enumerate() {
            let n = nodes[pos[v]];
            let i = n.residue(e, kappa);
            let add = sh.addable_nodes().iter().filter(|a| **a > n && a.residue(e, kappa) == i).count();
            let rem = sh.removable_nodes().iter().filter(|a| **a > n && a.residue(e, kappa) == i).count();
            deg += add as i64 - rem as i64;
        }
        Ok(deg)
    }

    /// Dominance: `Shape(s↓m) ⊵ Shape(t↓m)` for every `m`.
    pub fn dominates(&self, other: &Tableau) -> bool {
        if self.size() != other.size() || !self.is_standard() || !other.is_standard() {
            return false;
        }
        self.shape_chain()
            .iter()
            .zip(other.shape_chain().iter())
            .all(|(a, b)| a.dominates(b))
    }

    /// Swaps the values `r` and `r + 1`.
    pub fn swap_values(&self, r: usize) -> Tableau {
        let mut t = self.clone();
        for v in t.entries.iter_mut() {
            if *v == r {
                *v = r + 1;
            } else if *v == r + 1 {
                *v = r;
            }
        }
        t
    }

    /// Rows separated by `/`, components by `|`, empty components as `∅`.
    pub fn render(&self) -> String {
        self.shape.render_with(|n| self.value_at(n).map_or_else(String::new, |v| v.to_string()))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(Node, usize)> =
            self.shape.nodes().into_iter().zip(self.entries.iter().copied()).collect();
        let mut st = s.serialize_struct("Tableau", 2)?;
        st.serialize_field("shape", &self.shape)?;
        st.serialize_field("entries", &pairs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            shape: Multipartition,
            entries: Vec<(Node, usize)>,
        }
        let raw = Raw::deserialize(d)?;
        let mut entries = vec![0; raw.shape.size()];
        for (n, v) in raw.entries {
            let k = raw
                .shape
                .node_index(n)
                .ok_or_else(|| de::Error::custom(format!("node {n} not in shape")))?;
            entries[k] = v;
        }
        Tableau::new(raw.shape, entries).map_err(de::Error::custom)
    }
}

/// All standard tableaux of a shape.
pub fn standard_tableaux(shape: &Multipartition) -> Vec<Tableau> {
    fill(shape, |_| true)
}

/// Standard tableaux whose residue sequence equals `residues`.
pub fn tableaux_with_residues(
    shape: &Multipartition,
    e: QuantumChar,
    kappa: &Multicharge,
    residues: &[Residue],
) -> Vec<Tableau> {
    if residues.len() != shape.size() {
        return Vec::new();
    }
    fill(shape, |(v, n)| n.residue(e, kappa) == residues[v - 1])
}

fn fill(shape: &Multipartition, accept: impl Fn((usize, Node)) -> bool) -> Vec<Tableau> {
    fn go(
        shape: &Multipartition,
        cur: &mut Vec<Vec<usize>>,
        entries: &mut Vec<usize>,
        v: usize,
        accept: &dyn Fn((usize, Node)) -> bool,
        out: &mut Vec<Tableau>,
    ) {
        let n = shape.size();
        if v > n {
            out.push(Tableau { shape: shape.clone(), entries: entries.clone() });
            return;
        }
        for m in 0..shape.level() {
            let target = &shape.components()[m];
            for r in 0..target.len() {
                let len = cur[m][r];
                let above_ok = r == 0 || cur[m][r - 1] > len;
                if len < target[r] && above_ok {
                    let node = Node::new(m + 1, r + 1, len + 1);
                    if !accept((v, node)) {
                        continue;
                    }
                    let k = shape.node_index(node).unwrap();
                    cur[m][r] += 1;
                    entries[k] = v;
                    go(shape, cur, entries, v + 1, accept, out);
                    cur[m][r] -= 1;
                }
            }
        }
    }
    let mut cur: Vec<Vec<usize>> = shape.components().iter().map(|c| vec![0; c.len()]).collect();
    let mut entries = vec![0; shape.size()];
    let mut out = Vec::new();
    go(shape, &mut cur, &mut entries, 1, &accept, &mut out);
    out.sort();
    out
}
