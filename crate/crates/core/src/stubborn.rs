//! Accessible nodes and stubborn strings.
//!
//! Straightening only ever cuts `(i, i)`-crossings, always in the
//! direction that lets a string continue on the other branch. So a string
//! can only end at a node reached by walking up from its origin and
//! switching branches at same-residue crossings, and a family of strings
//! of one residue can only end on node sets that a unit-capacity flow can
//! reach.

use crate::combinatorics::{Multicharge, Multipartition, QuantumChar, Residue};
use crate::error::{invalid, Result};
use crate::klr::{is_reduced, propagate_residues, top_positions, Generator, KlrWord};
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write;

/// The `ψ` skeleton of a monomial `z ψ_{a_1} ... ψ_{a_m}`: strings are
/// numbered by their position at the bottom, nodes by their position at
/// the top. Dots play no part in where strings can go.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StrandDiagram {
    /// Residues of the nodes at the top, in node order.
    pub top_residues: Vec<Residue>,
    /// Crossings from top to bottom.
    pub letters: Vec<usize>,
}

impl StrandDiagram {
    pub fn new(top_residues: Vec<Residue>, letters: Vec<usize>) -> Result<Self> {
        let n = top_residues.len();
        if letters.iter().any(|&a| a == 0 || a >= n) {
            return invalid(format!("crossing index out of range for {n} strings"));
        }
        Ok(StrandDiagram { top_residues, letters })
    }

    /// The diagram of `z · w` in `S^λ`; dots and idempotents are dropped.
    pub fn of_word(lambda: &Multipartition, e: QuantumChar, kappa: &Multicharge, w: &KlrWord) -> Result<Self> {
        let res = lambda.nodes().iter().map(|x| x.residue(e, kappa)).collect();
        w.check(lambda.size())?;
        let letters = w
            .0
            .iter()
            .filter_map(|g| if let Generator::Psi(a) = g { Some(*a) } else { None })
            .collect();
        StrandDiagram::new(res, letters)
    }

    pub fn len(&self) -> usize {
        self.top_residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top_residues.is_empty()
    }

    /// Residue of string `s` (1-based).
    pub fn residue(&self, s: usize) -> Residue {
        propagate_residues(&self.top_residues, &self.letters)[s - 1]
    }

    /// Node index reached by string `s`.
    pub fn reached(&self, s: usize) -> usize {
        top_positions(self.len(), &self.letters)[s - 1]
    }

    pub fn is_reduced(&self) -> bool {
        is_reduced(self.len(), &self.letters)
    }

    /// Crossings from the bottom up, with the residues of the two strings
    /// meeting there.
    fn crossings_upward(&self) -> Vec<(usize, Residue, Residue)> {
        let mut res = propagate_residues(&self.top_residues, &self.letters);
        let mut out = Vec::with_capacity(self.letters.len());
        for &a in self.letters.iter().rev() {
            out.push((a, res[a - 1], res[a]));
            res.swap(a - 1, a);
        }
        out
    }
}

/// Node indices string `s` can reach.
pub fn accessible_nodes(d: &StrandDiagram, s: usize) -> BTreeSet<usize> {
    let mut here = vec![false; d.len()];
    here[s - 1] = true;
    for (a, i, j) in d.crossings_upward() {
        let (p, q) = (a - 1, a);
        if i == j && (here[p] || here[q]) {
            here[p] = true;
            here[q] = true;
        } else {
            here.swap(p, q);
        }
    }
    here.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| k).collect()
}

/// The flow network of one residue: string origins, same-residue
/// crossings and top nodes, joined by unit-capacity string segments.
#[derive(Clone, Debug)]
pub struct ResidueGraph {
    pub residue: Residue,
    /// Vertex of the origin of each string of this residue, by string.
    pub origins: Vec<Option<usize>>,
    /// Vertex of each top node of this residue, by node index.
    pub tops: Vec<Option<usize>>,
    pub vertices: usize,
    /// Directed edges `(from, to)`, one per string segment.
    pub edges: Vec<(usize, usize)>,
    labels: Vec<String>,
}

impl ResidueGraph {
    pub fn new(d: &StrandDiagram, residue: Residue) -> Self {
        let n = d.len();
        let bottom = propagate_residues(&d.top_residues, &d.letters);
        let mut labels = Vec::new();
        let mut origins = vec![None; n];
        let mut cur: Vec<Option<usize>> = vec![None; n];
        for s in 0..n {
            if bottom[s] == residue {
                origins[s] = Some(labels.len());
                cur[s] = Some(labels.len());
                labels.push(format!("s{}", s + 1));
            }
        }
        let mut edges = Vec::new();
        for (h, (a, i, j)) in d.crossings_upward().into_iter().enumerate() {
            let (p, q) = (a - 1, a);
            if i == residue && j == residue {
                let x = labels.len();
                labels.push(format!("x{h}"));
                edges.push((cur[p].unwrap(), x));
                edges.push((cur[q].unwrap(), x));
                cur[p] = Some(x);
                cur[q] = Some(x);
            } else {
                cur.swap(p, q);
            }
        }
        let mut tops = vec![None; n];
        for k in 0..n {
            if let Some(v) = cur[k] {
                let t = labels.len();
                labels.push(format!("N{}", k + 1));
                edges.push((v, t));
                tops[k] = Some(t);
            }
        }
        ResidueGraph { residue, origins, tops, vertices: labels.len(), edges, labels }
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph residue_{} {{\n", self.residue);
        for (v, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  v{v} [label=\"{l}\"];");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  v{a} -> v{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Value of a maximum flow with unit edge capacities, by augmenting
/// shortest paths.
pub fn max_flow(vertices: usize, edges: &[(usize, usize)], sources: &[usize], sinks: &[usize]) -> usize {
    let (src, snk) = (vertices, vertices + 1);
    let size = vertices + 2;
    let mut cap = vec![vec![0i64; size]; size];
    for &(a, b) in edges {
        cap[a][b] += 1;
    }
    for &s in sources {
        cap[src][s] += 1;
    }
    for &t in sinks {
        cap[t][snk] += 1;
    }
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; size];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for v in 0..size {
                if prev[v] == usize::MAX && cap[u][v] > 0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[snk] == usize::MAX {
            return flow;
        }
        let mut v = snk;
        while v != src {
            let u = prev[v];
            cap[u][v] -= 1;
            cap[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
}

/// Whether the strings `strands` (one residue) can together end on the
/// node indices `nodes`.
pub fn accessible_set(d: &StrandDiagram, strands: &[usize], nodes: &[usize]) -> Result<bool> {
    let Some(&first) = strands.first() else {
        return Ok(nodes.is_empty());
    };
    let i = d.residue(first);
    if strands.iter().any(|&s| d.residue(s) != i) {
        return invalid("strings of an accessible set must share a residue");
    }
    if nodes.len() != strands.len() {
        return Ok(false);
    }
    let g = ResidueGraph::new(d, i);
    let mut sinks = Vec::new();
    for &k in nodes {
        match g.tops[k] {
            Some(t) => sinks.push(t),
            None => return Ok(false),
        }
    }
    let sources: Vec<usize> = strands.iter().map(|&s| g.origins[s - 1].unwrap()).collect();
    Ok(max_flow(g.vertices, &g.edges, &sources, &sinks) == strands.len())
}

/// What is known about a string's immobility.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Immobility {
    /// No same-residue crossing on the string.
    Immobile,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StrandClass {
    pub stubborn: bool,
    pub co_stubborn: bool,
    pub immobility: Immobility,
    /// For reduced diagrams: whether "stubborn" agrees with "every
    /// same-residue string crossing `s` is smaller than `s`".
    pub crossing_criterion_agrees: Option<bool>,
}

/// Whether every same-residue string crossing `s` is smaller than `s`.
pub fn smaller_crossers_only(d: &StrandDiagram, s: usize) -> bool {
    let top = top_positions(d.len(), &d.letters);
    let i = d.residue(s);
    (s + 1..=d.len()).all(|u| d.residue(u) != i || top[u - 1] > top[s - 1])
}

pub fn classify_strand(d: &StrandDiagram, s: usize) -> StrandClass {
    let acc = accessible_nodes(d, s);
    let reached = d.reached(s);
    let stubborn = acc.first() == Some(&reached);
    let co_stubborn = acc.last() == Some(&reached);
    let i = d.residue(s);
    let mut pos = s - 1;
    let mut crosses_same = false;
    for (a, ri, rj) in d.crossings_upward() {
        if pos == a - 1 || pos == a {
            crosses_same |= ri == i && rj == i;
            pos = if pos == a - 1 { a } else { a - 1 };
        }
    }
    StrandClass {
        stubborn,
        co_stubborn,
        immobility: if crosses_same { Immobility::Unknown } else { Immobility::Immobile },
        crossing_criterion_agrees: d.is_reduced().then(|| stubborn == smaller_crossers_only(d, s)),
    }
}

/// Whether `right` is strongly stubborn, when the sufficient condition
/// applies: the diagram is reduced, the other strings do not cross each
/// other, and a string of `right` only crosses smaller other strings.
/// `None` means the condition does not apply.
pub fn strongly_stubborn_set(d: &StrandDiagram, right: &[usize]) -> Option<bool> {
    if !d.is_reduced() {
        return None;
    }
    let top = top_positions(d.len(), &d.letters);
    let cross = |u: usize, v: usize| (u < v) != (top[u - 1] < top[v - 1]);
    let left: Vec<usize> = (1..=d.len()).filter(|s| !right.contains(s)).collect();
    for (k, &l) in left.iter().enumerate() {
        if left[k + 1..].iter().any(|&m| cross(l, m)) {
            return None;
        }
        if right.iter().any(|&r| cross(r, l) && r < l) {
            return None;
        }
    }
    Some(true)
}
