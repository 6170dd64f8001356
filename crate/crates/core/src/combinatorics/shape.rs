use super::{Multicharge, Multipartition, Node, QuantumChar, Residue};
use crate::error::{invalid, Result};
use serde::Serialize;
use std::collections::BTreeSet;

/// A nonempty set of nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Shape {
    nodes: BTreeSet<Node>,
}

/// How a shape sits inside its component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ShapeKind {
    /// A translated Young diagram with the given partition.
    Straight { partition: Vec<usize>, top_left: Node },
    /// A translated connected skew diagram that is not straight.
    Skew,
    Other,
}

impl Shape {
    pub fn new(nodes: impl IntoIterator<Item = Node>) -> Result<Self> {
        let nodes: BTreeSet<Node> = nodes.into_iter().collect();
        if nodes.is_empty() {
            return invalid("a shape must be nonempty");
        }
        Ok(Shape { nodes })
    }

    /// The straight shape with top-left node `top_left` and rows `partition`.
    pub fn straight(top_left: Node, partition: &[usize]) -> Result<Self> {
        let mut nodes = BTreeSet::new();
        for (i, &len) in partition.iter().enumerate() {
            for j in 0..len {
                nodes.insert(Node::new(top_left.comp, top_left.row + i, top_left.col + j));
            }
        }
        Shape::new(nodes)
    }

    pub fn nodes(&self) -> &BTreeSet<Node> {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn first_node(&self) -> Node {
        *self.nodes.first().unwrap()
    }

    pub fn last_node(&self) -> Node {
        *self.nodes.last().unwrap()
    }

    /// Every node of `self` is smaller than every node of `other`.
    pub fn precedes(&self, other: &Shape) -> bool {
        self.last_node() < other.first_node()
    }

    fn rows(&self) -> Option<Vec<(usize, usize, usize)>> {
        let comp = self.first_node().comp;
        if self.nodes.iter().any(|n| n.comp != comp) {
            return None;
        }
        let mut rows: Vec<(usize, usize, usize)> = Vec::new();
        for n in &self.nodes {
            match rows.last_mut() {
                Some((r, _, hi)) if *r == n.row => {
                    if n.col != *hi + 1 {
                        return None;
                    }
                    *hi = n.col;
                }
                Some((r, _, _)) if *r + 1 != n.row => return None,
                _ => rows.push((n.row, n.col, n.col)),
            }
        }
        Some(rows)
    }

    pub fn kind(&self) -> ShapeKind {
        let Some(rows) = self.rows() else { return ShapeKind::Other };
        let skew = rows.windows(2).all(|w| {
            let ((_, a0, b0), (_, a1, b1)) = (w[0], w[1]);
            a1 <= a0 && b1 <= b0 && a0 <= b1
        });
        if !skew {
            return ShapeKind::Other;
        }
        let c0 = rows[0].1;
        if rows.iter().all(|&(_, a, _)| a == c0) {
            ShapeKind::Straight {
                partition: rows.iter().map(|&(_, a, b)| b - a + 1).collect(),
                top_left: self.first_node(),
            }
        } else {
            ShapeKind::Skew
        }
    }

    pub fn is_straight(&self) -> bool {
        matches!(self.kind(), ShapeKind::Straight { .. })
    }

    pub fn is_skew(&self) -> bool {
        !matches!(self.kind(), ShapeKind::Other)
    }

    /// The partition of a straight shape.
    pub fn partition(&self) -> Option<Vec<usize>> {
        match self.kind() {
            ShapeKind::Straight { partition, .. } => Some(partition),
            _ => None,
        }
    }

    pub fn residues(&self, e: QuantumChar, kappa: &Multicharge) -> BTreeSet<Residue> {
        self.nodes.iter().map(|n| n.residue(e, kappa)).collect()
    }

    /// Some residue does not occur among the nodes.
    pub fn is_e_small(&self, e: QuantumChar, kappa: &Multicharge) -> bool {
        e.misses_some(&self.residues(e, kappa))
    }

    /// Nodes on the diagonal through the top-left node.
    pub fn rank(&self) -> usize {
        let tl = self.first_node();
        (0..)
            .take_while(|k| self.nodes.contains(&Node::new(tl.comp, tl.row + k, tl.col + k)))
            .count()
    }

    /// The nodes can be removed from `nu` one removable node at a time.
    pub fn is_removable_from(&self, nu: &Multipartition) -> bool {
        if !self.nodes.iter().all(|n| nu.contains(*n)) {
            return false;
        }
        let mut cur = nu.clone();
        let mut left = self.nodes.clone();
        while !left.is_empty() {
            let Some(n) = cur.removable_nodes().into_iter().find(|n| left.contains(n)) else {
                return false;
            };
            cur = cur.without_node(n).unwrap();
            left.remove(&n);
        }
        true
    }

    /// A translation carrying `self` onto `other` that preserves residues.
    pub fn is_congruent(&self, other: &Shape, e: QuantumChar, kappa: &Multicharge) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let (a, b) = (self.first_node(), other.first_node());
        let (dr, dc) = (b.row as i64 - a.row as i64, b.col as i64 - a.col as i64);
        let shifted = self.nodes.iter().zip(&other.nodes).all(|(x, y)| {
            y.row as i64 - x.row as i64 == dr && y.col as i64 - x.col as i64 == dc
        });
        shifted && a.residue(e, kappa) == b.residue(e, kappa)
    }

    /// For straight shapes: the copy of `self` at the top-left corner of
    /// `other`, if `self` fits there with matching residues.
    pub fn embedding_in(&self, other: &Shape, e: QuantumChar, kappa: &Multicharge) -> Option<Shape> {
        let (p, q) = (self.partition()?, other.partition()?);
        if p.len() > q.len() || p.iter().zip(&q).any(|(a, b)| a > b) {
            return None;
        }
        if self.first_node().residue(e, kappa) != other.first_node().residue(e, kappa) {
            return None;
        }
        Shape::straight(other.first_node(), &p).ok()
    }

    pub fn is_subshape_of(&self, other: &Shape, e: QuantumChar, kappa: &Multicharge) -> bool {
        self.embedding_in(other, e, kappa).is_some()
    }

    /// The hook of a node: the node, the nodes to its right and those below.
    pub fn hook(&self, n: Node) -> Option<Shape> {
        if !self.nodes.contains(&n) {
            return None;
        }
        let arm = (n.col..).map(|c| Node::new(n.comp, n.row, c)).take_while(|m| self.nodes.contains(m));
        let leg = (n.row + 1..).map(|r| Node::new(n.comp, r, n.col)).take_while(|m| self.nodes.contains(m));
        Shape::new(arm.chain(leg).collect::<Vec<_>>()).ok()
    }

    /// The hooks `H_1, H_2, ...` of the nodes on the main diagonal, from
    /// the top-left; `H_1` is the largest hook.
    pub fn diagonal_hooks(&self) -> Vec<Shape> {
        let tl = self.first_node();
        (0..self.rank())
            .filter_map(|k| self.hook(Node::new(tl.comp, tl.row + k, tl.col + k)))
            .collect()
    }
}

impl Multipartition {
    /// Hook length of a node.
    pub fn hook_length(&self, n: Node) -> Option<usize> {
        if !self.contains(n) {
            return None;
        }
        let arm = self.row_len(n.comp, n.row) - n.col;
        let leg = (n.row + 1..).take_while(|&r| self.row_len(n.comp, r) >= n.col).count();
        Some(arm + leg + 1)
    }

    /// The rim hook of a node: rim nodes weakly south-east of it.
    pub fn rim_hook(&self, n: Node) -> Option<Shape> {
        self.hook_length(n)?;
        let nodes = self.nodes().into_iter().filter(|m| {
            m.comp == n.comp
                && m.row >= n.row
                && m.col >= n.col
                && !self.contains(Node::new(m.comp, m.row + 1, m.col + 1))
        });
        Shape::new(nodes).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(v: &[(usize, usize, usize)]) -> Shape {
        Shape::new(v.iter().map(|&(a, b, c)| Node::new(a, b, c))).unwrap()
    }

    #[test]
    fn small_and_straight_shapes_of_three_component_example() {
        let e = QuantumChar::Finite(3);
        let kappa = Multicharge(vec![0, 0, 1]);
        let xi = ns(&[(1, 1, 3), (1, 1, 4), (1, 1, 5), (1, 2, 3)]);
        assert!(xi.is_straight());
        assert!(!xi.is_e_small(e, &kappa));
        let rho = ns(&[(3, 1, 2), (3, 1, 3)]);
        assert!(rho.is_e_small(e, &kappa));
        assert!(rho.is_subshape_of(&xi, e, &kappa));
    }

    #[test]
    fn kinds() {
        assert_eq!(ns(&[(1, 1, 2), (1, 2, 1), (1, 2, 2)]).kind(), ShapeKind::Skew);
        assert_eq!(ns(&[(1, 1, 1), (1, 2, 2)]).kind(), ShapeKind::Other);
        assert_eq!(ns(&[(1, 1, 3), (1, 2, 1)]).kind(), ShapeKind::Other);
        assert_eq!(ns(&[(1, 1, 1), (1, 1, 2), (1, 2, 1)]).rank(), 1);
        assert_eq!(ns(&[(1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2)]).rank(), 2);
    }

    #[test]
    fn removability() {
        let nu = Multipartition::parse("(3,2)").unwrap();
        assert!(ns(&[(1, 1, 3), (1, 2, 2)]).is_removable_from(&nu));
        assert!(!ns(&[(1, 1, 2), (1, 1, 3)]).is_removable_from(&nu));
    }

    #[test]
    fn hooks() {
        let mp = Multipartition::parse("(5,4,4,3)").unwrap();
        assert_eq!(mp.hook_length(Node::new(1, 1, 1)), Some(8));
        assert_eq!(mp.hook_length(Node::new(1, 2, 2)), Some(5));
        let rim = mp.rim_hook(Node::new(1, 2, 2)).unwrap();
        assert_eq!(rim.len(), 5);
        let remaining: BTreeSet<Node> =
            mp.nodes().into_iter().filter(|n| !rim.nodes().contains(n)).collect();
        assert!(Multipartition::from_nodes(1, &remaining).is_ok());
        let xi = Shape::straight(Node::new(2, 1, 1), &[5, 4, 4, 3]).unwrap();
        let hooks = xi.diagonal_hooks();
        assert_eq!(hooks.iter().map(Shape::len).collect::<Vec<_>>(), vec![8, 5, 3]);
        assert_eq!(hooks.iter().map(Shape::len).sum::<usize>(), xi.len());
    }
}
