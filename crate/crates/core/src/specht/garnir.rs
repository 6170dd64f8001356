//! Garnir relations.
//!
//! For a node `A = (a, c)` with a node below it, the belt is the part of
//! row `a` from column `c` on together with the part of row `a + 1` up to
//! column `c`. `G^A` fills the belt from the bottom-left, so it is the
//! least dominant tableau with a column descent at `A`. Bricks are runs of
//! `e` belt nodes in one row starting with residue `res(A)`: rightwards
//! from column `c` in row `a`, leftwards from column `c` in row `a + 1`.
//! `T^A` agrees with `G^A` off the bricks and puts the lowest brick
//! numbers in row `a`. The relation is
//! `z ψ^{T^A} Σ_d τ_{d} = 0`, summed over the shuffles `d` of the bricks
//! that keep each row increasing, with `τ_r = σ_r + ε` and `σ_r` the
//! crossing of brick numbers `r` and `r + 1`.

use crate::combinatorics::{Multipartition, Node, QuantumChar};
use crate::klr::word_for_top_positions;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub(crate) struct Garnir {
    /// `ψ^{T^A}` followed by the bricks of the longest shuffle; its
    /// tableau is `G^A`.
    pub lead: Vec<usize>,
    /// Bottom arrangement of `G^A`: node index of each value.
    pub g_positions: Vec<usize>,
    /// The remaining terms of the relation.
    pub others: Vec<(i64, Vec<usize>)>,
}

impl Garnir {
    /// All terms of the relation, the leading one included.
    pub fn terms(&self) -> Vec<(i64, Vec<usize>)> {
        let mut v = vec![(1, self.lead.clone())];
        v.extend(self.others.iter().cloned());
        v
    }
}

/// `s_{r_m} ∘ ... ∘ s_{r_1} = perm` as a reduced word `r_1, ..., r_m`
/// (1-based letters acting on values).
fn value_word(perm: &[usize]) -> Vec<usize> {
    let mut rho = perm.to_vec();
    let mut letters = Vec::new();
    loop {
        let mut inv = vec![0; rho.len()];
        for (i, &v) in rho.iter().enumerate() {
            inv[v] = i;
        }
        let Some(r) = (0..rho.len().saturating_sub(1)).find(|&r| inv[r] > inv[r + 1]) else {
            break;
        };
        for v in rho.iter_mut() {
            if *v == r {
                *v = r + 1;
            } else if *v == r + 1 {
                *v = r;
            }
        }
        letters.push(r + 1);
    }
    letters.reverse();
    letters
}

fn subsets(k: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, size: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == size {
            out.push(acc.clone());
            return;
        }
        for i in start..k {
            acc.push(i);
            go(i + 1, k, size, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, size, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn garnir(lambda: &Multipartition, e: QuantumChar, node: Node, eps: i64) -> Garnir {
    let n = lambda.size();
    let p = lambda.node_index(node).expect("Garnir node in shape");
    let q = lambda.node_index(Node::new(node.comp, node.row + 1, node.col)).expect("node below");
    let c = node.col;
    let row_len = lambda.row_len(node.comp, node.row);
    let bottom_start = q + 1 - c;

    let mut g: Vec<usize> = (1..=n).collect();
    for (next, k) in (p + 1..).zip((bottom_start..=q).chain(p..p + row_len - c + 1)) {
        g[k] = next;
    }
    let (k0, k1, width) = match e {
        QuantumChar::Finite(e) => {
            let e = e as usize;
            ((row_len - c + 1) / e, c / e, e)
        }
        QuantumChar::Infinite => (0, 0, 1),
    };
    let k = k0 + k1;
    let first = p + c - k1 * width + 1;
    let mut t = g.clone();
    for i in 0..k0 * width {
        t[p + i] = first + i;
    }
    for i in 0..k1 * width {
        t[q + 1 - k1 * width + i] = first + k0 * width + i;
    }

    let positions = |tab: &[usize]| {
        let mut pos = vec![0; n];
        for (idx, &v) in tab.iter().enumerate() {
            pos[v - 1] = idx;
        }
        pos
    };
    let t_word = word_for_top_positions(&positions(&t));
    let brick = |r: usize| -> Vec<usize> {
        let off = first - 1 + (r - 1) * width;
        let top: Vec<usize> = (0..2 * width).map(|s| if s < width { s + width } else { s - width }).collect();
        word_for_top_positions(&top).into_iter().map(|l| l + off).collect()
    };

    let mut terms: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    let mut lead = t_word.clone();
    for row_a in subsets(k, k0) {
        let row_b: Vec<usize> = (0..k).filter(|b| !row_a.contains(b)).collect();
        let perm: Vec<usize> = row_a.iter().chain(&row_b).copied().collect();
        let letters = value_word(&perm);
        let longest = row_a.iter().copied().eq(k1..k);
        let m = letters.len();
        for mask in 0u64..(1u64 << m) {
            let mut w = t_word.clone();
            for (j, &r) in letters.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    w.extend(brick(r));
                }
            }
            let dropped = m - mask.count_ones() as usize;
            let coef = eps.pow(dropped as u32);
            if longest && dropped == 0 {
                lead = w;
                continue;
            }
            *terms.entry(w).or_default() += coef;
        }
    }
    terms.retain(|_, c| *c != 0);
    debug_assert_eq!(crate::klr::tableau_entries_of_word(n, &lead), g);
    Garnir {
        lead,
        g_positions: positions(&g),
        others: terms.into_iter().map(|(w, c)| (c, w)).collect(),
    }
}
