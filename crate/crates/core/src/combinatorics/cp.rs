use super::{multipartitions, Multicharge, Multipartition, Node, QuantumChar, Shape, Tableau};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// A pair `(λ, μ)` related by moving a straight e-small shape `λ*` up to a
/// congruent position `μ*`, together with the data that determines the
/// degree and target of the associated homomorphism `S^λ → S^μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CpPair {
    pub e: QuantumChar,
    pub kappa: Multicharge,
    pub lambda: Multipartition,
    pub mu: Multipartition,
    pub nu: Multipartition,
    pub mu_star: Shape,
    pub lambda_star: Shape,
    /// `ξ^0 = μ*, ξ^1, ..., ξ^c = λ*`.
    pub chain: Vec<Shape>,
    pub a: i64,
    pub b: i64,
    pub c: usize,
    pub d: usize,
    pub degree: i64,
    pub one_row: bool,
}

fn not_cp<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::NotCpPair(msg.into()))
}

/// Runs the membership checks in order and assembles the pair data.
pub fn detect_cp_pair(
    lambda: &Multipartition,
    mu: &Multipartition,
    e: QuantumChar,
    kappa: &Multicharge,
) -> Result<CpPair> {
    if lambda.level() != mu.level() || lambda.level() != kappa.level() {
        return not_cp("levels of λ, μ and κ differ");
    }
    if lambda.size() != mu.size() {
        return not_cp("λ and μ have different sizes");
    }
    if lambda == mu || !mu.dominates(lambda) {
        return not_cp("μ does not strictly dominate λ");
    }
    let nu = lambda.union(mu)?;
    let lam_nodes: BTreeSet<Node> = lambda.nodes().into_iter().collect();
    let mu_nodes: BTreeSet<Node> = mu.nodes().into_iter().collect();
    let mu_star = Shape::new(nu.nodes().into_iter().filter(|n| !lam_nodes.contains(n)))?;
    let lambda_star = Shape::new(nu.nodes().into_iter().filter(|n| !mu_nodes.contains(n)))?;
    if !mu_star.is_congruent(&lambda_star, e, kappa) {
        return not_cp("μ* and λ* are not congruent");
    }
    if !mu_star.precedes(&lambda_star) {
        return not_cp("μ* does not precede λ*");
    }
    if !mu_star.is_removable_from(&nu) || !lambda_star.is_removable_from(&nu) {
        return not_cp("μ* or λ* is not removable from ν");
    }
    if !mu_star.is_straight() {
        return not_cp("the moved shape is not straight");
    }
    if !mu_star.is_e_small(e, kappa) {
        return not_cp("the moved shape is not e-small");
    }
    let chain = chain(&nu, &mu_star, &lambda_star, e, kappa)?;
    let (a, b) = a_b(&nu, &mu_star, &lambda_star, e, kappa);
    let d = chain[1..].iter().map(Shape::rank).sum();
    let c = chain.len() - 1;
    let one_row = mu_star.partition().is_some_and(|p| p.len() == 1);
    Ok(CpPair {
        e,
        kappa: kappa.clone(),
        lambda: lambda.clone(),
        mu: mu.clone(),
        nu,
        mu_star,
        lambda_star,
        chain,
        a,
        b,
        c,
        d,
        degree: a - b + 2 * d as i64,
        one_row,
    })
}

/// Removable straight shapes of `nu`. Each is fixed by its top-left node:
/// it takes the tail from that column in every row below that reaches it.
fn removable_straight_shapes(nu: &Multipartition) -> Vec<Shape> {
    let mut out = Vec::new();
    for (m, comp) in nu.components().iter().enumerate() {
        for r0 in 0..comp.len() {
            for c0 in 1..=comp[r0] {
                let parts: Vec<usize> =
                    comp[r0..].iter().take_while(|&&l| l >= c0).map(|&l| l - c0 + 1).collect();
                out.push(Shape::straight(Node::new(m + 1, r0 + 1, c0), &parts).unwrap());
            }
        }
    }
    out
}

fn chain(
    nu: &Multipartition,
    mu_star: &Shape,
    lambda_star: &Shape,
    e: QuantumChar,
    kappa: &Multicharge,
) -> Result<Vec<Shape>> {
    let candidates: Vec<Shape> = removable_straight_shapes(nu)
        .into_iter()
        .filter(|x| mu_star.precedes(x) && x.precedes(lambda_star))
        .filter(|x| x.is_e_small(e, kappa) && x.is_subshape_of(mu_star, e, kappa))
        .collect();
    let mut maximal: Vec<Shape> = candidates
        .iter()
        .filter(|x| {
            !candidates.iter().any(|y| y != *x && x.nodes().is_subset(y.nodes()))
        })
        .cloned()
        .collect();
    maximal.sort_by_key(Shape::first_node);
    let mut out = vec![mu_star.clone()];
    out.append(&mut maximal);
    out.push(lambda_star.clone());
    if out.windows(2).any(|w| !w[0].precedes(&w[1])) {
        return not_cp("the intermediate shapes are not totally ordered");
    }
    Ok(out)
}

fn a_b(
    nu: &Multipartition,
    mu_star: &Shape,
    lambda_star: &Shape,
    e: QuantumChar,
    kappa: &Multicharge,
) -> (i64, i64) {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for n in mu_star.nodes() {
        *counts.entry(n.residue(e, kappa)).or_default() += 1;
    }
    let in_range = |n: &Node| *n > mu_star.last_node() && *n <= lambda_star.last_node();
    let weigh = |nodes: Vec<Node>| -> i64 {
        nodes
            .iter()
            .filter(|n| in_range(n))
            .map(|n| counts.get(&n.residue(e, kappa)).copied().unwrap_or(0))
            .sum()
    };
    (weigh(nu.addable_nodes()), weigh(nu.removable_nodes()))
}

/// Degree of a pair whose moved shape is a single row: the number of
/// addable minus removable nodes in range whose residue occurs in the row,
/// plus twice the number of links in the chain.
pub fn one_row_degree(pair: &CpPair) -> Option<i64> {
    if !pair.one_row {
        return None;
    }
    let res = pair.mu_star.residues(pair.e, &pair.kappa);
    let lo = pair.mu_star.last_node();
    let hi = pair.lambda_star.last_node();
    let count = |nodes: Vec<Node>| {
        nodes
            .into_iter()
            .filter(|n| *n > lo && *n <= hi && res.contains(&n.residue(pair.e, &pair.kappa)))
            .count() as i64
    };
    Some(count(pair.nu.addable_nodes()) - count(pair.nu.removable_nodes()) + 2 * pair.c as i64)
}

impl CpPair {
    pub fn gamma(&self) -> usize {
        self.mu_star.len()
    }

    /// The `ν`-tableau restricting to `t^λ` with `μ*` filled last, row by row.
    pub fn initial_extended(&self) -> Tableau {
        let n = self.lambda.size();
        let mut next_lambda = 0;
        let mut next_star = n;
        let entries = self
            .nu
            .nodes()
            .iter()
            .map(|node| {
                if self.lambda.contains(*node) {
                    next_lambda += 1;
                    next_lambda
                } else {
                    next_star += 1;
                    next_star
                }
            })
            .collect();
        Tableau::new(self.nu.clone(), entries).expect("bijective filling")
    }

    /// `t_λ^ν` with the entries of each `ξ^j` exchanged with those of its
    /// copy inside `μ*`, applied for `j = 1, ..., c` in turn.
    pub fn extended_target(&self) -> Tableau {
        let init = self.initial_extended();
        let nodes = self.nu.nodes();
        let mut entries = init.entries().to_vec();
        for xi in &self.chain[1..] {
            let copy = xi
                .embedding_in(&self.mu_star, self.e, &self.kappa)
                .expect("chain shapes embed in μ*");
            let mut swap: BTreeMap<usize, usize> = BTreeMap::new();
            for (x, y) in xi.nodes().iter().zip(copy.nodes()) {
                let (vx, vy) = (init.value_at(*x).unwrap(), init.value_at(*y).unwrap());
                swap.insert(vx, vy);
                swap.insert(vy, vx);
            }
            for v in entries.iter_mut() {
                if let Some(w) = swap.get(v) {
                    *v = *w;
                }
            }
        }
        debug_assert_eq!(entries.len(), nodes.len());
        Tableau::new(self.nu.clone(), entries).expect("permutation of entries")
    }

    /// The `μ`-tableau whose basis vector spans the image of `z^λ`.
    pub fn target_tableau(&self) -> Tableau {
        self.extended_target()
            .restrict(self.lambda.size())
            .expect("restriction of the target has shape μ")
    }
}

/// All pairs of multipartitions of `n` at the given level that pass the
/// membership checks, sorted by `(λ, μ)`.
pub fn enumerate_cp_pairs(n: usize, e: QuantumChar, kappa: &Multicharge) -> Vec<CpPair> {
    let level = kappa.level();
    let mut found: BTreeMap<(Multipartition, Multipartition), CpPair> = BTreeMap::new();
    for gamma in 1..=n {
        for nu in multipartitions(n + gamma, level) {
            let shapes: Vec<Shape> = removable_straight_shapes(&nu)
                .into_iter()
                .filter(|s| s.len() == gamma && s.is_e_small(e, kappa))
                .collect();
            for x in &shapes {
                for y in &shapes {
                    if !x.precedes(y) || !x.is_congruent(y, e, kappa) {
                        continue;
                    }
                    let without = |s: &Shape| {
                        let keep: BTreeSet<Node> =
                            nu.nodes().into_iter().filter(|n| !s.nodes().contains(n)).collect();
                        Multipartition::from_nodes(level, &keep)
                    };
                    let (Ok(lambda), Ok(mu)) = (without(x), without(y)) else { continue };
                    if let Ok(p) = detect_cp_pair(&lambda, &mu, e, kappa) {
                        found.insert((lambda, mu), p);
                    }
                }
            }
        }
    }
    found.into_values().collect()
}
