#![allow(dead_code)]

use klr_specht::combinatorics::{QuantumChar, Tableau};
use klr_specht::klr::{canonical_reduced_word, Generator, KlrWord};
use klr_specht::ring::Ring;
use klr_specht::specht::{SpechtElement, SpechtModule};
use klr_specht::stubborn::{accessible_nodes, accessible_set, StrandDiagram};
use rand::Rng;
use std::collections::BTreeMap;

type V<R> = SpechtElement<<R as Ring>::Elem>;

fn act<R: Ring>(m: &SpechtModule<R>, v: &V<R>, gens: &[Generator]) -> V<R> {
    gens.iter().fold(v.clone(), |acc, g| m.act(&acc, g).unwrap())
}

fn lin<R: Ring>(m: &SpechtModule<R>, parts: &[(i64, V<R>)]) -> V<R> {
    let r = m.ring();
    parts.iter().fold(SpechtElement::zero(), |acc, (c, v)| m.add(&acc, &m.scale(v, &r.from_i64(*c))))
}

use Generator::{Psi as P, Y};

/// Checks the defining relations of the algebra on every basis vector and
/// the Specht relations on `z`. Returns a description of the first failure.
pub fn check_module<R: Ring>(m: &SpechtModule<R>) -> Result<(), String> {
    let n = m.rank();
    let e = m.quantum_char();
    let kappa = m.multicharge().clone();
    let z = m.z();
    for r in 1..=n {
        if !m.act(&z, &Y(r)).unwrap().is_zero() {
            return Err(format!("z y{r} != 0"));
        }
    }
    let init = Tableau::initial(m.shape());
    let nodes = m.shape().nodes();
    for r in 1..n {
        if nodes[r - 1].comp == nodes[r].comp && nodes[r - 1].row == nodes[r].row
            && !m.act(&z, &P(r)).unwrap().is_zero() {
                return Err(format!("z p{r} != 0 inside a row"));
            }
    }
    for (node, terms) in m.garnir_relations() {
        let v = m.act_combination(&z, &terms);
        if !v.is_zero() {
            return Err(format!("Garnir relation at {node} gives {}", m.format(&v)));
        }
    }
    let _ = init;
    let basis = m.standard_basis();
    for t in &basis {
        let v = m.basis_vector(t).unwrap();
        let res = t.residue_sequence(e, &kappa);
        let deg = t.degree(e, &kappa).unwrap();
        for g in (1..n).map(P).chain((1..=n).map(Y)) {
            let out = m.act(&v, &g).unwrap();
            let gdeg = match g {
                Y(_) => 2,
                P(r) => -e.cartan(res[r - 1], res[r]),
                _ => 0,
            };
            for (s, _) in m.terms(&out) {
                if s.degree(e, &kappa).unwrap() != deg + gdeg {
                    return Err(format!("{t} · {g} has a term {s} of the wrong degree"));
                }
            }
        }
        let same = |a: usize, b: usize| res[a - 1] == res[b - 1];
        for r in 1..=n {
            for s in 1..=n {
                if act(m, &v, &[Y(r), Y(s)]) != act(m, &v, &[Y(s), Y(r)]) {
                    return Err(format!("{t}: dots y{r}, y{s} do not commute"));
                }
            }
        }
        for r in 1..n {
            for s in 1..=n {
                if s != r && s != r + 1 && act(m, &v, &[P(r), Y(s)]) != act(m, &v, &[Y(s), P(r)]) {
                    return Err(format!("{t}: p{r} and y{s} do not commute"));
                }
            }
            for s in r + 2..n {
                if act(m, &v, &[P(r), P(s)]) != act(m, &v, &[P(s), P(r)]) {
                    return Err(format!("{t}: p{r} and p{s} do not commute"));
                }
            }
            let d = if same(r, r + 1) { 1 } else { 0 };
            let lhs = act(m, &v, &[P(r), Y(r)]);
            let rhs = lin(m, &[(1, act(m, &v, &[Y(r + 1), P(r)])), (-d, v.clone())]);
            if lhs != rhs {
                return Err(format!("{t}: p{r} y{r} slide fails"));
            }
            let lhs = act(m, &v, &[P(r), Y(r + 1)]);
            let rhs = lin(m, &[(1, act(m, &v, &[Y(r), P(r)])), (d, v.clone())]);
            if lhs != rhs {
                return Err(format!("{t}: p{r} y{} slide fails", r + 1));
            }
            let (i, j) = (res[r - 1], res[r]);
            let yr = act(m, &v, &[Y(r)]);
            let yr1 = act(m, &v, &[Y(r + 1)]);
            let q = if i == j {
                SpechtElement::zero()
            } else if e == QuantumChar::Finite(2) {
                lin(m, &[
                    (-1, act(m, &v, &[Y(r + 1), Y(r + 1)])),
                    (2, act(m, &v, &[Y(r), Y(r + 1)])),
                    (-1, act(m, &v, &[Y(r), Y(r)])),
                ])
            } else if e.is_successor(i, j) {
                lin(m, &[(1, yr1), (-1, yr)])
            } else if e.is_successor(j, i) {
                lin(m, &[(1, yr), (-1, yr1)])
            } else {
                v.clone()
            };
            if act(m, &v, &[P(r), P(r)]) != q {
                return Err(format!("{t}: quadratic relation fails at r={r}"));
            }
            if r + 1 < n {
                let lhs = act(m, &v, &[P(r), P(r + 1), P(r)]);
                let rhs = act(m, &v, &[P(r + 1), P(r), P(r + 1)]);
                let (a, b, c) = (res[r - 1], res[r], res[r + 1]);
                let err = if a == c && e.adjacent(a, b) {
                    if e == QuantumChar::Finite(2) {
                        lin(m, &[
                            (2, act(m, &v, &[Y(r + 1)])),
                            (-1, act(m, &v, &[Y(r)])),
                            (-1, act(m, &v, &[Y(r + 2)])),
                        ])
                    } else if e.is_successor(a, b) {
                        lin(m, &[(-1, v.clone())])
                    } else {
                        v.clone()
                    }
                } else {
                    SpechtElement::zero()
                };
                // ψ_r ψ_{r+1} ψ_r = ψ_{r+1} ψ_r ψ_{r+1} - E
                if lhs != lin(m, &[(1, rhs), (-1, err)]) {
                    return Err(format!("{t}: braid relation fails at r={r}"));
                }
            }
        }
        let power = kappa.0.iter().filter(|&&k| e.residue(k) == res[0]).count();
        let dots = vec![Y(1); power];
        if !act(m, &v, &dots).is_zero() {
            return Err(format!("{t}: cyclotomic relation fails"));
        }
        if act(m, &v, &[Generator::Idem(res.clone())]) != v {
            return Err(format!("{t}: idempotent does not fix v_t"));
        }
    }
    Ok(())
}

/// A monomial `z w`: with probability `prefixed` the word starts with the
/// canonical word of a random standard tableau, then up to `extra` random
/// generators follow.
pub fn random_monomial<R: Ring>(m: &SpechtModule<R>, rng: &mut impl Rng, prefixed: f64, extra: usize) -> KlrWord {
    let n = m.rank();
    let mut w = Vec::new();
    if rng.gen_bool(prefixed) {
        let basis = m.standard_basis();
        let t = &basis[rng.gen_range(0..basis.len())];
        w.extend(canonical_reduced_word(t).into_iter().map(Generator::Psi));
    }
    for _ in 0..rng.gen_range(0..=extra) {
        if n > 1 && rng.gen_bool(0.75) {
            w.push(Generator::Psi(rng.gen_range(1..n)));
        } else {
            w.push(Generator::Y(rng.gen_range(1..=n)));
        }
    }
    KlrWord(w)
}

/// Checks every term of `z w` against the accessible nodes and accessible
/// sets of the monomial's diagram; returns the number of terms.
pub fn respects_accessibility<R: Ring>(m: &SpechtModule<R>, w: &KlrWord) -> Result<usize, String> {
    let d = StrandDiagram::of_word(m.shape(), m.quantum_char(), m.multicharge(), w).unwrap();
    let n = d.len();
    let acc: Vec<_> = (1..=n).map(|s| accessible_nodes(&d, s)).collect();
    let v = m.straighten(w).unwrap();
    let terms = m.terms(&v);
    for (t, _) in &terms {
        let pos = t.positions();
        let mut by_res: BTreeMap<i64, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for s in 1..=n {
            if !acc[s - 1].contains(&pos[s - 1]) {
                return Err(format!("{w}: string {s} reaches {} in {t}", pos[s - 1]));
            }
            let entry = by_res.entry(d.residue(s)).or_default();
            entry.0.push(s);
            entry.1.push(pos[s - 1]);
        }
        for (strands, nodes) in by_res.values() {
            if !accessible_set(&d, strands, nodes).unwrap() {
                return Err(format!("{w}: strings {strands:?} reach {nodes:?} in {t}"));
            }
        }
    }
    Ok(terms.len())
}
