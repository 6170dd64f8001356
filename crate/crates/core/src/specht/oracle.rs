//! An independent straightening strategy, used to cross-check the engine.
//!
//! It works on whole words instead of basis vectors: the topmost dot is
//! slid upwards first, then the first letter of a `ψ` word that leaves the
//! standard tableaux is resolved in place, with braid moves aligned from
//! the top. Nothing is cached, so it is only suitable for small cases.

use super::{Key, SpechtElement, SpechtModule};
use crate::klr::{propagate_residues, word_between, word_for_top_positions, Generator, KlrWord, Rewriter};
use crate::error::Result;
use crate::ring::Ring;
use std::collections::BTreeMap;

fn psi(word: &[usize]) -> impl Iterator<Item = Generator> + '_ {
    word.iter().map(|&a| Generator::Psi(a))
}

/// Expands `z · w` by word rewriting.
pub fn straighten_by_words<R: Ring>(m: &SpechtModule<R>, w: &KlrWord) -> Result<SpechtElement<R::Elem>> {
    w.check(m.n)?;
    let ring = &m.ring;
    let mut out: BTreeMap<Key, R::Elem> = BTreeMap::new();
    let mut work: Vec<(R::Elem, Vec<Generator>)> = vec![(ring.one(), w.0.clone())];
    while let Some((c, word)) = work.pop() {
        if ring.is_zero(&c) {
            continue;
        }
        if let Some(k) = word.iter().position(|g| !matches!(g, Generator::Psi(_))) {
            let letters: Vec<usize> = word[..k]
                .iter()
                .map(|g| if let Generator::Psi(a) = g { *a } else { unreachable!() })
                .collect();
            let res = propagate_residues(&m.node_res, &letters);
            match &word[k] {
                Generator::Idem(i) => {
                    if *i == res {
                        let mut nw = word.clone();
                        nw.remove(k);
                        work.push((c, nw));
                    }
                }
                Generator::Y(r) => {
                    let r = *r;
                    let Some(&a) = letters.last() else { continue };
                    let moved = if r == a { a + 1 } else if r == a + 1 { a } else { r };
                    let mut nw = word.clone();
                    nw[k - 1] = Generator::Y(moved);
                    nw[k] = Generator::Psi(a);
                    work.push((c.clone(), nw));
                    let top_res = propagate_residues(&m.node_res, &letters[..k - 1]);
                    if top_res[a - 1] == top_res[a] && (r == a || r == a + 1) {
                        let sign = if r == a { -1 } else { 1 };
                        let mut nw = word.clone();
                        nw.drain(k - 1..=k);
                        work.push((ring.mul(&c, &ring.from_i64(sign)), nw));
                    }
                }
                Generator::Psi(_) => unreachable!(),
            }
            continue;
        }
        let letters: Vec<usize> = word
            .iter()
            .map(|g| if let Generator::Psi(a) = g { *a } else { unreachable!() })
            .collect();
        let mut key: Key = m.initial_key();
        let mut resolved = false;
        for idx in 0..letters.len() {
            let a = letters[idx];
            let pos = m.positions(&key);
            let (p, q) = (pos[a - 1], pos[a]);
            let suffix = &letters[idx + 1..];
            let mut swapped = key.clone();
            swapped.swap(p, q);
            if p < q && m.is_standard_key(&swapped) {
                key = swapped;
                continue;
            }
            resolved = true;
            if p > q {
                let mut target = word_for_top_positions(&m.positions(&swapped));
                target.push(a);
                let mut rw = Rewriter::new(m.e, &m.node_res, letters[..idx].to_vec());
                rw.rewrite_to_from_top(&target);
                push_errors(m, &mut work, &c, rw.errors, &letters[idx..]);
                let u = &rw.word[..idx - 1];
                let res = propagate_residues(&m.node_res, u);
                for (qc, dots) in m.quadratic(res[a - 1], res[a], a) {
                    let mut nw: Vec<Generator> = psi(u).collect();
                    nw.extend(dots.into_iter().map(Generator::Y));
                    nw.extend(psi(suffix));
                    work.push((ring.mul(&c, &ring.from_i64(qc)), nw));
                }
            } else {
                let mut prefix = letters[..idx].to_vec();
                prefix.push(a);
                let mut rw = Rewriter::new(m.e, &m.node_res, prefix);
                if m.left[q] == Some(p) {
                    let mut target = vec![p + 1];
                    target.extend(word_for_top_positions(&pos));
                    rw.rewrite_to_from_top(&target);
                    push_errors(m, &mut work, &c, rw.errors, suffix);
                } else {
                    let g = m.garnir[p].as_ref().expect("Garnir node");
                    let x = word_between(&g.g_positions, &m.positions(&swapped));
                    let mut target = g.lead.clone();
                    target.extend(&x);
                    rw.rewrite_to_from_top(&target);
                    push_errors(m, &mut work, &c, rw.errors, suffix);
                    for (gc, other) in &g.others {
                        let mut nw: Vec<Generator> = psi(other).collect();
                        nw.extend(psi(&x));
                        nw.extend(psi(suffix));
                        work.push((ring.mul(&c, &ring.from_i64(-gc)), nw));
                    }
                }
            }
            break;
        }
        if resolved {
            continue;
        }
        let target = word_for_top_positions(&m.positions(&key));
        let mut rw = Rewriter::new(m.e, &m.node_res, letters);
        rw.rewrite_to_from_top(&target);
        push_errors(m, &mut work, &c, rw.errors, &[]);
        m.add_term(&mut out, key, &c);
    }
    Ok(SpechtElement { terms: out })
}

fn push_errors<R: Ring>(
    m: &SpechtModule<R>,
    work: &mut Vec<(R::Elem, Vec<Generator>)>,
    c: &R::Elem,
    errors: Vec<(i64, Vec<Generator>)>,
    suffix: &[usize],
) {
    for (ec, mut w) in errors {
        w.extend(psi(suffix));
        work.push((m.ring.mul(c, &m.ring.from_i64(ec)), w));
    }
}
