//! Generators, words and reduced-word rewriting for KLR algebras.
//!
//! Diagrams are read from the top down. Letters are 1-based: `ψ_a`
//! crosses the strings in positions `a` and `a + 1`. The residue of a
//! string is the residue of the node it reaches at the top, so residues
//! are propagated downwards through a word.

use crate::combinatorics::{QuantumChar, Residue, Tableau};
use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Generator {
    Psi(usize),
    Y(usize),
    Idem(Vec<Residue>),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Psi(r) => write!(f, "p{r}"),
            Generator::Y(r) => write!(f, "y{r}"),
            Generator::Idem(i) => {
                let s: Vec<String> = i.iter().map(|x| x.to_string()).collect();
                write!(f, "e({})", s.join(","))
            }
        }
    }
}

/// A monomial in the generators, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KlrWord(pub Vec<Generator>);

impl KlrWord {
    /// Parses text such as `"p3 p2 y5 e(0,1,2)"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let g = if let Some(r) = tok.strip_prefix('p') {
                Generator::Psi(parse_index(r, tok)?)
            } else if let Some(r) = tok.strip_prefix('y') {
                Generator::Y(parse_index(r, tok)?)
            } else if let Some(r) = tok.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
                let mut res = Vec::new();
                for x in r.split(',').filter(|x| !x.is_empty()) {
                    res.push(
                        x.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::InvalidInput(format!("bad residue in {tok:?}")))?,
                    );
                }
                Generator::Idem(res)
            } else {
                return invalid(format!("unknown generator {tok:?}"));
            };
            out.push(g);
        }
        Ok(KlrWord(out))
    }

    pub fn psi(letters: &[usize]) -> Self {
        KlrWord(letters.iter().map(|&a| Generator::Psi(a)).collect())
    }

    /// Checks that every index fits on `n` strings.
    pub fn check(&self, n: usize) -> Result<()> {
        for g in &self.0 {
            let ok = match g {
                Generator::Psi(r) => *r >= 1 && *r < n,
                Generator::Y(r) => *r >= 1 && *r <= n,
                Generator::Idem(i) => i.len() == n,
            };
            if !ok {
                return invalid(format!("generator {g} does not act on {n} strings"));
            }
        }
        Ok(())
    }

    /// Total degree, given the residues at the top of the word.
    pub fn degree(&self, e: QuantumChar, top: &[Residue]) -> i64 {
        let mut res = top.to_vec();
        let mut deg = 0;
        for g in &self.0 {
            match g {
                Generator::Psi(a) => {
                    deg -= e.cartan(res[a - 1], res[*a]);
                    res.swap(a - 1, *a);
                }
                Generator::Y(_) => deg += 2,
                Generator::Idem(_) => {}
            }
        }
        deg
    }
}

fn parse_index(r: &str, tok: &str) -> Result<usize> {
    match r.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => invalid(format!("bad generator index in {tok:?}")),
    }
}

impl fmt::Display for KlrWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&s.join(" "))
    }
}

/// Degree of `ψ_r e(i)`, `y_r e(i)` or `e(i)`, with `i` read at the bottom.
pub fn generator_degree(e: QuantumChar, g: &Generator, bottom: &[Residue]) -> i64 {
    match g {
        Generator::Psi(r) => -e.cartan(bottom[r - 1], bottom[*r]),
        Generator::Y(_) => 2,
        Generator::Idem(_) => 0,
    }
}

/// Residues of the strings at the bottom of a `ψ` word.
pub fn propagate_residues(top: &[Residue], letters: &[usize]) -> Vec<Residue> {
    let mut res = top.to_vec();
    for &a in letters {
        res.swap(a - 1, a);
    }
    res
}

/// Node index reached at the top by each string: `result[s - 1]` for string `s`.
pub fn top_positions(n: usize, letters: &[usize]) -> Vec<usize> {
    let mut arr: Vec<usize> = (0..n).collect();
    for &a in letters {
        arr.swap(a - 1, a);
    }
    arr
}

/// Entries (in node order) of the tableau `t^λ` acted on by the word.
pub fn tableau_entries_of_word(n: usize, letters: &[usize]) -> Vec<usize> {
    let arr = top_positions(n, letters);
    let mut t = vec![0; n];
    for (q, &node) in arr.iter().enumerate() {
        t[node] = q + 1;
    }
    t
}

/// Number of crossings of the permutation drawn by the word.
pub fn permutation_length(n: usize, letters: &[usize]) -> usize {
    let arr = top_positions(n, letters);
    let mut inv = 0;
    for i in 0..n {
        for j in i + 1..n {
            if arr[i] > arr[j] {
                inv += 1;
            }
        }
    }
    inv
}

pub fn is_reduced(n: usize, letters: &[usize]) -> bool {
    permutation_length(n, letters) == letters.len()
}

/// The reduced word taking the strings, in order at the bottom, to the top
/// positions `top[s]`. Built from the bottom up by always making the
/// leftmost crossing still needed, which places the crossings of every
/// `321` triple `i < j < k` as `(i,j)`, `(i,k)`, `(j,k)` going upwards.
pub fn word_for_top_positions(top: &[usize]) -> Vec<usize> {
    let n = top.len();
    let mut cur: Vec<usize> = (0..n).collect();
    let mut up = Vec::new();
    while let Some(q) = (0..n.saturating_sub(1)).find(|&q| top[cur[q]] > top[cur[q + 1]]) {
        cur.swap(q, q + 1);
        up.push(q + 1);
    }
    up.reverse();
    up
}

/// The fixed reduced word `w_t` of a tableau of the same shape as `t^λ`.
pub fn canonical_reduced_word(t: &Tableau) -> Vec<usize> {
    word_for_top_positions(&t.positions())
}

/// Reduced word `x` with `ψ_w ψ_x` carrying the strings from the bottom
/// arrangement `from` to `to`, where both list the top node of the string
/// in each bottom position.
pub fn word_between(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut pos_in_from = vec![0; from.len()];
    for (q, &node) in from.iter().enumerate() {
        pos_in_from[node] = q;
    }
    let top: Vec<usize> = to.iter().map(|&node| pos_in_from[node]).collect();
    word_for_top_positions(&top)
}

/// Whether every `321` triple of strings is crossed in the fixed pattern.
/// With `only` given, only triples whose top residues read `i, i±1, i`
/// (left to right at the bottom) are examined.
pub fn verify_321(n: usize, letters: &[usize], only: Option<(QuantumChar, &[Residue])>) -> bool {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut height = vec![vec![usize::MAX; n]; n];
    for (h, &a) in letters.iter().rev().enumerate() {
        let (x, y) = (cur[a - 1], cur[a]);
        height[x.min(y)][x.max(y)] = h;
        cur.swap(a - 1, a);
    }
    let top = top_positions(n, letters);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !(top[i] > top[j] && top[j] > top[k]) {
                    continue;
                }
                if let Some((e, res)) = only {
                    let (ri, rj, rk) = (res[top[i]], res[top[j]], res[top[k]]);
                    if ri != rk || !e.adjacent(ri, rj) {
                        continue;
                    }
                }
                if !(height[i][j] < height[i][k] && height[i][k] < height[j][k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// A term `coef · word` produced by a relation.
pub type Term = (i64, Vec<Generator>);

/// Rewrites reduced words by commutation and braid moves, recording the
/// correction term of every braid move whose strands have residues
/// `i, j, i` with `i` and `j` adjacent.
pub struct Rewriter<'a> {
    e: QuantumChar,
    top: &'a [Residue],
    pub word: Vec<usize>,
    pub errors: Vec<Term>,
}

impl<'a> Rewriter<'a> {
    pub fn new(e: QuantumChar, top: &'a [Residue], word: Vec<usize>) -> Self {
        Rewriter { e, top, word, errors: Vec::new() }
    }

    /// `ψ_a ψ_{a+1} ψ_a = ψ_{a+1} ψ_a ψ_{a+1} - E` on strands `i, j, i`, where
    /// `E = (Q_{ij}(y_{a+2}, y_{a+1}) - Q_{ij}(y_a, y_{a+1})) / (y_{a+2} - y_a)`.
    fn braid(&mut self, k: usize) {
        let (x, y, z) = (self.word[k], self.word[k + 1], self.word[k + 2]);
        debug_assert!(x == z && x.abs_diff(y) == 1);
        let c = x.min(y);
        let res = propagate_residues(self.top, &self.word[..k]);
        let (i, j, l) = (res[c - 1], res[c], res[c + 1]);
        // sign of E in the move from (x, y, x) to (y, x, y)
        let sign = if x == c { -1 } else { 1 };
        if i == l && self.e.adjacent(i, j) {
            let mut poly: Vec<(i64, usize)> = Vec::new();
            if self.e == QuantumChar::Finite(2) {
                poly.extend([(2, c + 1), (-1, c), (-1, c + 2)]);
            } else if self.e.is_successor(i, j) {
                poly.push((-1, 0));
            } else {
                poly.push((1, 0));
            }
            for (coef, dot) in poly {
                let mut w: Vec<Generator> = self.word[..k].iter().map(|&a| Generator::Psi(a)).collect();
                if dot > 0 {
                    w.push(Generator::Y(dot));
                }
                w.extend(self.word[k + 3..].iter().map(|&a| Generator::Psi(a)));
                self.errors.push((sign * coef, w));
            }
        }
        self.word[k] = y;
        self.word[k + 1] = x;
        self.word[k + 2] = y;
    }

    /// Moves within `word[..end]` so that `word[end - 1] == b`. The prefix
    /// must be reduced and have `b` as a right descent.
    pub fn make_end(&mut self, end: usize, b: usize) {
        let a = self.word[end - 1];
        if a == b {
            return;
        }
        if a.abs_diff(b) >= 2 {
            self.make_end(end - 1, b);
            self.word.swap(end - 2, end - 1);
        } else {
            self.make_end(end - 1, b);
            self.make_end(end - 2, a);
            self.braid(end - 3);
        }
    }

    /// Moves within `word[start..]` so that `word[start] == b`.
    pub fn make_start(&mut self, start: usize, b: usize) {
        let a = self.word[start];
        if a == b {
            return;
        }
        if a.abs_diff(b) >= 2 {
            self.make_start(start + 1, b);
            self.word.swap(start, start + 1);
        } else {
            self.make_start(start + 1, b);
            self.make_start(start + 2, a);
            self.braid(start);
        }
    }

    /// Rewrites the whole word into `target`, aligning from the bottom.
    pub fn rewrite_to(&mut self, target: &[usize]) {
        debug_assert_eq!(self.word.len(), target.len());
        for p in (0..target.len()).rev() {
            self.make_end(p + 1, target[p]);
        }
    }

    /// Rewrites the whole word into `target`, aligning from the top.
    pub fn rewrite_to_from_top(&mut self, target: &[usize]) {
        debug_assert_eq!(self.word.len(), target.len());
        for (p, &b) in target.iter().enumerate() {
            self.make_start(p, b);
        }
    }
}
