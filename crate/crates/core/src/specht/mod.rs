//! Graded Specht modules and the straightening engine.
//!
//! `S^λ` is the right module generated by `z = v_{t^λ}` with basis
//! `v_t = z ψ_{w_t}`, one vector per standard tableau, where `w_t` is the
//! fixed reduced word of [`canonical_reduced_word`]. The action of every
//! generator on every basis vector is computed on demand and cached.
//!
//! `v_t ψ_r` is found by rewriting `w_t r` with braid moves:
//! * if `t s_r` is standard, into `w_{t s_r}`;
//! * if `r` and `r + 1` would sit side by side in a row, into a word
//!   starting with the crossing of those two nodes, which kills `z`;
//! * if they would sit in a column, into a word starting with the leading
//!   term of a Garnir relation, which is then replaced by the other terms;
//! * if the length drops, into a word ending in `r`, whose square becomes
//!   a polynomial in the dots.
//!
//! `v_t y_r` slides the dot to the top of `w_t`, where it kills `z`.
//! Every recursive call acts on a strictly shorter basis vector or word.

mod garnir;
pub mod oracle;

use crate::combinatorics::{Multicharge, Multipartition, Node, QuantumChar, Residue, Tableau};
use crate::error::{invalid, Result};
use crate::klr::{
    propagate_residues, word_between, word_for_top_positions, Generator, KlrWord, Rewriter,
};
use crate::ring::Ring;
use garnir::Garnir;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

pub use crate::klr::canonical_reduced_word;

/// Entries of a tableau in node order.
pub(crate) type Key = Vec<u8>;

/// A linear combination of basis vectors `v_t`, keyed by the entries of
/// `t` in node order.
#[derive(Clone, Debug, PartialEq)]
pub struct SpechtElement<E> {
    pub(crate) terms: BTreeMap<Key, E>,
}

impl<E: Clone> SpechtElement<E> {
    pub fn zero() -> Self {
        SpechtElement { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(entries in node order, coefficient)`, in increasing order.
    pub fn raw_terms(&self) -> impl Iterator<Item = (&[u8], &E)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Letter {
    Psi(u8),
    Y(u8),
}

type Terms<E> = Arc<Vec<(Key, E)>>;
type ActionCache<E> = Mutex<HashMap<(Key, Letter), Terms<E>>>;
/// Sums of `ψ` words with integer coefficients.
pub type WordSum = Vec<(i64, Vec<usize>)>;

/// The Specht module `S^λ` over a ring.
pub struct SpechtModule<R: Ring> {
    ring: R,
    e: QuantumChar,
    kappa: Multicharge,
    lambda: Multipartition,
    n: usize,
    node_res: Vec<Residue>,
    left: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    garnir: Vec<Option<Garnir>>,
    garnir_sign: i64,
    cache: ActionCache<R::Elem>,
}

impl<R: Ring> SpechtModule<R> {
    pub fn new(lambda: &Multipartition, e: QuantumChar, kappa: &Multicharge, ring: R) -> Result<Self> {
        Self::with_garnir_sign(lambda, e, kappa, ring, 1)
    }

    /// Builds the module with `τ_r = σ_r + sign` in the Garnir relations.
    #[doc(hidden)]
    pub fn with_garnir_sign(
        lambda: &Multipartition,
        e: QuantumChar,
        kappa: &Multicharge,
        ring: R,
        sign: i64,
    ) -> Result<Self> {
        if lambda.level() != kappa.level() {
            return invalid("multipartition and multicharge have different levels");
        }
        let n = lambda.size();
        if n > 255 {
            return invalid("at most 255 nodes are supported");
        }
        let nodes = lambda.nodes();
        let node_res = nodes.iter().map(|x| x.residue(e, kappa)).collect();
        let idx = |m: Node| lambda.node_index(m);
        let left = nodes
            .iter()
            .map(|x| (x.col > 1).then(|| idx(Node::new(x.comp, x.row, x.col - 1)).unwrap()))
            .collect();
        let above = nodes
            .iter()
            .map(|x| (x.row > 1).then(|| idx(Node::new(x.comp, x.row - 1, x.col)).unwrap()))
            .collect();
        let garnir = nodes
            .iter()
            .map(|x| {
                lambda
                    .contains(Node::new(x.comp, x.row + 1, x.col))
                    .then(|| garnir::garnir(lambda, e, *x, sign))
            })
            .collect();
        Ok(SpechtModule {
            ring,
            e,
            kappa: kappa.clone(),
            lambda: lambda.clone(),
            n,
            node_res,
            left,
            above,
            garnir,
            garnir_sign: sign,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn shape(&self) -> &Multipartition {
        &self.lambda
    }

    pub fn quantum_char(&self) -> QuantumChar {
        self.e
    }

    pub fn multicharge(&self) -> &Multicharge {
        &self.kappa
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn garnir_sign(&self) -> i64 {
        self.garnir_sign
    }

    /// Residues of the nodes in node order, which is `i^λ`.
    pub fn initial_residues(&self) -> &[Residue] {
        &self.node_res
    }

    /// Number of cached action results.
    pub fn cache_size(&self) -> usize {
        self.cache.lock().unwrap().len()
    }

    // ---- tableaux as keys ----

    pub(crate) fn key_of(&self, t: &Tableau) -> Result<Key> {
        if t.shape() != &self.lambda {
            return invalid(format!("tableau of shape {} in S^{}", t.shape(), self.lambda));
        }
        Ok(t.entries().iter().map(|&v| v as u8).collect())
    }

    pub fn tableau_of_key(&self, k: &[u8]) -> Tableau {
        Tableau::new(self.lambda.clone(), k.iter().map(|&v| v as usize).collect())
            .expect("keys are permutations")
    }

    pub(crate) fn positions(&self, k: &[u8]) -> Vec<usize> {
        let mut pos = vec![0; k.len()];
        for (idx, &v) in k.iter().enumerate() {
            pos[v as usize - 1] = idx;
        }
        pos
    }

    pub(crate) fn is_standard_key(&self, k: &[u8]) -> bool {
        (0..k.len()).all(|i| {
            self.left[i].is_none_or(|l| k[l] < k[i]) && self.above[i].is_none_or(|a| k[a] < k[i])
        })
    }

    pub(crate) fn residues_of_key(&self, k: &[u8]) -> Vec<Residue> {
        self.positions(k).iter().map(|&p| self.node_res[p]).collect()
    }

    pub(crate) fn initial_key(&self) -> Key {
        (1..=self.n as u8).collect()
    }

    // ---- vectors ----

    pub fn z(&self) -> SpechtElement<R::Elem> {
        let mut terms = BTreeMap::new();
        terms.insert(self.initial_key(), self.ring.one());
        SpechtElement { terms }
    }

    pub fn basis_vector(&self, t: &Tableau) -> Result<SpechtElement<R::Elem>> {
        let k = self.key_of(t)?;
        if !self.is_standard_key(&k) {
            return Err(crate::Error::NotStandard(t.render()));
        }
        let mut terms = BTreeMap::new();
        terms.insert(k, self.ring.one());
        Ok(SpechtElement { terms })
    }

    pub fn terms(&self, v: &SpechtElement<R::Elem>) -> Vec<(Tableau, R::Elem)> {
        v.terms.iter().map(|(k, c)| (self.tableau_of_key(k), c.clone())).collect()
    }

    pub fn coefficient(&self, v: &SpechtElement<R::Elem>, t: &Tableau) -> R::Elem {
        self.key_of(t)
            .ok()
            .and_then(|k| v.terms.get(&k).cloned())
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn from_terms(&self, terms: &[(Tableau, R::Elem)]) -> Result<SpechtElement<R::Elem>> {
        let mut acc = BTreeMap::new();
        for (t, c) in terms {
            let k = self.key_of(t)?;
            if !self.is_standard_key(&k) {
                return Err(crate::Error::NotStandard(t.render()));
            }
            self.add_term(&mut acc, k, c);
        }
        Ok(SpechtElement { terms: acc })
    }

    pub fn add(&self, a: &SpechtElement<R::Elem>, b: &SpechtElement<R::Elem>) -> SpechtElement<R::Elem> {
        let mut acc = a.terms.clone();
        self.add_scaled(&mut acc, &b.terms, &self.ring.one());
        SpechtElement { terms: acc }
    }

    pub fn scale(&self, a: &SpechtElement<R::Elem>, c: &R::Elem) -> SpechtElement<R::Elem> {
        let mut acc = BTreeMap::new();
        self.add_scaled(&mut acc, &a.terms, c);
        SpechtElement { terms: acc }
    }

    /// Fails if any coefficient recorded an overflow.
    pub fn check(&self, v: &SpechtElement<R::Elem>) -> Result<()> {
        v.terms.values().try_for_each(|c| self.ring.check(c))
    }

    /// Human-readable form, e.g. `"2/1·[1 2 / 3] + -1/1·[1 3 / 2]"`.
    pub fn format(&self, v: &SpechtElement<R::Elem>) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        v.terms
            .iter()
            .map(|(k, c)| format!("{}·[{}]", self.ring.format(c), self.tableau_of_key(k).render()))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `{module: {shape, e, kappa, ring}, terms: [[tableau, coeff], ...]}`.
    pub fn element_to_json(&self, v: &SpechtElement<R::Elem>) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms(v)
            .iter()
            .map(|(t, c)| serde_json::json!([t, self.ring.format(c)]))
            .collect();
        serde_json::json!({
            "module": {
                "shape": self.lambda,
                "e": self.e,
                "kappa": self.kappa,
                "ring": self.ring.spec(),
            },
            "terms": terms,
        })
    }

    /// Reads an element written by [`Self::element_to_json`]; the module
    /// recorded in the JSON must be this one.
    pub fn element_from_json(&self, value: &serde_json::Value) -> Result<SpechtElement<R::Elem>> {
        let bad = |what: &str| crate::Error::InvalidInput(format!("element JSON: {what}"));
        let module = value.get("module").ok_or_else(|| bad("missing module"))?;
        let expected = self.element_to_json(&SpechtElement::zero());
        if module != &expected["module"] {
            return Err(bad("module does not match"));
        }
        let terms = value.get("terms").and_then(|t| t.as_array()).ok_or_else(|| bad("missing terms"))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for term in terms {
            let pair = term.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("terms are [tableau, coeff] pairs"))?;
            let t: Tableau = serde_json::from_value(pair[0].clone()).map_err(|e| bad(&e.to_string()))?;
            let c = self.ring.parse(pair[1].as_str().ok_or_else(|| bad("coefficients are strings"))?)?;
            parsed.push((t, c));
        }
        self.from_terms(&parsed)
    }

    fn add_term(&self, acc: &mut BTreeMap<Key, R::Elem>, k: Key, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        match acc.get_mut(&k) {
            Some(x) => {
                *x = self.ring.add(x, c);
                if self.ring.is_zero(x) {
                    acc.remove(&k);
                }
            }
            None => {
                acc.insert(k, c.clone());
            }
        }
    }

    fn add_scaled(&self, acc: &mut BTreeMap<Key, R::Elem>, src: &BTreeMap<Key, R::Elem>, c: &R::Elem) {
        for (k, x) in src {
            self.add_term(acc, k.clone(), &self.ring.mul(x, c));
        }
    }

    fn add_scaled_i64(&self, acc: &mut BTreeMap<Key, R::Elem>, src: &BTreeMap<Key, R::Elem>, c: i64) {
        let c = self.ring.from_i64(c);
        self.add_scaled(acc, src, &c);
    }

    // ---- acting ----

    /// `v · g` for a single generator.
    pub fn act(&self, v: &SpechtElement<R::Elem>, g: &Generator) -> Result<SpechtElement<R::Elem>> {
        KlrWord(vec![g.clone()]).check(self.n)?;
        Ok(SpechtElement { terms: self.act_gen(&v.terms, g) })
    }

    /// `v · w` for a word, read left to right.
    pub fn act_word(&self, v: &SpechtElement<R::Elem>, w: &KlrWord) -> Result<SpechtElement<R::Elem>> {
        w.check(self.n)?;
        let mut cur = v.terms.clone();
        for g in &w.0 {
            cur = self.act_gen(&cur, g);
        }
        Ok(SpechtElement { terms: cur })
    }

    /// Expands `z · w` in the standard basis.
    pub fn straighten(&self, w: &KlrWord) -> Result<SpechtElement<R::Elem>> {
        self.act_word(&self.z(), w)
    }

    /// The basis vector `v_t` acted on by `g`, from the cache when possible.
    pub fn act_on_basis(&self, t: &Tableau, g: &Generator) -> Result<SpechtElement<R::Elem>> {
        self.act(&self.basis_vector(t)?, g)
    }

    fn act_gen(&self, v: &BTreeMap<Key, R::Elem>, g: &Generator) -> BTreeMap<Key, R::Elem> {
        match g {
            Generator::Psi(r) => self.act_letter(v, Letter::Psi(*r as u8)),
            Generator::Y(r) => self.act_letter(v, Letter::Y(*r as u8)),
            Generator::Idem(i) => v
                .iter()
                .filter(|(k, _)| &self.residues_of_key(k) == i)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub(crate) fn act_letter(&self, v: &BTreeMap<Key, R::Elem>, l: Letter) -> BTreeMap<Key, R::Elem> {
        let mut acc = BTreeMap::new();
        for (k, c) in v {
            for (k2, c2) in self.act_basis(k, l).iter() {
                self.add_term(&mut acc, k2.clone(), &self.ring.mul(c, c2));
            }
        }
        acc
    }

    fn act_psi_word(&self, mut v: BTreeMap<Key, R::Elem>, word: &[usize]) -> BTreeMap<Key, R::Elem> {
        for &a in word {
            if v.is_empty() {
                break;
            }
            v = self.act_letter(&v, Letter::Psi(a as u8));
        }
        v
    }

    fn eval_z_psi(&self, word: &[usize]) -> BTreeMap<Key, R::Elem> {
        self.act_psi_word(self.z().terms, word)
    }

    fn eval_z_gens(&self, word: &[Generator]) -> BTreeMap<Key, R::Elem> {
        let mut v = self.z().terms;
        for g in word {
            if v.is_empty() {
                break;
            }
            v = self.act_gen(&v, g);
        }
        v
    }

    fn act_basis(&self, k: &[u8], l: Letter) -> Terms<R::Elem> {
        let key = (k.to_vec(), l);
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let computed = stacker::maybe_grow(256 * 1024, 32 * 1024 * 1024, || match l {
            Letter::Psi(r) => self.compute_psi(k, r as usize),
            Letter::Y(r) => self.push_dot(&word_for_top_positions(&self.positions(k)), r as usize),
        });
        let out: Terms<R::Elem> = Arc::new(computed.into_iter().collect());
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    /// `Q_{ij}(y_r, y_{r+1})` as `(coefficient, dots)`.
    fn quadratic(&self, i: Residue, j: Residue, r: usize) -> WordSum {
        if i == j {
            Vec::new()
        } else if self.e == QuantumChar::Finite(2) {
            vec![(-1, vec![r + 1, r + 1]), (2, vec![r, r + 1]), (-1, vec![r, r])]
        } else if self.e.is_successor(i, j) {
            vec![(1, vec![r + 1]), (-1, vec![r])]
        } else if self.e.is_successor(j, i) {
            vec![(1, vec![r]), (-1, vec![r + 1])]
        } else {
            vec![(1, Vec::new())]
        }
    }

    fn add_errors(&self, acc: &mut BTreeMap<Key, R::Elem>, errors: &[(i64, Vec<Generator>)], then: &[Generator]) {
        for (c, w) in errors {
            let mut v = self.eval_z_gens(w);
            for g in then {
                v = self.act_gen(&v, g);
            }
            self.add_scaled_i64(acc, &v, *c);
        }
    }

    fn compute_psi(&self, k: &[u8], r: usize) -> BTreeMap<Key, R::Elem> {
        let pos = self.positions(k);
        let (p, q) = (pos[r - 1], pos[r]);
        let w = word_for_top_positions(&pos);
        let mut acc = BTreeMap::new();
        if p > q {
            let mut rw = Rewriter::new(self.e, &self.node_res, w);
            let len = rw.word.len();
            rw.make_end(len, r);
            self.add_errors(&mut acc, &rw.errors, &[Generator::Psi(r)]);
            let u = &rw.word[..len - 1];
            let res = propagate_residues(&self.node_res, u);
            let base = self.eval_z_psi(u);
            for (c, dots) in self.quadratic(res[r - 1], res[r], r) {
                let mut v = base.clone();
                for d in dots {
                    v = self.act_letter(&v, Letter::Y(d as u8));
                }
                self.add_scaled_i64(&mut acc, &v, c);
            }
            return acc;
        }
        let mut swapped: Key = k.to_vec();
        swapped.swap(p, q);
        let mut word = w.clone();
        word.push(r);
        let mut rw = Rewriter::new(self.e, &self.node_res, word);
        if self.is_standard_key(&swapped) {
            rw.rewrite_to(&word_for_top_positions(&self.positions(&swapped)));
            self.add_term(&mut acc, swapped, &self.ring.one());
            self.add_errors(&mut acc, &rw.errors, &[]);
        } else if self.left[q] == Some(p) {
            let mut target = vec![p + 1];
            target.extend(&w);
            rw.rewrite_to(&target);
            self.add_errors(&mut acc, &rw.errors, &[]);
        } else {
            debug_assert_eq!(self.above[q], Some(p));
            let g = self.garnir[p].as_ref().expect("Garnir node");
            let x = word_between(&g.g_positions, &self.positions(&swapped));
            let mut target = g.lead.clone();
            target.extend(&x);
            assert_eq!(target.len(), rw.word.len(), "Garnir factorisation is not length additive");
            rw.rewrite_to(&target);
            self.add_errors(&mut acc, &rw.errors, &[]);
            for (c, other) in &g.others {
                let mut ow = other.clone();
                ow.extend(&x);
                let v = self.eval_z_psi(&ow);
                self.add_scaled_i64(&mut acc, &v, -c);
            }
        }
        acc
    }

    /// `z ψ_w y_r`.
    fn push_dot(&self, w: &[usize], r: usize) -> BTreeMap<Key, R::Elem> {
        let Some((&a, prefix)) = w.split_last() else {
            return BTreeMap::new();
        };
        let res = propagate_residues(&self.node_res, prefix);
        let same = res[a - 1] == res[a];
        let moved = if r == a {
            a + 1
        } else if r == a + 1 {
            a
        } else {
            r
        };
        let v = stacker::maybe_grow(256 * 1024, 32 * 1024 * 1024, || self.push_dot(prefix, moved));
        let mut acc = self.act_letter(&v, Letter::Psi(a as u8));
        if same && (r == a || r == a + 1) {
            let sign = if r == a { -1 } else { 1 };
            let base = self.eval_z_psi(prefix);
            self.add_scaled_i64(&mut acc, &base, sign);
        }
        acc
    }

    /// Garnir relations of `S^λ`, keyed by their node, as sums of `ψ` words.
    pub fn garnir_relations(&self) -> Vec<(Node, WordSum)> {
        let nodes = self.lambda.nodes();
        self.garnir
            .iter()
            .enumerate()
            .filter_map(|(i, g)| g.as_ref().map(|g| (nodes[i], g.terms())))
            .collect()
    }

    /// Applies a sum of `ψ` words with integer coefficients to `v`.
    pub fn act_combination(
        &self,
        v: &SpechtElement<R::Elem>,
        terms: &[(i64, Vec<usize>)],
    ) -> SpechtElement<R::Elem> {
        let mut acc = BTreeMap::new();
        for (c, w) in terms {
            let x = self.act_psi_word(v.terms.clone(), w);
            self.add_scaled_i64(&mut acc, &x, *c);
        }
        SpechtElement { terms: acc }
    }

    /// Degree of a standard tableau.
    pub fn degree_of(&self, t: &Tableau) -> Result<i64> {
        t.degree(self.e, &self.kappa)
    }

    pub fn standard_basis(&self) -> Vec<Tableau> {
        crate::combinatorics::standard_tableaux(&self.lambda)
    }
}

/// The Garnir relation of `λ` at `node`, as a sum of `ψ` words applied to
/// `z`, or `None` when `node` has no node below it.
pub fn garnir_relation(lambda: &Multipartition, e: QuantumChar, node: Node) -> Option<WordSum> {
    (lambda.contains(node) && lambda.contains(Node::new(node.comp, node.row + 1, node.col)))
        .then(|| garnir::garnir(lambda, e, node, 1).terms())
}
