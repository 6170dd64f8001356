//! Graded homomorphisms between Specht modules.
//!
//! A homomorphism `S^λ⟨d⟩ → S^μ` is determined by the image `v` of the
//! generator `z^λ`; `v` must lie in the component of `S^μ` of degree
//! `deg t^λ + d` and residue sequence `i^λ`, and must be killed by every
//! defining relation of `S^λ`.

use crate::combinatorics::{
    detect_cp_pair, tableaux_with_residues, CpPair, Multicharge, Multipartition, Node, QuantumChar, Residue,
    Tableau,
};
use crate::error::{invalid, Error, Result};
use crate::klr::Generator;
use crate::ring::{Integers, PrimeField, Rationals, Ring, RingSpec};
use crate::specht::{garnir_relation, SpechtElement, SpechtModule};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

/// Environment variable holding a time budget in seconds.
pub const BUDGET_ENV: &str = "SPECHT_CP_BUDGET_SECS";

/// A wall-clock limit for long computations.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    start: Instant,
    limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { start: Instant::now(), limit: None }
    }

    pub fn seconds(secs: u64) -> Self {
        Budget { start: Instant::now(), limit: Some(Duration::from_secs(secs)) }
    }

    /// Reads the budget from the environment, falling back to `default`.
    pub fn from_env(default: Option<u64>) -> Self {
        let secs = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).or(default);
        match secs {
            Some(s) => Budget::seconds(s),
            None => Budget::unlimited(),
        }
    }

    pub fn check(&self) -> Result<()> {
        match self.limit {
            Some(l) if self.start.elapsed() > l => Err(Error::BudgetExhausted(l.as_secs())),
            _ => Ok(()),
        }
    }
}

/// Options for the solver.
#[derive(Clone, Copy, Debug)]
pub struct HomOptions {
    pub jobs: usize,
    pub budget: Budget,
}

impl Default for HomOptions {
    fn default() -> Self {
        HomOptions { jobs: 1, budget: Budget::unlimited() }
    }
}

/// One defining relation of `S^λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RelationGenerator {
    /// `z y_r = 0`.
    Dot(usize),
    /// `z ψ_r = 0` for `r, r + 1` in one row of `t^λ`.
    RowPsi(usize),
    /// The Garnir relation at a node with a node below it.
    Garnir(Node),
    /// `z e(i^λ) = z`.
    ResidueIdem,
}

/// A relation together with its expansion as a combination of words.
#[derive(Clone, Debug)]
pub struct Relation {
    pub generator: RelationGenerator,
    pub terms: Vec<(i64, Vec<Generator>)>,
}

/// The defining relations of `S^λ` in a fixed order: dots, row crossings,
/// Garnir nodes, then the residue relation.
pub fn relation_generators(lambda: &Multipartition) -> Vec<RelationGenerator> {
    let nodes = lambda.nodes();
    let n = nodes.len();
    let mut out: Vec<RelationGenerator> = (1..=n).map(RelationGenerator::Dot).collect();
    for r in 1..n {
        let (a, b) = (nodes[r - 1], nodes[r]);
        if a.comp == b.comp && a.row == b.row {
            out.push(RelationGenerator::RowPsi(r));
        }
    }
    for x in &nodes {
        if lambda.contains(Node::new(x.comp, x.row + 1, x.col)) {
            out.push(RelationGenerator::Garnir(*x));
        }
    }
    out.push(RelationGenerator::ResidueIdem);
    out
}

/// The relations of `S^λ` expanded into words.
pub fn relations(lambda: &Multipartition, e: QuantumChar, kappa: &Multicharge) -> Vec<Relation> {
    let res = Tableau::initial(lambda).residue_sequence(e, kappa);
    relation_generators(lambda)
        .into_iter()
        .map(|g| {
            let terms = match &g {
                RelationGenerator::Dot(r) => vec![(1, vec![Generator::Y(*r)])],
                RelationGenerator::RowPsi(r) => vec![(1, vec![Generator::Psi(*r)])],
                RelationGenerator::Garnir(node) => garnir_relation(lambda, e, *node)
                    .expect("Garnir node")
                    .into_iter()
                    .map(|(c, w)| (c, w.into_iter().map(Generator::Psi).collect()))
                    .collect(),
                RelationGenerator::ResidueIdem => vec![(1, vec![Generator::Idem(res.clone())]), (-1, vec![])],
            };
            Relation { generator: g, terms }
        })
        .collect()
}

/// `v` acted on by a relation.
pub fn apply_relation<R: Ring>(
    m: &SpechtModule<R>,
    v: &SpechtElement<R::Elem>,
    rel: &Relation,
) -> SpechtElement<R::Elem> {
    let ring = m.ring();
    let mut acc = SpechtElement::zero();
    for (c, word) in &rel.terms {
        let mut x = v.clone();
        for g in word {
            x = m.act(&x, g).expect("relation words fit the rank");
        }
        acc = m.add(&acc, &m.scale(&x, &ring.from_i64(*c)));
    }
    acc
}

/// Standard tableaux of the module's shape with the given degree and
/// residue sequence, in enumeration order.
pub fn graded_component<R: Ring>(m: &SpechtModule<R>, degree: i64, residues: &[Residue]) -> Vec<Tableau> {
    tableaux_with_residues(m.shape(), m.quantum_char(), m.multicharge(), residues)
        .into_iter()
        .filter(|t| m.degree_of(t).ok() == Some(degree))
        .collect()
}

/// The degree of `z^λ` and its residue sequence.
fn generator_data(lambda: &Multipartition, e: QuantumChar, kappa: &Multicharge) -> Result<(i64, Vec<Residue>)> {
    let t = Tableau::initial(lambda);
    Ok((t.degree(e, kappa)?, t.residue_sequence(e, kappa)))
}

/// A basis of `Hom(S^λ⟨d⟩, S^μ)` given by images of `z^λ`.
pub struct HomSpace<R: Ring> {
    pub module: SpechtModule<R>,
    pub degree: i64,
    pub component: Vec<Tableau>,
    pub basis: Vec<SpechtElement<R::Elem>>,
}

impl<R: Ring> HomSpace<R> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[allow(clippy::too_many_arguments)]
pub fn hom_space<R: Ring>(
    lambda: &Multipartition,
    mu: &Multipartition,
    degree: i64,
    e: QuantumChar,
    kappa: &Multicharge,
    ring: R,
    opts: &HomOptions,
) -> Result<HomSpace<R>> {
    if lambda.size() != mu.size() {
        return invalid(format!("{lambda} and {mu} have different sizes"));
    }
    if !ring.is_field() {
        return Err(Error::Unsupported(format!("Hom spaces over {}", ring.spec())));
    }
    let module = SpechtModule::new(mu, e, kappa, ring)?;
    let (d0, res) = generator_data(lambda, e, kappa)?;
    let component = graded_component(&module, d0 + degree, &res);
    let rels = relations(lambda, e, kappa);

    // Column j holds v_{t_j} acted on by every relation, as a map from
    // (relation, output tableau) to a coefficient.
    type Column<E> = BTreeMap<(usize, Vec<usize>), E>;
    let column = |t: &Tableau| -> Result<Column<R::Elem>> {
        opts.budget.check()?;
        let v = module.basis_vector(t)?;
        let mut col = BTreeMap::new();
        for (i, rel) in rels.iter().enumerate() {
            let w = apply_relation(&module, &v, rel);
            for (k, c) in w.raw_terms() {
                col.insert((i, k.iter().map(|&x| x as usize).collect()), c.clone());
            }
        }
        Ok(col)
    };
    let jobs = opts.jobs.max(1).min(component.len().max(1));
    let columns: Vec<Column<R::Elem>> = if jobs == 1 {
        component.iter().map(column).collect::<Result<_>>()?
    } else {
        let chunk = component.len().div_ceil(jobs);
        std::thread::scope(|s| {
            let handles: Vec<_> = component
                .chunks(chunk)
                .map(|part| s.spawn(|| part.iter().map(column).collect::<Result<Vec<_>>>()))
                .collect();
            let mut all = Vec::new();
            for h in handles {
                all.extend(h.join().expect("solver thread")?);
            }
            Ok::<_, Error>(all)
        })?
    };

    let ring = module.ring().clone();
    let mut rows: BTreeMap<&(usize, Vec<usize>), Vec<R::Elem>> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (key, c) in col {
            rows.entry(key).or_insert_with(|| vec![ring.zero(); component.len()])[j] = c.clone();
        }
    }
    let null = ring.nullspace(component.len(), &mut rows.into_values())?;
    let basis = null
        .into_iter()
        .map(|x| {
            let terms: Vec<(Tableau, R::Elem)> =
                component.iter().cloned().zip(x).filter(|(_, c)| !ring.is_zero(c)).collect();
            module.from_terms(&terms)
        })
        .collect::<Result<_>>()?;
    Ok(HomSpace { module, degree, component, basis })
}

/// Where a certificate's image came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Provenance {
    CarterPayne,
    SolverBasisVector,
}

/// One term of an image, with the coefficient in text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageTerm {
    pub tableau: Tableau,
    pub coeff: String,
}

/// A claimed homomorphism `S^λ⟨degree⟩ → S^μ`, given by the image of `z^λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HomCertificate {
    pub lambda: Multipartition,
    pub mu: Multipartition,
    pub e: QuantumChar,
    pub kappa: Multicharge,
    pub ring: RingSpec,
    pub degree: i64,
    pub image: Vec<ImageTerm>,
    pub verified: bool,
    pub provenance: Provenance,
}

impl HomCertificate {
    /// Builds an unverified certificate from an element of `S^μ`.
    pub fn from_element<R: Ring>(
        lambda: &Multipartition,
        m: &SpechtModule<R>,
        degree: i64,
        v: &SpechtElement<R::Elem>,
        provenance: Provenance,
    ) -> Self {
        let ring = m.ring();
        HomCertificate {
            lambda: lambda.clone(),
            mu: m.shape().clone(),
            e: m.quantum_char(),
            kappa: m.multicharge().clone(),
            ring: ring.spec(),
            degree,
            image: m
                .terms(v)
                .into_iter()
                .map(|(t, c)| ImageTerm { tableau: t, coeff: ring.format(&c) })
                .collect(),
            verified: false,
            provenance,
        }
    }

    pub fn is_zero_map(&self) -> bool {
        self.image.is_empty()
    }

    /// Checks the image directly against the relations of `S^λ` and
    /// records the outcome in `verified`.
    pub fn verify(&mut self) -> Result<bool> {
        self.verify_within(&Budget::unlimited())
    }

    pub fn verify_within(&mut self, budget: &Budget) -> Result<bool> {
        let ok = match self.ring {
            RingSpec::Rationals => self.check_in(Rationals, budget)?,
            RingSpec::PrimeField(p) => self.check_in(PrimeField::new(p)?, budget)?,
            RingSpec::Integers => self.check_in(Integers, budget)?,
        };
        self.verified = ok;
        Ok(ok)
    }

    fn check_in<R: Ring>(&self, ring: R, budget: &Budget) -> Result<bool> {
        if self.lambda.size() != self.mu.size() {
            return Ok(false);
        }
        let m = SpechtModule::new(&self.mu, self.e, &self.kappa, ring.clone())?;
        let (d0, res) = generator_data(&self.lambda, self.e, &self.kappa)?;
        let mut terms = Vec::new();
        for it in &self.image {
            if it.tableau.shape() != &self.mu || !it.tableau.is_standard() {
                return Ok(false);
            }
            if it.tableau.residue_sequence(self.e, &self.kappa) != res
                || it.tableau.degree(self.e, &self.kappa)? != d0 + self.degree
            {
                return Ok(false);
            }
            terms.push((it.tableau.clone(), ring.parse(&it.coeff)?));
        }
        let v = m.from_terms(&terms)?;
        for rel in relations(&self.lambda, self.e, &self.kappa) {
            budget.check()?;
            let w = apply_relation(&m, &v, &rel);
            m.check(&w)?;
            if !w.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The certificate of the homomorphism attached to a Carter–Payne pair:
/// `z^λ ↦ v_{t*}` in degree `a − b + 2d`.
pub fn carter_payne<R: Ring>(pair: &CpPair, ring: R) -> Result<HomCertificate> {
    let m = SpechtModule::new(&pair.mu, pair.e, &pair.kappa, ring)?;
    let v = m.basis_vector(&pair.target_tableau())?;
    Ok(HomCertificate::from_element(&pair.lambda, &m, pair.degree, &v, Provenance::CarterPayne))
}

/// Detects the pair and builds its certificate.
pub fn carter_payne_for<R: Ring>(
    lambda: &Multipartition,
    mu: &Multipartition,
    e: QuantumChar,
    kappa: &Multicharge,
    ring: R,
) -> Result<HomCertificate> {
    carter_payne(&detect_cp_pair(lambda, mu, e, kappa)?, ring)
}

/// The reduction of `v_{t_λ^ν} · L` inside `S^ν`, keeping only terms whose
/// restriction to `1..n` has a shape dominated by `μ`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProofTrace {
    /// `"y_{n+1}^c"` or `"e_m^d"`.
    pub load: String,
    pub total_terms: usize,
    pub survivors: Vec<ImageTerm>,
    /// The survivors restricted to `1..n`.
    pub restricted: Vec<Tableau>,
}

impl ProofTrace {
    /// True when exactly one term survives and it restricts to `t*`.
    pub fn confirms(&self, pair: &CpPair) -> bool {
        self.restricted == [pair.target_tableau()]
    }
}

/// Applies `L` to `v_{t_λ^ν}`: `y_{n+1}^c` for one-row pairs when
/// `one_row` is set, otherwise the elementary symmetric polynomial of
/// degree `d` in the dots on the first `n` strands of residue `i_1`.
pub fn cp_proof_trace<R: Ring>(pair: &CpPair, ring: R, one_row: bool, budget: &Budget) -> Result<ProofTrace> {
    if one_row && !pair.one_row {
        return invalid("the one-row load needs a one-row pair");
    }
    let n = pair.lambda.size();
    let m = SpechtModule::new(&pair.nu, pair.e, &pair.kappa, ring)?;
    let start = pair.initial_extended();
    let v = m.basis_vector(&start)?;
    let res = start.residue_sequence(pair.e, &pair.kappa);
    let (load, out) = if one_row {
        let mut x = v;
        for _ in 0..pair.c {
            budget.check()?;
            x = m.act(&x, &Generator::Y(n + 1))?;
        }
        (format!("y_{}^{}", n + 1, pair.c), x)
    } else {
        let i1 = pair.mu_star.first_node().residue(pair.e, &pair.kappa);
        let strands: Vec<usize> = (1..=n).filter(|&s| res[s - 1] == i1).collect();
        let mut acc = SpechtElement::zero();
        for subset in subsets(&strands, pair.d) {
            budget.check()?;
            let mut x = v.clone();
            for s in subset {
                x = m.act(&x, &Generator::Y(s))?;
            }
            acc = m.add(&acc, &x);
        }
        (format!("e_{}^{}", strands.len(), pair.d), acc)
    };
    let out = m.act(&out, &Generator::Idem(res))?;
    let total = out.len();
    let mut survivors = Vec::new();
    let mut restricted = Vec::new();
    for (t, c) in m.terms(&out) {
        let r = t.restrict(n)?;
        if pair.mu.dominates(r.shape()) {
            survivors.push(ImageTerm { tableau: t, coeff: m.ring().format(&c) });
            restricted.push(r);
        }
    }
    Ok(ProofTrace { load, total_terms: total, survivors, restricted })
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = subsets(&items[1..], k - 1);
    for s in out.iter_mut() {
        s.insert(0, items[0]);
    }
    out.extend(subsets(&items[1..], k));
    out
}

/// Hom dimensions by degree in one setting.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DimensionTable {
    pub e: QuantumChar,
    pub ring: RingSpec,
    /// `(degree, dimension)` for every degree with a nonempty component.
    pub dims: Vec<(i64, usize)>,
}

impl DimensionTable {
    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.dims.iter().filter(|(_, d)| *d > 0).map(|(k, _)| *k).collect()
    }
}

/// Hom dimensions `S^λ → S^μ` in every degree where the target component
/// is nonempty.
pub fn dimension_table<R: Ring>(
    lambda: &Multipartition,
    mu: &Multipartition,
    e: QuantumChar,
    kappa: &Multicharge,
    ring: R,
    opts: &HomOptions,
) -> Result<DimensionTable> {
    let (d0, res) = generator_data(lambda, e, kappa)?;
    let mut degrees: Vec<i64> = tableaux_with_residues(mu, e, kappa, &res)
        .iter()
        .map(|t| t.degree(e, kappa))
        .collect::<Result<_>>()?;
    degrees.sort_unstable();
    degrees.dedup();
    let mut dims = Vec::new();
    for d in degrees {
        let h = hom_space(lambda, mu, d - d0, e, kappa, ring.clone(), opts)?;
        dims.push((d - d0, h.dim()));
    }
    Ok(DimensionTable { e, ring: ring.spec(), dims })
}

/// Comparison of Hom spaces at `(0, r^a)` and at `(r, r)`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegenerationReport {
    pub r: u64,
    pub a: u32,
    /// `Φ_{r^a}(1)`, which equals `r`.
    pub phi_at_one: i64,
    pub characteristic_zero: DimensionTable,
    pub characteristic_r: DimensionTable,
    pub nonzero_in_characteristic_zero: bool,
    pub nonzero_in_characteristic_r: bool,
    /// Nonzero at `(0, r^a)` implies nonzero at `(r, r)`.
    pub implication_holds: bool,
    /// When `a = 1`: every nonzero degree at `(0, r)` is nonzero at `(r, r)`.
    pub degrees_agree: Option<bool>,
}

pub fn degeneration_check(
    lambda: &Multipartition,
    mu: &Multipartition,
    kappa: &Multicharge,
    r: u64,
    a: u32,
    opts: &HomOptions,
) -> Result<DegenerationReport> {
    let field = PrimeField::new(r)?;
    if a == 0 {
        return invalid("the exponent a must be at least 1");
    }
    let big = r
        .checked_pow(a)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or_else(|| Error::InvalidInput(format!("{r}^{a} is too large")))?;
    let phi_at_one = crate::cyclotomic::cyclotomic_polynomial(big as usize).eval(1)
        .try_into()
        .map_err(|_| Error::Overflow)?;
    let zero = dimension_table(lambda, mu, QuantumChar::Finite(big as u32), kappa, Rationals, opts)?;
    let modular = dimension_table(lambda, mu, QuantumChar::Finite(r as u32), kappa, field, opts)?;
    let nz0 = !zero.nonzero_degrees().is_empty();
    let nzr = !modular.nonzero_degrees().is_empty();
    let degrees_agree = (a == 1).then(|| {
        let kept = modular.nonzero_degrees();
        zero.nonzero_degrees().iter().all(|d| kept.contains(d))
    });
    Ok(DegenerationReport {
        r,
        a,
        phi_at_one,
        characteristic_zero: zero,
        characteristic_r: modular,
        nonzero_in_characteristic_zero: nz0,
        nonzero_in_characteristic_r: nzr,
        implication_holds: !nz0 || nzr,
        degrees_agree,
    })
}
