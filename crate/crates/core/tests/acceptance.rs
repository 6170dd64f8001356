//! Acceptance criteria 1 to 9, one PASS/FAIL line each.

mod common;

use klr_specht::combinatorics::{
    detect_cp_pair, enumerate_cp_pairs, multipartitions, Multicharge, Multipartition, QuantumChar, Tableau,
};
use klr_specht::cyclotomic::{cyclotomic_polynomial, in_kernel, phi_reduce, CyclotomicInteger, Poly};
use klr_specht::hom::{
    apply_relation, carter_payne, degeneration_check, graded_component, hom_space, relations, HomOptions,
};
use klr_specht::ring::{PrimeField, Rationals};
use klr_specht::specht::{oracle::straighten_by_words, SpechtModule};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn mp(s: &str) -> Multipartition {
    Multipartition::parse(s).unwrap()
}

fn rows(r: &[&[&[usize]]]) -> Tableau {
    Tableau::from_rows(&r.iter().map(|c| c.iter().map(|x| x.to_vec()).collect()).collect::<Vec<_>>()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:.1?}, limit {limit:?}", start.elapsed()))
}

fn one_row_pair() -> Outcome {
    let start = Instant::now();
    let pair = detect_cp_pair(&mp("(;3,2,2;4,3)"), &mp("(3;3,2,2;4)"), QuantumChar::Finite(4), &Multicharge(vec![0, 2, 1]))
        .map_err(|e| e.to_string())?;
    ensure((pair.a, pair.b, pair.c, pair.degree) == (2, 4, 4, 6), || {
        format!("a={} b={} c={} degree {}", pair.a, pair.b, pair.c, pair.degree)
    })?;
    let mut cert = carter_payne(&pair, Rationals).map_err(|e| e.to_string())?;
    let printed = rows(&[&[&[3, 7, 14]], &[&[1, 2, 6], &[4, 5], &[11, 13]], &[&[8, 9, 10, 12]]]);
    ensure(cert.image.len() == 1 && cert.image[0].tableau == printed, || format!("image {:?}", cert.image))?;
    ensure(["1/1", "-1/1"].contains(&cert.image[0].coeff.as_str()), || format!("coefficient {}", cert.image[0].coeff))?;
    ensure(cert.verify().map_err(|e| e.to_string())?, || "verify() = false".into())?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("degree 6, image v_t* for the printed tableau, verified over Q in {:.1?}", start.elapsed()))
}

fn straight_pair() -> Outcome {
    let start = Instant::now();
    let mu = mp("(8,7,4,3,3,1;2,2,1;3)");
    let pair = detect_cp_pair(&mp("(5,5,4,3,3,1;2,2,1;3,3,2)"), &mu, QuantumChar::Finite(9), &Multicharge(vec![0, 4, 6]))
        .map_err(|e| e.to_string())?;
    ensure((pair.a, pair.b, pair.d, pair.degree) == (4, 6, 4, 6), || {
        format!("a={} b={} d={} degree {}", pair.a, pair.b, pair.d, pair.degree)
    })?;
    let printed = rows(&[
        &[&[1, 2, 3, 4, 5, 18, 19, 20], &[6, 7, 8, 9, 10, 21, 34], &[11, 12, 13, 14], &[15, 16, 17], &[23, 31, 32], &[25]],
        &[&[22, 30], &[24, 33], &[26]],
        &[&[27, 28, 29]],
    ]);
    ensure(pair.target_tableau() == printed, || format!("target {}", pair.target_tableau().render()))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("a=4 b=6 d=4 degree 6, printed 34-entry target, {:.1?}", start.elapsed()))
}

fn three_two_into_five() -> Outcome {
    let start = Instant::now();
    let opts = HomOptions::default();
    let k = Multicharge(vec![0]);
    let (l, m) = (mp("(3,2)"), mp("(5)"));
    let q = hom_space(&l, &m, 1, QuantumChar::Finite(4), &k, Rationals, &opts).map_err(|e| e.to_string())?;
    ensure(q.dim() >= 1, || "no degree-1 hom at e=4 over Q".into())?;
    let f2 = PrimeField::new(2).unwrap();
    let e2 = QuantumChar::Finite(2);
    let h0 = hom_space(&l, &m, 0, e2, &k, f2, &opts).map_err(|e| e.to_string())?;
    ensure(h0.dim() >= 1, || "no degree-0 hom at e=2 over F2".into())?;
    let h1 = hom_space(&l, &m, 1, e2, &k, f2, &opts).map_err(|e| e.to_string())?;
    // Direct computation: the only candidates are the standard tableaux of
    // (5) with the right residues and degree, checked one by one.
    let module = SpechtModule::new(&m, e2, &k, f2).unwrap();
    let res = Tableau::initial(&l).residue_sequence(e2, &k);
    let d0 = Tableau::initial(&l).degree(e2, &k).unwrap();
    let rels = relations(&l, e2, &k);
    let direct = graded_component(&module, d0 + 1, &res)
        .iter()
        .any(|t| rels.iter().all(|r| apply_relation(&module, &module.basis_vector(t).unwrap(), r).is_zero()));
    ensure((h1.dim() > 0) == direct, || format!("solver dim {} but direct search {direct}", h1.dim()))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "dims: e=4/Q deg 1 = {}, e=2/F2 deg 0 = {}, e=2/F2 deg 1 = {} (component {}), {:.1?}",
        q.dim(),
        h0.dim(),
        h1.dim(),
        h1.component.len(),
        start.elapsed()
    ))
}

fn one_row_pair_at_two() -> Outcome {
    let start = Instant::now();
    let f2 = PrimeField::new(2).unwrap();
    let h = hom_space(
        &mp("(;3,2,2;4,3)"),
        &mp("(3;3,2,2;4)"),
        7,
        QuantumChar::Finite(2),
        &Multicharge(vec![0, 0, 1]),
        f2,
        &HomOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let t = rows(&[&[&[3, 7, 14]], &[&[1, 2, 5], &[4, 6], &[11, 13]], &[&[8, 9, 10, 12]]]);
    let hit = h.basis.iter().any(|v| h.module.terms(v).iter().any(|(s, _)| *s == t));
    ensure(hit, || format!("dimension {}, no basis vector involves t'", h.dim()))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("degree-7 Hom over F2 has dimension {}, support contains t', {:.1?}", h.dim(), start.elapsed()))
}

const SWEEP_KAPPAS: &[&[i64]] = &[&[0], &[0, 0], &[0, 1], &[0, 2]];
const SWEEP_ES: [QuantumChar; 3] = [QuantumChar::Finite(3), QuantumChar::Finite(4), QuantumChar::Infinite];

fn sweep_pairs() -> Vec<klr_specht::combinatorics::CpPair> {
    let mut pairs = Vec::new();
    for k in SWEEP_KAPPAS {
        for e in SWEEP_ES {
            for n in 1..=11 {
                pairs.extend(enumerate_cp_pairs(n, e, &Multicharge(k.to_vec())).into_iter().filter(|p| n + p.gamma() <= 12));
            }
        }
    }
    pairs
}

fn cp_sweep() -> Outcome {
    let start = Instant::now();
    let pairs = sweep_pairs();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let failures: Vec<String> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|k| {
                let pairs = &pairs;
                s.spawn(move || {
                    let mut bad = Vec::new();
                    for p in pairs.iter().skip(k).step_by(threads) {
                        let ok = carter_payne(p, Rationals).and_then(|mut c| c.verify()).unwrap_or(false)
                            && hom_space(&p.lambda, &p.mu, p.degree, p.e, &p.kappa, Rationals, &HomOptions::default())
                                .is_ok_and(|h| h.dim() >= 1);
                        if !ok {
                            bad.push(format!("{} -> {} (e={}, κ={:?})", p.lambda, p.mu, p.e, p.kappa.0));
                        }
                    }
                    bad
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    });
    ensure(failures.is_empty(), || format!("{} failures, first {}", failures.len(), failures[0]))?;
    within(start, Duration::from_secs(30 * 60))?;
    Ok(format!("{} pairs verified with a nonzero Hom space, {:.1?}", pairs.len(), start.elapsed()))
}

fn positivity() -> Outcome {
    let pairs = sweep_pairs();
    let bad: Vec<_> = pairs
        .iter()
        .filter(|p| !(p.degree >= p.mu_star.rank() as i64 && p.mu_star.rank() >= 1))
        .map(|p| format!("{} -> {}", p.lambda, p.mu))
        .collect();
    ensure(bad.is_empty(), || format!("{} violations, first {}", bad.len(), bad[0]))?;
    Ok(format!("{} pairs, degree ≥ rank(μ*) ≥ 1 throughout", pairs.len()))
}

fn engine_soundness() -> Outcome {
    let start = Instant::now();
    let mut modules = 0;
    for e in SWEEP_ES {
        let k = Multicharge(vec![0]);
        for n in 1..=6 {
            for l in multipartitions(n, 1) {
                let m = SpechtModule::new(&l, e, &k, Rationals).unwrap();
                let z = m.z();
                for r in relations(&l, e, &k) {
                    ensure(apply_relation(&m, &z, &r).is_zero(), || format!("{l} at e={e}: {:?} does not kill z", r.generator))?;
                }
                common::check_module(&m).map_err(|err| format!("{l} at e={e}: {err}"))?;
                modules += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let shapes = ["(3,2,1)", "(4,2)", "(3,3)", "(2,2,1,1)", "(3,1;2)", "(2;2;1)", "(2,1;1,1)"];
    let kappas: [&[i64]; 7] = [&[0], &[0], &[0], &[0], &[0, 1], &[0, 2, 1], &[0, 0]];
    let mut nonzero = 0;
    let samples = 1200;
    for i in 0..samples {
        let j = i % shapes.len();
        let e = SWEEP_ES[rng.gen_range(0..3)];
        let m = SpechtModule::new(&mp(shapes[j]), e, &Multicharge(kappas[j].to_vec()), Rationals).unwrap();
        let mut w = common::random_monomial(&m, &mut rng, 0.5, 8);
        w.0.truncate(8);
        let a = m.straighten(&w).map_err(|e| e.to_string())?;
        let b = straighten_by_words(&m, &w).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("strategies disagree on {} · {w}", shapes[j]))?;
        nonzero += usize::from(!a.is_zero());
    }
    Ok(format!(
        "{modules} modules annihilate z, relations hold on every basis vector, {samples} monomials agree ({nonzero} nonzero), {:.1?}",
        start.elapsed()
    ))
}

fn accessibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce55);
    let cases: [(&str, u32, &[i64]); 6] = [
        ("(3,2,1)", 3, &[0]),
        ("(3,3)", 2, &[0]),
        ("(4,2)", 3, &[0]),
        ("(2,2;2)", 2, &[0, 0]),
        ("(2,1;1)", 3, &[0, 1]),
        ("(2,2,1)", 2, &[0]),
    ];
    let (mut nonzero, mut terms) = (0, 0);
    let samples = 600;
    for i in 0..samples {
        let (s, e, k) = cases[i % cases.len()];
        let m = SpechtModule::new(&mp(s), QuantumChar::Finite(e), &Multicharge(k.to_vec()), Rationals).unwrap();
        let w = common::random_monomial(&m, &mut rng, 0.7, 6);
        let t = common::respects_accessibility(&m, &w).map_err(|err| format!("{s}: {err}"))?;
        nonzero += usize::from(t > 0);
        terms += t;
    }
    Ok(format!("{samples} monomials ({nonzero} nonzero, {terms} terms) respect accessible nodes and sets"))
}

/// `x / (1 − ζ)` when it lies in `ℤ[ζ]`. From `Φ_e(t) − Φ_e(1) = (t − 1) h(t)`
/// and `Φ_e(1) = r` we get `1 / (1 − ζ) = h(ζ) / r`.
fn divide_by_one_minus_zeta(x: &CyclotomicInteger, r: u64) -> Option<CyclotomicInteger> {
    let e = x.e();
    let phi = cyclotomic_polynomial(e);
    let shifted = phi.add(&Poly::from_i64(&[-(r as i64)]));
    let (h, rem) = shifted.div_rem_monic(&Poly::from_i64(&[-1, 1]));
    assert!(rem.coeffs().is_empty());
    let num = x.mul(&CyclotomicInteger::from_poly(e, h));
    let r = BigInt::from(r);
    let mut out = Vec::new();
    for c in num.coeffs() {
        let (q, m) = c.div_mod_floor(&r);
        if !m.is_zero() {
            return None;
        }
        out.push(q);
    }
    Some(CyclotomicInteger::from_poly(e, Poly::new(out)))
}

fn cyclotomic_utilities() -> Outcome {
    for (e, r) in [(4, 2), (8, 2), (9, 3), (25, 5), (27, 3)] {
        ensure(cyclotomic_polynomial(e).eval(1) == BigInt::from(r), || format!("Φ_{e}(1) ≠ {r}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xc7c1);
    let bases = [(4usize, 2u64), (8, 2), (9, 3), (25, 5), (27, 3)];
    let samples = 10_000;
    let mut kernel_hits = 0;
    for i in 0..samples {
        let (e, r) = bases[i % bases.len()];
        let random = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(0..e);
            CyclotomicInteger::new(e, &(0..len).map(|_| rng.gen_range(-6..=6)).collect::<Vec<i64>>())
        };
        let (x, y) = (random(&mut rng), random(&mut rng));
        let (fx, fy) = (phi_reduce(&x, r).unwrap(), phi_reduce(&y, r).unwrap());
        ensure(phi_reduce(&x.add(&y), r).unwrap() == (fx + fy) % r, || format!("φ({x} + {y})"))?;
        ensure(phi_reduce(&x.mul(&y), r).unwrap() == (fx * fy) % r, || format!("φ({x} · {y})"))?;
        ensure(phi_reduce(&CyclotomicInteger::zeta(e), r).unwrap() == 1, || "φ(ζ) ≠ 1".into())?;
        let quotient = divide_by_one_minus_zeta(&x, r);
        ensure(in_kernel(&x, r).unwrap() == quotient.is_some(), || format!("kernel test disagrees on {x}"))?;
        if let Some(q) = quotient {
            let one_minus_zeta = CyclotomicInteger::integer(e, 1).sub(&CyclotomicInteger::zeta(e));
            ensure(one_minus_zeta.mul(&q) == x, || format!("bad quotient for {x}"))?;
            kernel_hits += 1;
        }
    }
    let rep = degeneration_check(&mp("(3,2)"), &mp("(5)"), &Multicharge(vec![0]), 2, 2, &HomOptions::default())
        .map_err(|e| e.to_string())?;
    let degrees = (rep.characteristic_zero.nonzero_degrees(), rep.characteristic_r.nonzero_degrees());
    ensure(rep.nonzero_in_characteristic_zero && rep.nonzero_in_characteristic_r, || "zero Hom space".into())?;
    ensure(degrees == (vec![1], vec![0]), || format!("nonzero degrees {degrees:?}"))?;
    Ok(format!(
        "Φ_e(1) = r, {samples} samples ({kernel_hits} in the kernel), degeneration (3,2)/(5): degrees (1, 0)"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("one-row pair (;3,2,2;4,3) -> (3;3,2,2;4)", one_row_pair),
        ("straight pair at e=9, combinatorial layer", straight_pair),
        ("(3,2) -> (5) Hom dimensions", three_two_into_five),
        ("one-row pair at e=p=2, degree 7", one_row_pair_at_two),
        ("Carter-Payne sweep", cp_sweep),
        ("degree positivity", positivity),
        ("engine soundness", engine_soundness),
        ("accessibility soundness", accessibility),
        ("cyclotomic utilities", cyclotomic_utilities),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str()) || name.contains(f.as_str())) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("{label}: PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("{label}: FAIL {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
