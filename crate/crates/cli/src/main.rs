use clap::{Parser, Subcommand, ValueEnum};
use klr_specht::combinatorics::{
    detect_cp_pair, enumerate_cp_pairs, CpPair, Multicharge, Multipartition, QuantumChar, Tableau,
};
use klr_specht::hom::{
    carter_payne, degeneration_check, hom_space, Budget, HomCertificate, HomOptions, Provenance,
};
use klr_specht::klr::{canonical_reduced_word, Generator, KlrWord};
use klr_specht::ring::{Integers, PrimeField, Rationals, Ring, RingSpec};
use klr_specht::specht::{oracle::straighten_by_words, SpechtModule};
use klr_specht::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "specht-cp", version, about = "Graded Specht modules and Carter-Payne homomorphisms")]
struct Cli {
    /// Worker threads for the Hom solver.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = 20240601)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the Carter-Payne pairs of multipartitions of n.
    CpPairs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: String,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, default_value = "0")]
        kappa: String,
    },
    /// Build the homomorphism of one pair.
    Cp {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        e: String,
        #[arg(long, default_value = "0")]
        kappa: String,
        #[arg(long, default_value = "Q")]
        ring: String,
        /// Check the image against the relations of the source module.
        #[arg(long)]
        verify: bool,
    },
    /// A basis of the Hom space in one degree.
    Hom {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long)]
        e: String,
        #[arg(long, default_value = "0")]
        kappa: String,
        #[arg(long, default_value = "Q")]
        ring: String,
    },
    /// Compare Hom spaces at (0, r^a) and (r, r).
    Degen {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        a: u32,
        #[arg(long, default_value = "0")]
        kappa: String,
    },
    /// Reproduce a worked example: 4.4, 5.2 or 6.2.
    Example { which: String },
    /// Compare the two straightening strategies on random monomials.
    Check {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        e: String,
        #[arg(long, default_value = "0")]
        kappa: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

/// Outcome of a command: a report and whether its checks passed.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) => Failure::Usage(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

type Out = std::result::Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = HomOptions { jobs: cli.jobs.max(1), budget: Budget::from_env(None) };
    let result = match &cli.cmd {
        Cmd::CpPairs { n, e, level, kappa } => cp_pairs(*n, e, *level, kappa),
        Cmd::Cp { lambda, mu, e, kappa, ring, verify } => cp(lambda, mu, e, kappa, ring, *verify),
        Cmd::Hom { lambda, mu, degree, e, kappa, ring } => hom(lambda, mu, *degree, e, kappa, ring, &opts),
        Cmd::Degen { lambda, mu, r, a, kappa } => degen(lambda, mu, *r, *a, kappa, &opts),
        Cmd::Example { which } => example(which, &opts),
        Cmd::Check { lambda, e, kappa, samples } => check(lambda, e, kappa, *samples, cli.seed),
    };
    match result {
        Ok(r) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("JSON")),
                Format::Text => print!("{}", r.text),
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn setting(e: &str, kappa: &str) -> Result<(QuantumChar, Multicharge), Failure> {
    Ok((QuantumChar::parse(e)?, Multicharge::parse(kappa)?))
}

fn pair_json(p: &CpPair) -> Value {
    json!({
        "lambda": p.lambda,
        "mu": p.mu,
        "a": p.a,
        "b": p.b,
        "c": p.c,
        "d": p.d,
        "degree": p.degree,
        "gamma": p.gamma(),
        "oneRow": p.one_row,
        "rankMuStar": p.mu_star.rank(),
        "target": p.target_tableau().render(),
    })
}

fn cp_pairs(n: usize, e: &str, level: Option<usize>, kappa: &str) -> Out {
    let (e, kappa) = setting(e, kappa)?;
    if let Some(l) = level {
        if l != kappa.level() {
            return Err(Failure::Usage(format!("--level {l} but the multicharge has {} entries", kappa.level())));
        }
    }
    let pairs = enumerate_cp_pairs(n, e, &kappa);
    let mut text = String::new();
    for p in &pairs {
        text.push_str(&format!(
            "{} -> {}  degree {} (a={}, b={}, d={})\n",
            p.lambda, p.mu, p.degree, p.a, p.b, p.d
        ));
    }
    text.push_str(&format!("{} pairs\n", pairs.len()));
    Ok(Report {
        json: json!({ "n": n, "e": e, "kappa": kappa, "pairs": pairs.iter().map(pair_json).collect::<Vec<_>>() }),
        text,
        ok: true,
    })
}

fn certificate(pair: &CpPair, ring: RingSpec) -> Result<HomCertificate, Failure> {
    Ok(match ring {
        RingSpec::Rationals => carter_payne(pair, Rationals)?,
        RingSpec::PrimeField(p) => carter_payne(pair, PrimeField::new(p)?)?,
        RingSpec::Integers => carter_payne(pair, Integers)?,
    })
}

fn cert_text(c: &HomCertificate) -> String {
    let image: Vec<String> = c.image.iter().map(|t| format!("{}·[{}]", t.coeff, t.tableau.render())).collect();
    format!("degree {}\nimage {}\nverified {}\n", c.degree, image.join(" + "), c.verified)
}

fn cp(lambda: &str, mu: &str, e: &str, kappa: &str, ring: &str, verify: bool) -> Out {
    let (e, kappa) = setting(e, kappa)?;
    let (lambda, mu) = (Multipartition::parse(lambda)?, Multipartition::parse(mu)?);
    let ring = RingSpec::parse(ring)?;
    let pair = match detect_cp_pair(&lambda, &mu, e, &kappa) {
        Ok(p) => p,
        Err(Error::NotCpPair(why)) => {
            return Ok(Report {
                json: json!({ "cpPair": false, "reason": why }),
                text: format!("not a Carter-Payne pair: {why}\n"),
                ok: false,
            })
        }
        Err(err) => return Err(err.into()),
    };
    let mut cert = certificate(&pair, ring)?;
    let ok = if verify { cert.verify_within(&Budget::from_env(None))? } else { true };
    Ok(Report {
        text: format!("{} -> {}  a={} b={} c={} d={}\n{}", pair.lambda, pair.mu, pair.a, pair.b, pair.c, pair.d, cert_text(&cert)),
        json: json!({ "cpPair": true, "pair": pair_json(&pair), "certificate": cert }),
        ok,
    })
}

fn hom_in<R: Ring>(
    lambda: &Multipartition,
    mu: &Multipartition,
    degree: i64,
    e: QuantumChar,
    kappa: &Multicharge,
    ring: R,
    opts: &HomOptions,
) -> Result<(usize, Vec<HomCertificate>), Failure> {
    let h = hom_space(lambda, mu, degree, e, kappa, ring, opts)?;
    let mut certs = Vec::new();
    for v in &h.basis {
        let mut c = HomCertificate::from_element(lambda, &h.module, degree, v, Provenance::SolverBasisVector);
        c.verify_within(&opts.budget)?;
        certs.push(c);
    }
    Ok((h.component.len(), certs))
}

#[allow(clippy::too_many_arguments)]
fn hom(lambda: &str, mu: &str, degree: i64, e: &str, kappa: &str, ring: &str, opts: &HomOptions) -> Out {
    let (e, kappa) = setting(e, kappa)?;
    let (lambda, mu) = (Multipartition::parse(lambda)?, Multipartition::parse(mu)?);
    let (component, certs) = match RingSpec::parse(ring)? {
        RingSpec::Rationals => hom_in(&lambda, &mu, degree, e, &kappa, Rationals, opts)?,
        RingSpec::PrimeField(p) => hom_in(&lambda, &mu, degree, e, &kappa, PrimeField::new(p)?, opts)?,
        RingSpec::Integers => return Err(Failure::Usage("Hom spaces need a field: use Q or Fp".into())),
    };
    let ok = certs.iter().all(|c| c.verified);
    let mut text = format!("component {component}\ndimension {}\n", certs.len());
    for c in &certs {
        text.push_str(&cert_text(c));
    }
    Ok(Report {
        json: json!({ "degree": degree, "componentSize": component, "dimension": certs.len(), "basis": certs }),
        text,
        ok,
    })
}

fn degen(lambda: &str, mu: &str, r: u64, a: u32, kappa: &str, opts: &HomOptions) -> Out {
    let kappa = Multicharge::parse(kappa)?;
    let (lambda, mu) = (Multipartition::parse(lambda)?, Multipartition::parse(mu)?);
    let rep = degeneration_check(&lambda, &mu, &kappa, r, a, opts)?;
    let text = format!(
        "Phi_{}(1) = {}\nchar 0, e = {}: {:?}\nchar {r}, e = {r}: {:?}\nimplication holds: {}\n",
        r.pow(a),
        rep.phi_at_one,
        r.pow(a),
        rep.characteristic_zero.dims,
        rep.characteristic_r.dims,
        rep.implication_holds
    );
    let ok = rep.implication_holds && rep.degrees_agree != Some(false);
    Ok(Report { json: serde_json::to_value(&rep).expect("JSON"), text, ok })
}

fn example(which: &str, opts: &HomOptions) -> Out {
    match which {
        "4.4" => {
            let (l, m) = ("(3,2)", "(5)");
            let q = hom(l, m, 1, "4", "0", "Q", opts)?;
            let f = hom(l, m, 0, "2", "0", "F2", opts)?;
            let d = degen(l, m, 2, 2, "0", opts)?;
            let ok = q.ok && f.ok && d.ok && q.json["dimension"] != 0 && f.json["dimension"] != 0;
            Ok(Report {
                text: format!("e=4 over Q, degree 1:\n{}e=2 over F2, degree 0:\n{}{}", q.text, f.text, d.text),
                json: json!({ "example": "4.4", "e4Q": q.json, "e2F2": f.json, "degeneration": d.json }),
                ok,
            })
        }
        "5.2" => {
            let r = cp("(;3,2,2;4,3)", "(3;3,2,2;4)", "4", "0,2,1", "Q", true)?;
            let ok = r.ok && r.json["pair"]["degree"] == 6;
            Ok(Report { json: json!({ "example": "5.2", "result": r.json }), text: r.text, ok })
        }
        "6.2" => {
            let lambda = Multipartition::parse("(5,5,4,3,3,1;2,2,1;3,3,2)")?;
            let mu = Multipartition::parse("(8,7,4,3,3,1;2,2,1;3)")?;
            let pair = detect_cp_pair(&lambda, &mu, QuantumChar::Finite(9), &Multicharge(vec![0, 4, 6]))?;
            let mut cert = certificate(&pair, RingSpec::Rationals)?;
            let verification = match cert.verify_within(&opts.budget) {
                Ok(v) => json!(v),
                Err(Error::BudgetExhausted(s)) => json!(format!("skipped: budget of {s} s exhausted")),
                Err(e) => return Err(e.into()),
            };
            let ok = pair.degree == 6 && verification == json!(true);
            Ok(Report {
                text: format!(
                    "{} -> {}  a={} b={} d={}\ndegree {}\ntarget {}\nverification {}\n",
                    pair.lambda,
                    pair.mu,
                    pair.a,
                    pair.b,
                    pair.d,
                    pair.degree,
                    pair.target_tableau().render(),
                    verification
                ),
                json: json!({ "example": "6.2", "pair": pair_json(&pair), "certificate": cert, "verification": verification }),
                ok,
            })
        }
        other => Err(Failure::Usage(format!("unknown example {other:?}; use 4.4, 5.2 or 6.2"))),
    }
}

fn check(lambda: &str, e: &str, kappa: &str, samples: usize, seed: u64) -> Out {
    let (e, kappa) = setting(e, kappa)?;
    let lambda = Multipartition::parse(lambda)?;
    let m = SpechtModule::new(&lambda, e, &kappa, Rationals)?;
    let basis = m.standard_basis();
    let n = lambda.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let t: &Tableau = &basis[rng.gen_range(0..basis.len())];
        let mut w: Vec<Generator> = canonical_reduced_word(t).into_iter().map(Generator::Psi).collect();
        for _ in 0..rng.gen_range(0..=8) {
            if n > 1 && rng.gen_bool(0.75) {
                w.push(Generator::Psi(rng.gen_range(1..n)));
            } else {
                w.push(Generator::Y(rng.gen_range(1..=n)));
            }
        }
        let w = KlrWord(w);
        if m.straighten(&w)? != straighten_by_words(&m, &w)? {
            failures.push(w.to_string());
        }
    }
    Ok(Report {
        text: format!("{samples} monomials, {} disagreements\n", failures.len()),
        json: json!({ "samples": samples, "seed": seed, "disagreements": failures }),
        ok: failures.is_empty(),
    })
}
