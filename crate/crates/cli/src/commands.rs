use crate::{Cli, Command, ParamsCommand};
use anyhow::{anyhow, bail, Context, Result};
use crs_core::arith::is_prime;
use crs_core::ff::PrimeField;
use crs_core::isogeny::{IdealStep, Method};
use crs_core::oracle::{enumerate_orbit, step_once, verify};
use crs_core::params::{
    active_methods, build_params, classify_primes, keyspace_size, max_walk_cost, optimize_bounds, search_toy_curve,
    BoundsChoice, BuildOptions, ClassifyOptions, Constraints, CostModel, Partition,
};
use crs_core::protocol::{derive_shared, keygen, public_key, validate_public_key, PeerCheck, PrivateKey, PublicKey, SystemParams, Validity};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Validation failures exit with 1, everything else (bad input, io) with 2.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<crs_core::Error>() {
        Some(crs_core::Error::Validation(_)) => 1,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, data: &str) -> Result<()> {
    std::fs::write(path, data).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: Option<&Path>, data: &str) -> Result<()> {
    match out {
        Some(p) => write(p, data),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn load_params(path: &Path) -> Result<SystemParams> {
    SystemParams::parse(&read(path)?).with_context(|| format!("parameter file {}", path.display()))
}

fn load_private(path: &Path, params: &SystemParams) -> Result<PrivateKey> {
    let key = PrivateKey::parse(&read(path)?).with_context(|| format!("private key {}", path.display()))?;
    // an out-of-range key is bad input, not a failed validation
    key.check(params).map_err(|e| anyhow!("private key {}: {e}", path.display()))?;
    Ok(key)
}

fn load_public(path: &Path, params: &SystemParams) -> Result<PublicKey> {
    PublicKey::parse(&params.field, &read(path)?).with_context(|| format!("public key {}", path.display()))
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

/// log₂ n as a float.
fn log2(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return (u64::try_from(n).unwrap_or(0) as f64).log2();
    }
    let top: u64 = u64::try_from(n >> (bits - 64)).unwrap_or(u64::MAX);
    (top as f64).log2() + (bits - 64) as f64
}

fn route(s: &IdealStep) -> String {
    let fmt = |r: Option<crs_core::isogeny::VeluRoute>| match r {
        Some(v) if v.twist => format!("{}t", v.r),
        Some(v) => v.r.to_string(),
        None => "-".into(),
    };
    format!("{}/{}", fmt(s.forward), fmt(s.backward))
}

fn partition_table(part: &Partition, bounds: Option<&crs_core::params::Bounds>) -> String {
    let mut s = String::from("l\tmethod\tlambda\tmu\troute");
    if bounds.is_some() {
        s += "\tM";
    }
    s += "\n";
    for st in part.steps() {
        s += &format!("{}\t{}\t{}\t{}\t{}", st.l, st.method.as_str(), st.lambda, st.mu, route(st));
        if let Some(b) = bounds {
            s += &format!("\t{}", b.get(&st.l).copied().unwrap_or(0));
        }
        s += "\n";
    }
    s += &format!("# {} VV, {} VE, {} EE\n", part.vv.len(), part.ve.len(), part.ee.len());
    s
}

pub fn run(cli: Cli) -> Result<u8> {
    let mut rng = match cli.seed {
        Some(s) => ChaCha8Rng::seed_from_u64(s),
        None => ChaCha8Rng::from_entropy(),
    };
    match cli.command {
        Command::Params(cmd) => run_params(cmd, &mut rng),
        Command::Keygen { params, out } => {
            let p = load_params(&params.params)?;
            let (sk, pk) = keygen(&p, &mut rng)?;
            write(&with_suffix(&out, ".priv"), &sk.to_text())?;
            write(&with_suffix(&out, ".pub"), &pk.to_text())?;
            Ok(0)
        }
        Command::Pub { params, private, out } => {
            let p = load_params(&params.params)?;
            let sk = load_private(&private, &p)?;
            emit(out.as_deref(), &public_key(&p, &sk, &mut rng)?.to_text())?;
            Ok(0)
        }
        Command::Dh { params, private, public, out, no_validate } => {
            let p = load_params(&params.params)?;
            let sk = load_private(&private, &p)?;
            let pk = load_public(&public, &p)?;
            let check = if no_validate {
                eprintln!("warning: peer key not validated; a key outside the isogeny class can leak the private key");
                PeerCheck::Skip
            } else {
                PeerCheck::Validate
            };
            let j = derive_shared(&sk, &pk, &p, check, &mut rng)?;
            emit(out.as_deref(), &PublicKey { j }.to_text())?;
            Ok(0)
        }
        Command::Validate { params, public } => {
            let p = load_params(&params.params)?;
            let pk = load_public(&public, &p)?;
            match validate_public_key(&pk, &p, &mut rng)? {
                Validity::Valid => {
                    println!("valid");
                    Ok(0)
                }
                Validity::Invalid(why) => {
                    println!("invalid: {why}");
                    Ok(1)
                }
                Validity::Inconclusive(why) => {
                    println!("inconclusive: {why}");
                    Ok(1)
                }
            }
        }
        Command::Verify { params } => {
            let p = load_params(&params.params)?;
            let report = verify(&p, &mut rng)?;
            print!("{}", report.to_text());
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Graph { params, out } => {
            let p = load_params(&params.params)?;
            let orbit = enumerate_orbit(&p, &mut rng)?;
            emit(out.as_deref(), &orbit.to_dot())?;
            Ok(0)
        }
        Command::Bench { params, primes, ell_max, reps, out } => {
            let p = load_params(&params.params)?;
            bench(&p, &primes, ell_max, reps.max(1), out.as_deref(), &mut rng)
        }
    }
}

fn run_params(cmd: ParamsCommand, rng: &mut ChaCha8Rng) -> Result<u8> {
    match cmd {
        ParamsCommand::Search { bits, q, constraints, require, ell_max, elkies_max, r_max, bound, jobs, attempts, out } => {
            let cons = match &constraints {
                Some(path) => Constraints::parse(&read(path)?).with_context(|| format!("constraints {}", path.display()))?,
                None => Constraints::default(),
            };
            let opts = BuildOptions {
                classify: ClassifyOptions { ell_max, r_max, elkies_max },
                bounds: BoundsChoice::Uniform(bound),
            };
            let moduli = candidate_moduli(q, bits.or(cons.bits), attempts, rng)?;
            let p = search(&moduli, &cons, &opts, require, jobs.max(1), rng)?;
            let (vv, ve, ee) = active_methods(&p);
            eprintln!("found q = {}, t = {}, delta_k = {}, {vv} VV, {ve} VE, {ee} EE", p.p(), p.t, p.delta_k);
            emit(out.as_deref(), &p.to_text())?;
            Ok(0)
        }
        ParamsCommand::Classify { params, q, t, ell_max, r_max, elkies_max } => {
            let (q, t): (BigUint, BigInt) = match (params, q, t) {
                (Some(path), _, _) => {
                    let p = load_params(&path)?;
                    (p.p().clone(), p.t.clone())
                }
                (None, Some(q), Some(t)) => (
                    q.parse().map_err(|_| anyhow!("--q is not a number"))?,
                    t.parse().map_err(|_| anyhow!("--t is not a number"))?,
                ),
                _ => bail!("give --params or both --q and --t"),
            };
            if !is_prime(&q) {
                bail!("q is not prime");
            }
            let part = classify_primes(&q, &t, &ClassifyOptions { ell_max, r_max, elkies_max });
            print!("{}", partition_table(&part, None));
            Ok(0)
        }
        ParamsCommand::Optimize { params, security, cost, out } => {
            let mut p = load_params(&params.params)?;
            let cost = match &cost {
                Some(path) => CostModel::parse(&read(path)?).with_context(|| format!("cost file {}", path.display()))?,
                None => CostModel::published(),
            };
            let bounds = optimize_bounds(&cost, &p.partition, security)?;
            let ks = keyspace_size(&bounds, &p.partition)?;
            print!("{}", partition_table(&p.partition, Some(&bounds)));
            println!("keyspace = 2^{:.1}", log2(&ks));
            println!("walk cost = {:.1} s", max_walk_cost(&cost, &p.partition, &bounds));
            if let Some(path) = out {
                p.bounds = bounds;
                p.check()?;
                write(&path, &p.to_text())?;
            }
            Ok(0)
        }
    }
}

fn candidate_moduli(q: Option<u64>, bits: Option<u32>, attempts: usize, rng: &mut ChaCha8Rng) -> Result<Vec<BigUint>> {
    if let Some(q) = q {
        let q = BigUint::from(q);
        if !is_prime(&q) || q < BigUint::from(5u32) {
            bail!("--q must be a prime of at least 5");
        }
        return Ok(vec![q]);
    }
    let bits = bits.ok_or_else(|| anyhow!("give --q or --bits"))?;
    if !(4..=32).contains(&bits) {
        bail!("--bits must be in 4..=32");
    }
    // consecutive primes above a random start, wrapping inside the bit range
    let lo = 1u64 << (bits - 1);
    let hi = 1u64 << bits;
    let mut n = rng.gen_range(lo..hi);
    let mut out = Vec::new();
    let mut seen = 0;
    while out.len() < attempts && seen < hi - lo {
        n = if n + 1 >= hi { lo } else { n + 1 };
        seen += 1;
        let b = BigUint::from(n);
        if n >= 5 && is_prime(&b) {
            out.push(b);
        }
    }
    Ok(out)
}

fn try_modulus(q: &BigUint, cons: &Constraints, opts: &BuildOptions, require: usize, seed: u64) -> Option<SystemParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = PrimeField::new(q.clone()).ok()?;
    let found = search_toy_curve(&field, cons, &mut rng).ok()?;
    let p = build_params(&found.curve, opts, &mut rng).ok()?;
    (active_methods(&p).2 >= require).then_some(p)
}

/// Moduli are tried in order, `jobs` at a time; the first success in that
/// order wins, so the result does not depend on thread timing.
fn search(
    moduli: &[BigUint],
    cons: &Constraints,
    opts: &BuildOptions,
    require: usize,
    jobs: usize,
    rng: &mut ChaCha8Rng,
) -> Result<SystemParams> {
    let seeds: Vec<u64> = moduli.iter().map(|_| rng.gen()).collect();
    for (qs, ss) in moduli.chunks(jobs).zip(seeds.chunks(jobs)) {
        let results: Vec<Option<SystemParams>> = std::thread::scope(|scope| {
            let handles: Vec<_> = qs
                .iter()
                .zip(ss)
                .map(|(q, &s)| scope.spawn(move || try_modulus(q, cons, opts, require, s)))
                .collect();
            handles.into_iter().map(|h| h.join().ok().flatten()).collect()
        });
        if let Some(p) = results.into_iter().flatten().next() {
            return Ok(p);
        }
    }
    bail!("no parameter set found among {} moduli", moduli.len())
}

fn bench(p: &SystemParams, primes: &[u64], ell_max: u64, reps: u32, out: Option<&Path>, rng: &mut ChaCha8Rng) -> Result<u8> {
    let steps: Vec<&IdealStep> = p
        .partition
        .steps()
        .filter(|s| if primes.is_empty() { s.l <= ell_max } else { primes.contains(&s.l) })
        .collect();
    if steps.is_empty() {
        bail!("no listed prime selected");
    }
    println!("l\tmethod\tr\ts/step");
    let mut velu: std::collections::BTreeMap<u32, Vec<f64>> = Default::default();
    let mut elkies = Vec::new();
    for s in steps {
        let start = Instant::now();
        for _ in 0..reps {
            step_once(p, s, &p.e0, rng)?;
        }
        let secs = start.elapsed().as_secs_f64() / f64::from(reps);
        let r = match s.method {
            Method::EE => {
                elkies.push(secs / s.l as f64);
                0
            }
            _ => {
                let r = s.forward.map(|v| v.r).unwrap_or(1);
                velu.entry(r).or_default().push(secs);
                r
            }
        };
        let r = if r == 0 { "-".to_string() } else { r.to_string() };
        println!("{}\t{}\t{}\t{:.6}", s.l, s.method.as_str(), r, secs);
    }
    let published = CostModel::published();
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let cost = CostModel {
        elkies_per_ell: if elkies.is_empty() { published.elkies_per_ell } else { mean(&elkies) },
        velu: if velu.is_empty() { published.velu } else { velu.iter().map(|(r, v)| (*r, mean(v))).collect() },
    };
    print!("{}", cost.to_text());
    if let Some(path) = out {
        write(path, &cost.to_text())?;
    }
    Ok(0)
}
