use crate::arith::{format_factorization, fundamental_part, is_prime, mod_u64, product_of_factorization};
use crate::ec::{check_trace, group_order, Curve};
use crate::error::{Error, Result};
use crate::ff::{Fp, PrimeField};
use crate::isogeny::{velu_route, IdealStep, Method};
use crate::modpolydb::{shipped, ReducedModPoly};
use crate::params::{Bounds, Partition};
use num_bigint::{BigInt, BigUint};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

/// Everything both parties share: the field, the isogeny class (trace t),
/// the base curve, the prime lists with their direction conventions, and the
/// walk bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemParams {
    pub field: PrimeField,
    pub t: BigInt,
    pub delta_k: BigInt,
    pub conductor: BigUint,
    /// Base curve with End = O_K, carrying trace t.
    pub e0: Curve<PrimeField>,
    /// Factorization of N = p + 1 − t.
    pub n_factorization: Vec<(BigUint, u32)>,
    /// Factorization of the group exponent m used by the order check.
    pub order_witness: Vec<(BigUint, u32)>,
    pub partition: Partition,
    pub bounds: Bounds,
    pub r_max: u32,
    /// SHA-256 of the modular-polynomial MANIFEST the set was built against.
    pub modpoly_manifest: Option<String>,
}

fn parse_factorization(key: &str, s: &str) -> Result<Vec<(BigUint, u32)>> {
    let err = |m: &str| Error::Parse(format!("{key}: {m}"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (b, e) = match part.split_once('^') {
            Some((b, e)) => (b.trim(), e.trim().parse::<u32>().map_err(|_| err("bad exponent"))?),
            None => (part, 1),
        };
        let b: BigUint = b.parse().map_err(|_| err("bad prime"))?;
        if e == 0 {
            return Err(err("zero exponent"));
        }
        out.push((b, e));
    }
    if out.is_empty() {
        return Err(err("empty factorization"));
    }
    Ok(out)
}

fn parse_tuples(key: &str, s: &str, lens: &[usize]) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for item in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let v = item
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| Error::Parse(format!("{key}: bad integer in '{item}'"))))
            .collect::<Result<Vec<_>>>()?;
        if !lens.contains(&v.len()) {
            return Err(Error::Parse(format!("{key}: tuple '{item}' has {} fields", v.len())));
        }
        out.push(v);
    }
    Ok(out)
}

/// Δπ up to this size is factored to confirm ΔK and the conductor.
const FULL_FACTOR_BITS: u64 = 160;

/// ΔK ≡ 1 mod 4, or ΔK = 4m with m ≡ 2, 3 mod 4, and no square of a prime
/// below 2^16 divides the odd part.
fn looks_fundamental(dk: &BigInt) -> bool {
    let m4 = mod_u64(dk, 4);
    let odd = match m4 {
        1 => dk.clone(),
        0 => {
            let m: BigInt = dk / 4;
            if !matches!(mod_u64(&m, 4), 2 | 3) {
                return false;
            }
            if mod_u64(&m, 2) == 0 { m / 2 } else { m }
        }
        _ => return false,
    };
    (3..1u64 << 16).step_by(2).filter(|&l| crate::arith::is_prime_u64(l)).all(|l| mod_u64(&odd, l * l) != 0)
}

impl SystemParams {
    pub fn p(&self) -> &BigUint {
        self.field.modulus()
    }

    pub fn delta_pi(&self) -> BigInt {
        &self.t * &self.t - BigInt::from(self.p().clone()) * 4
    }

    pub fn group_order(&self) -> BigUint {
        group_order(self.p(), &self.t)
    }

    pub fn exponent(&self) -> BigUint {
        product_of_factorization(&self.order_witness)
    }

    pub fn step(&self, l: u64) -> Option<&IdealStep> {
        self.partition.get(l)
    }

    /// Φ_ℓ reduced mod p, from the shipped database.
    pub fn modpoly(&self, l: u64) -> Result<Arc<ReducedModPoly>> {
        shipped()?.reduced(l, &self.field)
    }

    /// j(E0).
    pub fn j0(&self) -> Fp {
        self.e0.j_invariant()
    }

    /// Structural checks that do not need a point count.
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Params(m));
        let q = self.p();
        let dpi = self.delta_pi();
        if dpi >= BigInt::from(0) {
            return bad("t^2 - 4p must be negative".into());
        }
        let d = BigInt::from(self.conductor.clone());
        if &d * &d * &self.delta_k != dpi {
            return bad("delta_pi != conductor^2 * delta_k".into());
        }
        if dpi.bits() <= FULL_FACTOR_BITS {
            if let Some((dk, dd)) = fundamental_part(&dpi) {
                if dk != self.delta_k || dd != self.conductor {
                    return bad("delta_k is not the fundamental part of delta_pi".into());
                }
            }
        } else if !looks_fundamental(&self.delta_k) {
            return bad("delta_k is not a fundamental discriminant".into());
        }
        let n = self.group_order();
        if let Some((q, _)) = self.n_factorization.iter().find(|(q, _)| !is_prime(q)) {
            return bad(format!("n_factorization: {q} is not prime"));
        }
        if product_of_factorization(&self.n_factorization) != n {
            return bad("n_factorization does not multiply to p + 1 - t".into());
        }
        if &n % self.exponent() != BigUint::ZERO {
            return bad("order_witness does not divide N".into());
        }
        if self.e0.trace() != Some(&self.t) {
            return bad("base curve is not tagged with trace t".into());
        }
        for s in self.partition.steps() {
            let l = s.l;
            let tl = mod_u64(&self.t, l);
            let ql = (q % l).try_into().unwrap_or(0u64);
            if s.lambda == s.mu || (s.lambda + s.mu) % l != tl || (s.lambda * s.mu) % l != ql {
                return bad(format!("{l}: ({}, {}) are not distinct Frobenius eigenvalues", s.lambda, s.mu));
            }
            let expect = IdealStep::classify(l, s.lambda, s.mu, self.r_max);
            let ok = match s.method {
                Method::VV | Method::VE => expect.method == s.method && expect.forward == s.forward,
                Method::EE => true,
            };
            if !ok {
                return bad(format!("{l}: listed as {} but classifies as {}", s.method.as_str(), expect.method.as_str()));
            }
            if !self.bounds.contains_key(&l) {
                return bad(format!("{l}: missing bound"));
            }
        }
        Ok(())
    }

    /// Also confirms that E0 has trace t (probabilistic at large q).
    pub fn check_with_curve<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Result<()> {
        self.check()?;
        if !check_trace(&self.e0, &self.t, rng) {
            return Err(Error::Params("base curve does not have trace t".into()));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p = {}", self.p());
        let _ = writeln!(s, "t = {}", self.t);
        let _ = writeln!(s, "delta_k = {}", self.delta_k);
        let _ = writeln!(s, "conductor = {}", self.conductor);
        match self.e0.montgomery_coeff() {
            Some(a) => {
                let _ = writeln!(s, "e0_A = {a}");
            }
            None => {
                let (a, b) = self.e0.weierstrass_coeffs();
                let _ = writeln!(s, "e0_a = {a}");
                let _ = writeln!(s, "e0_b = {b}");
            }
        }
        let _ = writeln!(s, "n_factorization = {}", format_factorization(&self.n_factorization));
        let _ = writeln!(s, "order_witness = {}", format_factorization(&self.order_witness));
        let _ = writeln!(s, "r_max = {}", self.r_max);
        let four = |v: &[IdealStep]| {
            v.iter().map(|x| format!("{},{},{},{}", x.l, x.lambda, x.mu, x.forward.map(|r| r.r).unwrap_or(0))).collect::<Vec<_>>().join(";")
        };
        let _ = writeln!(s, "svv = {}", four(&self.partition.vv));
        let _ = writeln!(s, "sve = {}", four(&self.partition.ve));
        let see: Vec<String> = self.partition.ee.iter().map(|x| format!("{},{},{}", x.l, x.lambda, x.mu)).collect();
        let _ = writeln!(s, "see = {}", see.join(";"));
        let b: Vec<String> = self.bounds.iter().map(|(l, m)| format!("{l}:{m}")).collect();
        let _ = writeln!(s, "bounds = {}", b.join(";"));
        if let Some(m) = &self.modpoly_manifest {
            let _ = writeln!(s, "modpoly_manifest = {m}");
        }
        s
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut kv: BTreeMap<String, String> = BTreeMap::new();
        for (i, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(Error::ParseLine { line: i + 1, msg: "expected 'key = value'".into() })?;
            let k = k.trim().to_string();
            const KEYS: [&str; 16] = [
                "p", "t", "delta_k", "conductor", "e0_A", "e0_a", "e0_b", "n_factorization", "order_witness",
                "r_max", "svv", "sve", "see", "bounds", "modpoly_manifest", "name",
            ];
            if !KEYS.contains(&k.as_str()) {
                return Err(Error::ParseLine { line: i + 1, msg: format!("unknown key '{k}'") });
            }
            if kv.insert(k.clone(), v.trim().to_string()).is_some() {
                return Err(Error::ParseLine { line: i + 1, msg: format!("duplicate key '{k}'") });
            }
        }
        let get = |k: &str| kv.get(k).map(String::as_str).ok_or_else(|| Error::Parse(format!("{k}: missing")));
        let int = |k: &str| -> Result<BigInt> { get(k)?.parse().map_err(|_| Error::Parse(format!("{k}: not an integer"))) };
        let nat = |k: &str| -> Result<BigUint> { get(k)?.parse().map_err(|_| Error::Parse(format!("{k}: not a natural number"))) };
        let p = nat("p")?;
        let field = PrimeField::new(p).map_err(|e| Error::Parse(format!("p: {e}")))?;
        let t = int("t")?;
        let delta_k = int("delta_k")?;
        let conductor = nat("conductor")?;
        let elem = |k: &str| -> Result<Fp> {
            field.from_decimal(get(k)?).map_err(|e| Error::Parse(format!("{k}: {e}")))
        };
        let e0 = if kv.contains_key("e0_A") {
            if kv.contains_key("e0_a") || kv.contains_key("e0_b") {
                return Err(Error::Parse("e0_A: give either e0_A or e0_a/e0_b".into()));
            }
            Curve::montgomery(&field, elem("e0_A")?)
        } else {
            Curve::weierstrass(&field, elem("e0_a")?, elem("e0_b")?)
        }
        .map_err(|e| Error::Parse(format!("e0: {e}")))?
        .with_trace(t.clone())
        .map_err(|e| Error::Parse(format!("t: {e}")))?;
        let n_factorization = parse_factorization("n_factorization", get("n_factorization")?)?;
        let order_witness = match kv.get("order_witness") {
            Some(s) => parse_factorization("order_witness", s)?,
            None => n_factorization.clone(),
        };
        let r_max: u32 = match kv.get("r_max") {
            Some(s) => s.parse().map_err(|_| Error::Parse("r_max: not an integer".into()))?,
            None => 9,
        };
        if r_max > 64 {
            return Err(Error::Parse("r_max: too large".into()));
        }
        let mut partition = Partition::default();
        let step_from = |key: &str, v: &[u64], method: Method| -> Result<IdealStep> {
            let err = |m: &str| Error::Parse(format!("{key}: {m} in tuple starting {}", v[0]));
            let l = v[0];
            if !crate::arith::is_prime_u64(l) || l < 3 {
                return Err(err("level is not an odd prime"));
            }
            let (lambda, mu, r) = match (method, v.len()) {
                (Method::VE, 3) => ((v[1]), (mod_u64(&t, l) + l - v[1] % l) % l, v[2]),
                (Method::EE, _) => (v[1], v[2], 0),
                _ => (v[1], v[2], v[3]),
            };
            if lambda >= l || mu >= l || lambda == 0 || mu == 0 {
                return Err(err("eigenvalue out of range"));
            }
            let s = match method {
                Method::EE => IdealStep::elkies(l, lambda, mu),
                _ => {
                    let fwd = velu_route(l, lambda, mu, r_max);
                    let bwd = if method == Method::VV { velu_route(l, mu, lambda, r_max) } else { None };
                    if fwd.map(|x| u64::from(x.r)) != Some(r) || (method == Method::VV && bwd.is_none()) {
                        return Err(err("listed extension degree does not match the eigenvalues"));
                    }
                    IdealStep { l, lambda, mu, method, forward: fwd, backward: bwd }
                }
            };
            Ok(s)
        };
        for (key, method, lens) in [("svv", Method::VV, &[4usize][..]), ("sve", Method::VE, &[3, 4][..]), ("see", Method::EE, &[3][..])] {
            if let Some(v) = kv.get(key) {
                for tup in parse_tuples(key, v, lens)? {
                    let s = step_from(key, &tup, method)?;
                    if partition.get(s.l).is_some() {
                        return Err(Error::Parse(format!("{key}: prime {} listed twice", s.l)));
                    }
                    partition.push(s);
                }
            }
        }
        let mut bounds = Bounds::new();
        if let Some(b) = kv.get("bounds") {
            for item in b.split(';').map(str::trim).filter(|x| !x.is_empty()) {
                let (l, m) = item.split_once(':').ok_or_else(|| Error::Parse(format!("bounds: '{item}' is not 'l:M'")))?;
                let l: u64 = l.trim().parse().map_err(|_| Error::Parse(format!("bounds: bad prime in '{item}'")))?;
                let m: u64 = m.trim().parse().map_err(|_| Error::Parse(format!("bounds: bad bound in '{item}'")))?;
                if bounds.insert(l, m).is_some() {
                    return Err(Error::Parse(format!("bounds: prime {l} listed twice")));
                }
            }
        }
        let params = SystemParams {
            field,
            t,
            delta_k,
            conductor,
            e0,
            n_factorization,
            order_witness,
            partition,
            bounds,
            r_max,
            modpoly_manifest: kv.get("modpoly_manifest").cloned(),
        };
        params.check().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(params)
    }
}
