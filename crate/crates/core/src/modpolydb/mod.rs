//! Classical modular polynomials Φ_ℓ(X, Y): loading, integrity checks,
//! reduction modulo p and specialization of one variable.
//!
//! Files hold one coefficient per line as `[a,b] c` with `a >= b`; missing
//! pairs are zero and `(b,a)` is implied by symmetry.

use crate::error::{Error, Result};
use crate::ff::{Field, Fp, PrimeField};
use crate::poly::{Poly, PolyRing};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Environment variable overriding the database directory.
pub const ENV_DIR: &str = "CRS_MODPOLY_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularPolynomial {
    level: u64,
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl ModularPolynomial {
    pub fn level(&self) -> u64 {
        self.level
    }

    /// Stored coefficients, keyed by `(a, b)` with `a >= b`.
    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), BigInt> {
        &self.coeffs
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigInt {
        let key = if a >= b { (a, b) } else { (b, a) };
        self.coeffs.get(&key).cloned().unwrap_or_default()
    }

    /// Parses and validates the text format.
    pub fn parse(level: u64, src: &str) -> Result<Self> {
        if level < 2 || !crate::arith::is_prime_u64(level) || level > 1 << 16 {
            return Err(Error::Validation(format!("level {level} is not a supported prime")));
        }
        let mut coeffs = BTreeMap::new();
        for (i, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::ParseLine { line: i + 1, msg: msg.to_string() };
            let rest = line.strip_prefix('[').ok_or_else(|| err("expected '['"))?;
            let (exps, value) = rest.split_once(']').ok_or_else(|| err("expected ']'"))?;
            let (a, b) = exps.split_once(',').ok_or_else(|| err("expected 'a,b'"))?;
            let a: u32 = a.trim().parse().map_err(|_| err("bad exponent"))?;
            let b: u32 = b.trim().parse().map_err(|_| err("bad exponent"))?;
            let value = value.trim();
            if value.is_empty() || value.contains(char::is_whitespace) {
                return Err(err("expected a single integer coefficient"));
            }
            let c: BigInt = value.parse().map_err(|_| err("bad coefficient"))?;
            if u64::from(a) > level + 1 || u64::from(b) > level + 1 {
                return Err(Error::Validation(format!("line {}: exponent exceeds {}", i + 1, level + 1)));
            }
            let key = if a >= b { (a, b) } else { (b, a) };
            if let Some(prev) = coeffs.get(&key) {
                if *prev != c {
                    return Err(Error::Validation(format!(
                        "line {}: conflicting coefficient for [{},{}]",
                        i + 1,
                        key.0,
                        key.1
                    )));
                }
            }
            if !c.is_zero() {
                coeffs.insert(key, c);
            } else {
                coeffs.remove(&key);
            }
        }
        let phi = ModularPolynomial { level, coeffs };
        phi.validate()?;
        Ok(phi)
    }

    /// Degree invariants plus the Kronecker congruence
    /// Φ_ℓ ≡ (X^ℓ − Y)(X − Y^ℓ) mod ℓ.
    pub fn validate(&self) -> Result<()> {
        let l = self.level as u32;
        if self.coeff(l + 1, 0) != BigInt::one() {
            return Err(Error::Validation(format!(
                "coefficient [{},0] must be 1 (leading term in X)",
                l + 1
            )));
        }
        if self.coeffs.keys().any(|&(a, b)| a == l + 1 && b > 0) {
            return Err(Error::Validation("X^(l+1) may only appear with Y^0".into()));
        }
        if !self.kronecker_congruence() {
            return Err(Error::Validation(format!("Kronecker congruence fails for level {l}")));
        }
        Ok(())
    }

    pub fn kronecker_congruence(&self) -> bool {
        let l = self.level as u32;
        let m = BigInt::from(self.level);
        let expect = |a: u32, b: u32| -> i64 {
            if a == l + 1 && b == 0 {
                1
            } else if (a, b) == (l, l) || (a, b) == (1, 1) {
                -1
            } else {
                0
            }
        };
        let mut keys: Vec<(u32, u32)> = self.coeffs.keys().copied().collect();
        keys.extend([(l + 1, 0), (l, l), (1, 1)]);
        keys.into_iter().all(|(a, b)| {
            let d = self.coeff(a, b) - BigInt::from(expect(a, b));
            d.mod_floor(&m).is_zero()
        })
    }

    /// Canonical text: sorted, `a >= b`, zero coefficients omitted.
    pub fn serialize(&self) -> String {
        let mut s = format!("# classical modular polynomial Phi_{}\n", self.level);
        for (&(a, b), c) in &self.coeffs {
            let _ = writeln!(s, "[{a},{b}] {c}");
        }
        s
    }

    pub fn reduce(&self, field: &PrimeField) -> ReducedModPoly {
        let n = self.level as usize + 2;
        let mut m = vec![vec![field.zero(); n]; n];
        for (&(a, b), c) in &self.coeffs {
            let v = field.elem_int(c);
            m[a as usize][b as usize] = v.clone();
            m[b as usize][a as usize] = v;
        }
        ReducedModPoly { level: self.level, field: field.clone(), m }
    }

    /// Exact integer evaluation, used by tests and small checks.
    pub fn eval_int(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(a, b), c) in &self.coeffs {
            acc += c * x.pow(a) * y.pow(b);
            if a != b {
                acc += c * x.pow(b) * y.pow(a);
            }
        }
        acc
    }

    /// Largest coefficient size in bits.
    pub fn max_bits(&self) -> u64 {
        self.coeffs.values().map(|c| c.abs().bits()).max().unwrap_or(0)
    }
}

/// Φ_ℓ reduced modulo p as a dense symmetric matrix.
#[derive(Clone, Debug)]
pub struct ReducedModPoly {
    level: u64,
    field: PrimeField,
    m: Vec<Vec<Fp>>,
}

impl ReducedModPoly {
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    /// Φ_ℓ(X, j) as a univariate polynomial over the field of `j`.
    pub fn specialize<F: Field>(&self, ring: &PolyRing<F>, j: &F::Elem) -> Result<Poly<F>> {
        let f = ring.field();
        if f.prime_field().modulus() != self.field.modulus() {
            return Err(Error::ParentMismatch);
        }
        let n = self.m.len();
        let mut pows = Vec::with_capacity(n);
        pows.push(f.one());
        for i in 1..n {
            pows.push(f.mul(&pows[i - 1], j));
        }
        let coeffs = self
            .m
            .iter()
            .map(|row| {
                row.iter().zip(&pows).fold(f.zero(), |acc, (c, jp)| {
                    if c.is_zero() {
                        acc
                    } else {
                        f.add(&acc, &f.mul(&f.from_prime(c), jp))
                    }
                })
            })
            .collect();
        Ok(ring.poly(coeffs))
    }

    pub fn eval<F: Field>(&self, f: &F, x: &F::Elem, y: &F::Elem) -> Result<F::Elem> {
        let ring = PolyRing::new(f.clone());
        let p = self.specialize(&ring, y)?;
        Ok(ring.eval(&p, x))
    }
}

/// One manifest entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub level: u64,
    pub file: String,
    pub sha256: String,
}

pub fn parse_manifest(src: &str) -> Result<Vec<ManifestEntry>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::ParseLine { line: i + 1, msg: msg.to_string() };
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(err("expected 'level file sha256'"));
        }
        let level = parts[0].parse().map_err(|_| err("bad level"))?;
        if parts[2].len() != 64 || hex::decode(parts[2]).is_err() {
            return Err(err("bad sha256"));
        }
        if parts[1].contains('/') || parts[1].contains("..") {
            return Err(err("file name must be relative to the manifest directory"));
        }
        out.push(ManifestEntry { level, file: parts[1].to_string(), sha256: parts[2].to_lowercase() });
    }
    Ok(out)
}

/// A directory of Φ_ℓ files with a MANIFEST.
#[derive(Debug)]
pub struct ModPolyDb {
    dir: PathBuf,
    entries: HashMap<u64, ManifestEntry>,
    loaded: RwLock<HashMap<u64, Arc<ModularPolynomial>>>,
    reduced: RwLock<HashMap<(u64, BigUint), Arc<ReducedModPoly>>>,
}

impl ModPolyDb {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        let manifest = std::fs::read_to_string(dir.join("MANIFEST"))?;
        let entries = parse_manifest(&manifest)?.into_iter().map(|e| (e.level, e)).collect();
        Ok(ModPolyDb { dir, entries, loaded: RwLock::new(HashMap::new()), reduced: RwLock::new(HashMap::new()) })
    }

    /// The shipped database, or the directory named by `CRS_MODPOLY_DIR`.
    pub fn default_dir() -> PathBuf {
        std::env::var_os(ENV_DIR)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/modpoly")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn levels(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.entries.keys().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn has(&self, level: u64) -> bool {
        self.entries.contains_key(&level)
    }

    /// Loads Φ_ℓ, checking the manifest hash and the integrity invariants.
    pub fn get(&self, level: u64) -> Result<Arc<ModularPolynomial>> {
        if let Some(p) = self.loaded.read().get(&level) {
            return Ok(p.clone());
        }
        let e = self.entries.get(&level).ok_or_else(|| Error::MissingModPoly(format!("level {level}")))?;
        let bytes = std::fs::read(self.dir.join(&e.file))?;
        let digest = hex::encode(Sha256::digest(&bytes));
        if digest != e.sha256 {
            return Err(Error::Validation(format!("{}: sha256 mismatch", e.file)));
        }
        let text = String::from_utf8(bytes).map_err(|_| Error::Parse(format!("{}: not UTF-8", e.file)))?;
        let phi = Arc::new(ModularPolynomial::parse(level, &text)?);
        self.loaded.write().entry(level).or_insert_with(|| phi.clone());
        Ok(phi)
    }

    pub fn reduced(&self, level: u64, field: &PrimeField) -> Result<Arc<ReducedModPoly>> {
        let key = (level, field.modulus().clone());
        if let Some(r) = self.reduced.read().get(&key) {
            return Ok(r.clone());
        }
        let r = Arc::new(self.get(level)?.reduce(field));
        Ok(self.reduced.write().entry(key).or_insert(r).clone())
    }
}

static SHIPPED: Lazy<Option<ModPolyDb>> = Lazy::new(|| ModPolyDb::open(ModPolyDb::default_dir()).ok());

/// Process-wide database over [`ModPolyDb::default_dir`].
pub fn shipped() -> Result<&'static ModPolyDb> {
    SHIPPED
        .as_ref()
        .ok_or_else(|| Error::MissingModPoly(format!("no MANIFEST in {}", ModPolyDb::default_dir().display())))
}
