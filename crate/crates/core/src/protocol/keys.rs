use super::SystemParams;
use crate::error::{Error, Result};
use crate::ff::{Fp, PrimeField};
use crate::isogeny::Method;
use std::collections::BTreeMap;

/// Exponent vector (k_ℓ).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrivateKey {
    pub exponents: BTreeMap<u64, i64>,
}

impl PrivateKey {
    pub fn zero(params: &SystemParams) -> Self {
        PrivateKey { exponents: params.partition.primes().into_iter().map(|l| (l, 0)).collect() }
    }

    pub fn get(&self, l: u64) -> i64 {
        self.exponents.get(&l).copied().unwrap_or(0)
    }

    /// |k_ℓ| ≤ M_ℓ, k_ℓ ≥ 0 on VE primes, and no unknown primes.
    pub fn check(&self, params: &SystemParams) -> Result<()> {
        for (&l, &k) in &self.exponents {
            let s = params.step(l).ok_or_else(|| Error::Validation(format!("{l} is not a listed prime")))?;
            let m = params.bounds.get(&l).copied().unwrap_or(0);
            if k.unsigned_abs() > m {
                return Err(Error::Validation(format!("|k_{l}| = {} exceeds M = {m}", k.unsigned_abs())));
            }
            if s.method == Method::VE && k < 0 {
                return Err(Error::Validation(format!("k_{l} must be nonnegative")));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let v: Vec<String> = self.exponents.iter().map(|(l, k)| format!("{l}:{k}")).collect();
        v.join(";") + "\n"
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut exponents = BTreeMap::new();
        let body = src.trim();
        for item in body.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            let (l, k) = item.split_once(':').ok_or_else(|| Error::Parse(format!("private key: '{item}' is not 'l:k'")))?;
            let l: u64 = l.trim().parse().map_err(|_| Error::Parse(format!("private key: bad prime in '{item}'")))?;
            let k: i64 = k.trim().parse().map_err(|_| Error::Parse(format!("private key: bad exponent in '{item}'")))?;
            if exponents.insert(l, k).is_some() {
                return Err(Error::Parse(format!("private key: prime {l} listed twice")));
            }
        }
        Ok(PrivateKey { exponents })
    }
}

/// A j-invariant in F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PublicKey {
    pub j: Fp,
}

impl PublicKey {
    pub fn to_text(&self) -> String {
        self.j.to_hex() + "\n"
    }

    /// One hex line holding a value below p.
    pub fn parse(field: &PrimeField, src: &str) -> Result<Self> {
        let mut lines = src.lines().map(str::trim).filter(|l| !l.is_empty());
        let line = lines.next().ok_or_else(|| Error::Parse("public key: empty".into()))?;
        if lines.next().is_some() {
            return Err(Error::Parse("public key: expected a single line".into()));
        }
        let j = field.from_hex(line).map_err(|e| Error::Parse(format!("public key: {e}")))?;
        Ok(PublicKey { j })
    }
}
