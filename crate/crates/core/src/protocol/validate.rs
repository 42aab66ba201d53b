use super::{PublicKey, SystemParams};
use crate::arith::{factor_u64, isqrt, mod_u64, valuation};
use crate::ec::{count_points_small, curve_from_j, has_exact_order, Curve};
use crate::error::Result;
use crate::ff::{Field, PrimeField};
use crate::isogeny::volcano;
use crate::modpolydb::shipped;
use crate::poly::PolyRing;
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::Rng;

/// Random points tried per twist before the order check gives up.
pub const ORDER_BUDGET: usize = 40;

/// Outcome of a validation check. Inconclusive means the check could not
/// be carried out with the available data, which is different from a
/// rejection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(String),
    Inconclusive(String),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }

    fn and(self, other: impl FnOnce() -> Result<Validity>) -> Result<Validity> {
        match self {
            Validity::Valid => other(),
            v => Ok(v),
        }
    }
}

fn excluded(params: &SystemParams, key: &PublicKey) -> bool {
    let f = &params.field;
    f.is_zero(&key.j) || key.j == f.from_i64(1728)
}

/// Whether some twist with j-invariant `key.j` has a point of exact order m,
/// the stored group exponent. With m > 4√p this pins the order to N; for
/// smaller m the order is counted exactly when p < 2^32.
pub fn validate_order<R: Rng + ?Sized>(key: &PublicKey, params: &SystemParams, rng: &mut R) -> Result<Validity> {
    if excluded(params, key) {
        return Ok(Validity::Invalid("j = 0 and j = 1728 are not allowed".into()));
    }
    let (c1, c2) = curve_from_j(&params.field, &key.j, rng)?;
    let m = params.exponent();
    let p = params.p();
    if &m * &m > p * 16u32 {
        for c in [&c1, &c2] {
            if twist_has_order(c, &m, &params.order_witness, rng) {
                return Ok(Validity::Valid);
            }
        }
        return Ok(Validity::Invalid("no point of exact order m on either twist".into()));
    }
    if p.bits() <= 32 {
        let n = params.group_order();
        for c in [&c1, &c2] {
            if count_points_small(c)? == n {
                return Ok(Validity::Valid);
            }
        }
        return Ok(Validity::Invalid("neither twist has p + 1 - t points".into()));
    }
    Ok(Validity::Inconclusive("group exponent below 4*sqrt(p) and p too large to count".into()))
}

fn twist_has_order<R: Rng + ?Sized>(c: &Curve<PrimeField>, m: &BigUint, fac: &[(BigUint, u32)], rng: &mut R) -> bool {
    let xa = c.x_arith();
    for _ in 0..ORDER_BUDGET {
        let p = xa.affine(c.random_x(rng));
        if !xa.is_infinity(&xa.ladder(&p, m)) {
            // wrong twist: its exponent does not divide m
            return false;
        }
        if has_exact_order(c, &p, fac) {
            return true;
        }
    }
    false
}

/// Whether the 2-level can be read off rational 2-torsion: v₂(d) = 1 and
/// (π − 1)/2 ∈ O_K. Then E[2] ⊂ E(F_p) exactly when End(E) is maximal at 2.
pub fn two_torsion_decides(params: &SystemParams) -> bool {
    let d = BigInt::from(params.conductor.clone());
    if valuation(&d, 2) != 1 {
        return false;
    }
    let u: BigInt = (&params.t - 2) / 2;
    let v: BigInt = &d / 2;
    mod_u64(&u, 2) == mod_u64(&(v * &params.delta_k), 2)
}

/// Number of rational roots of the 2-division cubic.
pub fn rational_two_torsion(c: &Curve<PrimeField>) -> usize {
    let f = c.field();
    let w = c.to_weierstrass();
    let (a, b) = w.weierstrass_coeffs();
    let ring = PolyRing::new(f.clone());
    ring.count_roots(&ring.poly(vec![b, a, f.zero(), f.one()]))
}

/// End(E) = O_K, checked one prime of the conductor at a time.
pub fn validate_endo_level<R: Rng + ?Sized>(key: &PublicKey, params: &SystemParams, rng: &mut R) -> Result<Validity> {
    if excluded(params, key) {
        return Ok(Validity::Invalid("j = 0 and j = 1728 are not allowed".into()));
    }
    let d = &params.conductor;
    if *d == BigUint::from(1u32) {
        return Ok(Validity::Valid);
    }
    let d64 = match d.to_u64() {
        Some(v) => v,
        None => return Ok(Validity::Inconclusive("conductor too large to factor".into())),
    };
    for (l, h) in factor_u64(d64) {
        if l == 2 && two_torsion_decides(params) {
            let (c, _) = curve_from_j(&params.field, &key.j, rng)?;
            if rational_two_torsion(&c) != 3 {
                return Ok(Validity::Invalid("2-torsion is not fully rational".into()));
            }
            continue;
        }
        let db = shipped()?;
        if !db.has(l) {
            return Ok(Validity::Inconclusive(format!("no modular polynomial for {l} | conductor")));
        }
        let phi = db.reduced(l, &params.field)?;
        if !volcano::is_on_crater(&phi, &key.j, h, rng)? {
            return Ok(Validity::Invalid(format!("not on the crater of the {l}-volcano")));
        }
    }
    Ok(Validity::Valid)
}

/// Order check followed by the endomorphism-level check.
pub fn validate_public_key<R: Rng + ?Sized>(key: &PublicKey, params: &SystemParams, rng: &mut R) -> Result<Validity> {
    validate_order(key, params, rng)?.and(|| validate_endo_level(key, params, rng))
}

/// ⌊4√p⌋, the threshold on the group exponent for the order check.
pub fn order_threshold(p: &BigUint) -> BigUint {
    isqrt(&(p * 16u32))
}
