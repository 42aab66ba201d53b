use super::bounds::{optimize_bounds, Bounds, CostModel};
use super::classify::{classify_primes, ClassifyOptions};
use crate::arith::{factor_big, factor_u64, fundamental_part};
use crate::ec::{curve_with_trace, point_order, Curve};
use crate::error::{Error, Result};
use crate::ff::PrimeField;
use crate::isogeny::{volcano, Method};
use crate::modpolydb::{shipped, ModPolyDb};
use crate::protocol::SystemParams;
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::Rng;
use sha2::{Digest, Sha256};

/// Walks ascending ℓ-isogenies for every ℓ | d, where Δπ = d²ΔK, so that
/// the result has End = O_K.
pub fn ascend_to_maximal<R: Rng + ?Sized>(
    e: &Curve<PrimeField>,
    delta_pi: &BigInt,
    rng: &mut R,
) -> Result<Curve<PrimeField>> {
    let (_, d) = fundamental_part(delta_pi).ok_or_else(|| Error::Params("cannot factor the discriminant".into()))?;
    let t = e.trace().cloned().ok_or_else(|| Error::InvalidTrace("curve has no trace attached".into()))?;
    if d == BigUint::from(1u32) {
        return Ok(e.clone());
    }
    let d = d.to_u64().ok_or_else(|| Error::Params("conductor too large".into()))?;
    let db = shipped()?;
    let mut j = e.j_invariant();
    for (l, h) in factor_u64(d) {
        let phi = db.reduced(l, e.field())?;
        j = volcano::ascend_to_crater(&phi, &j, h, rng)?;
    }
    curve_with_trace(e.field(), &j, &t, rng)
}

/// Factorization of the exponent of E(F_p): the lcm of the orders of random
/// points, stopping after 16 samples without growth.
pub fn group_exponent<R: Rng + ?Sized>(
    e: &Curve<PrimeField>,
    n_fact: &[(BigUint, u32)],
    rng: &mut R,
) -> Result<Vec<(BigUint, u32)>> {
    let xa = e.x_arith();
    let mut exp: Vec<(BigUint, u32)> = n_fact.iter().map(|(p, _)| (p.clone(), 0)).collect();
    let mut stale = 0;
    while stale < 16 {
        let p = xa.affine(e.random_x(rng));
        let ord = point_order(e, &p, n_fact).ok_or_else(|| Error::Validation("point order does not divide N".into()))?;
        let mut grew = false;
        for (q, k) in ord {
            let slot = exp.iter_mut().find(|(p, _)| *p == q).expect("prime of N");
            if k > slot.1 {
                slot.1 = k;
                grew = true;
            }
        }
        stale = if grew { 0 } else { stale + 1 };
    }
    exp.retain(|(_, k)| *k > 0);
    Ok(exp)
}

/// How bounds are chosen when building a parameter set.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundsChoice {
    Uniform(u64),
    Explicit(Bounds),
    Optimize { cost: CostModel, security_bits: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct BuildOptions {
    pub classify: ClassifyOptions,
    pub bounds: BoundsChoice,
}

pub fn manifest_digest(db: &ModPolyDb) -> Option<String> {
    std::fs::read(db.dir().join("MANIFEST")).ok().map(|b| hex::encode(Sha256::digest(&b)))
}

/// A complete parameter set from a curve of known trace: ascend to the
/// maximal order, factor N, find the group exponent and classify primes.
/// Elkies primes are kept only when Φ_ℓ is available.
pub fn build_params<R: Rng + ?Sized>(e: &Curve<PrimeField>, opts: &BuildOptions, rng: &mut R) -> Result<SystemParams> {
    let field = e.field().clone();
    let t = e.trace().cloned().ok_or_else(|| Error::InvalidTrace("curve has no trace attached".into()))?;
    let q = field.modulus().clone();
    let delta_pi: BigInt = &t * &t - BigInt::from(q.clone()) * 4;
    let (delta_k, conductor) =
        fundamental_part(&delta_pi).ok_or_else(|| Error::Params("cannot factor the discriminant".into()))?;
    if delta_k == BigInt::from(-3) || delta_k == BigInt::from(-4) {
        return Err(Error::Domain("delta_k = -3 or -4: the crater is j = 0 or j = 1728".into()));
    }
    let top = ascend_to_maximal(e, &delta_pi, rng)?;
    let e0 = match top.to_montgomery(rng) {
        Some(m) => m,
        None => top.to_weierstrass(),
    };
    let n = crate::ec::group_order(&q, &t);
    let n_factorization = factor_big(&n).ok_or_else(|| Error::Params("cannot factor N".into()))?;
    let order_witness = group_exponent(&e0, &n_factorization, rng)?;
    let db = shipped()?;
    let mut partition = classify_primes(&q, &t, &opts.classify);
    partition.ee.retain(|s| db.has(s.l));
    let bounds = match &opts.bounds {
        BoundsChoice::Uniform(m) => partition.primes().into_iter().map(|l| (l, *m)).collect(),
        BoundsChoice::Explicit(b) => {
            partition.vv.retain(|s| b.contains_key(&s.l));
            partition.ve.retain(|s| b.contains_key(&s.l));
            partition.ee.retain(|s| b.contains_key(&s.l));
            b.clone()
        }
        BoundsChoice::Optimize { cost, security_bits } => optimize_bounds(cost, &partition, *security_bits)?,
    };
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
        r_max: opts.classify.r_max,
        modpoly_manifest: manifest_digest(db),
    };
    params.check()?;
    Ok(params)
}

/// Primes of the partition that actually walk (nonzero bound).
pub fn active_methods(params: &SystemParams) -> (usize, usize, usize) {
    let on = |m: Method| params.partition.steps().filter(|s| s.method == m && params.bounds.get(&s.l).copied().unwrap_or(0) > 0).count();
    (on(Method::VV), on(Method::VE), on(Method::EE))
}

/// ⌈log₂ n⌉.
pub fn log2_ceil(n: &BigUint) -> u64 {
    if *n <= BigUint::from(1u32) {
        0
    } else {
        (n - 1u32).bits()
    }
}
