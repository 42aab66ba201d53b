use super::{validate_public_key, PrivateKey, PublicKey, SystemParams, Validity};
use crate::ec::{curve_with_trace, Curve};
use crate::error::{Error, Result};
use crate::ff::{Fp, PrimeField};
use crate::isogeny::{elkies_walk, velu_walk, Method};
use rand::Rng;

/// Applies the exponent vector to E: for each listed prime, |k| steps in
/// direction λ (k > 0) or μ (k < 0). Order: Elkies primes, then VV, then VE.
pub fn act<R: Rng + ?Sized>(
    params: &SystemParams,
    e: &Curve<PrimeField>,
    key: &PrivateKey,
    rng: &mut R,
) -> Result<Curve<PrimeField>> {
    key.check(params)?;
    let mut cur = e.clone();
    if cur.trace().is_none() {
        cur = cur.with_trace(params.t.clone())?;
    }
    for s in params.partition.steps() {
        let k = key.get(s.l);
        if k == 0 {
            continue;
        }
        let dir = if k > 0 { s.clone() } else { s.reversed() };
        let n = k.unsigned_abs();
        cur = match s.method {
            Method::EE => elkies_walk(&cur, &dir, n, &*params.modpoly(s.l)?, rng)?,
            Method::VV | Method::VE => velu_walk(&cur, &dir, n, rng)?,
        };
    }
    Ok(cur)
}

/// Uniform exponents in [−M, M] (VV, EE) or [0, M] (VE).
pub fn random_private_key<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> PrivateKey {
    let mut key = PrivateKey::default();
    for s in params.partition.steps() {
        let m = params.bounds.get(&s.l).copied().unwrap_or(0) as i64;
        let k = match s.method {
            Method::VE => rng.gen_range(0..=m),
            _ => rng.gen_range(-m..=m),
        };
        key.exponents.insert(s.l, k);
    }
    key
}

pub fn public_key<R: Rng + ?Sized>(params: &SystemParams, key: &PrivateKey, rng: &mut R) -> Result<PublicKey> {
    Ok(PublicKey { j: act(params, &params.e0, key, rng)?.j_invariant() })
}

pub fn keygen<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> Result<(PrivateKey, PublicKey)> {
    let key = random_private_key(params, rng);
    let public = public_key(params, &key, rng)?;
    Ok((key, public))
}

/// Whether peer keys are validated before use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeerCheck {
    Validate,
    Skip,
}

/// The shared j-invariant: the private walk replayed from the peer's curve.
pub fn derive_shared<R: Rng + ?Sized>(
    key: &PrivateKey,
    peer: &PublicKey,
    params: &SystemParams,
    check: PeerCheck,
    rng: &mut R,
) -> Result<Fp> {
    if check == PeerCheck::Validate {
        match validate_public_key(peer, params, rng)? {
            Validity::Valid => {}
            Validity::Invalid(why) => return Err(Error::Validation(format!("peer key rejected: {why}"))),
            Validity::Inconclusive(why) => {
                return Err(Error::Validation(format!("peer key could not be validated: {why}")))
            }
        }
    }
    let e = curve_with_trace(&params.field, &peer.j, &params.t, rng)?;
    Ok(act(params, &e, key, rng)?.j_invariant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Field;
    use crate::protocol::toy7;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    #[test]
    fn zero_key_is_identity() {
        let p = toy7();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let z = PrivateKey::zero(&p);
        assert_eq!(public_key(&p, &z, &mut rng).unwrap().j, p.j0());
        let (_, peer) = keygen(&p, &mut rng).unwrap();
        assert_eq!(derive_shared(&z, &peer, &p, PeerCheck::Validate, &mut rng).unwrap(), peer.j);
    }

    #[test]
    fn toy_keys_take_two_values() {
        let p = toy7();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut pubs = BTreeSet::new();
        let mut shared = BTreeSet::new();
        for _ in 0..40 {
            let (a, pa) = keygen(&p, &mut rng).unwrap();
            let (b, pb) = keygen(&p, &mut rng).unwrap();
            let s = derive_shared(&a, &pb, &p, PeerCheck::Validate, &mut rng).unwrap();
            assert_eq!(s, derive_shared(&b, &pa, &p, PeerCheck::Validate, &mut rng).unwrap());
            pubs.insert(pa.j.to_u64().unwrap());
            shared.insert(s.to_u64().unwrap());
        }
        assert_eq!(pubs.len(), 2);
        assert!(shared.is_subset(&pubs));
    }

    #[test]
    fn out_of_range_keys_rejected() {
        let p = toy7();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let k = PrivateKey::parse("5:9").unwrap();
        assert!(public_key(&p, &k, &mut rng).is_err());
    }

    #[test]
    fn invalid_peer_rejected_unless_skipped() {
        let p = toy7();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let k = PrivateKey::parse("5:1").unwrap();
        // j = 0 is never a valid key
        let bad = PublicKey { j: p.field.zero() };
        assert!(matches!(derive_shared(&k, &bad, &p, PeerCheck::Validate, &mut rng), Err(Error::Validation(_))));
    }
}
