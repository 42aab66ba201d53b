mod common;

use common::load;
use crs_core::ff::Field;
use crs_core::oracle::enumerate_orbit;
use crs_core::protocol::{validate_public_key, PublicKey, Validity};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn validation_is_orbit_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for name in ["toy563", "toy677", "toy853"] {
        let p = load(name);
        let orbit = enumerate_orbit(&p, &mut rng).unwrap();
        let q: u64 = p.p().try_into().unwrap();
        for j in 0..q {
            let key = PublicKey { j: p.field.elem_u64(j) };
            let v = validate_public_key(&key, &p, &mut rng).unwrap();
            assert!(!matches!(v, Validity::Inconclusive(_)), "{name}: j = {j}");
            assert_eq!(v.is_valid(), orbit.contains(&key.j), "{name}: j = {j}");
        }
    }
}

#[test]
fn random_512_bit_values_are_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let p = load("crs512");
    assert!(validate_public_key(&PublicKey { j: p.j0() }, &p, &mut rng).unwrap().is_valid());
    for _ in 0..5 {
        let j = p.field.random(&mut rng);
        let v = validate_public_key(&PublicKey { j }, &p, &mut rng).unwrap();
        assert!(matches!(v, Validity::Invalid(_)), "{v:?}");
    }
}
