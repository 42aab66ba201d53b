mod common;

use common::{load, orbit_curves};
use crs_core::isogeny::velu_walk;
use crs_core::oracle::{enumerate_orbit, form_class_order, step_once};
use crs_core::protocol::{act, random_private_key, PrivateKey};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn cycle_length_steps_are_the_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for name in ["toy7", "volcano6007", "toy677", "toy997"] {
        let p = load(name);
        let dk = p.delta_k.to_i64().unwrap();
        for s in p.partition.steps() {
            let ord = form_class_order(s.l, dk).unwrap();
            let mut cur = p.e0.clone();
            for i in 1..=ord {
                cur = step_once(&p, s, &cur, &mut rng).unwrap();
                assert_eq!(cur.j_invariant() == p.j0(), i == ord, "{name}, l = {}, step {i}", s.l);
            }
        }
    }
}

#[test]
fn orbit_is_closed_and_traces_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let p = load("toy853");
    let orbit = enumerate_orbit(&p, &mut rng).unwrap();
    for e in orbit_curves(&p, &mut rng) {
        for s in p.partition.steps() {
            for d in [s.clone(), s.reversed()] {
                let n = step_once(&p, &d, &e, &mut rng).unwrap();
                assert!(orbit.contains(&n.j_invariant()));
                assert_eq!(n.trace(), Some(&p.t));
            }
        }
    }
}

#[test]
fn velu_walk_matches_repeated_steps() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let p = load("toy619");
    for s in p.partition.vv.iter() {
        let mut cur = p.e0.clone();
        for k in 0..4u64 {
            assert_eq!(velu_walk(&p.e0, s, k, &mut rng).unwrap().j_invariant(), cur.j_invariant());
            cur = step_once(&p, s, &cur, &mut rng).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn action_is_additive(seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = load("toy659");
        let a = random_private_key(&p, &mut rng);
        let b = random_private_key(&p, &mut rng);
        let mut sum = PrivateKey::default();
        for l in p.partition.primes() {
            sum.exponents.insert(l, a.get(l) + b.get(l));
        }
        // the sum may exceed the bounds, so apply it one prime at a time
        let mut cur = p.e0.clone();
        for (l, k) in &sum.exponents {
            let s = p.step(*l).unwrap();
            let d = if *k >= 0 { s.clone() } else { s.reversed() };
            for _ in 0..k.unsigned_abs() {
                cur = step_once(&p, &d, &cur, &mut rng).unwrap();
            }
        }
        let two = act(&p, &act(&p, &p.e0, &a, &mut rng).unwrap(), &b, &mut rng).unwrap();
        prop_assert_eq!(cur.j_invariant(), two.j_invariant());
    }
}
