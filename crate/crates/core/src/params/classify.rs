use super::eigen::{eigenvalues_mod_ell, EigenCase};
use crate::arith::is_prime_u64;
use crate::isogeny::{IdealStep, Method};
use num_bigint::{BigInt, BigUint};

/// Limits for classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Largest prime considered.
    pub ell_max: u64,
    /// Largest extension degree for Vélu steps.
    pub r_max: u32,
    /// Largest prime kept as an Elkies (EE) prime.
    pub elkies_max: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { ell_max: 1800, r_max: 9, elkies_max: 380 }
    }
}

/// The prime lists: Vélu both ways, Vélu one way, Elkies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    pub vv: Vec<IdealStep>,
    pub ve: Vec<IdealStep>,
    pub ee: Vec<IdealStep>,
}

impl Partition {
    /// Steps in walk order: EE, then VV, then VE.
    pub fn steps(&self) -> impl Iterator<Item = &IdealStep> {
        self.ee.iter().chain(self.vv.iter()).chain(self.ve.iter())
    }

    pub fn get(&self, l: u64) -> Option<&IdealStep> {
        self.steps().find(|s| s.l == l)
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.steps().map(|s| s.l).collect();
        v.sort_unstable();
        v
    }

    pub fn len(&self) -> usize {
        self.vv.len() + self.ve.len() + self.ee.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn push(&mut self, s: IdealStep) {
        match s.method {
            Method::VV => self.vv.push(s),
            Method::VE => self.ve.push(s),
            Method::EE => self.ee.push(s),
        }
    }
}

/// Odd Elkies primes ℓ ≤ ell_max other than q, sorted into VV, VE and EE.
/// λ is the smaller eigenvalue except for VE primes, where it is the Vélu
/// direction.
pub fn classify_primes(q: &BigUint, t: &BigInt, opts: &ClassifyOptions) -> Partition {
    let mut part = Partition::default();
    for l in (3..=opts.ell_max).step_by(2) {
        if !is_prime_u64(l) || (q % l) == BigUint::ZERO {
            continue;
        }
        let (lambda, mu) = match eigenvalues_mod_ell(t, q, l) {
            EigenCase::Split(a, b) => (a, b),
            _ => continue,
        };
        let s = IdealStep::classify(l, lambda, mu, opts.r_max);
        if s.method == Method::EE && l > opts.elkies_max {
            continue;
        }
        part.push(s);
    }
    part
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn toy_seven() {
        let opts = ClassifyOptions { ell_max: 13, r_max: 9, elkies_max: 13 };
        let part = classify_primes(&BigUint::from(7u32), &BigInt::from(2), &opts);
        // Δπ = −24: 3 ramifies, 5 and 11 split, 13 is inert
        assert_eq!(part.primes(), vec![5, 11]);
        let s = part.get(5).unwrap();
        assert_eq!((s.method, s.lambda, s.mu), (Method::VE, 4, 3));
        assert_eq!(s.forward.unwrap().r, 1);
    }

    #[test]
    fn elkies_cap_only_drops_ee() {
        let q = BigUint::from(6007u32);
        let t = BigInt::from(32);
        let all = classify_primes(&q, &t, &ClassifyOptions { ell_max: 60, r_max: 3, elkies_max: 60 });
        let capped = classify_primes(&q, &t, &ClassifyOptions { ell_max: 60, r_max: 3, elkies_max: 3 });
        assert_eq!(all.vv, capped.vv);
        assert_eq!(all.ve, capped.ve);
        assert!(capped.ee.iter().all(|s| s.l <= 3));
        assert!(all.ee.len() > capped.ee.len());
    }

    proptest! {
        #[test]
        fn partition_of_elkies_primes(q in prop::sample::select(vec![1009u64, 6007, 65537, 1_000_003]), t in -60i64..60, r_max in 1u32..10) {
            let q = BigUint::from(q);
            let t = BigInt::from(t);
            prop_assume!(&t * &t < BigInt::from(q.clone()) * 4 && t != BigInt::from(0));
            let part = classify_primes(&q, &t, &ClassifyOptions { ell_max: 101, r_max, elkies_max: 101 });
            let mut seen = part.primes();
            let n = seen.len();
            seen.dedup();
            prop_assert_eq!(seen.len(), n);
            for l in (3..=101u64).step_by(2).filter(|&l| is_prime_u64(l)) {
                let split = matches!(eigenvalues_mod_ell(&t, &q, l), EigenCase::Split(..));
                prop_assert_eq!(split, part.get(l).is_some());
            }
            for s in part.steps() {
                let ql = (&q % s.l).try_into().unwrap_or(0u64);
                let tl = crate::arith::mod_u64(&t, s.l);
                prop_assert_eq!((s.lambda + s.mu) % s.l, tl);
                prop_assert_eq!((s.lambda * s.mu) % s.l, ql);
                match s.method {
                    Method::VV => prop_assert!(s.forward.is_some() && s.backward.is_some()),
                    Method::VE => prop_assert!(s.forward.is_some() && s.backward.is_none()),
                    Method::EE => prop_assert!(s.forward.is_none() && s.backward.is_none()),
                }
                for r in s.forward.iter().chain(s.backward.iter()) {
                    prop_assert!(r.r <= r_max);
                }
            }
        }
    }
}
