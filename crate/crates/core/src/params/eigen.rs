use crate::arith::mod_u64;
use num_bigint::{BigInt, BigUint};

/// Frobenius eigenvalue structure modulo ℓ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenCase {
    /// X² − tX + q has no roots mod ℓ.
    NoRoots,
    /// ℓ | Δπ: a double root.
    Ramified(u64),
    /// Two distinct roots, smaller first.
    Split(u64, u64),
}

/// Roots of X² − tX + q mod ℓ by enumeration.
pub fn eigenvalues_mod_ell(t: &BigInt, q: &BigUint, l: u64) -> EigenCase {
    let tm = mod_u64(t, l) as u128;
    let qm = mod_u64(&BigInt::from(q.clone()), l) as u128;
    let l128 = l as u128;
    let roots: Vec<u64> = (0..l)
        .filter(|&x| {
            let x = x as u128;
            (x * x + l128 * l128 - tm * x + qm) % l128 == 0
        })
        .collect();
    match roots.as_slice() {
        [] => EigenCase::NoRoots,
        [a] => EigenCase::Ramified(*a),
        [a, b] => EigenCase::Split(*a, *b),
        _ => unreachable!("a quadratic has at most two roots mod a prime"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn toy_cases() {
        let q = BigUint::from(7u32);
        let t = BigInt::from(2);
        assert_eq!(eigenvalues_mod_ell(&t, &q, 3), EigenCase::Ramified(1));
        assert_eq!(eigenvalues_mod_ell(&t, &q, 5), EigenCase::Split(3, 4));
        // x^2 - 2x + 7 mod 11: disc = -24 = 9 mod 11, roots 1 ± 3/2... enumerate
        match eigenvalues_mod_ell(&t, &q, 11) {
            EigenCase::Split(a, b) => assert_eq!(((a + b) % 11, (a * b) % 11), (2, 7)),
            other => panic!("{other:?}"),
        }
        assert_eq!(eigenvalues_mod_ell(&t, &q, 13), EigenCase::NoRoots);
    }

    proptest! {
        #[test]
        fn vieta(t in -2000i64..2000, q in 1u64..1_000_000, li in 0usize..10) {
            let l = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31][li];
            prop_assume!(q % l != 0);
            if let EigenCase::Split(a, b) = eigenvalues_mod_ell(&BigInt::from(t), &BigUint::from(q), l) {
                prop_assert_eq!((a + b) % l, t.rem_euclid(l as i64) as u64);
                prop_assert_eq!((a * b) % l, q % l);
                prop_assert!(a < b);
            }
        }
    }
}
