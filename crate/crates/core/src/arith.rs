//! Integer helpers shared across modules.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Probabilistic primality test.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return num_prime::nt_funcs::is_prime64(v);
    }
    num_prime::nt_funcs::is_prime(n, None).probably()
}

pub fn is_prime_u64(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// Full factorization of a machine integer.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    if n <= 1 {
        return Vec::new();
    }
    num_prime::nt_funcs::factorize64(n)
        .into_iter()
        .map(|(p, e)| (p, e as u32))
        .collect()
}

/// Factorization of an integer below 2^128.
pub fn factor_u128(n: u128) -> Vec<(u128, u32)> {
    if n <= 1 {
        return Vec::new();
    }
    num_prime::nt_funcs::factorize128(n)
        .into_iter()
        .map(|(p, e)| (p, e as u32))
        .collect()
}

/// Factor an arbitrary integer, failing when num-prime cannot finish.
pub fn factor_big(n: &BigUint) -> Option<Vec<(BigUint, u32)>> {
    if let Some(v) = n.to_u128() {
        return Some(
            factor_u128(v)
                .into_iter()
                .map(|(p, e)| (BigUint::from(p), e))
                .collect(),
        );
    }
    let (found, rest) = num_prime::nt_funcs::factors(n.clone(), None);
    if rest.is_some() {
        return None;
    }
    Some(found.into_iter().map(|(p, e)| (p, e as u32)).collect())
}

pub fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    r
}

#[inline]
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Multiplicative order of `a` modulo the prime `l`.
pub fn mult_order(a: u64, l: u64) -> u64 {
    assert!(a % l != 0, "zero has no multiplicative order");
    let n = l - 1;
    let mut ord = n;
    for (p, _) in factor_u64(n) {
        while ord % p == 0 && pow_mod_u64(a, ord / p, l) == 1 {
            ord /= p;
        }
    }
    ord
}

/// Residue of a signed big integer modulo a machine modulus.
pub fn mod_u64(n: &BigInt, m: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(m));
    r.to_u64().unwrap()
}

/// Kronecker symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    assert!(n.is_odd());
    let mut n = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n);
    let mut s = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                s = -s;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            s = -s;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        s
    } else {
        0
    }
}

/// ℓ-adic valuation.
pub fn valuation(n: &BigInt, l: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let l = BigInt::from(l);
    let mut n = n.abs();
    let mut v = 0;
    while (&n % &l).is_zero() {
        n /= &l;
        v += 1;
    }
    v
}

/// Floor of the square root.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// Ceiling of 2·sqrt(q): the Hasse half-width, rounded up.
pub fn hasse_bound(q: &BigUint) -> BigUint {
    let four_q: BigUint = q << 2;
    let s = four_q.sqrt();
    if &s * &s == four_q {
        s
    } else {
        s + 1u32
    }
}

/// Decompose a negative discriminant as d^2 · ΔK with ΔK fundamental.
pub fn fundamental_part(delta: &BigInt) -> Option<(BigInt, BigUint)> {
    assert!(delta.sign() == Sign::Minus);
    let fac = factor_big(delta.magnitude())?;
    let mut core = BigInt::from(-1);
    let mut d = BigUint::one();
    for (p, e) in fac {
        if e % 2 == 1 {
            core *= BigInt::from(p.clone());
        }
        for _ in 0..e / 2 {
            d *= &p;
        }
    }
    if (&core).mod_floor(&BigInt::from(4)) != BigInt::one() {
        // ΔK must be 0 mod 4 here: move a factor 2 from d into the core.
        if d.is_odd() {
            return None;
        }
        d >>= 1;
        core *= 4;
    }
    Some((core, d))
}

/// Format a factorization as comma-separated `p^e`.
pub fn format_factorization(f: &[(BigUint, u32)]) -> String {
    f.iter()
        .map(|(p, e)| {
            if *e == 1 {
                p.to_string()
            } else {
                format!("{}^{}", p, e)
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

pub fn product_of_factorization(f: &[(BigUint, u32)]) -> BigUint {
    f.iter()
        .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
}
