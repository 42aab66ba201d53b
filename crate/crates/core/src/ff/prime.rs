use super::counter::tick;
use super::Field;
use crate::arith;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::OnceCell;
use rand::Rng;
use std::fmt;
use std::sync::Arc;

/// Element of a prime field, always fully reduced.
///
/// Fields whose modulus fits in 63 bits store elements inline.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Fp {
    Small(u64),
    Big(BigUint),
}

impl Fp {
    pub fn to_biguint(&self) -> BigUint {
        match self {
            Fp::Small(v) => BigUint::from(*v),
            Fp::Big(v) => v.clone(),
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Fp::Small(v) => Some(*v),
            Fp::Big(v) => v.to_u64(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Fp::Small(v) => *v == 0,
            Fp::Big(v) => v.is_zero(),
        }
    }

    /// Lowercase big-endian hexadecimal.
    pub fn to_hex(&self) -> String {
        self.to_biguint().to_str_radix(16)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_biguint())
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_biguint())
    }
}

struct Inner {
    p: BigUint,
    small: Option<u64>,
    nonresidue: OnceCell<Fp>,
}

/// The field of integers modulo a prime p > 3.
#[derive(Clone)]
pub struct PrimeField {
    inner: Arc<Inner>,
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.p == other.inner.p
    }
}

impl Eq for PrimeField {}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.inner.p)
    }
}

impl PrimeField {
    pub fn new(p: BigUint) -> Result<Self> {
        if p <= BigUint::from(3u32) {
            return Err(Error::InvalidField(format!("modulus {} must exceed 3", p)));
        }
        if !arith::is_prime(&p) {
            return Err(Error::InvalidField(format!("modulus {} is not prime", p)));
        }
        let small = p.to_u64().filter(|&v| v < (1u64 << 63));
        Ok(PrimeField {
            inner: Arc::new(Inner {
                p,
                small,
                nonresidue: OnceCell::new(),
            }),
        })
    }

    pub fn from_u64(p: u64) -> Result<Self> {
        Self::new(BigUint::from(p))
    }

    pub fn modulus(&self) -> &BigUint {
        &self.inner.p
    }

    pub fn modulus_u64(&self) -> Option<u64> {
        self.inner.p.to_u64()
    }

    pub fn bits(&self) -> u64 {
        self.inner.p.bits()
    }

    /// Reduce a nonnegative integer into the field.
    pub fn elem(&self, n: &BigUint) -> Fp {
        match self.inner.small {
            Some(p) => Fp::Small((n % p).to_u64().unwrap()),
            None => Fp::Big(n % &self.inner.p),
        }
    }

    pub fn elem_u64(&self, n: u64) -> Fp {
        match self.inner.small {
            Some(p) => Fp::Small(n % p),
            None => Fp::Big(BigUint::from(n) % &self.inner.p),
        }
    }

    /// Reduce a signed integer into the field.
    pub fn elem_int(&self, n: &BigInt) -> Fp {
        let p = BigInt::from(self.inner.p.clone());
        let r = n.mod_floor(&p);
        self.elem(r.magnitude())
    }

    /// Parse a canonical lowercase or uppercase hex string (value < p).
    pub fn from_hex(&self, s: &str) -> Result<Fp> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(Error::Parse(format!("invalid hex field element {:?}", s)));
        }
        let n = BigUint::parse_bytes(s.as_bytes(), 16)
            .ok_or_else(|| Error::Parse(format!("invalid hex field element {:?}", s)))?;
        if n >= self.inner.p {
            return Err(Error::Parse("field element not reduced".into()));
        }
        Ok(self.elem(&n))
    }

    /// Parse a decimal integer and reduce it.
    pub fn from_decimal(&self, s: &str) -> Result<Fp> {
        let n: BigInt = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid integer {:?}", s)))?;
        Ok(self.elem_int(&n))
    }

    /// Legendre symbol of `a`.
    pub fn legendre(&self, a: &Fp) -> i32 {
        arith::jacobi(&BigInt::from(a.to_biguint()), &self.inner.p)
    }

    fn big(&self, a: &Fp) -> BigUint {
        a.to_biguint()
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        self.elem_u64(0)
    }

    fn one(&self) -> Fp {
        self.elem_u64(1)
    }

    fn is_zero(&self, a: &Fp) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        match (self.inner.small, a, b) {
            (Some(p), Fp::Small(x), Fp::Small(y)) => {
                let s = x + y;
                Fp::Small(if s >= p { s - p } else { s })
            }
            _ => {
                let s = self.big(a) + self.big(b);
                let p = &self.inner.p;
                self.elem(&if &s >= p { s - p } else { s })
            }
        }
    }

    fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        match (self.inner.small, a, b) {
            (Some(p), Fp::Small(x), Fp::Small(y)) => {
                Fp::Small(if x >= y { x - y } else { x + p - y })
            }
            _ => {
                let (x, y) = (self.big(a), self.big(b));
                if x >= y {
                    Fp::Big(x - y)
                } else {
                    Fp::Big(x + &self.inner.p - y)
                }
            }
        }
    }

    fn neg(&self, a: &Fp) -> Fp {
        if a.is_zero() {
            return a.clone();
        }
        match (self.inner.small, a) {
            (Some(p), Fp::Small(x)) => Fp::Small(p - x),
            _ => Fp::Big(&self.inner.p - self.big(a)),
        }
    }

    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        tick();
        match (self.inner.small, a, b) {
            (Some(p), Fp::Small(x), Fp::Small(y)) => Fp::Small(arith::mul_mod_u64(*x, *y, p)),
            (_, Fp::Big(x), Fp::Big(y)) => Fp::Big((x * y) % &self.inner.p),
            _ => self.elem(&(self.big(a) * self.big(b))),
        }
    }

    fn inv(&self, a: &Fp) -> Option<Fp> {
        if a.is_zero() {
            return None;
        }
        tick();
        match (self.inner.small, a) {
            (Some(p), Fp::Small(x)) => {
                let (mut r0, mut r1) = (p as i128, *x as i128);
                let (mut s0, mut s1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                Some(Fp::Small(s0.rem_euclid(p as i128) as u64))
            }
            _ => self.big(a).modinv(&self.inner.p).map(Fp::Big),
        }
    }

    fn from_i64(&self, n: i64) -> Fp {
        if n >= 0 {
            self.elem_u64(n as u64)
        } else {
            self.neg(&self.elem_u64(n.unsigned_abs()))
        }
    }

    fn from_prime(&self, a: &Fp) -> Fp {
        a.clone()
    }

    fn as_prime(&self, a: &Fp) -> Option<Fp> {
        Some(a.clone())
    }

    fn prime_field(&self) -> &PrimeField {
        self
    }

    fn degree(&self) -> usize {
        1
    }

    fn order(&self) -> &BigUint {
        &self.inner.p
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        match self.inner.small {
            Some(p) => Fp::Small(rng.gen_range(0..p)),
            None => Fp::Big(rng.gen_biguint_below(&self.inner.p)),
        }
    }

    fn sort_key(&self, a: &Fp) -> BigUint {
        a.to_biguint()
    }

    fn nonresidue(&self) -> Fp {
        self.inner
            .nonresidue
            .get_or_init(|| {
                let mut n = 2u64;
                loop {
                    let c = self.elem_u64(n);
                    if self.legendre(&c) == -1 {
                        return c;
                    }
                    n += 1;
                }
            })
            .clone()
    }

    fn basis(&self, i: usize) -> Fp {
        assert_eq!(i, 0);
        self.one()
    }

    fn is_square(&self, a: &Fp) -> bool {
        self.legendre(a) >= 0
    }

    fn frobenius(&self, a: &Fp) -> Fp {
        a.clone()
    }

    fn is_one(&self, a: &Fp) -> bool {
        match a {
            Fp::Small(v) => *v == 1,
            Fp::Big(v) => v.is_one(),
        }
    }
}
