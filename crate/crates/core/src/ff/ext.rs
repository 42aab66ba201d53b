use super::counter::tick;
use super::element::AnyField;
use super::prime::{Fp, PrimeField};
use super::{find_nonresidue, Field};
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use num_bigint::BigUint;
use num_traits::Zero;
use once_cell::sync::OnceCell;
use rand::Rng;
use std::fmt;
use std::sync::Arc;

/// Element of F_p[x]/(m(x)): exactly `r` coefficients, constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtElem(pub(crate) Vec<Fp>);

impl ExtElem {
    pub fn coeffs(&self) -> &[Fp] {
        &self.0
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", c)?;
        }
        write!(f, "]")
    }
}

struct Inner {
    base: PrimeField,
    r: usize,
    /// Monic modulus, constant term first, length r + 1.
    modulus: Vec<Fp>,
    /// Nonzero entries of -m(x) below the leading term.
    reduction: Vec<(usize, Fp)>,
    order: BigUint,
    nonresidue: OnceCell<ExtElem>,
    frob: OnceCell<Vec<ExtElem>>,
}

/// The extension F_{p^r} = F_p[x]/(m(x)).
#[derive(Clone)]
pub struct ExtField {
    inner: Arc<Inner>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus)
    }
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.inner.base.modulus(), self.inner.r, self.inner.modulus)
    }
}

/// Build F_{p^r}; degree one gives back the prime field.
pub fn build_extension(base: &PrimeField, r: usize) -> Result<AnyField> {
    match r {
        0 => Err(Error::InvalidField("extension degree must be positive".into())),
        1 => Ok(AnyField::Prime(base.clone())),
        _ => Ok(AnyField::Ext(ExtField::new(base, r)?)),
    }
}

impl ExtField {
    /// Extension with the first irreducible modulus in the fixed search order:
    /// coefficient bound B = 1, 2, ... and, within a bound, lexicographic on
    /// (c_{r-1}, ..., c_0).
    pub fn new(base: &PrimeField, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        let m = smallest_irreducible(base, r);
        Ok(Self::with_modulus_unchecked(base, m))
    }

    /// Extension defined by a caller-supplied monic modulus, checked irreducible.
    pub fn with_modulus(base: &PrimeField, modulus: Vec<Fp>) -> Result<Self> {
        let ring = PolyRing::new(base.clone());
        let m = ring.poly(modulus.clone());
        if m.degree() < 1 || !base.is_one(m.leading()) {
            return Err(Error::InvalidField("modulus must be monic of positive degree".into()));
        }
        if !ring.is_irreducible(&m) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        Ok(Self::with_modulus_unchecked(base, m.into_coeffs()))
    }

    /// Extension defined by a monic modulus the caller knows to be irreducible.
    pub fn with_modulus_unchecked(base: &PrimeField, modulus: Vec<Fp>) -> Self {
        let r = modulus.len() - 1;
        let reduction = modulus[..r]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, base.neg(c)))
            .collect();
        let order = base.modulus().pow(r as u32);
        ExtField {
            inner: Arc::new(Inner {
                base: base.clone(),
                r,
                modulus,
                reduction,
                order,
                nonresidue: OnceCell::new(),
                frob: OnceCell::new(),
            }),
        }
    }

    pub fn base(&self) -> &PrimeField {
        &self.inner.base
    }

    pub fn modulus(&self) -> &[Fp] {
        &self.inner.modulus
    }

    /// Element from coefficients (constant first), reduced modulo m.
    pub fn elem(&self, coeffs: Vec<Fp>) -> ExtElem {
        let r = self.inner.r;
        let mut c = coeffs;
        if c.len() < r {
            c.resize(r, self.inner.base.zero());
            return ExtElem(c);
        }
        self.reduce(c)
    }

    fn reduce(&self, mut c: Vec<Fp>) -> ExtElem {
        let f = &self.inner.base;
        let r = self.inner.r;
        for k in (r..c.len()).rev() {
            let top = std::mem::replace(&mut c[k], f.zero());
            if top.is_zero() {
                continue;
            }
            for (i, m) in &self.inner.reduction {
                let idx = k - r + i;
                c[idx] = f.add(&c[idx], &f.mul(&top, m));
            }
        }
        c.truncate(r);
        c.resize(r, f.zero());
        ExtElem(c)
    }

    /// Comma-separated hex coefficients, constant term first.
    pub fn to_text(&self, a: &ExtElem) -> String {
        a.0.iter().map(|c| c.to_hex()).collect::<Vec<_>>().join(",")
    }

    pub fn from_text(&self, s: &str) -> Result<ExtElem> {
        let parts: Vec<&str> = s.trim().split(',').collect();
        if parts.len() != self.inner.r {
            return Err(Error::Parse(format!(
                "expected {} coefficients, found {}",
                self.inner.r,
                parts.len()
            )));
        }
        let coeffs = parts
            .iter()
            .map(|p| self.inner.base.from_hex(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExtElem(coeffs))
    }

    fn frob_table(&self) -> &Vec<ExtElem> {
        self.inner.frob.get_or_init(|| {
            let xp = self.pow(&self.basis(1), self.inner.base.modulus());
            let mut table = vec![self.one()];
            for i in 1..self.inner.r {
                let next = self.mul(&table[i - 1], &xp);
                table.push(next);
            }
            table
        })
    }
}

/// Inverse in F_p[x]/(m) by the extended Euclidean algorithm.
fn poly_inverse(f: &PrimeField, a: &[Fp], m: &[Fp]) -> Option<Vec<Fp>> {
    let ring = PolyRing::new(f.clone());
    let a = ring.poly(a.to_vec());
    let m = ring.poly(m.to_vec());
    ring.inv_mod(&a, &m).ok().map(Poly::into_coeffs)
}

fn smallest_irreducible(base: &PrimeField, r: usize) -> Vec<Fp> {
    let ring = PolyRing::new(base.clone());
    for bound in 1u64.. {
        if let Some(p) = base.modulus_u64() {
            assert!(bound <= p, "no irreducible polynomial of degree {}", r);
        }
        // Tuples (c_{r-1}, ..., c_0) in [0, bound)^r touching the bound.
        let mut digits = vec![0u64; r];
        'tuples: loop {
            if digits.iter().any(|&d| d + 1 == bound) && digits[r - 1] != 0 {
                let mut coeffs: Vec<Fp> = digits.iter().rev().map(|&d| base.elem_u64(d)).collect();
                coeffs.push(base.one());
                if ring.is_irreducible(&ring.poly(coeffs.clone())) {
                    return coeffs;
                }
            }
            let mut i = r;
            loop {
                if i == 0 {
                    break 'tuples;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < bound {
                    continue 'tuples;
                }
                digits[i] = 0;
            }
        }
    }
    unreachable!()
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtElem(vec![self.inner.base.zero(); self.inner.r])
    }

    fn one(&self) -> ExtElem {
        let mut c = vec![self.inner.base.zero(); self.inner.r];
        c[0] = self.inner.base.one();
        ExtElem(c)
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.0.iter().all(Fp::is_zero)
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.inner.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| f.add(x, y)).collect())
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.inner.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| f.sub(x, y)).collect())
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        let f = &self.inner.base;
        ExtElem(a.0.iter().map(|x| f.neg(x)).collect())
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.inner.base;
        let r = self.inner.r;
        let mut prod = vec![f.zero(); 2 * r - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
            }
        }
        self.reduce(prod)
    }

    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        tick();
        poly_inverse(&self.inner.base, &a.0, &self.inner.modulus).map(|c| self.elem(c))
    }

    fn from_i64(&self, n: i64) -> ExtElem {
        self.from_prime(&self.inner.base.from_i64(n))
    }

    fn from_prime(&self, a: &Fp) -> ExtElem {
        let mut c = vec![self.inner.base.zero(); self.inner.r];
        c[0] = a.clone();
        ExtElem(c)
    }

    fn as_prime(&self, a: &ExtElem) -> Option<Fp> {
        if a.0[1..].iter().all(Fp::is_zero) {
            Some(a.0[0].clone())
        } else {
            None
        }
    }

    fn prime_field(&self) -> &PrimeField {
        &self.inner.base
    }

    fn degree(&self) -> usize {
        self.inner.r
    }

    fn order(&self) -> &BigUint {
        &self.inner.order
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        ExtElem((0..self.inner.r).map(|_| self.inner.base.random(rng)).collect())
    }

    fn sort_key(&self, a: &ExtElem) -> BigUint {
        let p = self.inner.base.modulus();
        a.0.iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| acc * p + c.to_biguint())
    }

    fn nonresidue(&self) -> ExtElem {
        self.inner.nonresidue.get_or_init(|| find_nonresidue(self)).clone()
    }

    fn basis(&self, i: usize) -> ExtElem {
        let mut c = vec![self.inner.base.zero(); self.inner.r.max(i + 1)];
        c[i] = self.inner.base.one();
        self.elem(c)
    }

    fn frobenius(&self, a: &ExtElem) -> ExtElem {
        let f = &self.inner.base;
        let table = self.frob_table();
        let mut acc = self.zero();
        for (c, t) in a.0.iter().zip(table) {
            if c.is_zero() {
                continue;
            }
            let term = ExtElem(t.0.iter().map(|x| f.mul(x, c)).collect());
            acc = self.add(&acc, &term);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f7() -> PrimeField {
        PrimeField::from_u64(7).unwrap()
    }

    #[test]
    fn x_squared_with_modulus_x2_plus_1() {
        let f = f7();
        let e = ExtField::with_modulus(&f, vec![f.one(), f.zero(), f.one()]).unwrap();
        let x = e.basis(1);
        assert_eq!(e.mul(&x, &x), e.from_i64(6));
    }

    #[test]
    fn deterministic_modulus_over_f7() {
        let f = f7();
        let e = ExtField::new(&f, 2).unwrap();
        // x^2 + 1 is the first irreducible in the search order (bound 2).
        assert_eq!(e.modulus(), &[f.one(), f.zero(), f.one()]);
        assert!(ExtField::with_modulus(&f, vec![f.from_i64(-1), f.zero(), f.one()]).is_err());
    }

    #[test]
    fn multiplicative_group_of_f49() {
        let f = f7();
        let e = ExtField::new(&f, 2).unwrap();
        let mut count = 0;
        for a in 0..7 {
            for b in 0..7 {
                let z = e.elem(vec![f.elem_u64(a), f.elem_u64(b)]);
                if e.is_zero(&z) {
                    continue;
                }
                count += 1;
                assert!(e.is_one(&e.pow_u64(&z, 48)));
                assert!(e.is_one(&e.mul(&z, &e.inv(&z).unwrap())));
            }
        }
        assert_eq!(count, 48);
    }

    #[test]
    fn frobenius_is_automorphism() {
        let f = PrimeField::from_u64(1_000_003).unwrap();
        let e = ExtField::new(&f, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let a = e.random(&mut rng);
            let b = e.random(&mut rng);
            assert_eq!(e.frobenius(&e.add(&a, &b)), e.add(&e.frobenius(&a), &e.frobenius(&b)));
            assert_eq!(e.frobenius(&e.mul(&a, &b)), e.mul(&e.frobenius(&a), &e.frobenius(&b)));
            assert_eq!(e.frobenius(&a), e.pow(&a, f.modulus()));
            let mut c = a.clone();
            for _ in 0..5 {
                c = e.frobenius(&c);
            }
            assert_eq!(c, a);
        }
        let c = e.from_i64(12345);
        assert_eq!(e.frobenius(&c), c);
    }

    #[test]
    fn sqrt_in_even_extension() {
        let f = f7();
        let e = ExtField::new(&f, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // every element of F_7 is a square in F_49
        for a in 0..7 {
            assert!(e.sqrt(&e.from_i64(a)).is_some());
        }
        for _ in 0..30 {
            let a = e.random(&mut rng);
            match e.sqrt(&a) {
                Some(s) => assert_eq!(e.square(&s), a),
                None => assert!(!e.is_square(&a)),
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let f = f7();
        let e = ExtField::new(&f, 3).unwrap();
        let a = e.elem(vec![f.elem_u64(1), f.elem_u64(0), f.elem_u64(6)]);
        assert_eq!(e.to_text(&a), "1,0,6");
        assert_eq!(e.from_text("1,0,6").unwrap(), a);
        assert!(e.from_text("1,0").is_err());
    }
}
