//! Finite fields: F_p for arbitrary p and F_{p^r} built directly over it.

mod counter;
mod element;
mod ext;
mod prime;

pub use counter::{count_ops, field_ops, reset_ops};
pub use element::{AnyField, FieldElement};
pub use ext::{build_extension, ExtElem, ExtField};
pub use prime::{Fp, PrimeField};

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use std::fmt::Debug;
use std::hash::Hash;

/// Common interface of the prime field and its extensions.
///
/// Fields act as contexts: elements are plain values and every operation goes
/// through the field that owns them.
pub trait Field: Clone + Debug + Send + Sync + PartialEq {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Embed an element of the prime subfield.
    fn from_prime(&self, a: &Fp) -> Self::Elem;
    /// Return the element as a prime-field element when it lies there.
    fn as_prime(&self, a: &Self::Elem) -> Option<Fp>;
    fn prime_field(&self) -> &PrimeField;
    fn degree(&self) -> usize;
    /// Number of elements.
    fn order(&self) -> &BigUint;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Canonical integer used for deterministic ordering.
    fn sort_key(&self, a: &Self::Elem) -> BigUint;
    /// A fixed quadratic non-residue.
    fn nonresidue(&self) -> Self::Elem;
    /// The i-th power-basis element over the prime field.
    fn basis(&self, i: usize) -> Self::Elem;

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn double(&self, a: &Self::Elem) -> Self::Elem {
        self.add(a, a)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn mul_i64(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(a, &self.from_i64(n))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        self.pow(a, &BigUint::from(e))
    }

    /// Euler's criterion; zero counts as a square.
    fn is_square(&self, a: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let e = (self.order() - 1u32) >> 1;
        self.is_one(&self.pow(a, &e))
    }

    /// Square roots of `a`, smaller canonical representative first.
    fn sqrts(&self, a: &Self::Elem) -> Vec<Self::Elem> {
        if self.is_zero(a) {
            return vec![self.zero()];
        }
        match tonelli_shanks(self, a) {
            None => Vec::new(),
            Some(s) => {
                let t = self.neg(&s);
                if self.sort_key(&s) <= self.sort_key(&t) {
                    vec![s, t]
                } else {
                    vec![t, s]
                }
            }
        }
    }

    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.sqrts(a).into_iter().next()
    }

    /// The p-power Frobenius.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.prime_field().modulus())
    }

    /// Invert many elements with a single inversion.
    fn batch_inv(&self, xs: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        if xs.is_empty() {
            return Some(Vec::new());
        }
        let mut prefix = Vec::with_capacity(xs.len());
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x);
            prefix.push(acc.clone());
        }
        let mut inv = self.inv(&acc)?;
        let mut out = vec![self.zero(); xs.len()];
        for i in (0..xs.len()).rev() {
            if i == 0 {
                out[0] = inv.clone();
            } else {
                out[i] = self.mul(&inv, &prefix[i - 1]);
                inv = self.mul(&inv, &xs[i]);
            }
        }
        Some(out)
    }
}

fn tonelli_shanks<F: Field + ?Sized>(f: &F, a: &F::Elem) -> Option<F::Elem> {
    let qm1 = f.order() - 1u32;
    let s = qm1.trailing_zeros().unwrap_or(0);
    let m = &qm1 >> s;
    let mut x = f.pow(a, &((&m + 1u32) >> 1));
    let mut t = f.pow(a, &m);
    let mut c = f.pow(&f.nonresidue(), &m);
    let mut e = s;
    while !f.is_one(&t) {
        let mut i = 0;
        let mut tt = t.clone();
        while !f.is_one(&tt) {
            tt = f.square(&tt);
            i += 1;
            if i == e {
                return None;
            }
        }
        let mut b = c.clone();
        for _ in 0..(e - i - 1) {
            b = f.square(&b);
        }
        x = f.mul(&x, &b);
        c = f.square(&b);
        t = f.mul(&t, &c);
        e = i;
    }
    Some(x)
}

/// First non-residue in a fixed enumeration: small integers first, then
/// elements indexed by their base-p digits in the power basis.
pub(crate) fn find_nonresidue<F: Field>(f: &F) -> F::Elem {
    let e = (f.order() - 1u32) >> 1;
    let minus_one = f.neg(&f.one());
    if f.degree() % 2 == 1 {
        for n in 2i64.. {
            let c = f.from_i64(n);
            if f.pow(&c, &e) == minus_one {
                return c;
            }
        }
    }
    // Prime-subfield elements are all squares in even-degree extensions.
    let p = f.prime_field().modulus().clone();
    let mut k = p.clone();
    loop {
        let mut digits = Vec::new();
        let mut kk = k.clone();
        for _ in 0..f.degree() {
            digits.push(&kk % &p);
            kk /= &p;
        }
        let mut acc = f.zero();
        for (i, d) in digits.iter().enumerate() {
            let c = f.from_prime(&f.prime_field().elem(d));
            acc = f.add(&acc, &f.mul(&c, &f.basis(i)));
        }
        if !f.is_zero(&acc) && f.pow(&acc, &e) == minus_one {
            return acc;
        }
        k += BigUint::one();
    }
}
