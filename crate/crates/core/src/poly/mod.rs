//! Dense univariate polynomials over any [`Field`].

mod factor;
mod quotient;

pub use quotient::{QuotientCurve, QuotientRing, SymPoint};

use crate::error::{Error, Result};
use crate::ff::Field;
use num_bigint::BigUint;
use std::fmt;

/// Operand length from which multiplication switches to Karatsuba.
///
/// Tuning knob: schoolbook wins below a few dozen coefficients for the field
/// sizes this crate targets.
pub const KARATSUBA_THRESHOLD: usize = 32;

/// Coefficients constant term first, trailing zeros stripped.
pub struct Poly<F: Field> {
    c: Vec<F::Elem>,
}

impl<F: Field> Clone for Poly<F> {
    fn clone(&self) -> Self {
        Poly { c: self.c.clone() }
    }
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

impl<F: Field> Poly<F> {
    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> Option<&F::Elem> {
        self.c.get(i)
    }

    pub fn leading(&self) -> &F::Elem {
        self.c.last().expect("zero polynomial has no leading coefficient")
    }
}

/// Polynomial arithmetic over a fixed coefficient field.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn poly(&self, mut c: Vec<F::Elem>) -> Poly<F> {
        while c.last().is_some_and(|x| self.field.is_zero(x)) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero(&self) -> Poly<F> {
        Poly { c: Vec::new() }
    }

    pub fn one(&self) -> Poly<F> {
        self.constant(self.field.one())
    }

    pub fn x(&self) -> Poly<F> {
        self.monomial(self.field.one(), 1)
    }

    pub fn constant(&self, a: F::Elem) -> Poly<F> {
        self.poly(vec![a])
    }

    pub fn monomial(&self, a: F::Elem, n: usize) -> Poly<F> {
        let mut c = vec![self.field.zero(); n + 1];
        c[n] = a;
        self.poly(c)
    }

    /// X - a.
    pub fn x_minus(&self, a: &F::Elem) -> Poly<F> {
        Poly { c: vec![self.field.neg(a), self.field.one()] }
    }

    /// Π (X - a_i).
    pub fn from_roots(&self, roots: &[F::Elem]) -> Poly<F> {
        let f = &self.field;
        let mut c = vec![f.one()];
        for a in roots {
            let mut next = vec![f.zero(); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i + 1] = f.add(&next[i + 1], ci);
                next[i] = f.sub(&next[i], &f.mul(ci, a));
            }
            c = next;
        }
        self.poly(c)
    }

    pub fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let n = a.c.len().max(b.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (a.c.get(i), b.c.get(i)) {
                (Some(x), Some(y)) => f.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            });
        }
        self.poly(c)
    }

    pub fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Poly<F>) -> Poly<F> {
        Poly { c: a.c.iter().map(|x| self.field.neg(x)).collect() }
    }

    pub fn scale(&self, a: &Poly<F>, s: &F::Elem) -> Poly<F> {
        self.poly(a.c.iter().map(|x| self.field.mul(x, s)).collect())
    }

    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        self.poly(self.mul_slices(&a.c, &b.c))
    }

    pub fn square(&self, a: &Poly<F>) -> Poly<F> {
        self.mul(a, a)
    }

    fn mul_slices(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
            return self.schoolbook(a, b);
        }
        let f = &self.field;
        let h = a.len().max(b.len()) / 2;
        let (a0, a1) = a.split_at(h.min(a.len()));
        let (b0, b1) = b.split_at(h.min(b.len()));
        let z0 = self.mul_slices(a0, b0);
        let z2 = self.mul_slices(a1, b1);
        let sa = self.add_slices(a0, a1);
        let sb = self.add_slices(b0, b1);
        let mut z1 = self.mul_slices(&sa, &sb);
        for (i, x) in z0.iter().enumerate() {
            z1[i] = f.sub(&z1[i], x);
        }
        for (i, x) in z2.iter().enumerate() {
            z1[i] = f.sub(&z1[i], x);
        }
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in z0.into_iter().enumerate() {
            out[i] = f.add(&out[i], &x);
        }
        for (i, x) in z1.into_iter().enumerate() {
            if i + h < out.len() {
                out[i + h] = f.add(&out[i + h], &x);
            }
        }
        for (i, x) in z2.into_iter().enumerate() {
            out[i + 2 * h] = f.add(&out[i + 2 * h], &x);
        }
        out
    }

    fn add_slices(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        (0..a.len().max(b.len()))
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => f.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect()
    }

    fn schoolbook(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        out
    }

    /// Quotient and remainder; the remainder has degree below the divisor's.
    pub fn divrem(&self, a: &Poly<F>, b: &Poly<F>) -> Result<(Poly<F>, Poly<F>)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        if a.degree() < b.degree() {
            return Ok((self.zero(), a.clone()));
        }
        let lead_inv = f.inv(b.leading()).ok_or(Error::DivisionByZero)?;
        let db = b.c.len() - 1;
        let mut r = a.c.clone();
        let mut q = vec![f.zero(); a.c.len() - db];
        for k in (0..q.len()).rev() {
            let top = &r[k + db];
            if f.is_zero(top) {
                continue;
            }
            let coef = f.mul(top, &lead_inv);
            for (i, bi) in b.c.iter().enumerate() {
                r[k + i] = f.sub(&r[k + i], &f.mul(&coef, bi));
            }
            q[k] = coef;
        }
        r.truncate(db);
        Ok((self.poly(q), self.poly(r)))
    }

    pub fn rem(&self, a: &Poly<F>, m: &Poly<F>) -> Poly<F> {
        if a.degree() < m.degree() {
            return a.clone();
        }
        self.divrem(a, m).expect("nonzero modulus").1
    }

    /// Division that must be exact.
    pub fn div_exact(&self, a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>> {
        let (q, r) = self.divrem(a, b)?;
        if !r.is_zero() {
            return Err(Error::Domain("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    pub fn monic(&self, a: &Poly<F>) -> Poly<F> {
        if a.is_zero() {
            return a.clone();
        }
        let inv = self.field.inv(a.leading()).unwrap();
        self.scale(a, &inv)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Inverse of `a` modulo `m`, or the nontrivial monic gcd that blocks it.
    pub fn inv_mod(&self, a: &Poly<F>, m: &Poly<F>) -> std::result::Result<Poly<F>, Poly<F>> {
        let (mut r0, mut r1) = (m.clone(), self.rem(a, m));
        let (mut s0, mut s1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1).unwrap();
            let s = self.sub(&s0, &self.mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != 0 {
            return Err(self.monic(&r0));
        }
        let c = self.field.inv(&r0.c[0]).unwrap();
        Ok(self.rem(&self.scale(&s0, &c), m))
    }

    pub fn eval(&self, a: &Poly<F>, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in a.c.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, a: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        self.poly(
            a.c.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn mulmod(&self, a: &Poly<F>, b: &Poly<F>, m: &Poly<F>) -> Poly<F> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &Poly<F>, e: &BigUint, m: &Poly<F>) -> Poly<F> {
        let base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &base, m);
            }
        }
        acc
    }

    /// Substitute elements of a bigger field for the coefficients.
    pub fn map_into<G: Field>(&self, a: &Poly<F>, target: &PolyRing<G>, embed: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        target.poly(a.c.iter().map(embed).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::PrimeField;
    use proptest::prelude::*;

    fn ring7() -> PolyRing<PrimeField> {
        PolyRing::new(PrimeField::from_u64(7).unwrap())
    }

    fn p(r: &PolyRing<PrimeField>, c: &[i64]) -> Poly<PrimeField> {
        r.poly(c.iter().map(|&x| r.field().from_i64(x)).collect())
    }

    #[test]
    fn gcd_and_divrem_examples() {
        let r = ring7();
        assert_eq!(r.gcd(&p(&r, &[-1, 0, 1]), &p(&r, &[-1, 1])), p(&r, &[-1, 1]));
        let (q, rem) = r.divrem(&p(&r, &[0, 0, 0, 1]), &p(&r, &[-1, 1])).unwrap();
        assert_eq!(q, p(&r, &[1, 1, 1]));
        assert_eq!(rem, p(&r, &[1]));
        assert_eq!(r.divrem(&q, &r.zero()), Err(Error::DivisionByZero));
        assert!(r.gcd(&r.zero(), &r.zero()).is_zero());
    }

    #[test]
    fn inverse_mod_reports_factor() {
        let r = ring7();
        let m = p(&r, &[-1, 0, 1]);
        let a = p(&r, &[3, 1]);
        let inv = r.inv_mod(&a, &m).unwrap();
        assert_eq!(r.mulmod(&a, &inv, &m), r.one());
        assert_eq!(r.inv_mod(&p(&r, &[-1, 1]), &m), Err(p(&r, &[-1, 1])));
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(a in prop::collection::vec(0i64..1009, 0..80), b in prop::collection::vec(0i64..1009, 1..70)) {
            let r = PolyRing::new(PrimeField::from_u64(1009).unwrap());
            let a = r.poly(a.iter().map(|&x| r.field().from_i64(x)).collect());
            let b = r.poly(b.iter().map(|&x| r.field().from_i64(x)).collect());
            prop_assume!(!b.is_zero());
            let (q, rem) = r.divrem(&a, &b).unwrap();
            prop_assert!(rem.degree() < b.degree());
            prop_assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
        }

        #[test]
        fn karatsuba_matches_schoolbook(a in prop::collection::vec(0i64..101, 0..120), b in prop::collection::vec(0i64..101, 0..120)) {
            let r = PolyRing::new(PrimeField::from_u64(101).unwrap());
            let a: Vec<_> = a.iter().map(|&x| r.field().from_i64(x)).collect();
            let b: Vec<_> = b.iter().map(|&x| r.field().from_i64(x)).collect();
            let fast = r.mul(&r.poly(a.clone()), &r.poly(b.clone()));
            let slow = if a.is_empty() || b.is_empty() { r.zero() } else { r.poly(r.schoolbook(&a, &b)) };
            prop_assert_eq!(fast, slow);
        }
    }
}
