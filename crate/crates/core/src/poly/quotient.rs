//! Points of E over F[x, y]/(y^2 - f_E(x), K(x)).
//!
//! A symbolic point (a(x), b(x)·y) stands for the image of the generic point
//! (x, y) under some endomorphism, evaluated simultaneously at every root of K.

use super::{Poly, PolyRing};
use crate::ec::xonly::Ring;
use crate::ff::Field;
use num_bigint::BigUint;

/// The ring F[x]/(K).
#[derive(Clone, Debug)]
pub struct QuotientRing<F: Field> {
    ring: PolyRing<F>,
    modulus: Poly<F>,
}

impl<F: Field> QuotientRing<F> {
    pub fn new(ring: PolyRing<F>, modulus: Poly<F>) -> Self {
        let modulus = ring.monic(&modulus);
        QuotientRing { ring, modulus }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.modulus
    }

    pub fn reduce(&self, a: &Poly<F>) -> Poly<F> {
        self.ring.rem(a, &self.modulus)
    }

    pub fn x(&self) -> Poly<F> {
        self.reduce(&self.ring.x())
    }

    pub fn pow(&self, a: &Poly<F>, e: &BigUint) -> Poly<F> {
        self.ring.powmod(a, e, &self.modulus)
    }

    /// Inverse, or the nontrivial factor of K that prevents it.
    pub fn inv(&self, a: &Poly<F>) -> Result<Poly<F>, Poly<F>> {
        self.ring.inv_mod(a, &self.modulus)
    }
}

impl<F: Field> Ring for QuotientRing<F> {
    type E = Poly<F>;

    fn zero(&self) -> Poly<F> {
        self.ring.zero()
    }

    fn one(&self) -> Poly<F> {
        self.reduce(&self.ring.one())
    }

    fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.ring.add(a, b)
    }

    fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.ring.sub(a, b)
    }

    fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.ring.mulmod(a, b, &self.modulus)
    }

    fn is_zero(&self, a: &Poly<F>) -> bool {
        a.is_zero()
    }

    fn from_i64(&self, n: i64) -> Poly<F> {
        self.reduce(&self.ring.constant(self.ring.field().from_i64(n)))
    }
}

/// A point (a(x), b(x)·y) of E over the quotient ring, or infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum SymPoint<F: Field> {
    Infinity,
    Affine { a: Poly<F>, b: Poly<F> },
}

/// y^2 = x^3 + a2 x^2 + a4 x + a6 over F[x]/(K).
#[derive(Clone, Debug)]
pub struct QuotientCurve<F: Field> {
    q: QuotientRing<F>,
    a2: F::Elem,
    a4: F::Elem,
    f_e: Poly<F>,
}

impl<F: Field> QuotientCurve<F> {
    pub fn new(ring: PolyRing<F>, k: Poly<F>, a2: F::Elem, a4: F::Elem, a6: F::Elem) -> Self {
        let fl = ring.field().clone();
        let rhs = ring.poly(vec![a6, a4.clone(), a2.clone(), fl.one()]);
        let q = QuotientRing::new(ring, k);
        let f_e = q.reduce(&rhs);
        QuotientCurve { q, a2, a4, f_e }
    }

    pub fn ring(&self) -> &QuotientRing<F> {
        &self.q
    }

    /// The generic point (x, y).
    pub fn generic_point(&self) -> SymPoint<F> {
        SymPoint::Affine { a: self.q.x(), b: self.q.one() }
    }

    /// Frobenius image (x^q, y^q) = (x^q, f^((q-1)/2)·y).
    pub fn frobenius(&self) -> SymPoint<F> {
        let order = self.q.ring.field().order().clone();
        let a = self.q.pow(&self.q.x(), &order);
        let b = self.q.pow(&self.f_e, &((order - 1u32) >> 1));
        SymPoint::Affine { a, b }
    }

    pub fn neg(&self, p: &SymPoint<F>) -> SymPoint<F> {
        match p {
            SymPoint::Infinity => SymPoint::Infinity,
            SymPoint::Affine { a, b } => SymPoint::Affine { a: a.clone(), b: self.q.ring.neg(b) },
        }
    }

    fn gcd_with_k(&self, a: &Poly<F>) -> Poly<F> {
        self.q.ring.gcd(a, self.q.modulus())
    }

    /// Doubling; Err carries a nontrivial factor of K.
    pub fn double(&self, p: &SymPoint<F>) -> Result<SymPoint<F>, Poly<F>> {
        let (a, b) = match p {
            SymPoint::Infinity => return Ok(SymPoint::Infinity),
            SymPoint::Affine { a, b } => (a, b),
        };
        let r = &self.q;
        if b.is_zero() {
            return Ok(SymPoint::Infinity);
        }
        // slope m = (3a^2 + 2 a2 a + a4) / (2 b y) = y · (3a^2 + 2 a2 a + a4) / (2 b f)
        let num = r.add(
            &r.add(&r.mul(&r.from_i64(3), &r.mul(a, a)), &r.mul(&r.from_i64(2), &r.q_scale(a, &self.a2))),
            &r.constant(&self.a4),
        );
        let den = r.mul(&r.from_i64(2), &r.mul(b, &self.f_e));
        let inv = r.inv(&den)?;
        let m = r.mul(&num, &inv);
        self.finish(a, b, a, &m)
    }

    /// Addition; Err carries a nontrivial factor of K.
    pub fn add(&self, p: &SymPoint<F>, q: &SymPoint<F>) -> Result<SymPoint<F>, Poly<F>> {
        let (a1, b1, a2, b2) = match (p, q) {
            (SymPoint::Infinity, _) => return Ok(q.clone()),
            (_, SymPoint::Infinity) => return Ok(p.clone()),
            (SymPoint::Affine { a: a1, b: b1 }, SymPoint::Affine { a: a2, b: b2 }) => (a1, b1, a2, b2),
        };
        let r = &self.q;
        let dx = r.sub(a2, a1);
        if dx.is_zero() {
            let sum = r.add(b1, b2);
            if sum.is_zero() {
                return Ok(SymPoint::Infinity);
            }
            let diff = r.sub(b1, b2);
            if diff.is_zero() {
                return self.double(p);
            }
            // P = Q at some roots of K and P = -Q at others
            return Err(self.gcd_with_k(&diff));
        }
        let inv = r.inv(&dx)?;
        // slope (b2 - b1) y / (a2 - a1) = m' y
        let m = r.mul(&r.sub(b2, b1), &inv);
        self.finish(a1, b1, a2, &m)
    }

    /// Given slope m·y, build the third point from P1 and P2.
    fn finish(&self, a1: &Poly<F>, b1: &Poly<F>, a2: &Poly<F>, m: &Poly<F>) -> Result<SymPoint<F>, Poly<F>> {
        let r = &self.q;
        // x3 = m^2 f - a2 - x1 - x2 ;  y3 = m y (x1 - x3) - b1 y
        let x3 = r.sub(
            &r.sub(&r.sub(&r.mul(&r.mul(m, m), &self.f_e), &r.constant(&self.a2)), a1),
            a2,
        );
        let y3 = r.sub(&r.mul(m, &r.sub(a1, &x3)), b1);
        Ok(SymPoint::Affine { a: x3, b: y3 })
    }

    /// [n]P by double-and-add.
    pub fn scalar_mul(&self, p: &SymPoint<F>, n: &BigUint) -> Result<SymPoint<F>, Poly<F>> {
        let mut acc = SymPoint::Infinity;
        for i in (0..n.bits()).rev() {
            acc = self.double(&acc)?;
            if n.bit(i) {
                acc = self.add(&acc, p)?;
            }
        }
        Ok(acc)
    }
}

impl<F: Field> QuotientRing<F> {
    fn constant(&self, c: &F::Elem) -> Poly<F> {
        self.reduce(&self.ring.constant(c.clone()))
    }

    fn q_scale(&self, a: &Poly<F>, c: &F::Elem) -> Poly<F> {
        self.ring.scale(a, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::PrimeField;

    #[test]
    fn identity_and_zero_multiples() {
        let f = PrimeField::from_u64(7).unwrap();
        let ring = PolyRing::new(f.clone());
        // K = x - 3 : the point (3, y) on y^2 = x^3 + 2x + 3 has y^2 = 36 ≡ 1
        let k = ring.x_minus(&f.elem_u64(3));
        let c = QuotientCurve::new(ring, k, f.zero(), f.elem_u64(2), f.elem_u64(3));
        let g = c.generic_point();
        assert_eq!(c.scalar_mul(&g, &BigUint::from(1u32)).unwrap(), g);
        assert_eq!(c.scalar_mul(&g, &BigUint::from(0u32)).unwrap(), SymPoint::Infinity);
        // order of (3, ±1) divides 6
        assert_eq!(c.scalar_mul(&g, &BigUint::from(6u32)).unwrap(), SymPoint::Infinity);
    }
}
