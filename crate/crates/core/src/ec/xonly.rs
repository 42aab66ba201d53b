//! x-only arithmetic on y^2 = x^3 + a2 x^2 + a4 x + a6, generic over the
//! coefficient ring so the same ladder runs over fields and over F[x]/(K).

use crate::ff::Field;
use num_bigint::BigUint;

/// Minimal commutative-ring interface used by the ladder.
pub trait Ring {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn from_i64(&self, n: i64) -> Self::E;
}

/// Adapter exposing a field as a [`Ring`].
#[derive(Clone, Debug)]
pub struct OverField<F: Field>(pub F);

impl<F: Field> Ring for OverField<F> {
    type E = F::Elem;
    fn zero(&self) -> F::Elem {
        self.0.zero()
    }
    fn one(&self) -> F::Elem {
        self.0.one()
    }
    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.add(a, b)
    }
    fn sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.mul(a, b)
    }
    fn is_zero(&self, a: &F::Elem) -> bool {
        self.0.is_zero(a)
    }
    fn from_i64(&self, n: i64) -> F::Elem {
        self.0.from_i64(n)
    }
}

/// Projective x-coordinate (X : Z); Z = 0 is the point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct XPoint<E> {
    pub x: E,
    pub z: E,
}

/// Curve constants for the x-only formulas.
#[derive(Clone, Debug)]
pub struct XArith<R: Ring> {
    pub ring: R,
    a2: R::E,
    a4: R::E,
    a6: R::E,
    two_a4: R::E,
    eight_a6: R::E,
    four_a2: R::E,
    four_a6: R::E,
    c4: R::E,
    /// (A + 2) / 4 on Montgomery curves.
    a24: Option<R::E>,
}

impl<R: Ring> XArith<R> {
    pub fn new(ring: R, a2: R::E, a4: R::E, a6: R::E, a24: Option<R::E>) -> Self {
        let two_a4 = ring.mul(&ring.from_i64(2), &a4);
        let eight_a6 = ring.mul(&ring.from_i64(8), &a6);
        let four_a2 = ring.mul(&ring.from_i64(4), &a2);
        let four_a6 = ring.mul(&ring.from_i64(4), &a6);
        let c4 = ring.sub(&ring.mul(&a4, &a4), &ring.mul(&four_a2, &a6));
        XArith { ring, a2, a4, a6, two_a4, eight_a6, four_a2, four_a6, c4, a24 }
    }

    pub fn infinity(&self) -> XPoint<R::E> {
        XPoint { x: self.ring.one(), z: self.ring.zero() }
    }

    pub fn affine(&self, x: R::E) -> XPoint<R::E> {
        XPoint { x, z: self.ring.one() }
    }

    pub fn is_infinity(&self, p: &XPoint<R::E>) -> bool {
        self.ring.is_zero(&p.z)
    }

    pub fn xdbl(&self, p: &XPoint<R::E>) -> XPoint<R::E> {
        let r = &self.ring;
        if let Some(a24) = &self.a24 {
            let s = r.add(&p.x, &p.z);
            let d = r.sub(&p.x, &p.z);
            let t0 = r.mul(&s, &s);
            let t1 = r.mul(&d, &d);
            let t2 = r.sub(&t0, &t1);
            let x = r.mul(&t0, &t1);
            let z = r.mul(&t2, &r.add(&t1, &r.mul(a24, &t2)));
            return XPoint { x, z };
        }
        let x2 = r.mul(&p.x, &p.x);
        let z2 = r.mul(&p.z, &p.z);
        let xz = r.mul(&p.x, &p.z);
        let z4 = r.mul(&z2, &z2);
        let x2z2 = r.mul(&x2, &z2);
        let xz3 = r.mul(&xz, &z2);
        let num = r.add(
            &r.sub(&r.sub(&r.mul(&x2, &x2), &r.mul(&self.two_a4, &x2z2)), &r.mul(&self.eight_a6, &xz3)),
            &r.mul(&self.c4, &z4),
        );
        // 4 Z (X^3 + a2 X^2 Z + a4 X Z^2 + a6 Z^3)
        let inner = r.add(
            &r.add(&r.mul(&x2, &xz), &r.mul(&self.a2, &r.mul(&x2, &z2))),
            &r.add(&r.mul(&self.a4, &xz3), &r.mul(&self.a6, &r.mul(&z2, &z2))),
        );
        let den = r.mul(&r.from_i64(4), &inner);
        XPoint { x: num, z: den }
    }

    /// x(P + Q) from x(P), x(Q) and x(P - Q).
    pub fn xadd(&self, p: &XPoint<R::E>, q: &XPoint<R::E>, d: &XPoint<R::E>) -> XPoint<R::E> {
        let r = &self.ring;
        if self.a24.is_some() && !r.is_zero(&d.x) {
            let u = r.mul(&r.sub(&p.x, &p.z), &r.add(&q.x, &q.z));
            let v = r.mul(&r.add(&p.x, &p.z), &r.sub(&q.x, &q.z));
            let s = r.add(&u, &v);
            let t = r.sub(&u, &v);
            return XPoint { x: r.mul(&d.z, &r.mul(&s, &s)), z: r.mul(&d.x, &r.mul(&t, &t)) };
        }
        let t1 = r.mul(&p.x, &q.z);
        let t2 = r.mul(&q.x, &p.z);
        let t3 = r.mul(&p.x, &q.x);
        let t4 = r.mul(&p.z, &q.z);
        let num = r.add(
            &r.add(
                &r.mul(&r.from_i64(2), &r.mul(&r.add(&t1, &t2), &r.add(&t3, &r.mul(&self.a4, &t4)))),
                &r.mul(&self.four_a2, &r.mul(&t3, &t4)),
            ),
            &r.mul(&self.four_a6, &r.mul(&t4, &t4)),
        );
        let diff = r.sub(&t1, &t2);
        let den = r.mul(&diff, &diff);
        XPoint { x: r.sub(&r.mul(&num, &d.z), &r.mul(&d.x, &den)), z: r.mul(&den, &d.z) }
    }

    /// Montgomery ladder for [n]P.
    pub fn ladder(&self, p: &XPoint<R::E>, n: &BigUint) -> XPoint<R::E> {
        if n.bits() == 0 || self.is_infinity(p) {
            return self.infinity();
        }
        let mut r0 = p.clone();
        let mut r1 = self.xdbl(p);
        for i in (0..n.bits() - 1).rev() {
            if n.bit(i) {
                r0 = self.xadd(&r0, &r1, p);
                r1 = self.xdbl(&r1);
            } else {
                r1 = self.xadd(&r0, &r1, p);
                r0 = self.xdbl(&r0);
            }
        }
        r0
    }

    pub fn ladder_u64(&self, p: &XPoint<R::E>, n: u64) -> XPoint<R::E> {
        self.ladder(p, &BigUint::from(n))
    }

    /// x([i]P) for i = 1..=count, projectively.
    pub fn multiples(&self, p: &XPoint<R::E>, count: usize) -> Vec<XPoint<R::E>> {
        let mut out = Vec::with_capacity(count);
        if count == 0 {
            return out;
        }
        out.push(p.clone());
        if count == 1 {
            return out;
        }
        out.push(self.xdbl(p));
        for i in 2..count {
            let next = self.xadd(&out[i - 1], p, &out[i - 2]);
            out.push(next);
        }
        out
    }

    pub fn a2(&self) -> &R::E {
        &self.a2
    }
}
