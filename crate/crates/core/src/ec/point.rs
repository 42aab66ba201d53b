use super::{Curve, XPoint};
use crate::ff::Field;
use num_bigint::BigUint;
use rand::Rng;

/// Affine point or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point<E> {
    Infinity,
    Affine(E, E),
}

impl<E: Clone> Point<E> {
    pub fn x(&self) -> Option<&E> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(x),
        }
    }
}

impl<F: Field> Curve<F> {
    pub fn is_on_curve(&self, p: &Point<F::Elem>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => self.field().square(y) == self.rhs(x),
        }
    }

    pub fn neg(&self, p: &Point<F::Elem>) -> Point<F::Elem> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), self.field().neg(y)),
        }
    }

    pub fn double(&self, p: &Point<F::Elem>) -> Point<F::Elem> {
        let f = self.field();
        let (x, y) = match p {
            Point::Infinity => return Point::Infinity,
            Point::Affine(x, y) => (x, y),
        };
        if f.is_zero(y) {
            return Point::Infinity;
        }
        let (a2, a4, _) = self.long_coeffs();
        let num = f.add(
            &f.add(&f.mul(&f.from_i64(3), &f.square(x)), &f.mul(&f.from_i64(2), &f.mul(&a2, x))),
            &a4,
        );
        let m = f.div(&num, &f.double(y)).unwrap();
        self.chord(x, y, x, &m, &a2)
    }

    pub fn add(&self, p: &Point<F::Elem>, q: &Point<F::Elem>) -> Point<F::Elem> {
        let f = self.field();
        let ((x1, y1), (x2, y2)) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => ((x1, y1), (x2, y2)),
        };
        if x1 == x2 {
            if y1 == y2 {
                return self.double(p);
            }
            return Point::Infinity;
        }
        let m = f.div(&f.sub(y2, y1), &f.sub(x2, x1)).unwrap();
        let (a2, _, _) = self.long_coeffs();
        self.chord(x1, y1, x2, &m, &a2)
    }

    fn chord(&self, x1: &F::Elem, y1: &F::Elem, x2: &F::Elem, m: &F::Elem, a2: &F::Elem) -> Point<F::Elem> {
        let f = self.field();
        let x3 = f.sub(&f.sub(&f.sub(&f.square(m), a2), x1), x2);
        let y3 = f.sub(&f.mul(m, &f.sub(x1, &x3)), y1);
        Point::Affine(x3, y3)
    }

    pub fn mul(&self, p: &Point<F::Elem>, n: &BigUint) -> Point<F::Elem> {
        let mut acc = Point::Infinity;
        for i in (0..n.bits()).rev() {
            acc = self.double(&acc);
            if n.bit(i) {
                acc = self.add(&acc, p);
            }
        }
        acc
    }

    pub fn mul_u64(&self, p: &Point<F::Elem>, n: u64) -> Point<F::Elem> {
        self.mul(p, &BigUint::from(n))
    }

    /// Points with the given x-coordinate, smaller y first.
    pub fn lift_x(&self, x: &F::Elem) -> Vec<Point<F::Elem>> {
        self.field()
            .sqrts(&self.rhs(x))
            .into_iter()
            .map(|y| Point::Affine(x.clone(), y))
            .collect()
    }

    /// Uniform x with a square right-hand side, then a random square root.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point<F::Elem> {
        let x = self.random_x(rng);
        let mut pts = self.lift_x(&x);
        if pts.len() == 2 && rng.gen::<bool>() {
            pts.swap(0, 1);
        }
        pts.swap_remove(0)
    }

    pub fn to_xpoint(&self, p: &Point<F::Elem>) -> XPoint<F::Elem> {
        let f = self.field();
        match p {
            Point::Infinity => XPoint { x: f.one(), z: f.zero() },
            Point::Affine(x, _) => XPoint { x: x.clone(), z: f.one() },
        }
    }

    /// Affine x of a projective point (None at infinity).
    pub fn normalize(&self, p: &XPoint<F::Elem>) -> Option<F::Elem> {
        self.field().div(&p.x, &p.z)
    }
}
