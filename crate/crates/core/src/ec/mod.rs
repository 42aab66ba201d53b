//! Elliptic curves in Montgomery (B = 1) and short Weierstrass form.

mod count;
mod divpoly;
mod order;
mod point;
pub mod xonly;

pub use count::{check_trace, count_points_small, curve_order_ext, trace_power};
pub use divpoly::{division_polynomial, DivisionPolynomials};
pub use order::{has_exact_order, point_of_exact_order, point_order};
pub use point::Point;
pub use xonly::{OverField, XArith, XPoint};

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::{Field, Fp, PrimeField};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};

#[derive(Clone, Debug, PartialEq)]
pub enum Model<E> {
    /// y^2 = x^3 + A x^2 + x
    Montgomery { a: E },
    /// y^2 = x^3 + a x + b
    Weierstrass { a: E, b: E },
}

/// A nonsingular curve over `F`, optionally tagged with its Frobenius trace.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve<F: Field> {
    field: F,
    model: Model<F::Elem>,
    trace: Option<BigInt>,
}

impl<F: Field> Curve<F> {
    pub fn montgomery(field: &F, a: F::Elem) -> Result<Self> {
        let a2m4 = field.sub(&field.square(&a), &field.from_i64(4));
        if field.is_zero(&a2m4) {
            return Err(Error::SingularCurve);
        }
        Ok(Curve { field: field.clone(), model: Model::Montgomery { a }, trace: None })
    }

    pub fn weierstrass(field: &F, a: F::Elem, b: F::Elem) -> Result<Self> {
        let disc = field.add(
            &field.mul(&field.from_i64(4), &field.mul(&a, &field.square(&a))),
            &field.mul(&field.from_i64(27), &field.square(&b)),
        );
        if field.is_zero(&disc) {
            return Err(Error::SingularCurve);
        }
        Ok(Curve { field: field.clone(), model: Model::Weierstrass { a, b }, trace: None })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn model(&self) -> &Model<F::Elem> {
        &self.model
    }

    pub fn trace(&self) -> Option<&BigInt> {
        self.trace.as_ref()
    }

    pub fn is_montgomery(&self) -> bool {
        matches!(self.model, Model::Montgomery { .. })
    }

    /// Tag the curve with its trace, checking the Hasse bound and ordinarity.
    pub fn with_trace(mut self, t: BigInt) -> Result<Self> {
        let q = self.field.order();
        let bound = BigInt::from(arith::hasse_bound(q));
        if t.abs() > bound {
            return Err(Error::InvalidTrace(format!("|{}| exceeds the Hasse bound", t)));
        }
        let p = BigInt::from(self.field.prime_field().modulus().clone());
        if !t.gcd(&p).is_one() {
            return Err(Error::InvalidTrace(format!("trace {} is not coprime to p", t)));
        }
        self.trace = Some(t);
        Ok(self)
    }

    pub fn without_trace(mut self) -> Self {
        self.trace = None;
        self
    }

    /// (a2, a4, a6) with y^2 = x^3 + a2 x^2 + a4 x + a6.
    pub fn long_coeffs(&self) -> (F::Elem, F::Elem, F::Elem) {
        let f = &self.field;
        match &self.model {
            Model::Montgomery { a } => (a.clone(), f.one(), f.zero()),
            Model::Weierstrass { a, b } => (f.zero(), a.clone(), b.clone()),
        }
    }

    /// x^3 + a2 x^2 + a4 x + a6.
    pub fn rhs(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let (a2, a4, a6) = self.long_coeffs();
        let t = f.add(&f.mul(&f.add(x, &a2), x), &a4);
        f.add(&f.mul(&t, x), &a6)
    }

    pub fn j_invariant(&self) -> F::Elem {
        let f = &self.field;
        match &self.model {
            Model::Montgomery { a } => {
                let a2 = f.square(a);
                let t = f.sub(&a2, &f.from_i64(3));
                let num = f.mul(&f.from_i64(256), &f.mul(&t, &f.square(&t)));
                f.div(&num, &f.sub(&a2, &f.from_i64(4))).expect("nonsingular")
            }
            Model::Weierstrass { a, b } => {
                let a3 = f.mul(&f.from_i64(4), &f.mul(a, &f.square(a)));
                let den = f.add(&a3, &f.mul(&f.from_i64(27), &f.square(b)));
                f.div(&f.mul(&f.from_i64(1728), &a3), &den).expect("nonsingular")
            }
        }
    }

    /// An isomorphic short Weierstrass model.
    pub fn to_weierstrass(&self) -> Curve<F> {
        let f = &self.field;
        match &self.model {
            Model::Weierstrass { .. } => self.clone(),
            Model::Montgomery { a } => {
                // x = u - A/3 : a = 1 - A^2/3, b = A(2A^2 - 9)/27
                let three_inv = f.inv(&f.from_i64(3)).unwrap();
                let a2 = f.square(a);
                let wa = f.sub(&f.one(), &f.mul(&a2, &three_inv));
                let wb = f.mul(
                    &f.mul(a, &f.sub(&f.mul(&f.from_i64(2), &a2), &f.from_i64(9))),
                    &f.inv(&f.from_i64(27)).unwrap(),
                );
                Curve { field: f.clone(), model: Model::Weierstrass { a: wa, b: wb }, trace: self.trace.clone() }
            }
        }
    }

    /// An isomorphic Montgomery model with B = 1, if one exists over F.
    ///
    /// Candidates are tried in a fixed order: rational roots α of the cubic by
    /// canonical key, then both square roots s of 3α^2 + a, smaller first.
    pub fn to_montgomery<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Option<Curve<F>> {
        let f = &self.field;
        let (a, b) = match &self.model {
            Model::Montgomery { .. } => return Some(self.clone()),
            Model::Weierstrass { a, b } => (a.clone(), b.clone()),
        };
        let ring = crate::poly::PolyRing::new(f.clone());
        let cubic = ring.poly(vec![b, a.clone(), f.zero(), f.one()]);
        for alpha in ring.roots(&cubic, rng) {
            let v = f.add(&f.mul(&f.from_i64(3), &f.square(&alpha)), &a);
            for s in f.sqrts(&v) {
                if f.is_zero(&s) || !f.is_square(&s) {
                    continue;
                }
                let big_a = f.div(&f.mul(&f.from_i64(3), &alpha), &s).unwrap();
                if let Ok(c) = Curve::montgomery(f, big_a) {
                    return Some(Curve { trace: self.trace.clone(), ..c });
                }
            }
        }
        None
    }

    /// The quadratic twist by the field's fixed non-residue; the trace is negated.
    pub fn quadratic_twist<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Curve<F> {
        let w = self.twist_weierstrass();
        if self.is_montgomery() {
            if let Some(m) = w.to_montgomery(rng) {
                return m;
            }
        }
        w
    }

    /// Quadratic twist in short Weierstrass form: (a d^2, b d^3).
    pub fn twist_weierstrass(&self) -> Curve<F> {
        let f = &self.field;
        let w = self.to_weierstrass();
        let d = f.nonresidue();
        let (a, b) = match &w.model {
            Model::Weierstrass { a, b } => (a.clone(), b.clone()),
            _ => unreachable!(),
        };
        let d2 = f.square(&d);
        Curve {
            field: f.clone(),
            model: Model::Weierstrass { a: f.mul(&a, &d2), b: f.mul(&b, &f.mul(&d2, &d)) },
            trace: self.trace.as_ref().map(|t| -t),
        }
    }

    /// x-only arithmetic constants for this model.
    pub fn x_arith(&self) -> XArith<OverField<F>> {
        let f = &self.field;
        let (a2, a4, a6) = self.long_coeffs();
        let a24 = match &self.model {
            Model::Montgomery { a } => Some(f.mul(&f.add(a, &f.from_i64(2)), &f.inv(&f.from_i64(4)).unwrap())),
            _ => None,
        };
        XArith::new(OverField(f.clone()), a2, a4, a6, a24)
    }

    /// The same curve over a field containing this one's prime field.
    pub fn lift<G: Field>(&self, g: &G) -> Curve<G> {
        let emb = |e: &F::Elem| g.from_prime(&self.field.as_prime(e).expect("coefficients in the prime field"));
        let model = match &self.model {
            Model::Montgomery { a } => Model::Montgomery { a: emb(a) },
            Model::Weierstrass { a, b } => Model::Weierstrass { a: emb(a), b: emb(b) },
        };
        Curve { field: g.clone(), model, trace: None }
    }

    /// Weierstrass coefficients (a, b); panics on Montgomery models.
    pub fn weierstrass_coeffs(&self) -> (F::Elem, F::Elem) {
        match &self.model {
            Model::Weierstrass { a, b } => (a.clone(), b.clone()),
            Model::Montgomery { .. } => panic!("not a Weierstrass model"),
        }
    }

    pub fn montgomery_coeff(&self) -> Option<&F::Elem> {
        match &self.model {
            Model::Montgomery { a } => Some(a),
            Model::Weierstrass { .. } => None,
        }
    }

    /// Random x-coordinate of a point on this curve (not on its twist).
    pub fn random_x<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> F::Elem {
        loop {
            let x = self.field.random(rng);
            if self.field.is_square(&self.rhs(&x)) {
                return x;
            }
        }
    }
}

/// Curves with j-invariant j over F_p: the model built from
/// a = 3j(1728 - j), b = 2j(1728 - j)^2 (moved to Montgomery form when
/// possible) followed by its quadratic twist.
pub fn curve_from_j<R: rand::Rng + ?Sized>(
    field: &PrimeField,
    j: &Fp,
    rng: &mut R,
) -> Result<(Curve<PrimeField>, Curve<PrimeField>)> {
    let f = field;
    if f.is_zero(j) || *j == f.from_i64(1728) {
        return Err(Error::Domain("j = 0 and j = 1728 are excluded".into()));
    }
    let k = f.sub(&f.from_i64(1728), j);
    let a = f.mul(&f.from_i64(3), &f.mul(j, &k));
    let b = f.mul(&f.from_i64(2), &f.mul(j, &f.square(&k)));
    let w = Curve::weierstrass(f, a, b)?;
    let first = w.to_montgomery(rng).unwrap_or(w);
    let second = first.quadratic_twist(rng);
    Ok((first, second))
}

/// Pick the member of `curve_from_j` with trace t.
pub fn curve_with_trace<R: rand::Rng + ?Sized>(
    field: &PrimeField,
    j: &Fp,
    t: &BigInt,
    rng: &mut R,
) -> Result<Curve<PrimeField>> {
    let (c1, c2) = curve_from_j(field, j, rng)?;
    if check_trace(&c1, t, rng) {
        return c1.with_trace(t.clone());
    }
    if check_trace(&c2, t, rng) {
        return c2.with_trace(t.clone());
    }
    Err(Error::Validation(format!("no twist of j = {} has trace {}", j, t)))
}

/// Exact integer N = q + 1 - t.
pub fn group_order(q: &BigUint, t: &BigInt) -> BigUint {
    let n: BigInt = BigInt::from(q.clone()) + 1 - t;
    n.to_biguint().expect("Hasse bound keeps the order positive")
}

impl<F: Field> Curve<F> {
    /// Curve order over F when the trace is known.
    pub fn order_from_trace(&self) -> Option<BigUint> {
        self.trace.as_ref().map(|t| group_order(self.field.order(), t))
    }
}
