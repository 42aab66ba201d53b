use super::Curve;
use crate::ff::Field;
use crate::poly::{Poly, PolyRing};
use std::collections::HashMap;

/// Division polynomials of a short Weierstrass curve.
///
/// ψ_n is stored as g_n with ψ_n = g_n for odd n and ψ_n = y·g_n for even n,
/// so every stored polynomial lies in F[x].
pub struct DivisionPolynomials<F: Field> {
    ring: PolyRing<F>,
    f2: Poly<F>,
    cache: HashMap<usize, Poly<F>>,
}

impl<F: Field> DivisionPolynomials<F> {
    pub fn new(curve: &Curve<F>) -> Self {
        let w = curve.to_weierstrass();
        let (a, b) = w.weierstrass_coeffs();
        let f = curve.field().clone();
        let ring = PolyRing::new(f.clone());
        let rhs = ring.poly(vec![b.clone(), a.clone(), f.zero(), f.one()]);
        let f2 = ring.square(&rhs);
        let c = |n: i64| f.from_i64(n);
        let mut cache = HashMap::new();
        cache.insert(0, ring.zero());
        cache.insert(1, ring.one());
        cache.insert(2, ring.constant(c(2)));
        // 3x^4 + 6ax^2 + 12bx - a^2
        cache.insert(
            3,
            ring.poly(vec![
                f.neg(&f.square(&a)),
                f.mul(&c(12), &b),
                f.mul(&c(6), &a),
                f.zero(),
                c(3),
            ]),
        );
        // 4(x^6 + 5ax^4 + 20bx^3 - 5a^2x^2 - 4abx - 8b^2 - a^3)
        let a2 = f.square(&a);
        let inner = ring.poly(vec![
            f.neg(&f.add(&f.mul(&c(8), &f.square(&b)), &f.mul(&a2, &a))),
            f.neg(&f.mul(&c(4), &f.mul(&a, &b))),
            f.neg(&f.mul(&c(5), &a2)),
            f.mul(&c(20), &b),
            f.mul(&c(5), &a),
            f.zero(),
            f.one(),
        ]);
        cache.insert(4, ring.scale(&inner, &c(4)));
        DivisionPolynomials { ring, f2, cache }
    }

    /// g_n as described on the type.
    pub fn get(&mut self, n: usize) -> Poly<F> {
        if let Some(p) = self.cache.get(&n) {
            return p.clone();
        }
        let m = n / 2;
        let r = self.ring.clone();
        let out = if n % 2 == 1 {
            // ψ_{2m+1} = ψ_{m+2} ψ_m^3 - ψ_{m-1} ψ_{m+1}^3
            let (gm2, gm, gm1, gp1) = (self.get(m + 2), self.get(m), self.get(m - 1), self.get(m + 1));
            let t1 = r.mul(&gm2, &r.mul(&gm, &r.square(&gm)));
            let t2 = r.mul(&gm1, &r.mul(&gp1, &r.square(&gp1)));
            if m % 2 == 0 {
                r.sub(&r.mul(&self.f2, &t1), &t2)
            } else {
                r.sub(&t1, &r.mul(&self.f2, &t2))
            }
        } else {
            // ψ_{2m} = ψ_m (ψ_{m+2} ψ_{m-1}^2 - ψ_{m-2} ψ_{m+1}^2) / 2y
            let (gm, gm2, gm1, gmm2, gp1) =
                (self.get(m), self.get(m + 2), self.get(m - 1), self.get(m - 2), self.get(m + 1));
            let d = r.sub(&r.mul(&gm2, &r.square(&gm1)), &r.mul(&gmm2, &r.square(&gp1)));
            let half = r.field().inv(&r.field().from_i64(2)).unwrap();
            r.scale(&r.mul(&gm, &d), &half)
        };
        self.cache.insert(n, out.clone());
        out
    }
}

/// ψ_ℓ for odd ℓ: degree (ℓ^2 - 1)/2, roots are the x-coordinates of the
/// nonzero ℓ-torsion points of the short Weierstrass model of `curve`.
pub fn division_polynomial<F: Field>(curve: &Curve<F>, l: usize) -> Poly<F> {
    assert!(l % 2 == 1, "odd ℓ only");
    DivisionPolynomials::new(curve).get(l)
}
