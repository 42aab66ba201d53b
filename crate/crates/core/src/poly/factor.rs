//! Root finding and distinct/equal-degree factorization.

use super::{Poly, PolyRing};
use crate::arith;
use crate::ff::Field;
use num_bigint::BigUint;

use rand::Rng;

impl<F: Field> PolyRing<F> {
    /// X^(|F|^k) mod m.
    pub fn frobenius_power(&self, m: &Poly<F>, k: usize) -> Poly<F> {
        let q = self.field().order().clone();
        let mut acc = self.rem(&self.x(), m);
        for _ in 0..k {
            acc = self.powmod(&acc, &q, m);
        }
        acc
    }

    /// Distinct roots in the coefficient field, sorted by canonical key.
    pub fn roots<R: Rng + ?Sized>(&self, f: &Poly<F>, rng: &mut R) -> Vec<F::Elem> {
        assert!(!f.is_zero(), "roots of the zero polynomial");
        if f.degree() <= 0 {
            return Vec::new();
        }
        let f = self.monic(f);
        let xq = self.frobenius_power(&f, 1);
        let g = self.gcd(&f, &self.sub(&xq, &self.x()));
        let mut out = Vec::new();
        self.split_linear(&g, rng, &mut out);
        out.sort_by_key(|a| self.field().sort_key(a));
        out
    }

    /// Roots with multiplicities, sorted by canonical key.
    pub fn roots_with_multiplicity<R: Rng + ?Sized>(&self, f: &Poly<F>, rng: &mut R) -> Vec<(F::Elem, usize)> {
        let roots = self.roots(f, rng);
        roots
            .into_iter()
            .map(|a| {
                let lin = self.x_minus(&a);
                let mut g = f.clone();
                let mut m = 0;
                loop {
                    let (q, r) = self.divrem(&g, &lin).unwrap();
                    if !r.is_zero() {
                        break;
                    }
                    g = q;
                    m += 1;
                }
                (a, m)
            })
            .collect()
    }

    /// Split a monic product of distinct linear factors.
    fn split_linear<R: Rng + ?Sized>(&self, g: &Poly<F>, rng: &mut R, out: &mut Vec<F::Elem>) {
        for h in self.equal_degree(g, 1, rng) {
            out.push(self.field().neg(&h.coeffs()[0]));
        }
    }

    /// Distinct-degree factorization of a squarefree monic polynomial:
    /// pairs (k, product of all irreducible factors of degree k).
    pub fn distinct_degree(&self, f: &Poly<F>) -> Vec<(usize, Poly<F>)> {
        self.distinct_degree_upto(f, usize::MAX)
    }

    /// Distinct-degree parts for k ≤ `max_k` only.
    pub fn distinct_degree_upto(&self, f: &Poly<F>, max_k: usize) -> Vec<(usize, Poly<F>)> {
        let q = self.field().order().clone();
        let mut h = self.monic(f);
        let mut out = Vec::new();
        let mut xp = self.rem(&self.x(), &h);
        let mut k = 0;
        while h.degree() > 0 && k < max_k {
            k += 1;
            if 2 * k as isize > h.degree() {
                // what remains is irreducible
                if (h.degree() as usize) <= max_k {
                    out.push((h.degree() as usize, h.clone()));
                }
                break;
            }
            xp = self.powmod(&xp, &q, &h);
            let g = self.gcd(&h, &self.sub(&xp, &self.x()));
            if g.degree() > 0 {
                h = self.div_exact(&h, &g).unwrap();
                xp = self.rem(&xp, &h);
                out.push((k, g));
            }
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a monic product of distinct irreducible
    /// factors of degree `k`. Factors are returned monic, sorted by coefficients.
    pub fn equal_degree<R: Rng + ?Sized>(&self, g: &Poly<F>, k: usize, rng: &mut R) -> Vec<Poly<F>> {
        let g = self.monic(g);
        if g.degree() <= 0 {
            return Vec::new();
        }
        let mut done = Vec::new();
        let mut todo = vec![g];
        let qk = self.field().order().pow(k as u32);
        let e = (&qk - 1u32) >> 1;
        while let Some(h) = todo.pop() {
            if h.degree() as usize == k {
                done.push(h);
                continue;
            }
            loop {
                let d = h.degree() as usize;
                let a = self.poly((0..d).map(|_| self.field().random(rng)).collect());
                if a.degree() <= 0 {
                    continue;
                }
                let b = self.powmod(&a, &e, &h);
                let s = self.gcd(&h, &self.sub(&b, &self.one()));
                if s.degree() > 0 && s.degree() < h.degree() {
                    let t = self.div_exact(&h, &s).unwrap();
                    todo.push(s);
                    todo.push(t);
                    break;
                }
            }
        }
        done.sort_by(|a, b| {
            let ka: Vec<BigUint> = a.coeffs().iter().map(|c| self.field().sort_key(c)).collect();
            let kb: Vec<BigUint> = b.coeffs().iter().map(|c| self.field().sort_key(c)).collect();
            ka.cmp(&kb)
        });
        done
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, f: &Poly<F>) -> bool {
        let n = f.degree();
        if n <= 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let n = n as usize;
        let f = self.monic(f);
        let x = self.x();
        let mut divisors: Vec<usize> = arith::factor_u64(n as u64).into_iter().map(|(s, _)| n / s as usize).collect();
        divisors.sort();
        let q = self.field().order().clone();
        let mut xp = self.rem(&x, &f);
        let mut k = 0;
        for d in divisors {
            while k < d {
                xp = self.powmod(&xp, &q, &f);
                k += 1;
            }
            let g = self.gcd(&f, &self.sub(&xp, &x));
            if !(g.degree() == 0 && g.coeffs()[0] == self.field().one()) {
                return false;
            }
        }
        while k < n {
            xp = self.powmod(&xp, &q, &f);
            k += 1;
        }
        self.sub(&xp, &self.rem(&x, &f)).is_zero()
    }

    /// Whether f has at least one root in the field.
    pub fn has_root(&self, f: &Poly<F>) -> bool {
        if f.degree() <= 0 {
            return false;
        }
        let f = self.monic(f);
        let xq = self.frobenius_power(&f, 1);
        self.gcd(&f, &self.sub(&xq, &self.x())).degree() > 0
    }

    /// Number of distinct roots in the field.
    pub fn count_roots(&self, f: &Poly<F>) -> usize {
        if f.degree() <= 0 {
            return 0;
        }
        let f = self.monic(f);
        let xq = self.frobenius_power(&f, 1);
        self.gcd(&f, &self.sub(&xq, &self.x())).degree() as usize
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{ExtField, PrimeField};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_root_examples() {
        let f = PrimeField::from_u64(7).unwrap();
        let r = PolyRing::new(f.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let g = r.poly(vec![f.from_i64(-1), f.zero(), f.one()]);
        assert_eq!(r.roots(&g, &mut rng), vec![f.elem_u64(1), f.elem_u64(6)]);
        let h = r.poly(vec![f.one(), f.zero(), f.one()]);
        assert!(r.roots(&h, &mut rng).is_empty());
        let sq = r.mul(&g, &r.x_minus(&f.one()));
        assert_eq!(r.roots_with_multiplicity(&sq, &mut rng), vec![(f.elem_u64(1), 2), (f.elem_u64(6), 1)]);
    }

    #[test]
    fn roots_in_extension_field() {
        let f = PrimeField::from_u64(7).unwrap();
        let e = ExtField::new(&f, 2).unwrap();
        let r = PolyRing::new(e.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // x^2 + 1 splits over F_49
        let g = r.poly(vec![e.one(), e.zero(), e.one()]);
        let roots = r.roots(&g, &mut rng);
        assert_eq!(roots.len(), 2);
        for a in roots {
            assert!(e.is_zero(&r.eval(&g, &a)));
        }
    }

    #[test]
    fn ddf_and_edf() {
        let f = PrimeField::from_u64(101).unwrap();
        let r = PolyRing::new(f.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let irr2 = r.poly(vec![f.from_i64(2), f.zero(), f.one()]); // 2 is a non-residue mod 101
        let irr2b = r.poly(vec![f.from_i64(3), f.zero(), f.one()]);
        assert!(r.is_irreducible(&irr2) && r.is_irreducible(&irr2b));
        let lin = r.from_roots(&[f.elem_u64(4), f.elem_u64(9)]);
        let all = r.mul(&r.mul(&irr2, &irr2b), &lin);
        let parts = r.distinct_degree(&all);
        assert_eq!(parts.iter().map(|(k, g)| (*k, g.degree())).collect::<Vec<_>>(), vec![(1, 2), (2, 4)]);
        let split = r.equal_degree(&parts[1].1, 2, &mut rng);
        assert_eq!(split.len(), 2);
        assert!(split.contains(&irr2) && split.contains(&irr2b));
    }

    proptest! {
        #[test]
        fn roots_match_exhaustive_evaluation(c in prop::collection::vec(0u64..211, 2..9), seed in 0u64..1000) {
            let f = PrimeField::from_u64(211).unwrap();
            let r = PolyRing::new(f.clone());
            let g = r.poly(c.iter().map(|&x| f.elem_u64(x)).collect());
            prop_assume!(g.degree() >= 1);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let found = r.roots(&g, &mut rng);
            let expected: Vec<_> = (0..211).map(|x| f.elem_u64(x)).filter(|x| f.is_zero(&r.eval(&g, x))).collect();
            prop_assert_eq!(found, expected);
        }
    }
}
