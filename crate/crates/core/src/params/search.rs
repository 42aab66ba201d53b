use crate::arith::{fundamental_part, hasse_bound};
use crate::ec::{count_points_small, division_polynomial, Curve};
use crate::error::{Error, Result};
use crate::ff::{Field, PrimeField};
use crate::poly::PolyRing;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use rand::Rng;

/// Curve-search constraints, read from lines `require ℓ`,
/// `forbid supersingular` and `bits = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraints {
    /// Primes that must divide #E(F_q).
    pub require: Vec<u64>,
    pub forbid_supersingular: bool,
    pub bits: Option<u32>,
    /// Candidate curves to try before giving up.
    pub budget: usize,
}

impl Default for Constraints {
    fn default() -> Self {
        Constraints { require: Vec::new(), forbid_supersingular: true, bits: None, budget: 100_000 }
    }
}

impl Constraints {
    pub fn parse(src: &str) -> Result<Self> {
        let mut c = Constraints { forbid_supersingular: false, ..Constraints::default() };
        for (i, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::ParseLine { line: i + 1, msg: m.to_string() };
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["require", l] => {
                    let l: u64 = l.parse().map_err(|_| err("bad prime"))?;
                    if !crate::arith::is_prime_u64(l) {
                        return Err(err("required value is not prime"));
                    }
                    c.require.push(l);
                }
                ["forbid", "supersingular"] => c.forbid_supersingular = true,
                ["bits", "=", k] => {
                    let k: u32 = k.parse().map_err(|_| err("bad bit count"))?;
                    if !(3..=32).contains(&k) {
                        return Err(err("bits must be in 3..=32"));
                    }
                    c.bits = Some(k);
                }
                ["budget", "=", n] => c.budget = n.parse().map_err(|_| err("bad budget"))?,
                _ => return Err(err("unknown constraint")),
            }
        }
        Ok(c)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.require {
            s += &format!("require {l}\n");
        }
        if self.forbid_supersingular {
            s += "forbid supersingular\n";
        }
        if let Some(b) = self.bits {
            s += &format!("bits = {b}\n");
        }
        s += &format!("budget = {}\n", self.budget);
        s
    }
}

/// A curve found by the search with its trace and Δπ = t² − 4q.
#[derive(Clone, Debug)]
pub struct FoundCurve {
    pub curve: Curve<PrimeField>,
    pub trace: BigInt,
    pub delta_pi: BigInt,
    pub trials: usize,
}

/// Whether E(F_q) has a point of order ℓ: a root x of ψ_ℓ with f(x) square.
pub fn has_rational_torsion<R: Rng + ?Sized>(curve: &Curve<PrimeField>, l: u64, rng: &mut R) -> bool {
    let f = curve.field();
    if l == 2 {
        let w = curve.to_weierstrass();
        let (a, b) = w.weierstrass_coeffs();
        let ring = PolyRing::new(f.clone());
        return ring.has_root(&ring.poly(vec![b, a, f.zero(), f.one()]));
    }
    let w = curve.to_weierstrass();
    let psi = division_polynomial(&w, l as usize);
    let ring = PolyRing::new(f.clone());
    ring.roots(&psi, rng).iter().any(|x| f.is_square(&w.rhs(x)))
}

/// Random short Weierstrass curves over a small field, rejected early when a
/// required ℓ has no rational ℓ-torsion, then counted exactly.
pub fn search_toy_curve<R: Rng + ?Sized>(field: &PrimeField, cons: &Constraints, rng: &mut R) -> Result<FoundCurve> {
    let q = field.modulus().clone();
    if q.bits() > 32 {
        return Err(Error::TooLarge("curve search is limited to q < 2^32".into()));
    }
    let max_order = &q + 1u32 + hasse_bound(&q);
    let mut n_req = BigUint::from(1u32);
    for l in &cons.require {
        n_req = n_req.lcm(&BigUint::from(*l));
    }
    for trial in 1..=cons.budget {
        if n_req > max_order {
            break;
        }
        let a = field.random(rng);
        let b = field.random(rng);
        let e = match Curve::weierstrass(field, a, b) {
            Ok(e) => e,
            Err(_) => continue,
        };
        let j = e.j_invariant();
        if field.is_zero(&j) || j == field.from_i64(1728) {
            continue;
        }
        if !cons.require.iter().all(|&l| has_rational_torsion(&e, l, rng)) {
            continue;
        }
        let n = count_points_small(&e)?;
        let t: BigInt = BigInt::from(q.clone()) + 1 - BigInt::from(n.clone());
        if cons.forbid_supersingular && (&t % BigInt::from(q.clone())) == BigInt::from(0) {
            continue;
        }
        if cons.require.iter().any(|&l| (&n % l) != BigUint::ZERO) {
            return Err(Error::Validation("torsion test disagrees with the point count".into()));
        }
        let delta_pi = &t * &t - BigInt::from(q.clone()) * 4;
        if fundamental_part(&delta_pi).is_none() {
            continue;
        }
        let curve = e.with_trace(t.clone())?;
        return Ok(FoundCurve { curve, trace: t, delta_pi, trials: trial });
    }
    Err(Error::Budget(format!(
        "no curve over F_{q} met the constraints {:?} after {} trials",
        cons.require, cons.budget
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constraints_round_trip() {
        let c = Constraints::parse("require 3\n# x\nforbid supersingular\nbits = 16\n").unwrap();
        assert_eq!(c.require, vec![3]);
        assert!(c.forbid_supersingular);
        assert_eq!(c.bits, Some(16));
        assert_eq!(Constraints::parse(&c.to_text()).unwrap(), c);
        assert!(matches!(Constraints::parse("require 4"), Err(Error::ParseLine { line: 1, .. })));
        assert!(Constraints::parse("frobnicate").is_err());
    }

    #[test]
    fn ordinary_over_f7() {
        let f = PrimeField::from_u64(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let found = search_toy_curve(&f, &Constraints::default(), &mut rng).unwrap();
        assert!(found.trace.clone() % 7 != BigInt::from(0));
        assert_eq!(found.delta_pi, &found.trace * &found.trace - 28);
    }

    #[test]
    fn required_three() {
        let f = PrimeField::from_u64(1009).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cons = Constraints { require: vec![3, 5], ..Constraints::default() };
        for _ in 0..5 {
            let found = search_toy_curve(&f, &cons, &mut rng).unwrap();
            let n = count_points_small(&found.curve).unwrap();
            assert_eq!(&n % 15u32, BigUint::ZERO);
        }
        let impossible = Constraints { require: vec![1201], budget: 50, ..Constraints::default() };
        assert!(matches!(search_toy_curve(&f, &impossible, &mut rng), Err(Error::Budget(_))));
    }
}
