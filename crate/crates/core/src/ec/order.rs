use super::{Curve, XArith, XPoint};
use crate::arith::product_of_factorization;
use crate::ec::xonly::OverField;
use crate::ff::Field;
use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

/// Whether P has exact order Π s^e over the given factorization.
///
/// Uses a product tree so the cost is O(log k) full-size ladders for k
/// distinct primes.
pub fn has_exact_order<F: Field>(curve: &Curve<F>, p: &XPoint<F::Elem>, factors: &[(BigUint, u32)]) -> bool {
    let xa = curve.x_arith();
    let n = product_of_factorization(factors);
    if !xa.is_infinity(&xa.ladder(p, &n)) {
        return false;
    }
    if factors.is_empty() {
        return true;
    }
    check_primes(&xa, p, factors)
}

/// P has order dividing Π s^e; verify no prime can be removed.
fn check_primes<F: Field>(xa: &XArith<OverField<F>>, p: &XPoint<F::Elem>, factors: &[(BigUint, u32)]) -> bool {
    if factors.len() == 1 {
        let (s, e) = &factors[0];
        let q = xa.ladder(p, &s.pow(e - 1));
        return !xa.is_infinity(&q);
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let pl = xa.ladder(p, &product_of_factorization(right));
    let pr = xa.ladder(p, &product_of_factorization(left));
    check_primes(xa, &pl, left) && check_primes(xa, &pr, right)
}

/// Factorization of the order of P, given a multiple of it in factored form.
pub fn point_order<F: Field>(
    curve: &Curve<F>,
    p: &XPoint<F::Elem>,
    multiple: &[(BigUint, u32)],
) -> Option<Vec<(BigUint, u32)>> {
    let xa = curve.x_arith();
    if !xa.is_infinity(&xa.ladder(p, &product_of_factorization(multiple))) {
        return None;
    }
    let mut fac: Vec<(BigUint, u32)> = multiple.to_vec();
    for i in 0..fac.len() {
        while fac[i].1 > 0 {
            fac[i].1 -= 1;
            if !xa.is_infinity(&xa.ladder(p, &product_of_factorization(&fac))) {
                fac[i].1 += 1;
                break;
            }
        }
    }
    fac.retain(|f| f.1 > 0);
    Some(fac)
}

/// Random point whose order is exactly `target`, via cofactor multiplication
/// from the full group order. None once the retry budget is spent.
pub fn point_of_exact_order<F: Field, R: Rng + ?Sized>(
    curve: &Curve<F>,
    group_order: &BigUint,
    target: &[(BigUint, u32)],
    rng: &mut R,
    budget: usize,
) -> Option<XPoint<F::Elem>> {
    let xa = curve.x_arith();
    let t = product_of_factorization(target);
    if t.is_one() {
        return Some(xa.infinity());
    }
    if group_order % &t != BigUint::ZERO {
        return None;
    }
    let cof = group_order / &t;
    for _ in 0..budget {
        let x = curve.random_x(rng);
        let p = xa.ladder(&xa.affine(x), &cof);
        if has_exact_order(curve, &p, target) {
            return Some(p);
        }
    }
    None
}
