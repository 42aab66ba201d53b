use super::{velu_from_kernel, IdealStep, KernelPolynomial};
use crate::arith::mult_order;
use crate::ec::{curve_with_trace, Curve, DivisionPolynomials, XArith, XPoint};
use crate::error::{Error, Result};
use crate::ff::{ExtField, Field, Fp, PrimeField};
use crate::modpolydb::ReducedModPoly;
use crate::params::{eigenvalues_mod_ell, EigenCase};
use crate::poly::{Poly, PolyRing, QuotientCurve, QuotientRing};
use num_bigint::{BigInt, BigUint};
use rand::Rng;

/// Size of a Frobenius orbit on x-coordinates of the ν-eigenspace: the
/// order of ν in (Z/ℓ)^*/{±1}.
fn x_orbit(nu: u64, l: u64) -> usize {
    let r = mult_order(nu, l);
    if r % 2 == 0 {
        (r / 2) as usize
    } else {
        r as usize
    }
}

/// Kernel polynomials of the rational ℓ-isogenies E → E' with j(E') = j₁.
///
/// Factors the ℓ-division polynomial, builds the kernel generated by a root
/// of each irreducible factor of the relevant degree, keeps the rational
/// ones and matches Vélu images. Two kernels come back only when both
/// directions reach the same j.
pub fn kernel_poly_from_adjacent_j<R: Rng + ?Sized>(
    e: &Curve<PrimeField>,
    j1: &Fp,
    l: u64,
    rng: &mut R,
) -> Result<Vec<KernelPolynomial>> {
    let w = e.to_weierstrass();
    let f = w.field().clone();
    let half = ((l - 1) / 2) as usize;
    let mut degrees: Vec<usize> = match w.trace().map(|t| eigenvalues_mod_ell(t, f.modulus(), l)) {
        Some(EigenCase::Split(a, b)) => vec![x_orbit(a, l), x_orbit(b, l)],
        Some(EigenCase::Ramified(a)) => vec![x_orbit(a, l)],
        Some(EigenCase::NoRoots) => return Err(Error::NotElkies(format!("{l}: no rational isogenies"))),
        None => (1..=half).filter(|d| half % d == 0).collect(),
    };
    degrees.sort_unstable();
    degrees.dedup();
    let ring = PolyRing::new(f.clone());
    let psi = DivisionPolynomials::new(&w).get(l as usize);
    let psi = ring.monic(&psi);
    let max_deg = *degrees.last().unwrap();
    let mut found: Vec<KernelPolynomial> = Vec::new();
    let mut tried: Vec<Poly<PrimeField>> = Vec::new();
    for (deg, part) in ring.distinct_degree_upto(&psi, max_deg) {
        if !degrees.contains(&deg) {
            continue;
        }
        for fac in ring.equal_degree(&part, deg, rng) {
            if tried.iter().any(|k| ring.rem(k, &fac).is_zero()) {
                continue;
            }
            let k = match kernel_from_factor(&w, &fac, l) {
                Some(k) => k,
                None => continue,
            };
            tried.push(k.poly.clone());
            let image = velu_from_kernel(&k)?;
            if image.j_invariant() == *j1 {
                found.push(k);
            }
        }
    }
    if found.is_empty() {
        return Err(Error::Validation(format!("no rational {l}-isogeny reaches j = {j1}")));
    }
    Ok(found)
}

/// The kernel polynomial generated by a root of `fac`, if rational.
fn kernel_from_factor(w: &Curve<PrimeField>, fac: &Poly<PrimeField>, l: u64) -> Option<KernelPolynomial> {
    let base = w.field();
    let half = ((l - 1) / 2) as usize;
    if fac.degree() == 1 {
        let x0 = base.neg(&fac.coeffs()[0]);
        return kernel_from_x(w, w, base, x0, half, l);
    }
    let ext = ExtField::with_modulus_unchecked(base, fac.coeffs().to_vec());
    let theta = ext.basis(1);
    kernel_from_x(w, &w.lift(&ext), &ext, theta, half, l)
}

fn kernel_from_x<G: Field>(
    w: &Curve<PrimeField>,
    lifted: &Curve<G>,
    g: &G,
    x0: G::Elem,
    half: usize,
    l: u64,
) -> Option<KernelPolynomial> {
    let xa = lifted.x_arith();
    let xs: Option<Vec<G::Elem>> = xa.multiples(&xa.affine(x0), half).iter().map(|p| lifted.normalize(p)).collect();
    let ring = PolyRing::new(g.clone());
    let k = ring.from_roots(&xs?);
    let coeffs: Option<Vec<Fp>> = k.coeffs().iter().map(|c| g.as_prime(c)).collect();
    Some(KernelPolynomial { l, poly: PolyRing::new(w.field().clone()).poly(coeffs?), curve: w.clone() })
}

/// Which of λ, μ Frobenius acts as on the kernel of K.
///
/// Uses the x-only ladder in F_q[x]/(K) when λ ≢ −μ and falls back to the
/// symbolic point (x, y) otherwise.
pub fn frobenius_eigenvalue(k: &KernelPolynomial, lambda: u64, mu: u64) -> Result<u64> {
    let w = &k.curve;
    let f = w.field().clone();
    let (a, b) = w.weierstrass_coeffs();
    let ring = PolyRing::new(f.clone());
    let q = f.modulus().clone();
    let l = k.l;
    if (lambda + mu) % l != 0 {
        let qr = QuotientRing::new(ring, k.poly.clone());
        let xq = qr.pow(&qr.x(), &q);
        let xa = XArith::new(qr.clone(), qr.ring().zero(), qr.ring().constant(a), qr.ring().constant(b), None);
        let gen = XPoint { x: qr.x(), z: qr.reduce(&qr.ring().one()) };
        let hits = |n: u64| {
            let p = xa.ladder_u64(&gen, n);
            let d = qr.reduce(&qr.ring().sub(&p.x, &qr.ring().mul(&xq, &p.z)));
            d.is_zero() && !qr.reduce(&p.z).is_zero()
        };
        return match (hits(lambda), hits(mu)) {
            (true, false) => Ok(lambda),
            (false, true) => Ok(mu),
            (x, y) => Err(Error::Eigenvalue(format!("x-only check gave λ: {x}, μ: {y}"))),
        };
    }
    let qc = QuotientCurve::new(ring, k.poly.clone(), f.zero(), a, b);
    let gen = qc.generic_point();
    let frob = qc.frobenius();
    let hits = |n: u64| -> Result<bool> {
        let p = qc
            .scalar_mul(&gen, &BigUint::from(n))
            .map_err(|_| Error::Eigenvalue("kernel polynomial has a spurious factor".into()))?;
        Ok(p == frob)
    };
    match (hits(lambda)?, hits(mu)?) {
        (true, false) => Ok(lambda),
        (false, true) => Ok(mu),
        (x, y) => Err(Error::Eigenvalue(format!("symbolic check gave λ: {x}, μ: {y}"))),
    }
}

/// Roots of Φ_ℓ(X, j) with multiplicity.
fn neighbours<R: Rng + ?Sized>(phi: &ReducedModPoly, j: &Fp, rng: &mut R) -> Result<Vec<(Fp, usize)>> {
    let ring = PolyRing::new(phi.field().clone());
    let p = phi.specialize(&ring, j)?;
    Ok(ring.roots_with_multiplicity(&p, rng))
}

/// First step: the neighbour of j(E) in direction λ, and whether the
/// ℓ-cycle has length ≤ 2 (a double root of Φ_ℓ(X, j)).
fn first_step_inner<R: Rng + ?Sized>(
    e: &Curve<PrimeField>,
    s: &IdealStep,
    phi: &ReducedModPoly,
    rng: &mut R,
) -> Result<(Fp, bool)> {
    let j = e.j_invariant();
    let roots = neighbours(phi, &j, rng)?;
    match roots.as_slice() {
        [(r, 2)] => Ok((r.clone(), true)),
        [(j1, 1), (j2, 1)] => {
            let ks = kernel_poly_from_adjacent_j(e, j1, s.l, rng)?;
            let ev = frobenius_eigenvalue(&ks[0], s.lambda, s.mu)?;
            Ok((if ev == s.lambda { j1.clone() } else { j2.clone() }, false))
        }
        _ => Err(Error::NotElkies(format!(
            "{}: Φ(X, j) has {} rational roots with multiplicities {:?}",
            s.l,
            roots.len(),
            roots.iter().map(|r| r.1).collect::<Vec<_>>()
        ))),
    }
}

/// The j-invariant one ℓ-isogeny away from E in direction λ.
pub fn elkies_first_step<R: Rng + ?Sized>(
    e: &Curve<PrimeField>,
    s: &IdealStep,
    phi: &ReducedModPoly,
    rng: &mut R,
) -> Result<Fp> {
    first_step_inner(e, s, phi, rng).map(|r| r.0)
}

/// The unique rational root of Φ_ℓ(X, j₁)/(X − j₀).
pub fn elkies_next_step<R: Rng + ?Sized>(phi: &ReducedModPoly, j0: &Fp, j1: &Fp, rng: &mut R) -> Result<Fp> {
    let ring = PolyRing::new(phi.field().clone());
    let p = phi.specialize(&ring, j1)?;
    let q = ring
        .div_exact(&p, &ring.x_minus(j0))
        .map_err(|_| Error::CycleStructure(format!("{j0} is not adjacent to {j1}")))?;
    match ring.roots_with_multiplicity(&q, rng).as_slice() {
        [(r, 1)] => Ok(r.clone()),
        other => Err(Error::CycleStructure(format!("{} candidate next vertices", other.len()))),
    }
}

/// k Elkies steps in direction λ; the result is the twist with trace t.
pub fn elkies_walk<R: Rng + ?Sized>(
    e: &Curve<PrimeField>,
    s: &IdealStep,
    k: u64,
    phi: &ReducedModPoly,
    rng: &mut R,
) -> Result<Curve<PrimeField>> {
    let t: BigInt = e.trace().cloned().ok_or_else(|| Error::InvalidTrace("curve has no trace attached".into()))?;
    if k == 0 {
        return Ok(e.clone());
    }
    let j0 = e.j_invariant();
    let (j1, tiny) = first_step_inner(e, s, phi, rng)?;
    let end = if tiny {
        // cycle of length 1 or 2: the walk alternates between j0 and j1
        if k % 2 == 1 {
            j1
        } else {
            j0
        }
    } else {
        let (mut prev, mut cur) = (j0, j1);
        for _ in 1..k {
            let next = elkies_next_step(phi, &prev, &cur, rng)?;
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    };
    curve_with_trace(e.field(), &end, &t, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isogeny::{velu_step, Method};
    use crate::modpolydb::shipped;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn toy() -> Curve<PrimeField> {
        let f = PrimeField::from_u64(7).unwrap();
        Curve::weierstrass(&f, f.from_i64(2), f.from_i64(3)).unwrap().with_trace(BigInt::from(2)).unwrap()
    }

    #[test]
    fn toy_five_both_methods() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let e = toy();
        let phi = shipped().unwrap().reduced(5, e.field()).unwrap();
        let j0 = e.j_invariant();
        let s = IdealStep::classify(5, 3, 4, 9);
        assert_eq!(s.method, Method::VE);
        for dir in [s.clone(), s.reversed()] {
            let v = velu_step(&e, &dir, &mut rng).unwrap();
            assert_ne!(v.j_invariant(), j0);
            let el = elkies_first_step(&e, &dir, &phi, &mut rng).unwrap();
            assert_eq!(v.j_invariant(), el);
            assert!(phi.eval(e.field(), &j0, &el).unwrap().is_zero());
            let w = elkies_walk(&e, &dir, 2, &phi, &mut rng).unwrap();
            assert_eq!(w.j_invariant(), j0);
        }
    }

    #[test]
    fn toy_five_kernels() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let e = toy();
        let j1 = velu_step(&e, &IdealStep::classify(5, 3, 4, 9), &mut rng).unwrap().j_invariant();
        // both directions reach the same j; each kernel has its own eigenvalue
        let ks = kernel_poly_from_adjacent_j(&e, &j1, 5, &mut rng).unwrap();
        assert_eq!(ks.len(), 2);
        let mut evs: Vec<u64> = ks.iter().map(|k| frobenius_eigenvalue(k, 3, 4).unwrap()).collect();
        evs.sort();
        assert_eq!(evs, vec![3, 4]);
        for k in &ks {
            assert_eq!(k.poly.degree(), 2);
        }
    }

    #[test]
    fn volcano_6007() {
        use crate::isogeny::volcano;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = PrimeField::from_u64(6007).unwrap();
        let phi = shipped().unwrap().reduced(3, &f).unwrap();
        let j = f.elem_u64(607);
        assert_eq!(volcano::floor_distance(&phi, &j, 2, &mut rng).unwrap(), 0);
        let top = volcano::ascend_to_crater(&phi, &j, 2, &mut rng).unwrap();
        assert!(volcano::is_on_crater(&phi, &top, 2, &mut rng).unwrap());
        let mid = volcano::ascend(&phi, &j, 2, &mut rng).unwrap();
        assert_eq!(volcano::floor_distance(&phi, &mid, 2, &mut rng).unwrap(), 1);
        assert!(!volcano::is_on_crater(&phi, &mid, 2, &mut rng).unwrap());
        assert_eq!(volcano::ascend(&phi, &mid, 2, &mut rng).unwrap(), top);
    }
}
