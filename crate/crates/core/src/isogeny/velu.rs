use super::{IdealStep, KernelPolynomial, VeluRoute};
use crate::arith::{mult_order, pow_mod_u64};
use crate::ec::{curve_order_ext, Curve, Point, XPoint};
use crate::error::{Error, Result};
use crate::ff::{build_extension, AnyField, Field, PrimeField};
use crate::poly::PolyRing;
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::Rng;

const SAMPLE_BUDGET: usize = 256;

/// K(X) = Π_{i=1}^{(ℓ−1)/2} (X − x([i]Q)) for Q of exact order ℓ on the
/// lift of `source` to an extension; the coefficients must descend to F_q.
pub fn kernel_poly_from_point<G: Field>(
    source: &Curve<PrimeField>,
    lifted: &Curve<G>,
    q: &XPoint<G::Elem>,
    l: u64,
) -> Result<KernelPolynomial> {
    if l < 3 || l % 2 == 0 {
        return Err(Error::Domain(format!("kernel polynomials need an odd prime, got {l}")));
    }
    let g = lifted.field();
    let xa = lifted.x_arith();
    if xa.is_infinity(q) || !xa.is_infinity(&xa.ladder_u64(q, l)) {
        return Err(Error::Domain(format!("point does not have order {l}")));
    }
    let half = ((l - 1) / 2) as usize;
    let xs = xa
        .multiples(q, half)
        .iter()
        .map(|p| lifted.normalize(p).ok_or_else(|| Error::Domain(format!("point does not have order {l}"))))
        .collect::<Result<Vec<_>>>()?;
    let ring = PolyRing::new(g.clone());
    let k = ring.from_roots(&xs);
    let base = source.field();
    let coeffs = k
        .coeffs()
        .iter()
        .map(|c| g.as_prime(c).ok_or(Error::KernelNotRational))
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelPolynomial { l, poly: PolyRing::new(base.clone()).poly(coeffs), curve: source.to_weierstrass() })
}

/// Codomain of the isogeny with kernel K, by Vélu's formulas written in the
/// power sums of the roots of K.
pub fn velu_from_kernel(k: &KernelPolynomial) -> Result<Curve<PrimeField>> {
    let w = &k.curve;
    let f = w.field();
    let (a, b) = w.weierstrass_coeffs();
    let c = k.poly.coeffs();
    let d = k.poly.degree();
    if d < 1 || (2 * d + 1) as u64 != k.l || !f.is_one(k.poly.leading()) {
        return Err(Error::Domain("kernel polynomial must be monic of degree (l-1)/2".into()));
    }
    let d = d as usize;
    let coef = |i: isize| if i >= 0 { c[i as usize].clone() } else { f.zero() };
    let e1 = f.neg(&coef(d as isize - 1));
    let e2 = coef(d as isize - 2);
    let e3 = f.neg(&coef(d as isize - 3));
    let p1 = e1.clone();
    let p2 = f.sub(&f.square(&e1), &f.double(&e2));
    let p3 = f.add(
        &f.sub(&f.mul(&e1, &f.square(&e1)), &f.mul_i64(&f.mul(&e1, &e2), 3)),
        &f.mul_i64(&e3, 3),
    );
    let dd = f.from_i64(d as i64);
    // v = Σ 6x² + 2a, w = Σ 10x³ + 6ax + 4b
    let v = f.add(&f.mul_i64(&p2, 6), &f.mul(&f.double(&a), &dd));
    let ww = f.add(
        &f.add(&f.mul_i64(&p3, 10), &f.mul(&f.mul_i64(&a, 6), &p1)),
        &f.mul(&f.mul_i64(&b, 4), &dd),
    );
    let a2 = f.sub(&a, &f.mul_i64(&v, 5));
    let b2 = f.sub(&b, &f.mul_i64(&ww, 7));
    let out = Curve::weierstrass(f, a2, b2)?;
    Ok(match w.trace() {
        Some(t) => out.with_trace(t.clone())?,
        None => out,
    })
}

/// Precomputed data for repeated Vélu steps in one direction: the extension
/// F_{q^r}, the order C_r of the curve used there, and its cofactor.
#[derive(Clone, Debug)]
pub struct VeluContext {
    l: u64,
    route: VeluRoute,
    /// Eigenvalue pair on the curve the kernel is taken from.
    nu: u64,
    other: u64,
    project: bool,
    ext: AnyField,
    c_r: BigUint,
    cof: BigUint,
    ell_power: u32,
}

impl VeluContext {
    /// Context for direction ν of ℓ (other eigenvalue `other`) on curves of
    /// trace t. When the other eigenspace is also rational over F_{q^r},
    /// sampled points are projected with π − [other].
    pub fn new(base: &PrimeField, t: &BigInt, l: u64, nu: u64, other: u64, route: VeluRoute) -> Result<Self> {
        let (nu_c, other_c, t_c) = if route.twist { (l - nu, l - other, -t) } else { (nu, other, t.clone()) };
        let r = route.r;
        if r == 0 || pow_mod_u64(nu_c, r as u64, l) != 1 {
            return Err(Error::Domain(format!(
                "eigenvalue {nu_c} mod {l} is not rational over the degree-{r} extension"
            )));
        }
        let project = pow_mod_u64(other_c, r as u64, l) == 1;
        let c_r = curve_order_ext(&t_c, base.modulus(), r);
        let mut cof = c_r.clone();
        let mut ell_power = 0;
        while (&cof % l).is_zero() {
            cof /= l;
            ell_power += 1;
        }
        if ell_power == 0 {
            return Err(Error::Domain(format!("{l} does not divide C_r")));
        }
        let ext = build_extension(base, r as usize)?;
        Ok(VeluContext { l, route, nu: nu_c, other: other_c, project, ext, c_r, cof, ell_power })
    }

    /// Context for the λ direction of `s`. Steps without a stored route use
    /// E over F_{q^r}, r = ord(λ), with projection.
    pub fn for_step(base: &PrimeField, t: &BigInt, s: &IdealStep) -> Result<Self> {
        let route = s.forward.unwrap_or(VeluRoute { twist: false, r: mult_order(s.lambda, s.l) as u32 });
        Self::new(base, t, s.l, s.lambda, s.mu, route)
    }

    pub fn c_r(&self) -> &BigUint {
        &self.c_r
    }

    pub fn route(&self) -> VeluRoute {
        self.route
    }

    pub fn projects(&self) -> bool {
        self.project
    }

    /// One step; the result is a short Weierstrass curve with the same trace.
    pub fn step<R: Rng + ?Sized>(&self, e: &Curve<PrimeField>, rng: &mut R) -> Result<Curve<PrimeField>> {
        self.step_counted(e, rng).map(|(c, _)| c)
    }

    /// As `step`, also returning the number of sampled points.
    pub fn step_counted<R: Rng + ?Sized>(&self, e: &Curve<PrimeField>, rng: &mut R) -> Result<(Curve<PrimeField>, usize)> {
        let w = e.to_weierstrass();
        let c = if self.route.twist { w.twist_weierstrass() } else { w };
        let (k, tries) = match &self.ext {
            AnyField::Prime(g) => self.kernel_in(g, &c, rng)?,
            AnyField::Ext(g) => self.kernel_in(g, &c, rng)?,
        };
        let image = velu_from_kernel(&k)?;
        let out = if self.route.twist { image.twist_weierstrass() } else { image };
        Ok((out, tries))
    }

    fn kernel_in<G: Field, R: Rng + ?Sized>(
        &self,
        g: &G,
        c: &Curve<PrimeField>,
        rng: &mut R,
    ) -> Result<(KernelPolynomial, usize)> {
        let cg = c.lift(g);
        let xa = cg.x_arith();
        for tries in 1..=SAMPLE_BUDGET {
            let q = if self.project {
                let p = cg.random_point(rng);
                let mut p = cg.mul(&p, &self.cof);
                if p == Point::Infinity {
                    continue;
                }
                for _ in 1..self.ell_power {
                    let n = cg.mul_u64(&p, self.l);
                    if n == Point::Infinity {
                        break;
                    }
                    p = n;
                }
                let pi = match &p {
                    Point::Affine(x, y) => Point::Affine(g.frobenius(x), g.frobenius(y)),
                    Point::Infinity => Point::Infinity,
                };
                let q = cg.add(&pi, &cg.neg(&cg.mul_u64(&p, self.other)));
                if q == Point::Infinity {
                    continue;
                }
                cg.to_xpoint(&q)
            } else {
                let x = cg.random_x(rng);
                let mut p = xa.ladder(&xa.affine(x), &self.cof);
                if xa.is_infinity(&p) {
                    continue;
                }
                for _ in 1..self.ell_power {
                    let n = xa.ladder_u64(&p, self.l);
                    if xa.is_infinity(&n) {
                        break;
                    }
                    p = n;
                }
                p
            };
            return kernel_poly_from_point(c, &cg, &q, self.l).map(|k| (k, tries));
        }
        Err(Error::Budget(format!("no point of order {} after {SAMPLE_BUDGET} samples", self.l)))
    }

    pub fn eigenvalue(&self) -> u64 {
        self.nu
    }
}

/// One Vélu step in the λ direction of `s` (the curve must carry its trace).
pub fn velu_step<R: Rng + ?Sized>(e: &Curve<PrimeField>, s: &IdealStep, rng: &mut R) -> Result<Curve<PrimeField>> {
    let t = e.trace().ok_or_else(|| Error::InvalidTrace("curve has no trace attached".into()))?;
    VeluContext::for_step(e.field(), t, s)?.step(e, rng)
}

/// k Vélu steps in the λ direction, sharing the precomputation.
pub fn velu_walk<R: Rng + ?Sized>(
    e: &Curve<PrimeField>,
    s: &IdealStep,
    k: u64,
    rng: &mut R,
) -> Result<Curve<PrimeField>> {
    if k == 0 {
        return Ok(e.clone());
    }
    let t = e.trace().ok_or_else(|| Error::InvalidTrace("curve has no trace attached".into()))?;
    let ctx = VeluContext::for_step(e.field(), t, s)?;
    let mut cur = e.clone();
    for _ in 0..k {
        cur = ctx.step(&cur, rng)?;
    }
    Ok(cur)
}
