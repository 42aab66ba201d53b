//! Isogeny steps and walks: Vélu steps from rational torsion (optionally on
//! the quadratic twist), Elkies steps from modular polynomials, and the
//! volcano probes used to test the endomorphism level.

mod elkies;
mod velu;
pub mod volcano;

pub use elkies::{
    elkies_first_step, elkies_next_step, elkies_walk, frobenius_eigenvalue, kernel_poly_from_adjacent_j,
};
pub use velu::{kernel_poly_from_point, velu_from_kernel, velu_step, velu_walk, VeluContext};

use crate::arith::mult_order;
use crate::ec::Curve;
use crate::error::{Error, Result};
use crate::ff::PrimeField;
use crate::poly::Poly;
use num_bigint::BigUint;

/// How a prime is walked: Vélu in both directions, Vélu in the λ direction
/// only (exponents nonnegative), or Elkies steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    VV,
    VE,
    EE,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::VV => "VV",
            Method::VE => "VE",
            Method::EE => "EE",
        }
    }
}

/// Where the kernel of a Vélu step is found: the ν-eigenspace of E over
/// F_{q^r}, or the (−ν)-eigenspace of the quadratic twist over F_{q^r}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VeluRoute {
    pub twist: bool,
    pub r: u32,
}

/// The ideal (ℓ, π − λ) together with how to evaluate it and its inverse
/// (ℓ, π − μ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealStep {
    pub l: u64,
    pub lambda: u64,
    pub mu: u64,
    pub method: Method,
    /// Route for the λ direction.
    pub forward: Option<VeluRoute>,
    /// Route for the μ direction.
    pub backward: Option<VeluRoute>,
}

/// Vélu route for direction ν with other eigenvalue o, or None when no
/// extension of degree ≤ r_max isolates the ν-eigenspace.
///
/// On E the ν-eigenspace is alone in E(F_{q^r})[ℓ] for r = ord(ν) when
/// ord(o) ∤ r; on the twist the eigenvalues are negated. Smallest r wins and
/// E is preferred on ties.
pub fn velu_route(l: u64, nu: u64, other: u64, r_max: u32) -> Option<VeluRoute> {
    let on_e = {
        let r = mult_order(nu, l);
        (r % mult_order(other, l) != 0).then_some(VeluRoute { twist: false, r: r as u32 })
    };
    let on_twist = {
        let r = mult_order(l - nu, l);
        (r % mult_order(l - other, l) != 0).then_some(VeluRoute { twist: true, r: r as u32 })
    };
    [on_e, on_twist].into_iter().flatten().filter(|c| c.r <= r_max).min_by_key(|c| (c.r, c.twist))
}

impl IdealStep {
    /// Full description from the eigenvalue pair. VE steps are oriented so
    /// that λ is the Vélu direction.
    pub fn classify(l: u64, lambda: u64, mu: u64, r_max: u32) -> IdealStep {
        let fwd = velu_route(l, lambda, mu, r_max);
        let bwd = velu_route(l, mu, lambda, r_max);
        match (fwd, bwd) {
            (Some(_), Some(_)) => IdealStep { l, lambda, mu, method: Method::VV, forward: fwd, backward: bwd },
            (Some(_), None) => IdealStep { l, lambda, mu, method: Method::VE, forward: fwd, backward: None },
            (None, Some(_)) => IdealStep { l, lambda: mu, mu: lambda, method: Method::VE, forward: bwd, backward: None },
            (None, None) => IdealStep { l, lambda, mu, method: Method::EE, forward: None, backward: None },
        }
    }

    /// An Elkies-only step in the λ direction.
    pub fn elkies(l: u64, lambda: u64, mu: u64) -> IdealStep {
        IdealStep { l, lambda, mu, method: Method::EE, forward: None, backward: None }
    }

    /// Extension degree of the λ direction: the order of λ mod ℓ.
    pub fn r(&self) -> u32 {
        mult_order(self.lambda, self.l) as u32
    }

    /// The inverse ideal (ℓ, π − μ).
    pub fn reversed(&self) -> IdealStep {
        IdealStep {
            l: self.l,
            lambda: self.mu,
            mu: self.lambda,
            method: self.method,
            forward: self.backward,
            backward: self.forward,
        }
    }

    /// Remark on twists: usable when q ≡ −1 mod ℓ, so that −μ = 1/λ.
    pub fn twist_usable(&self, q: &BigUint) -> bool {
        (q + 1u32) % self.l == BigUint::ZERO
    }
}

/// The μ direction of `s` walked as the (−μ) direction on the twist. With
/// q ≡ −1 mod ℓ the order of −μ = 1/λ equals the order of λ, so the same
/// extension degree serves both directions.
pub fn twist_direction(s: &IdealStep, q: &BigUint) -> Result<VeluRoute> {
    if !s.twist_usable(q) {
        return Err(Error::Domain(format!("q is not -1 mod {}", s.l)));
    }
    let r = mult_order(s.l - s.mu, s.l) as u32;
    debug_assert_eq!(r, s.r());
    Ok(VeluRoute { twist: true, r })
}

/// Kernel polynomial of a rational ℓ-isogeny of a short Weierstrass curve.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelPolynomial {
    pub l: u64,
    pub poly: Poly<PrimeField>,
    /// Short Weierstrass source curve.
    pub curve: Curve<PrimeField>,
}
