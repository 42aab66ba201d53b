//! Position of a j-invariant in its ℓ-volcano of depth h, using only
//! rational-root counts of Φ_ℓ(X, j).
//!
//! A vertex at level k has one neighbour above it and all others below (the
//! crater has its horizontal neighbours instead of a parent). A
//! non-backtracking path that starts downward keeps going down and reaches
//! the floor (a vertex with one neighbour) after exactly h − k steps, while a
//! path that starts upward needs at least h − k + 2.

use crate::error::{Error, Result};
use crate::ff::{Fp, PrimeField};
use crate::modpolydb::ReducedModPoly;
use crate::poly::PolyRing;
use rand::Rng;

/// Distinct rational roots of Φ_ℓ(X, j).
pub fn neighbours<R: Rng + ?Sized>(phi: &ReducedModPoly, j: &Fp, rng: &mut R) -> Result<Vec<Fp>> {
    let ring: PolyRing<PrimeField> = PolyRing::new(phi.field().clone());
    let p = phi.specialize(&ring, j)?;
    Ok(ring.roots(&p, rng))
}

/// Steps to the floor along a non-backtracking path prev → start → …, or
/// None if the floor is not reached within `limit` steps.
fn steps_to_floor<R: Rng + ?Sized>(
    phi: &ReducedModPoly,
    prev: &Fp,
    start: &Fp,
    limit: u32,
    rng: &mut R,
) -> Result<Option<u32>> {
    let (mut prev, mut cur) = (prev.clone(), start.clone());
    for step in 1..=limit {
        let ns = neighbours(phi, &cur, rng)?;
        if ns.len() <= 1 {
            return Ok(Some(step));
        }
        let next = match ns.into_iter().find(|n| *n != prev) {
            Some(n) => n,
            None => return Ok(None),
        };
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(None)
}

/// Distance h − k from j to the floor of a volcano of depth h.
pub fn floor_distance<R: Rng + ?Sized>(phi: &ReducedModPoly, j: &Fp, h: u32, rng: &mut R) -> Result<u32> {
    let ns = neighbours(phi, j, rng)?;
    if ns.is_empty() {
        return Err(Error::NotElkies(format!("j = {j} has no rational {}-isogenies", phi.level())));
    }
    if ns.len() == 1 && h > 0 {
        return Ok(0);
    }
    let mut best = h;
    for n in ns.iter().take(3) {
        if let Some(s) = steps_to_floor(phi, j, n, best.saturating_sub(1), rng)? {
            best = best.min(s);
        }
    }
    Ok(best)
}

/// Whether j lies on the crater of its ℓ-volcano of depth h.
pub fn is_on_crater<R: Rng + ?Sized>(phi: &ReducedModPoly, j: &Fp, h: u32, rng: &mut R) -> Result<bool> {
    if h == 0 {
        return Ok(true);
    }
    Ok(floor_distance(phi, j, h, rng)? == h)
}

/// The neighbour one level above j (j itself on the crater).
pub fn ascend<R: Rng + ?Sized>(phi: &ReducedModPoly, j: &Fp, h: u32, rng: &mut R) -> Result<Fp> {
    let dist = floor_distance(phi, j, h, rng)?;
    if dist == h {
        return Ok(j.clone());
    }
    for n in neighbours(phi, j, rng)? {
        if steps_to_floor(phi, j, &n, dist, rng)?.is_none() {
            return Ok(n);
        }
    }
    Err(Error::CycleStructure(format!("no ascending {}-isogeny from j = {j}", phi.level())))
}

/// Repeated ascent to the crater.
pub fn ascend_to_crater<R: Rng + ?Sized>(phi: &ReducedModPoly, j: &Fp, h: u32, rng: &mut R) -> Result<Fp> {
    let mut cur = j.clone();
    for _ in 0..=h {
        let up = ascend(phi, &cur, h, rng)?;
        if up == cur {
            return Ok(cur);
        }
        cur = up;
    }
    Err(Error::CycleStructure("ascent did not terminate".into()))
}
