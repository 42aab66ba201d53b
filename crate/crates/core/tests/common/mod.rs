#![allow(dead_code)]

use crs_core::ec::{curve_with_trace, Curve};
use crs_core::ff::{Fp, PrimeField};
use crs_core::oracle::enumerate_orbit;
use crs_core::protocol::{PublicKey, SystemParams};
use rand::Rng;
use std::path::PathBuf;

/// Toy parameter sets shipped with the crate, one per fundamental discriminant.
pub const TOY_SETS: [&str; 8] = [
    "toy7", "volcano6007", "toy563", "toy619", "toy659", "toy677", "toy853", "toy997",
];

pub fn params_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("params")
}

pub fn load(name: &str) -> SystemParams {
    let path = params_dir().join(format!("{name}.params"));
    let src = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    SystemParams::parse(&src).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn alpha(params: &SystemParams) -> PublicKey {
    let src = std::fs::read_to_string(params_dir().join("alpha.pub")).unwrap();
    PublicKey::parse(&params.field, &src).unwrap()
}

/// Orbit vertices as curves carrying the system trace.
pub fn orbit_curves<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> Vec<Curve<PrimeField>> {
    let orbit = enumerate_orbit(params, rng).unwrap();
    orbit.vertices.iter().map(|j| curve_with_trace(&params.field, j, &params.t, rng).unwrap()).collect()
}

pub fn j_of(c: &Curve<PrimeField>) -> Fp {
    c.j_invariant()
}
