//! The key exchange: system parameters, keys, key generation, shared-secret
//! derivation and public-key validation.

mod exchange;
mod keys;
mod sysparams;
mod validate;

pub use exchange::{act, derive_shared, keygen, public_key, random_private_key, PeerCheck};
pub use keys::{PrivateKey, PublicKey};
pub use sysparams::SystemParams;
pub use validate::{
    order_threshold, rational_two_torsion, two_torsion_decides, validate_endo_level, validate_order,
    validate_public_key, Validity, ORDER_BUDGET,
};

#[cfg(test)]
pub(crate) fn toy7() -> SystemParams {
    SystemParams::parse(include_str!("../../params/toy7.params")).unwrap()
}
