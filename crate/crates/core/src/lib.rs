//! Key exchange from the class group action on ordinary elliptic curves.
//!
//! The crate is organised bottom-up:
//!
//! * [`ff`]: prime fields of arbitrary size and their extensions,
//! * [`poly`]: univariate polynomials, root finding and factoring helpers,
//! * [`ec`]: curve models, point arithmetic, twists and point counting,
//! * [`modpolydb`]: classical modular polynomial tables,
//! * [`isogeny`]: Vélu and Elkies steps, walks and volcano probing,
//! * [`protocol`]: key generation, shared secrets and public-key validation,
//! * [`params`]: prime classification, toy curve search and bound optimisation,
//! * [`oracle`]: brute-force class group ground truth for small instances.

pub mod arith;
pub mod ec;
pub mod error;
pub mod ff;
pub mod isogeny;
pub mod modpolydb;
pub mod oracle;
pub mod params;
pub mod poly;
pub mod protocol;

pub use error::{Error, Result};
