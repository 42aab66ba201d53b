//! Parameter construction: eigenvalue analysis, prime classification,
//! toy curve search, maximal-order adjustment and walk-bound optimization.

mod bounds;
mod build;
mod classify;
mod eigen;
mod search;

pub use bounds::{keyspace_size, max_walk_cost, optimize_bounds, optimize_bounds_target, Bounds, CostModel};
pub use build::{active_methods, ascend_to_maximal, build_params, group_exponent, log2_ceil, manifest_digest, BoundsChoice, BuildOptions};
pub use classify::{classify_primes, ClassifyOptions, Partition};
pub use eigen::{eigenvalues_mod_ell, EigenCase};
pub use search::{has_rational_torsion, search_toy_curve, Constraints, FoundCurve};
