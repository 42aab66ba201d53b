//! Brute-force ground truth for toy instances: class numbers and class
//! orders from reduced binary quadratic forms, and exhaustive orbits.

mod forms;
mod orbit;

pub use forms::{class_number, form_class_order, form_order, prime_form, reduced_forms, QuadForm, DISC_BOUND};
pub use orbit::{enumerate_orbit, step_once, verify, Orbit, VerifyReport, ORBIT_FIELD_BITS, ORBIT_MAX};
