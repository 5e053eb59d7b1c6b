// Kronrod constants are kept at their published precision, and `!(a < b)`
// is used on purpose so that NaN fails validation.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod dirac;
pub mod evolution;
pub mod expansion;
pub mod par;
pub mod polynomials;
pub mod quadrature;
pub mod stable_dist;
