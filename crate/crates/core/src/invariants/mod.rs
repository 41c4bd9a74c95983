//! Knot invariants: Kauffman bracket and Jones polynomial, Gauss-diagram
//! formulas for v2 and v3, a skein oracle for the second Conway coefficient,
//! fingerprints and formal sums.

pub mod arrows;
pub mod bracket;
mod conway;
mod fingerprint;
mod finite_type;
mod jones;
mod poly;

pub use bracket::{kauffman_bracket, kauffman_bracket_guarded};
pub use conway::{conway_a2_oracle, conway_a2_oracle_guarded};
pub use fingerprint::{evaluate_on_sum, fingerprint, FormalSum, InvariantDescriptor, KnotFingerprint};
pub use finite_type::{v2, v2_gauss, v3, v3_gauss};
pub use jones::{
    determinant, expansion_of, jones, jones_expansion, jones_state_sum, jones_state_sum_guarded,
};
pub use poly::LaurentPolynomial;
