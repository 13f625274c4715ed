//! Exact arithmetic for Jacobi-sum products over finite fields.
//!
//! The crate computes, with no floating point anywhere on the result path:
//!
//! * the field `F_q` with a canonical primitive element and discrete-log
//!   tables ([`field`]),
//! * cyclotomic integers `Z[ζ_{q-1}]` with Galois action and reduction onto
//!   `F_q` ([`cyclo`]),
//! * Jacobi sums, the eigen-sums `λ_k` and the product `R_q` ([`chars`]),
//! * the matrix `A_q = [φ(s_i + s_j)]` and fraction-free determinants
//!   ([`matrix`]),
//! * the trace of `Y^2 = X^3 + X` and the decomposition `p = c^2 + 4d^2`
//!   ([`curve`]),
//! * the elementary congruences and parity lemmas used around these objects
//!   ([`elementary`]),
//! * per-q reports and verification sweeps ([`verify`]).

pub mod arith;
pub mod chars;
pub mod curve;
pub mod cyclo;
pub mod elementary;
pub mod error;
pub mod field;
pub mod matrix;
pub mod verify;

pub use chars::{compute_rq, Character, RqResult};
pub use cyclo::{CycloInt, CycloRing, ReductionMap};
pub use error::{Error, Result};
pub use field::{FqElement, FqField};
pub use matrix::MatrixZ;
