//! Exact counts of cusp forms on the multiplicative group of the rational
//! quaternion algebra ramified at `p` and infinity.
//!
//! Three independent routes produce the same numbers:
//!
//! - [`formulas`]: closed forms for `u_i(p, N)` and `A_i(p, N)`;
//! - [`formulas::a_recurrence`]: Möbius inversion of the divisor-function
//!   recurrence relating the two;
//! - [`ssenum`] + [`repbuild`]: enumeration of supersingular j-invariants in
//!   characteristic `p` and assembly of the `k*`-representation on `S(1, N)`
//!   from automorphism-orbit data.
//!
//! [`heckegraph`] realizes the Hecke operators `T_2`, `T_3` on the
//! supersingular j-line as Brandt matrices and checks their operator-level
//! properties.

pub mod arith;
pub mod error;
pub mod ffield;
pub mod formulas;
pub mod heckegraph;
pub mod linalg;
pub mod repbuild;
pub mod ssenum;
pub mod tables;

pub use error::{Error, Result};
pub use num_rational::BigRational as Rational;
