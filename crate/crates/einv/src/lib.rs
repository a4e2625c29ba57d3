//! Exact verification of the cell-decomposition identities behind the
//! e-invariant computations for `Sp(4n+1)` and `Spin(8n-2)`.
//!
//! Everything is exact: rationals, Gaussian rationals and quaternions over
//! them, sparse Clifford elements with rational coefficients. Random inputs
//! come from Pythagorean parametrizations so that every sample point lies
//! exactly on its circle or sphere.

pub mod arith;
pub mod numbers;
pub mod reconstruct;
pub mod report;
pub mod run;
pub mod spin;
pub mod symplectic;

pub use arith::{Gauss, Quat, Rational, Sampler, SpherePoint, UnitCircle};
