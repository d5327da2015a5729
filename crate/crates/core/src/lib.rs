//! Exact Jack and shifted (interpolation) Jack polynomials of partitions and
//! signatures, their generating-function identities, and the Vershik-Kerov
//! asymptotics of normalized Jack functions.
//!
//! Module map:
//!
//! * [`partition`]: partitions, signatures, cell statistics and the scalar
//!   combinatorial quantities (hooks, shifted factorials, `z_λ`, `𝔑²`).
//! * [`jack`]: branching-rule Jack polynomials, the Gram-Schmidt oracle,
//!   principal specializations, normalized functions and the Cauchy identity.
//! * [`shifted`]: shifted Jack polynomials, the interpolation oracle and the
//!   `G`/`G*` generating functions.
//! * [`asymptotics`]: binomial expansion, VK parameters, extended
//!   specializations, limit functions, measures, links and experiments.
//! * [`suites`]: exact identity suites over finite families.
//!
//! Exact quantities are [`Q`] (arbitrary precision rationals); the floating
//! paths of the asymptotics module use `f64` and [`num_complex::Complex64`].

pub mod asymptotics;
pub mod error;
pub mod jack;
pub mod linalg;
pub mod par;
pub mod partition;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod shifted;
pub mod suites;

pub use error::{Error, Result};
pub use partition::{Cell, Partition, Signature, Theta};
pub use scalar::Q;
