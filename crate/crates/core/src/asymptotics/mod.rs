//! Binomial expansion of `Φ_λ`, Vershik-Kerov parameters, extended
//! specializations, limit functions, measures, links and finite-`n`
//! convergence experiments.

pub mod binomial;
pub mod experiment;
pub mod floating;
pub mod measure;
pub mod params;
pub mod sequence;
pub mod special;

pub use binomial::*;
pub use experiment::*;
pub use floating::*;
pub use measure::*;
pub use params::*;
pub use sequence::*;
pub use special::*;
