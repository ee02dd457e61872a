//! Self-contained numeric foundation: scalar special functions, adaptive
//! Gauss–Kronrod quadrature, and deterministic seeded random-number streams.

pub mod quadrature;
pub mod rng;
pub mod special;

pub use quadrature::{integrate, Domain, QuadratureResult, DEFAULT_TOL};
pub use rng::{standard_normal_draws, NormalSampler, RngStream};
