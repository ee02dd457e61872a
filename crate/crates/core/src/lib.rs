//! Statistical inference toolkit built around two complementary engines:
//!
//! * an error-statistical engine ([`hypothesis`], [`severity`]) that computes
//!   frequentist tests on summary statistics and post-data severity
//!   assessments of directional claims, and
//! * a Bayes-factor engine ([`bayes`]) that compares hypotheses through
//!   marginal likelihoods under point, grid, and continuous priors, including
//!   the default (JZS/Cauchy) t-test and informed-prior reanalyses.
//!
//! A seeded Monte Carlo module ([`simulate`]) demonstrates the long-run
//! behavior of p-values: uniformity under the null, skew under true effects,
//! error inflation from optional stopping, and familywise error rates.
//! Everything rests on [`numeric`], a self-contained layer of special
//! functions, adaptive quadrature, and reproducible random-number streams.

pub mod bayes;
pub mod error;
pub mod hypothesis;
pub mod numeric;
pub mod severity;
pub mod simulate;

pub use error::{Error, Result};
