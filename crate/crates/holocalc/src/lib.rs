//! Exact-arithmetic exterior calculus for circle-invariant Spin(7)/G2
//! geometry on flat charts, plus the combinatorial and spectral calculators
//! that go with it: Seifert-chart adapted operators, G2 type decomposition
//! and torsion, the circle-invariant Spin(7) ansatz and its linearisation,
//! a nearly-Kahler cone rewrite engine, indicial-root and weighted-
//! cohomology arithmetic, and orbifold example catalogs.
//!
//! All core identities are verified over exact rationals; a small f64
//! "shadow" evaluator backs the order-of-vanishing slope tests that cannot
//! stay rational.

pub mod scalar;
pub mod poly;
pub mod linalg;
pub mod form;
pub mod metric;
pub mod seifert;
pub mod g2;
pub mod cones;
pub mod shadow;
pub mod spin7;
pub mod spectral;
pub mod catalog;
pub mod report;
pub mod verify;

pub use form::{ExteriorError, Form};
pub use metric::Metric;
pub use poly::Poly;
pub use scalar::Scalar;
