//! Exact computational toolkit for wall-crossing mutations of Landau-Ginzburg
//! superpotentials, Markov-triple indexed almost-toric diagram surgery, lattice
//! enumeration of Maslov index 2 disc classes, and numerical certification of
//! holomorphic disc counts for exotic Lagrangian tori.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! markov ──> atlas ──────────> tropical (pictures)
//!              │
//! laurent ──> chart ──> classes ──> floer
//!                          │
//!                       numeric (certification)
//! ```
//!
//! Everything symbolic is exact over the rationals; everything numeric carries
//! explicit residuals.

pub mod atlas;
pub mod chart;
pub mod classes;
pub mod floer;
pub mod laurent;
pub mod markov;
pub mod numeric;
pub mod preset;
pub mod tropical;

pub use laurent::{LaurentExpr, Monomial, RationalExpr, VarOrder};
