//! Exact checks of the Prym–Tyurin criterion for correspondences with fixed
//! points on curves built from branched covers of the line.
//!
//! The pipeline runs bottom-up:
//!
//! * [`perm`]: permutations of sheets, orbits, and the action on k-subsets;
//! * [`covering`]: branch data and Riemann–Hurwitz;
//! * [`fiber`]: fibers of the induced curve under the merged and orbit models;
//! * [`correspondence`]: generic-fiber matrices and their quadratic identities;
//! * [`fixed_points`]: class actions over special fibers, `Δ.D`, and nesting
//!   certificates;
//! * [`report`]: the assembled verdict for a [`scenario::Scenario`].
//!
//! All arithmetic is exact. Nothing here uses floating point.

pub mod correspondence;
pub mod covering;
pub mod error;
pub mod fiber;
pub mod fixed_points;
pub mod matrix;
pub mod output;
pub mod perm;
pub mod report;
pub mod scenario;

pub use error::{Error, Result};
pub use fiber::{FiberKind, FiberModel};
pub use perm::Permutation;
pub use report::{assemble, PrymReport};
pub use scenario::{ModelChoice, Scenario};
