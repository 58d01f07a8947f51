//! Exact and numerical machinery for conjugation-generated norms on simple
//! groups and for Gambaudo-Ghys quasi-morphisms on area-preserving maps of
//! the unit disk.
//!
//! The crate is split into four layers:
//!
//! - [`permgroup`]: alternating groups, conjugation-generated norms `q_K`,
//!   the metric on symmetrized conjugacy classes and a quasi-isometry
//!   distortion diagnostic.
//! - [`braid`]: braid words, the `PSL(2,Z)` quotient of `B_3`, the
//!   homogeneous Rademacher quasi-morphism and linking numbers.
//! - [`disk`]: twist maps and Hamiltonian flows on the disk, the Calabi
//!   invariant, the shrinking operator and braid extraction from
//!   trajectories.
//! - [`gg`]: Monte Carlo estimation of the averaged quasi-morphism, scaling
//!   checks and metric lower-bound certificates.

pub mod braid;
pub mod disk;
mod error;
pub mod gg;
pub mod perm;
pub mod permgroup;
pub mod rng;

pub use error::{Error, Result};
pub use perm::Permutation;
