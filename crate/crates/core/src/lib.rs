//! Exact unit balls of Lipschitz-free spaces over finite metric spaces.
//!
//! A rooted metric space on `n + 1` points gives two mutually polar polytopes
//! in `ℝⁿ`: the free-space ball `B_F(M)`, the convex hull of the molecules
//! `(e_i − e_j)/d(i, j)`, and the Lipschitz ball `B_Lip0(M)`. This crate
//! builds both exactly, computes their volume product, classifies the
//! metric's structure, decides isometry of free spaces, and searches for
//! extremal spaces.

pub mod free_space;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod metric;
pub mod polytope;
pub mod product;
pub mod rational;
pub mod sample;
pub mod structure;

pub use free_space::{free_ball, FreeBallModel};
pub use metric::{MetricSpace, WeightedGraph};
pub use polytope::{HPolytope, Halfspace, VPolytope};
pub use product::{volume_product, VolumeProductReport};
pub use rational::Rational;
