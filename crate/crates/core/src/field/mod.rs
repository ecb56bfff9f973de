//! Grids, sampled fields, regions, norms, finite differences and cutoffs.

pub mod bump;
pub mod deriv;
pub mod grid;
pub mod interp;
pub mod io;
pub mod norms;
pub mod region;
pub mod scalar;

pub use bump::{make_bump, BumpProfile};
pub use deriv::{bilaplacian, derivative, gradient, gradient_norm, hessian_norm, laplacian, multi_indices, MultiIndex};
pub use grid::{Grid2D, Point};
pub use interp::sample;
pub use norms::{l2_norm, sup_norm, weighted_l2, weighted_l2_vector};
pub use region::{Cube, Region};
pub use scalar::ScalarField;
