//! Pole-location predictors built on the exact transseries data.
//!
//! The pipeline: a Gauss-Legendre panel grid on [2.25, 40] carries the
//! numerical h_0 fixture, the homogeneous basis y_-+ of the linearized
//! equation, and the level hierarchy h_k assembled from the variation of
//! parameters kernel.  On top of that sit the asymptotic location formulas:
//! the Cauchy-Hadamard radius of the level sequence, the closed-form
//! bracket roots, and the divergence scan that pins down where the
//! transseries stops converging, which is where the first real pole sits.

pub mod basis;
pub mod fixture;
pub mod gamma;
pub mod grid;
pub mod hier;
pub mod rows;

pub use basis::{build_basis, BasisError, HomogeneousBasis};
pub use fixture::{build_fixture, H0Fixture};
pub use grid::PanelGrid;
pub use hier::{build_hk, Hierarchy, HkGrid};
pub use rows::{row_opt, row_opt_cx, RowEval};
