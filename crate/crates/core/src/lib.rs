//! Reconstruction of compactly supported acoustic sources from
//! multi-frequency near-field scattered fields.
//!
//! The pipeline is:
//!
//! 1. [`forward::synthesize`] integrates the 2D outgoing Green's function
//!    against a [`sources::SourceModel`] for every sensor on a circle and every
//!    wavenumber of a uniform grid, optionally perturbed by
//!    [`forward::add_noise`].
//! 2. [`reconstruct::indicator_grid`] evaluates the indicator
//!
//!    ```text
//!    I(z) = R/(2 pi) int_0^{2 pi} [(z-x)/|z-x| . nu(x)]
//!           int_0^inf k^2 [ Im u(x,k) Y1(k|z-x|) + Re u(x,k) J1(k|z-x|) ] dk dtheta
//!    ```
//!
//!    which equals the source itself at every point inside the measurement
//!    circle.
//! 3. [`verify`] checks the identities behind that equality and measures
//!    `|I - S|`.

// Range checks are written as negated comparisons so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod forward;
pub mod geometry;
pub mod grid;
pub mod heatmap;
pub mod io;
pub mod quadrature;
pub mod reconstruct;
pub mod sources;
pub mod specfun;
pub mod sum;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::Point;
pub use grid::{RealGrid, SamplingGrid};
