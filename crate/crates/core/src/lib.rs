//! Geometry kernel for rotationally symmetric model spaces.
//!
//! A model space is `(0, Λ) × S^{n-1}` with metric `dr² + w(r)² dΘ²`, where
//! the warping function `w` is given as a small expression language. This
//! crate evaluates such warps with exact third-order jets, computes the
//! intrinsic geometry of the model (curvatures, distance spheres, volumes,
//! isoperimetric profile), and integrates the `w`-weighted quantities over
//! discretized submanifolds immersed in a model ambient so that the
//! Jellett–Minkowski identity and its consequences can be checked
//! numerically.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command line live in the `warpgeo` crate.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod expr;
pub mod immersion;
pub mod interp;
pub(crate) mod math;
pub mod model;
pub mod numerics;
pub mod special;

pub use error::{Error, Result};
pub use expr::{Expr, Jet3, Preset, WarpFunction};
pub use model::{ModelSpace, RadialGrid};
pub use numerics::Tolerance;
