//! Separable and orbital 2D wavelet transforms.
//!
//! The crate has two halves:
//!
//! - a discrete half ([`filters`], [`dwt`], [`orbital`]) that runs periodic
//!   orthonormal filter banks over images and rotates each level's `lh`/`hl`
//!   pair into an anti-symmetric and a symmetric channel;
//! - a continuous half ([`continuous`]) that samples Meyer wavelets, builds
//!   the anti-symmetric two-scale fields and measures their zero-mean,
//!   unit-energy and admissibility properties numerically.
//!
//! [`imageio`] and [`metrics`] carry the file formats, mosaics and
//! comparison numbers used by the `orbwave` command-line tool.
//!
//! Row and column passes run on rayon when the `parallel` feature is on
//! (the default). Every entry point has a `*_with` twin taking an explicit
//! [`Parallelism`] so both paths can be exercised side by side; results are
//! bit-identical either way.

pub mod continuous;
pub mod decomposition;
pub mod dwt;
mod error;
pub mod filters;
pub mod imageio;
mod matrix;
pub mod metrics;
pub mod orbital;
mod parallel;

pub use decomposition::{AnyPyramid, Decomposition, Scheme};
pub use error::{Error, Result};
pub use matrix::{Image, Matrix};
pub use parallel::Parallelism;
