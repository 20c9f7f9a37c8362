//! Numerical kernels for the exponential Choquard bubble on the plane.

pub mod bubble;
pub mod error;
pub mod field;
pub mod quad;
pub mod specfun;
pub mod spectral;
pub mod spheregeo;

pub use error::{Error, Result};
pub use field::{DecayClass, PlaneField, Point};
pub use specfun::AlphaParam;
