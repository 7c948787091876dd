//! Numerical companion for second- and third-order differential
//! subordination implications of the form
//!
//! ```text
//! p + g1 z p' + g2 z^2 p'' (+ g3 z^3 p''') ≺ h   ==>   p ≺ e^z
//! ```
//!
//! for `h` in `{1 + sin z, 1 + z e^z, z + sqrt(1 + z^2), 1 + asinh z}`.
//!
//! The library is generic over the real scalar ([`Scalar`], implemented for
//! `f32` and `f64`); the aliases below fix the usual double-precision types.

// `!(x > 0.0)` is used on purpose so NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod admissibility;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod regions;
pub mod scalar;
pub mod series;
pub mod theorems;

pub use error::{Error, Result};
pub use regions::{Membership, Region, RegionKind, Verdict};
pub use scalar::Scalar;
pub use series::AnalyticSeries;

pub type Complex64 = num_complex::Complex<f64>;
pub type Series = AnalyticSeries<f64>;
pub type Series32 = AnalyticSeries<f32>;
pub type Region64 = Region<f64>;
pub type Region32 = Region<f32>;
