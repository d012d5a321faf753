//! Pole spectrum of the S-matrix for the one-dimensional symmetric
//! rectangular potential, with pole trajectories under the complex rotation
//! `V -> e^{iα} V` of the potential strength.
//!
//! The crate is `no_std` (with `alloc`) and purely computational: every
//! operation is a pure function of its arguments. File formats, the CLI and
//! plotting live in the `rectpole` companion crate.
//!
//! Module map:
//!
//! - [`potential`]: physical parameters and the complex coupling `γ = e^{iα}`.
//! - [`smatrix`]: closed-form S-matrix elements, their pole-defining
//!   denominators, a transfer-matrix oracle and the analyticity relations.
//! - [`rootfinder`]: imaginary-axis scans, complex Newton refinement and
//!   argument-principle zero counting.
//! - [`trajectory`]: predictor-corrector continuation of poles in `α`.
//! - [`chart`]: full pole charts, critical depths, bound thresholds and
//!   depth sweeps.

#![no_std]
// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod chart;
pub mod error;
pub mod potential;
pub mod rootfinder;
pub mod settings;
pub mod smatrix;
pub mod trajectory;

mod special;

pub use error::{Error, Result};
pub use potential::{Channel, ComplexCoupling, PotentialSpec};
pub use settings::Settings;

/// Complex double used throughout the crate.
pub type C64 = num_complex::Complex<f64>;

/// The unique double-zero point `k_c = -i/a` of the pole-defining
/// denominators of both channels.
pub fn collision_momentum(half_width: f64) -> C64 {
    C64::new(0.0, -1.0 / half_width)
}
