//! Locating S-matrix poles: sign-change scans on the imaginary axis for real
//! couplings, complex Newton refinement anywhere in the plane, and
//! argument-principle counts that certify nothing was missed.

mod axis;
mod count;
mod newton;

pub use axis::{axis_function, default_kappa_range, scan_axis};
pub use count::{count_zeros, count_zeros_nudged, CountRegion};
pub use newton::{newton_refine, newton_solve, NewtonOutcome};

use crate::{Channel, ComplexCoupling, C64};

/// Location class of a pole in the momentum plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PoleKind {
    /// Positive imaginary axis.
    Bound,
    /// Negative imaginary axis.
    Virtual,
    /// Fourth quadrant.
    Resonance,
    /// Third quadrant, mirror partner of a resonance.
    Antiresonance,
    /// `k ≈ 0`.
    Threshold,
    /// Two coalesced poles.
    DoubleZero,
    /// Upper half plane off the axis; only reachable for complex couplings.
    UpperHalfPlane,
}

impl PoleKind {
    pub fn classify(k: C64, multiplicity: u32, tol_axis: f64) -> Self {
        if multiplicity >= 2 {
            PoleKind::DoubleZero
        } else if k.norm() < tol_axis {
            PoleKind::Threshold
        } else if k.re.abs() < tol_axis {
            if k.im > 0.0 {
                PoleKind::Bound
            } else {
                PoleKind::Virtual
            }
        } else if k.im < 0.0 {
            if k.re > 0.0 {
                PoleKind::Resonance
            } else {
                PoleKind::Antiresonance
            }
        } else {
            PoleKind::UpperHalfPlane
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PoleKind::Bound => "bound",
            PoleKind::Virtual => "virtual",
            PoleKind::Resonance => "resonance",
            PoleKind::Antiresonance => "antiresonance",
            PoleKind::Threshold => "threshold",
            PoleKind::DoubleZero => "double_zero",
            PoleKind::UpperHalfPlane => "upper_half_plane",
        }
    }
}

/// One refined S-matrix pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub k: C64,
    /// [`Channel::Plus`] or [`Channel::Minus`].
    pub channel: Channel,
    pub coupling: ComplexCoupling,
    pub kind: PoleKind,
    pub multiplicity: u32,
    /// Scaled `|D|` at `k`.
    pub residual: f64,
}

/// Residual bound every accepted pole satisfies.
pub fn residual_bound(k: C64) -> f64 {
    1e-10 * (1.0 + k.norm())
}


#[cfg(test)]
mod scan_tests;
