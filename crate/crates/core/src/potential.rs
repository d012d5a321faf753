//! Physical parameters of the rectangular potential and the complex
//! coupling that rotates it.

// Unused once std is linked (dev builds); required for no_std math.
#[allow(unused_imports)]
use num_traits::Float;
use core::f64::consts::PI;


use crate::{Error, Result, C64};

/// Which S-matrix block a computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    /// Space-inversion symmetric states, element `S₊`.
    Plus,
    /// Antisymmetric states, element `S₋`.
    Minus,
    /// The full 2×2 matrix in the left/right scattering basis.
    Full,
}

impl Channel {
    pub fn name(self) -> &'static str {
        match self {
            Channel::Plus => "plus",
            Channel::Minus => "minus",
            Channel::Full => "full",
        }
    }

    /// The parity channels whose denominators make up this channel's poles.
    pub fn parity_channels(self) -> &'static [Channel] {
        match self {
            Channel::Plus => &[Channel::Plus],
            Channel::Minus => &[Channel::Minus],
            Channel::Full => &[Channel::Plus, Channel::Minus],
        }
    }
}

/// Potential `V(x) = -γU` on `|x| ≤ a`, zero outside, for a particle of mass
/// `m` in units with `ħ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    mass: f64,
    half_width: f64,
    depth: f64,
    channel: Channel,
}

impl PotentialSpec {
    pub fn new(mass: f64, half_width: f64, depth: f64, channel: Channel) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidSpec("mass must be positive and finite"));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidSpec("half-width must be positive and finite"));
        }
        if !(depth.is_finite() && depth >= 0.0) {
            return Err(Error::InvalidSpec("depth must be non-negative and finite"));
        }
        Ok(Self {
            mass,
            half_width,
            depth,
            channel,
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }

    pub fn channel(&self) -> Channel {
        self.channel
    }

    /// Same well shape and channel at another depth.
    pub fn with_depth(&self, depth: f64) -> Result<Self> {
        Self::new(self.mass, self.half_width, depth, self.channel)
    }

    /// Same well at the same depth, viewed through another channel.
    pub fn with_channel(&self, channel: Channel) -> Self {
        Self { channel, ..*self }
    }

    /// Scale `√(2mU)` of the interior momentum.
    pub fn momentum_scale(&self) -> f64 {
        (2.0 * self.mass * self.depth).sqrt()
    }
}

/// Complex strength `γ = e^{iα}` multiplying the real potential.
///
/// `alpha` is kept unwrapped so that continuation can count how many turns a
/// pole has made.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexCoupling {
    alpha: f64,
    gamma: C64,
}

impl ComplexCoupling {
    pub fn from_alpha(alpha: f64) -> Self {
        let (mut s, mut c) = alpha.sin_cos();
        // snap rounding residue so that α = nπ/2 gives an exact real or
        // imaginary γ; the residue grows with the unwrapped |α|
        let snap = 4.0 * f64::EPSILON * (1.0 + alpha.abs());
        if s.abs() < snap {
            s = 0.0;
            c = c.signum();
        } else if c.abs() < snap {
            c = 0.0;
            s = s.signum();
        }
        Self {
            alpha,
            gamma: C64::new(c, s),
        }
    }

    /// `γ = 1`, the attractive well.
    pub fn attractive() -> Self {
        Self::from_alpha(0.0)
    }

    /// `γ = -1`, the repulsive barrier.
    pub fn repulsive() -> Self {
        Self::from_alpha(PI)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> C64 {
        self.gamma
    }

    pub fn is_real(&self) -> bool {
        self.gamma.im == 0.0
    }

    /// `γ*`, i.e. the coupling at `-α`.
    pub fn conj(&self) -> Self {
        Self::from_alpha(-self.alpha)
    }

    /// Shift `α` by `delta`.
    pub fn rotated(&self, delta: f64) -> Self {
        Self::from_alpha(self.alpha + delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(PotentialSpec::new(0.0, 1.5, 1.0, Channel::Plus).is_err());
        assert!(PotentialSpec::new(1.0, -1.0, 1.0, Channel::Plus).is_err());
        assert!(PotentialSpec::new(1.0, 1.5, -0.1, Channel::Plus).is_err());
        assert!(PotentialSpec::new(1.0, 1.5, f64::NAN, Channel::Plus).is_err());
        assert!(PotentialSpec::new(1.0, 1.5, 0.0, Channel::Minus).is_ok());
    }

    #[test]
    fn coupling_limits() {
        assert_eq!(ComplexCoupling::attractive().gamma(), C64::new(1.0, 0.0));
        assert_eq!(ComplexCoupling::repulsive().gamma(), C64::new(-1.0, 0.0));
        assert_eq!(ComplexCoupling::from_alpha(-PI).gamma(), C64::new(-1.0, 0.0));
        assert_eq!(ComplexCoupling::from_alpha(3.0 * PI).gamma(), C64::new(-1.0, 0.0));
        for n in -12..=12 {
            assert!(ComplexCoupling::from_alpha(n as f64 * PI).is_real(), "n = {n}");
        }
        assert!(ComplexCoupling::repulsive().is_real());
        assert!(!ComplexCoupling::from_alpha(0.3).is_real());
    }

    #[test]
    fn coupling_has_unit_modulus() {
        for i in 0..1000 {
            let alpha = -40.0 + 0.0817 * i as f64;
            let g = ComplexCoupling::from_alpha(alpha).gamma();
            assert!((g.norm() - 1.0).abs() < 1e-14, "alpha = {alpha}");
        }
    }
}
