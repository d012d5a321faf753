//! Closed-form S-matrix of the symmetric rectangular potential.
//!
//! Region II carries the interior momentum `K = √(k² + 2mγU)`. The literal
//! denominators
//!
//! - `D₊ = k cos Ka − iK sin Ka`
//! - `D₋ = K cos Ka − ik sin Ka`
//! - `D = 2kK cos 2Ka − i(k² + K²) sin 2Ka = 2 D₊ D₋`
//!
//! are exposed as written. `D₋` and `D` are odd in `K` and vanish at the
//! branch point `K = 0` where the S-matrix itself stays finite, so pole
//! searches use the reduced functions returned by [`jost`]: `D₊` and
//! `D₋ / K`, both entire and even in `K`.

// Unused once std is linked (dev builds); required for no_std math.
#[allow(unused_imports)]
use num_traits::Float;
mod matrix;
mod relations;
mod transfer;


pub use matrix::Matrix2;
pub use relations::{factorisation_residual, verify_relations, RelationResiduals};
pub use transfer::{transfer_matrix_s, Layer};

use crate::special::{kernel, Kernel};
use crate::{Channel, ComplexCoupling, Error, PotentialSpec, Result, C64};

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Interior momentum `K` together with the exact `K²` it was taken from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorMomentum {
    value: C64,
    squared: C64,
}

impl InteriorMomentum {
    pub fn value(&self) -> C64 {
        self.value
    }

    pub fn squared(&self) -> C64 {
        self.squared
    }

    /// The other branch `-K`.
    pub fn flipped(&self) -> Self {
        Self {
            value: -self.value,
            squared: self.squared,
        }
    }
}

/// Principal branch of `√(k² + 2mγU)`.
pub fn interior_momentum(k: C64, coupling: ComplexCoupling, spec: &PotentialSpec) -> InteriorMomentum {
    let squared = k * k + coupling.gamma() * (2.0 * spec.mass() * spec.depth());
    InteriorMomentum {
        value: squared.sqrt(),
        squared,
    }
}

pub fn denom_plus(k: C64, coupling: ComplexCoupling, spec: &PotentialSpec) -> C64 {
    denom_plus_for(k, interior_momentum(k, coupling, spec), spec.half_width())
}

pub fn denom_minus(k: C64, coupling: ComplexCoupling, spec: &PotentialSpec) -> C64 {
    denom_minus_for(k, interior_momentum(k, coupling, spec), spec.half_width())
}

/// Common denominator of the full 2×2 S-matrix.
pub fn denom_full(k: C64, coupling: ComplexCoupling, spec: &PotentialSpec) -> C64 {
    denom_full_for(k, interior_momentum(k, coupling, spec), spec.half_width())
}

pub fn denom_plus_for(k: C64, interior: InteriorMomentum, half_width: f64) -> C64 {
    let big = interior.value;
    let z = big * half_width;
    k * z.cos() - I * big * z.sin()
}

pub fn denom_minus_for(k: C64, interior: InteriorMomentum, half_width: f64) -> C64 {
    let big = interior.value;
    let z = big * half_width;
    big * z.cos() - I * k * z.sin()
}

pub fn denom_full_for(k: C64, interior: InteriorMomentum, half_width: f64) -> C64 {
    let big = interior.value;
    let z = big * (2.0 * half_width);
    k * big * 2.0 * z.cos() - I * (k * k + interior.squared) * z.sin()
}

/// A reduced pole-defining function and its derivatives at one point.
///
/// All fields share the positive factor `exp(-log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostValue {
    pub value: C64,
    pub d_k: C64,
    pub d_kk: C64,
    pub d_alpha: C64,
    /// Derivative with respect to the depth `U`.
    pub d_depth: C64,
    pub log_scale: f64,
}

impl JostValue {
    /// Distance estimate `|D / D'|` to the nearest zero.
    pub fn newton_distance(&self) -> f64 {
        let d = self.d_k.norm();
        if d == 0.0 {
            f64::INFINITY
        } else {
            self.value.norm() / d
        }
    }

    fn product(p: &JostValue, m: &JostValue) -> JostValue {
        JostValue {
            value: p.value * m.value * 2.0,
            d_k: (p.d_k * m.value + p.value * m.d_k) * 2.0,
            d_kk: (p.d_kk * m.value + p.d_k * m.d_k * 2.0 + p.value * m.d_kk) * 2.0,
            d_alpha: (p.d_alpha * m.value + p.value * m.d_alpha) * 2.0,
            d_depth: (p.d_depth * m.value + p.value * m.d_depth) * 2.0,
            log_scale: p.log_scale + m.log_scale,
        }
    }
}

/// Reduced denominator whose zeros are exactly the S-matrix poles of
/// `channel`: `D₊` for [`Channel::Plus`], `D₋/K` for [`Channel::Minus`] and
/// `D/K = 2 D₊ D₋/K` for [`Channel::Full`].
pub fn jost(channel: Channel, k: C64, coupling: ComplexCoupling, spec: &PotentialSpec) -> JostValue {
    let a = spec.half_width();
    let gamma = coupling.gamma();
    let two_m = 2.0 * spec.mass();
    let w = (k * k + gamma * (two_m * spec.depth())) * (a * a);
    let kr = kernel(w);
    // dw/dk, dw/dα, dw/dU
    let w_k = k * (2.0 * a * a);
    let w_alpha = I * gamma * (two_m * spec.depth() * a * a);
    let w_depth = gamma * (two_m * a * a);
    match channel {
        Channel::Plus => plus_parts(&kr, k, w, a, w_k, w_alpha, w_depth),
        Channel::Minus => minus_parts(&kr, k, a, w_k, w_alpha, w_depth),
        Channel::Full => JostValue::product(
            &plus_parts(&kr, k, w, a, w_k, w_alpha, w_depth),
            &minus_parts(&kr, k, a, w_k, w_alpha, w_depth),
        ),
    }
}

// D₊ = k c − (i/a) w s
fn plus_parts(kr: &Kernel, k: C64, w: C64, a: f64, w_k: C64, w_alpha: C64, w_depth: C64) -> JostValue {
    let value = k * kr.c - I * w * kr.s / a;
    let d_w = k * kr.dc() - I * (kr.s + w * kr.ds) / a;
    let d_w_explicit_k = kr.dc();
    let d_ww = k * kr.ddc() - I * (kr.ds * 2.0 + w * kr.dds) / a;
    let d_k = kr.c + d_w * w_k;
    // d/dk [c + D_w w_k] with w_kk = 2a²
    let d_kk = kr.dc() * w_k + (d_w_explicit_k + d_ww * w_k) * w_k + d_w * (2.0 * a * a);
    JostValue {
        value,
        d_k,
        d_kk,
        d_alpha: d_w * w_alpha,
        d_depth: d_w * w_depth,
        log_scale: kr.log_scale,
    }
}

// D₋/K = c − i a k s
fn minus_parts(kr: &Kernel, k: C64, a: f64, w_k: C64, w_alpha: C64, w_depth: C64) -> JostValue {
    let value = kr.c - I * k * kr.s * a;
    let d_w = kr.dc() - I * k * kr.ds * a;
    let d_w_explicit_k = -I * kr.ds * a;
    let d_ww = kr.ddc() - I * k * kr.dds * a;
    let d_k = -I * kr.s * a + d_w * w_k;
    let d_kk = -I * kr.ds * a * w_k + (d_w_explicit_k + d_ww * w_k) * w_k + d_w * (2.0 * a * a);
    JostValue {
        value,
        d_k,
        d_kk,
        d_alpha: d_w * w_alpha,
        d_depth: d_w * w_depth,
        log_scale: kr.log_scale,
    }
}

/// Either a parity-channel element or the full 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SMatrixValue {
    Channel(C64),
    Full(Matrix2),
}

impl SMatrixValue {
    pub fn scalar(&self) -> Option<C64> {
        match self {
            SMatrixValue::Channel(v) => Some(*v),
            SMatrixValue::Full(_) => None,
        }
    }

    pub fn matrix(&self) -> Option<Matrix2> {
        match self {
            SMatrixValue::Channel(_) => None,
            SMatrixValue::Full(m) => Some(*m),
        }
    }

    /// `Ŝ = U S Uᵗ`; diagonal `(S₊, S₋)` for the symmetric well.
    pub fn to_parity_basis(&self) -> Option<Matrix2> {
        let u = Matrix2::parity_transform();
        self.matrix().map(|s| u * s * u.transpose())
    }
}

fn pole_guard(k: C64, big: C64, den: C64) -> Result<()> {
    if den.norm() < 1e-13 * (1.0 + k.norm() + big.norm()) {
        return Err(Error::PoleHit {
            k,
            magnitude: den.norm(),
        });
    }
    Ok(())
}

struct Pieces {
    kr: Kernel,
    w: C64,
    phase: C64,
    big: C64,
}

fn pieces(k: C64, coupling: ComplexCoupling, spec: &PotentialSpec) -> Pieces {
    let a = spec.half_width();
    let interior = interior_momentum(k, coupling, spec);
    let w = interior.squared * (a * a);
    Pieces {
        kr: kernel(w),
        w,
        phase: (-I * k * (2.0 * a)).exp(),
        big: interior.value,
    }
}

/// `S₊ = e^{−2ika} (k cos Ka + iK sin Ka) / (k cos Ka − iK sin Ka)`.
pub fn s_plus(k: C64, coupling: ComplexCoupling, spec: &PotentialSpec) -> Result<SMatrixValue> {
    let a = spec.half_width();
    let p = pieces(k, coupling, spec);
    let odd = I * p.w * p.kr.s / a;
    let den = k * p.kr.c - odd;
    pole_guard(k, p.big, den)?;
    Ok(SMatrixValue::Channel(p.phase * (k * p.kr.c + odd) / den))
}

/// `S₋ = e^{−2ika} (K cos Ka + ik sin Ka) / (K cos Ka − ik sin Ka)`.
pub fn s_minus(k: C64, coupling: ComplexCoupling, spec: &PotentialSpec) -> Result<SMatrixValue> {
    let a = spec.half_width();
    let p = pieces(k, coupling, spec);
    let odd = I * k * p.kr.s * a;
    let den = p.kr.c - odd;
    pole_guard(k, p.big, den)?;
    Ok(SMatrixValue::Channel(p.phase * (p.kr.c + odd) / den))
}

/// Full S-matrix in the left/right scattering basis.
pub fn s_full(k: C64, coupling: ComplexCoupling, spec: &PotentialSpec) -> Result<SMatrixValue> {
    let a = spec.half_width();
    let p = pieces(k, coupling, spec);
    let plus = k * p.kr.c - I * p.w * p.kr.s / a;
    let minus = p.kr.c - I * k * p.kr.s * a;
    // D/K, carrying the scale factor twice
    let den = plus * minus * 2.0;
    pole_guard(k, p.big, den)?;
    let scale = (-2.0 * p.kr.log_scale).exp();
    let diag = p.phase * k * (2.0 * scale) / den;
    // (k² − K²) sin 2Ka / K = (k² − K²) 2a s c
    let big_sq = p.w / (a * a);
    let off = -I * p.phase * (k * k - big_sq) * p.kr.s * p.kr.c * (2.0 * a) / den;
    Ok(SMatrixValue::Full(Matrix2([[diag, off], [off, diag]])))
}

/// S-matrix of the potential's own channel.
pub fn s_matrix(k: C64, coupling: ComplexCoupling, spec: &PotentialSpec) -> Result<SMatrixValue> {
    match spec.channel() {
        Channel::Plus => s_plus(k, coupling, spec),
        Channel::Minus => s_minus(k, coupling, spec),
        Channel::Full => s_full(k, coupling, spec),
    }
}
