//! Transfer-matrix S-matrix for a piecewise-constant potential, used as an
//! independent numerical check of the closed forms.
//!
//! Inside each layer `(ψ, ψ')` is propagated with
//! `[[cos Kd, sin(Kd)/K], [−K sin Kd, cos Kd]]`, written through the even
//! kernel so a layer with `K = 0` takes the linear-solution limit. The
//! layers are laid out contiguously and centred on `x = 0`.


// Unused once std is linked (dev builds); required for no_std math.
#[allow(unused_imports)]
use num_traits::Float;
use super::{Matrix2, SMatrixValue};
use crate::special::kernel;
use crate::{ComplexCoupling, Error, Result, C64};

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// One slab of constant potential `γ · potential` and the given width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    pub width: f64,
    pub potential: f64,
}

impl Layer {
    pub fn new(width: f64, potential: f64) -> Self {
        Self { width, potential }
    }
}

fn propagator(k: C64, coupling: ComplexCoupling, mass: f64, layer: &Layer) -> Matrix2 {
    let big_sq = k * k - coupling.gamma() * (2.0 * mass * layer.potential);
    let d = layer.width;
    let kr = kernel(big_sq * (d * d));
    let f = kr.log_scale.exp();
    let c = kr.c * f;
    // sin(Kd)/K = d s(w)
    let sk = kr.s * f * d;
    Matrix2([[c, sk], [-big_sq * sk, c]])
}

/// Plane-wave basis `(e^{ikx}, e^{−ikx})` to `(ψ, ψ')` at position `x`.
fn plane_waves(k: C64, x: f64) -> Matrix2 {
    let ep = (I * k * x).exp();
    let em = (-I * k * x).exp();
    Matrix2([[ep, em], [I * k * ep, -I * k * em]])
}

fn plane_waves_inverse(k: C64, x: f64) -> Matrix2 {
    let ep = (I * k * x).exp();
    let em = (-I * k * x).exp();
    let inv2ik = (I * k * 2.0).inv();
    Matrix2([[em * 0.5, em * inv2ik], [ep * 0.5, -ep * inv2ik]])
}

/// Full S-matrix `[[S₁₁, S₁₂], [S₂₁, S₂₂]]` of the layered potential.
pub fn transfer_matrix_s(
    k: C64,
    coupling: ComplexCoupling,
    mass: f64,
    layers: &[Layer],
) -> Result<SMatrixValue> {
    if layers.is_empty() {
        return Err(Error::InvalidArgument("at least one layer is required"));
    }
    if layers
        .iter()
        .any(|l| !(l.width.is_finite() && l.width > 0.0 && l.potential.is_finite()))
    {
        return Err(Error::InvalidArgument("layers need positive finite widths"));
    }
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::InvalidArgument("mass must be positive"));
    }
    if k.norm() == 0.0 {
        return Err(Error::ZeroMomentum);
    }
    let total: f64 = layers.iter().map(|l| l.width).sum();
    let mut prop = Matrix2::identity();
    for layer in layers {
        prop = propagator(k, coupling, mass, layer) * prop;
    }
    let m = plane_waves_inverse(k, 0.5 * total) * prop * plane_waves(k, -0.5 * total);
    let m22 = m.get(1, 1);
    if m22.norm() == 0.0 || !m22.is_finite() {
        return Err(Error::PoleHit {
            k,
            magnitude: m22.norm(),
        });
    }
    let det = m.get(0, 0) * m22 - m.get(0, 1) * m.get(1, 0);
    let s11 = det / m22;
    let s21 = -m.get(1, 0) / m22;
    let s12 = m.get(0, 1) / m22;
    let s22 = m22.inv();
    Ok(SMatrixValue::Full(Matrix2([[s11, s12], [s21, s22]])))
}
