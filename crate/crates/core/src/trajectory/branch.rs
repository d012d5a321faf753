//! Local model at the double zero `k_c = -i/a`.
//!
//! Near a coalesced pair `D ≈ D + D_k·x + ½·D_kk·x² + D_p·Δp` with
//! `x = k − k_c` and `p` either `α` or the depth `U`. With `D = D_k = 0` this
//! is the square-root branching `x = ±√(−2·D_p·Δp/D_kk)`; the small residual
//! `D`, `D_k` of a numerically located `k_c` are kept so the model stays
//! exact to second order.

use crate::rootfinder::{newton_refine, Pole, PoleKind};
use crate::settings::Settings;
use crate::smatrix::jost;
use crate::{collision_momentum, Channel, ComplexCoupling, Error, PotentialSpec, Result, C64};

/// Parameter the pair is unfolded in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parameter {
    Alpha,
    Depth,
}

/// Second-order expansion of the reduced denominator around `k_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalModel {
    pub k_c: C64,
    pub parameter: Parameter,
    pub value: C64,
    pub d_k: C64,
    pub d_kk: C64,
    pub d_param: C64,
}

pub fn local_model(
    channel: Channel,
    k_c: C64,
    parameter: Parameter,
    coupling: ComplexCoupling,
    spec: &PotentialSpec,
) -> LocalModel {
    let j = jost(channel, k_c, coupling, spec);
    LocalModel {
        k_c,
        parameter,
        value: j.value,
        d_k: j.d_k,
        d_kk: j.d_kk,
        d_param: match parameter {
            Parameter::Alpha => j.d_alpha,
            Parameter::Depth => j.d_depth,
        },
    }
}

/// The two model roots after a parameter change `delta`, resonance side
/// (larger `Re k`, then larger `Im k`) first.
pub fn branch_at_double_zero(model: &LocalModel, delta: f64) -> Result<[C64; 2]> {
    let scale = model.value.norm() + model.d_k.norm() + model.d_param.norm();
    if !(model.d_kk.norm() > 1e-8 * scale) || !model.d_kk.is_finite() {
        return Err(Error::ModelInvalid);
    }
    let b = model.d_k;
    let c = model.value + model.d_param * delta;
    let disc = (b * b - model.d_kk * c * 2.0).sqrt();
    // pick the sign that avoids cancellation, then use the product of roots
    let q = if (b.conj() * disc).re >= 0.0 { -(b + disc) } else { -(b - disc) };
    let (x1, x2) = if q.norm() == 0.0 {
        (C64::new(0.0, 0.0), C64::new(0.0, 0.0))
    } else {
        (q / model.d_kk, c * 2.0 / q)
    };
    let (r1, r2) = (model.k_c + x1, model.k_c + x2);
    let tie = 1e-12 * (1.0 + model.k_c.norm());
    let first_is_resonance_side = if (r1.re - r2.re).abs() > tie { r1.re > r2.re } else { r1.im >= r2.im };
    Ok(if first_is_resonance_side { [r1, r2] } else { [r2, r1] })
}

/// Which way the pair converts as the depth grows through the collision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollisionDirection {
    VirtualPairToResonancePair,
    ResonancePairToVirtualPair,
}

impl CollisionDirection {
    pub fn name(self) -> &'static str {
        match self {
            CollisionDirection::VirtualPairToResonancePair => "virtual_pair_to_resonance_pair",
            CollisionDirection::ResonancePairToVirtualPair => "resonance_pair_to_virtual_pair",
        }
    }
}

/// Two poles meeting at `k_c` as the depth crosses a critical value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionEvent {
    pub alpha_c: f64,
    pub k_c: C64,
    /// The pair just below the critical depth.
    pub incoming: [Pole; 2],
    /// The pair just above it.
    pub outgoing: [Pole; 2],
    pub direction: CollisionDirection,
}

/// Resolve the collision at depth `spec.depth()` for a real `coupling` by
/// refining the model roots at `depth ∓ du`.
pub fn collision_event(
    channel: Channel,
    coupling: ComplexCoupling,
    spec: &PotentialSpec,
    du: f64,
    settings: &Settings,
) -> Result<CollisionEvent> {
    if channel == Channel::Full || !coupling.is_real() {
        return Err(Error::InvalidArgument("collisions are resolved per parity channel at real coupling"));
    }
    if !(du > 0.0) || du >= spec.depth() {
        return Err(Error::InvalidArgument("depth offset must be positive and below the depth"));
    }
    let k_c = collision_momentum(spec.half_width());
    let model = local_model(channel, k_c, Parameter::Depth, coupling, spec);
    let pair = |delta: f64| -> Result<[Pole; 2]> {
        let shifted = spec.with_depth(spec.depth() + delta)?;
        let roots = branch_at_double_zero(&model, delta)?;
        let radius = 0.25 * (roots[0] - roots[1]).norm();
        let first = newton_refine(roots[0], channel, coupling, &shifted, settings, Some(radius))?;
        let second = newton_refine(roots[1], channel, coupling, &shifted, settings, Some(radius))?;
        Ok([first, second])
    };
    let incoming = pair(-du)?;
    let outgoing = pair(du)?;
    let virtual_pair = |p: &[Pole; 2]| p.iter().all(|q| q.kind == PoleKind::Virtual);
    let resonance_pair = |p: &[Pole; 2]| {
        let mut kinds = [p[0].kind, p[1].kind];
        kinds.sort();
        kinds == [PoleKind::Resonance, PoleKind::Antiresonance]
    };
    let direction = if virtual_pair(&incoming) && resonance_pair(&outgoing) {
        CollisionDirection::VirtualPairToResonancePair
    } else if resonance_pair(&incoming) && virtual_pair(&outgoing) {
        CollisionDirection::ResonancePairToVirtualPair
    } else {
        return Err(Error::ModelInvalid);
    };
    Ok(CollisionEvent {
        alpha_c: coupling.alpha(),
        k_c,
        incoming,
        outgoing,
        direction,
    })
}
