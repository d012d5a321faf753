use super::{count_zeros, residual_bound, CountRegion, Pole, PoleKind};
use crate::settings::{NewtonSettings, Settings};
use crate::smatrix::jost;
use crate::{Channel, ComplexCoupling, Error, PotentialSpec, Result, C64};

/// Raw result of a Newton iteration on the reduced denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOutcome {
    pub k: C64,
    pub iterations: usize,
    pub converged: bool,
}

/// Newton iteration `k ← k − D/D'` with the closed-form derivative.
///
/// Stops once `|Δk| < step_tolerance · (1 + |k|)`; running out of iterations
/// is reported through `converged`, a singular or non-finite step as an
/// error.
pub fn newton_solve(
    channel: Channel,
    k0: C64,
    coupling: ComplexCoupling,
    spec: &PotentialSpec,
    settings: &NewtonSettings,
) -> Result<NewtonOutcome> {
    let mut k = k0;
    for iteration in 1..=settings.max_iterations {
        let j = jost(channel, k, coupling, spec);
        if j.value == C64::new(0.0, 0.0) {
            return Ok(NewtonOutcome {
                k,
                iterations: iteration,
                converged: true,
            });
        }
        let step = j.value / j.d_k;
        if !step.is_finite() {
            return Err(Error::NoConvergence {
                seed: k0,
                iterations: iteration,
            });
        }
        k -= step;
        if step.norm() < settings.step_tolerance * (1.0 + k.norm()) {
            return Ok(NewtonOutcome {
                k,
                iterations: iteration,
                converged: true,
            });
        }
    }
    Ok(NewtonOutcome {
        k,
        iterations: settings.max_iterations,
        converged: false,
    })
}

const MULTIPLICITY_BOX: f64 = 1e-3;
const SAME_ROOT: f64 = 1e-6;

/// Whether `k` is a coalesced pair: the small box counts two zeros but all
/// nearby Newton seeds land on the same point.
fn is_double(channel: Channel, k: C64, coupling: ComplexCoupling, spec: &PotentialSpec, settings: &Settings) -> bool {
    let region = CountRegion::square(k, MULTIPLICITY_BOX, channel, coupling);
    if !matches!(count_zeros(&region, spec), Ok(2)) {
        return false;
    }
    let offsets = [
        C64::new(0.5, 0.0),
        C64::new(0.0, 0.5),
        C64::new(-0.5, 0.0),
        C64::new(0.0, -0.5),
    ];
    offsets.iter().all(|d| {
        match newton_solve(channel, k + d * MULTIPLICITY_BOX, coupling, spec, &settings.newton) {
            Ok(out) if out.converged => (out.k - k).norm() < SAME_ROOT,
            _ => true,
        }
    })
}

/// Refine a seed to a pole of `channel` and classify it.
///
/// For [`Channel::Full`] the parity channel with the smaller denominator at
/// `k0` is used. With `trust_radius`, a root farther than that from `k0` is
/// rejected.
pub fn newton_refine(
    k0: C64,
    channel: Channel,
    coupling: ComplexCoupling,
    spec: &PotentialSpec,
    settings: &Settings,
    trust_radius: Option<f64>,
) -> Result<Pole> {
    let channel = match channel {
        Channel::Full => {
            let p = jost(Channel::Plus, k0, coupling, spec).value.norm();
            let m = jost(Channel::Minus, k0, coupling, spec).value.norm();
            if p <= m {
                Channel::Plus
            } else {
                Channel::Minus
            }
        }
        ch => ch,
    };
    let out = newton_solve(channel, k0, coupling, spec, &settings.newton)?;
    let k = out.k;
    let j = jost(channel, k, coupling, spec);
    let residual = j.value.norm();
    if let Some(radius) = trust_radius {
        if (k - k0).norm() > radius {
            return Err(Error::ConvergedElsewhere { seed: k0, found: k });
        }
    }
    let flat = j.d_k.norm() < 1e-3 * (1.0 + k.norm() * spec.half_width());
    let multiplicity = if residual < residual_bound(k) && flat && is_double(channel, k, coupling, spec, settings) {
        2
    } else {
        1
    };
    if (!out.converged && multiplicity < 2) || residual >= residual_bound(k) {
        return Err(Error::NoConvergence {
            seed: k0,
            iterations: out.iterations,
        });
    }
    Ok(Pole {
        k,
        channel,
        coupling,
        kind: PoleKind::classify(k, multiplicity, settings.tol_axis),
        multiplicity,
        residual,
    })
}
