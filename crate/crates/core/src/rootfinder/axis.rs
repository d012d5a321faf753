//! Poles on the imaginary axis for `γ = ±1`.
//!
//! With `k = iκ` and real `γ` the reduced denominators are real multiples of
//! real functions of `κ`:
//!
//! - `D₊(iκ) = i (κ c − (w/a) s)`
//! - `D₋(iκ)/K = c + aκ s`
//!
//! with `w = a²(2mγU − κ²)`. The interior momentum is real for
//! `κ² < 2mγU` and imaginary beyond; the grid is split at that point so each
//! regime gets its own uniform samples, and refined around `κ = −1/a` where
//! pairs of poles coalesce.

use alloc::vec::Vec;

use super::{newton_solve, residual_bound, Pole, PoleKind};
use crate::settings::Settings;
use crate::smatrix::jost;
use crate::special::real_kernel;
use crate::{Channel, ComplexCoupling, Error, PotentialSpec, Result, C64};

/// Default `κ` range `±(3√(2mU) + 5/a)`.
pub fn default_kappa_range(spec: &PotentialSpec) -> (f64, f64) {
    let r = 3.0 * spec.momentum_scale() + 5.0 / spec.half_width();
    (-r, r)
}

/// Real axis function whose sign changes bracket the poles `k = iκ`.
///
/// `gamma_sign` is `+1` for the well and `-1` for the barrier. The value
/// carries a positive scale factor, so only its sign and zeros are
/// meaningful.
pub fn axis_function(channel: Channel, kappa: f64, gamma_sign: f64, spec: &PotentialSpec) -> f64 {
    let a = spec.half_width();
    let w = a * a * (2.0 * spec.mass() * gamma_sign * spec.depth() - kappa * kappa);
    let (c, s) = real_kernel(w);
    match channel {
        Channel::Plus => kappa * c - w * s / a,
        Channel::Minus => c + a * kappa * s,
        Channel::Full => (kappa * c - w * s / a) * (c + a * kappa * s),
    }
}

const COALESCENCE_HALF_WIDTH: f64 = 0.05;

fn grid(lo: f64, hi: f64, breaks: &[f64], per_segment: usize, refine: Option<(f64, f64)>) -> Vec<f64> {
    let mut cuts: Vec<f64> = Vec::with_capacity(breaks.len() + 2);
    cuts.push(lo);
    cuts.extend(breaks.iter().copied().filter(|&b| b > lo && b < hi));
    cuts.push(hi);
    let n = per_segment.max(2);
    let mut nodes = Vec::with_capacity(n * cuts.len() + n);
    for pair in cuts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        for i in 0..n {
            nodes.push(a + (b - a) * (i as f64 / (n - 1) as f64));
        }
    }
    if let Some((a, b)) = refine {
        let (a, b) = (a.max(lo), b.min(hi));
        if b > a {
            for i in 0..n {
                nodes.push(a + (b - a) * (i as f64 / (n - 1) as f64));
            }
        }
    }
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    nodes
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All poles of `channel` on `k = iκ`, `κ` in the configured range, for a
/// real coupling. Sorted by decreasing `Im k`.
pub fn scan_axis(
    spec: &PotentialSpec,
    coupling: ComplexCoupling,
    channel: Channel,
    settings: &Settings,
) -> Result<Vec<Pole>> {
    if !coupling.is_real() {
        return Err(Error::InvalidArgument("axis scan needs a real coupling"));
    }
    if spec.depth() == 0.0 {
        return Ok(Vec::new());
    }
    if channel == Channel::Full {
        let mut poles = scan_axis(spec, coupling, Channel::Plus, settings)?;
        poles.extend(scan_axis(spec, coupling, Channel::Minus, settings)?);
        poles.sort_by(|a, b| b.k.im.total_cmp(&a.k.im));
        return Ok(poles);
    }
    let gamma_sign = coupling.gamma().re;
    let (lo, hi) = settings
        .axis
        .kappa_range
        .unwrap_or_else(|| default_kappa_range(spec));
    if !(hi > lo) {
        return Err(Error::InvalidArgument("empty kappa range"));
    }
    let mut breaks = Vec::new();
    if gamma_sign > 0.0 {
        let turn = spec.momentum_scale();
        breaks.extend([-turn, turn]);
    }
    let kc = -1.0 / spec.half_width();
    let nodes = grid(
        lo,
        hi,
        &breaks,
        settings.axis.samples_per_segment,
        Some((kc - COALESCENCE_HALF_WIDTH, kc + COALESCENCE_HALF_WIDTH)),
    );
    let f = |kappa: f64| axis_function(channel, kappa, gamma_sign, spec);
    let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();

    let mut roots = Vec::new();
    for i in 0..nodes.len() {
        if values[i] == 0.0 {
            roots.push(nodes[i]);
        } else if i + 1 < nodes.len() && values[i + 1] != 0.0 && (values[i] < 0.0) != (values[i + 1] < 0.0) {
            roots.push(bisect(f, nodes[i], nodes[i + 1]));
        }
    }

    let mut poles = Vec::with_capacity(roots.len());
    for kappa in roots {
        let mut k = C64::new(0.0, kappa);
        let mut residual = jost(channel, k, coupling, spec).value.norm();
        if residual >= 1e-12 {
            let out = newton_solve(channel, k, coupling, spec, &settings.newton)?;
            k = C64::new(0.0, out.k.im);
            residual = jost(channel, k, coupling, spec).value.norm();
        }
        if residual >= residual_bound(k) {
            return Err(Error::NoConvergence {
                seed: C64::new(0.0, kappa),
                iterations: settings.newton.max_iterations,
            });
        }
        poles.push(Pole {
            k,
            channel,
            coupling,
            kind: PoleKind::classify(k, 1, settings.tol_axis),
            multiplicity: 1,
            residual,
        });
    }
    poles.sort_by(|a, b| b.k.im.total_cmp(&a.k.im));
    Ok(poles)
}
