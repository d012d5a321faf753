//! Depths at which the spectrum rearranges.
//!
//! At `k_c = -i/a` and real `γ` the reduced denominators are real functions
//! of `U` alone: `c + w s` (symmetric) and `c − s` (antisymmetric), with
//! `w = 2ma²γU − 1`. Their zeros in `U` are the depths where two poles meet
//! at `k_c`. The antisymmetric function also vanishes at `w = 0`, where
//! `∂D/∂k ≠ 0`; that simple zero is not a collision and is skipped.

use alloc::vec::Vec;
use core::f64::consts::PI;

// Unused once std is linked (dev builds); required for no_std math.
#[allow(unused_imports)]
use num_traits::Float;

use crate::rootfinder::{axis_function, count_zeros, CountRegion};
use crate::settings::Settings;
use crate::smatrix::jost;
use crate::trajectory::{collision_event, CollisionEvent};
use crate::{collision_momentum, Channel, ComplexCoupling, Error, PotentialSpec, Result, C64};

/// Well (`γ = +1`) or barrier (`γ = −1`) side of a collision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Attractive,
    Repulsive,
}

impl Side {
    pub fn coupling(self) -> ComplexCoupling {
        match self {
            Side::Attractive => ComplexCoupling::attractive(),
            Side::Repulsive => ComplexCoupling::repulsive(),
        }
    }

    fn sign(self) -> f64 {
        match self {
            Side::Attractive => 1.0,
            Side::Repulsive => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Attractive => "attractive",
            Side::Repulsive => "repulsive",
        }
    }
}

/// Which collision to solve for: the `index`-th (from 1) in ascending depth
/// on `side`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriticalSelector {
    pub side: Side,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalDepth {
    pub channel: Channel,
    pub side: Side,
    pub index: usize,
    pub depth: f64,
    pub k_c: C64,
    /// `|D(k_c)|` at the solved depth.
    pub residual: f64,
    /// `|∂D/∂k(k_c)|` at the solved depth.
    pub slope: f64,
    /// Zeros counted in a box of half-side `1e-3` around `k_c`.
    pub multiplicity: u32,
    pub event: CollisionEvent,
}

const DOUBLE_ZERO_SLOPE: f64 = 1e-6;
const GRID_STEP: f64 = 0.01;
/// Largest interior phase `√w` scanned when looking for attractive pairs.
const MAX_PHASE: f64 = 2.0e3;
/// Largest `Ka` magnitude scanned on the barrier side.
const MAX_BARRIER_PHASE: f64 = 60.0;

fn collision_function(channel: Channel, side: Side, depth: f64, mass: f64, half_width: f64) -> f64 {
    let spec = PotentialSpec::new(mass, half_width, depth, channel).expect("validated parameters");
    axis_function(channel, -1.0 / half_width, side.sign(), &spec)
}

/// Depth nodes uniform in the interior phase, up to `phase_max`.
fn depth_nodes(side: Side, mass: f64, half_width: f64, phase_max: f64) -> Vec<f64> {
    let scale = 2.0 * mass * half_width * half_width;
    let mut nodes = Vec::new();
    match side {
        Side::Attractive => {
            // w ∈ (−1, 0): y = √(−w) from 1 to 0, then x = √w upwards
            let n = (1.0 / GRID_STEP) as usize;
            for i in 1..=n {
                let y = 1.0 - i as f64 * GRID_STEP;
                nodes.push((1.0 - y * y) / scale);
            }
            let n = (phase_max / GRID_STEP) as usize;
            for i in 1..=n {
                let x = i as f64 * GRID_STEP;
                nodes.push((1.0 + x * x) / scale);
            }
        }
        Side::Repulsive => {
            let n = (phase_max / GRID_STEP) as usize;
            for i in 1..=n {
                let y = 1.0 + i as f64 * GRID_STEP;
                nodes.push((y * y - 1.0) / scale);
            }
        }
    }
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

fn is_double_zero(channel: Channel, side: Side, depth: f64, mass: f64, half_width: f64) -> bool {
    let spec = PotentialSpec::new(mass, half_width, depth, channel).expect("validated parameters");
    let j = jost(channel, collision_momentum(half_width), side.coupling(), &spec);
    j.d_k.norm() < DOUBLE_ZERO_SLOPE
}

/// All collision depths on `side` up to the phase bound, ascending.
fn collision_depths(channel: Channel, side: Side, mass: f64, half_width: f64, phase_max: f64) -> Vec<f64> {
    let f = |u: f64| collision_function(channel, side, u, mass, half_width);
    let nodes = depth_nodes(side, mass, half_width, phase_max);
    let mut out = Vec::new();
    let mut prev = (nodes[0], f(nodes[0]));
    for &u in &nodes[1..] {
        let fu = f(u);
        let root = if prev.1 == 0.0 {
            Some(prev.0)
        } else if (prev.1 < 0.0) != (fu < 0.0) && fu != 0.0 {
            Some(bisect(f, prev.0, u))
        } else {
            None
        };
        if let Some(r) = root {
            if is_double_zero(channel, side, r, mass, half_width) {
                out.push(r);
            }
        }
        prev = (u, fu);
    }
    out
}

fn phase_bound(side: Side) -> f64 {
    match side {
        Side::Attractive => MAX_PHASE,
        Side::Repulsive => MAX_BARRIER_PHASE,
    }
}

fn check_parameters(channel: Channel, mass: f64, half_width: f64) -> Result<()> {
    if channel == Channel::Full {
        return Err(Error::InvalidArgument("critical depths are defined per parity channel"));
    }
    PotentialSpec::new(mass, half_width, 0.0, channel).map(|_| ())
}

fn build(channel: Channel, side: Side, index: usize, depth: f64, mass: f64, half_width: f64, settings: &Settings) -> Result<CriticalDepth> {
    let spec = PotentialSpec::new(mass, half_width, depth, channel)?;
    let k_c = collision_momentum(half_width);
    let j = jost(channel, k_c, side.coupling(), &spec);
    let multiplicity = count_zeros(&CountRegion::square(k_c, 1e-3, channel, side.coupling()), &spec)?;
    let du = 1e-4 * depth.min(1.0);
    let event = collision_event(channel, side.coupling(), &spec, du, settings)?;
    Ok(CriticalDepth {
        channel,
        side,
        index,
        depth,
        k_c,
        residual: j.value.norm(),
        slope: j.d_k.norm(),
        multiplicity,
        event,
    })
}

/// The selected depth where two poles of `channel` coalesce at `k_c`.
pub fn critical_depth(
    channel: Channel,
    selector: CriticalSelector,
    mass: f64,
    half_width: f64,
    settings: &Settings,
) -> Result<CriticalDepth> {
    check_parameters(channel, mass, half_width)?;
    if selector.index == 0 {
        return Err(Error::InvalidArgument("critical depth index starts at 1"));
    }
    let roots = collision_depths(channel, selector.side, mass, half_width, phase_bound(selector.side));
    let depth = *roots
        .get(selector.index - 1)
        .ok_or(Error::NoRootInBracket("no collision with this index in the scanned depth range"))?;
    build(channel, selector.side, selector.index, depth, mass, half_width, settings)
}

/// Every critical depth of `channel` in `(lo, hi]`, ascending.
pub fn critical_depths_between(
    channel: Channel,
    mass: f64,
    half_width: f64,
    lo: f64,
    hi: f64,
    settings: &Settings,
) -> Result<Vec<CriticalDepth>> {
    check_parameters(channel, mass, half_width)?;
    // the interior phase at depth `hi`, plus one extra period
    let phase = (2.0 * mass * half_width * half_width * hi + 1.0).sqrt() + 2.0 * PI;
    let mut out = Vec::new();
    for side in [Side::Attractive, Side::Repulsive] {
        let roots = collision_depths(channel, side, mass, half_width, phase.min(phase_bound(side)));
        for (i, &u) in roots.iter().enumerate() {
            if u > lo && u <= hi {
                out.push(build(channel, side, i + 1, u, mass, half_width, settings)?);
            }
        }
    }
    out.sort_by(|a, b| a.depth.total_cmp(&b.depth));
    Ok(out)
}

/// Depth at which the `n`-th bound state of `channel` appears at `k = 0`:
/// `Ka = (n − ½)π` for the antisymmetric channel and `Ka = nπ` for excited
/// symmetric states. The symmetric ground state binds at every depth.
pub fn bound_threshold(channel: Channel, n: usize, mass: f64, half_width: f64) -> Result<f64> {
    check_parameters(channel, mass, half_width)?;
    if n == 0 {
        return Err(Error::InvalidArgument("bound state index starts at 1"));
    }
    let phase = match channel {
        Channel::Minus => (n as f64 - 0.5) * PI,
        _ => n as f64 * PI,
    };
    Ok(phase * phase / (2.0 * mass * half_width * half_width))
}

/// `(n, depth)` for every bound threshold of `channel` in `(lo, hi]`.
pub fn bound_thresholds_between(channel: Channel, mass: f64, half_width: f64, lo: f64, hi: f64) -> Result<Vec<(usize, f64)>> {
    let mut out = Vec::new();
    for n in 1.. {
        let u = bound_threshold(channel, n, mass, half_width)?;
        if u > hi {
            break;
        }
        if u > lo {
            out.push((n, u));
        }
    }
    Ok(out)
}
