//! Full pole charts at one depth, the depths where they rearrange, and
//! sweeps across depths.
//!
//! A chart scans the imaginary axis at `γ = +1` and `γ = −1`, traces every
//! axis pole in both directions of `α`, and keeps one trajectory per path: a
//! seed already visited by an earlier trajectory is not traced again.

mod critical;
mod sweep;

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::TAU as TWO_PI;
use core::fmt;

// Unused once std is linked (dev builds); required for no_std math.
#[allow(unused_imports)]
use num_traits::Float;

pub use critical::{
    bound_threshold, bound_thresholds_between, critical_depth, critical_depths_between, CriticalDepth,
    CriticalSelector, Side,
};
pub use sweep::{depth_sweep, DepthSweep, SweepPoint, Transition, TransitionCause};

use crate::rootfinder::{count_zeros_nudged, scan_axis, CountRegion, Pole, PoleKind};
use crate::settings::Settings;
use crate::trajectory::{hausdorff, sample_deviation, trace_both, Closure, OpenReason, Trajectory};
use crate::{Channel, ComplexCoupling, Error, PotentialSpec, Result, C64};

/// Same-pole tolerance for deduplication and visit checks.
const SAME_POLE: f64 = 1e-6;

/// Multiset of closure labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Topology {
    pub closed_2pi: u32,
    pub closed_4pi: u32,
    pub closed_longer: u32,
    pub open: u32,
}

impl Topology {
    pub fn from_closures(closures: impl IntoIterator<Item = Closure>) -> Self {
        let mut t = Topology::default();
        for c in closures {
            match c {
                Closure::Closed2Pi => t.closed_2pi += 1,
                Closure::Closed4Pi => t.closed_4pi += 1,
                Closure::ClosedLonger { .. } => t.closed_longer += 1,
                Closure::Open(_) => t.open += 1,
            }
        }
        t
    }

    /// `(label, count)` for every label with a nonzero count.
    pub fn entries(&self) -> Vec<(&'static str, u32)> {
        [
            ("closed_2pi", self.closed_2pi),
            ("closed_4pi", self.closed_4pi),
            ("closed_longer", self.closed_longer),
            ("open", self.open),
        ]
        .into_iter()
        .filter(|(_, n)| *n > 0)
        .collect()
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, n) in self.entries() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{n}×{name}")?;
        }
        if first {
            f.write_str("empty")?;
        }
        Ok(())
    }
}

/// Non-fatal conditions recorded with a chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChartWarning {
    /// The depth is within `distance` of a critical depth, where the pole
    /// mapping is indefinite.
    CriticalProximity {
        channel: Channel,
        side: Side,
        index: usize,
        critical_depth: f64,
        distance: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoleChart {
    pub spec: PotentialSpec,
    /// Axis poles at `γ = +1`, all channels, by descending `Im k`.
    pub attractive_axis_poles: Vec<Pole>,
    /// Axis poles at `γ = −1`.
    pub repulsive_axis_poles: Vec<Pole>,
    pub trajectories: Vec<Trajectory>,
    pub topology: Topology,
    pub warnings: Vec<ChartWarning>,
    pub settings: Settings,
}

impl PoleChart {
    pub fn axis_poles(&self) -> impl Iterator<Item = &Pole> {
        self.attractive_axis_poles.iter().chain(&self.repulsive_axis_poles)
    }

    /// Bound poles at `γ = +1`.
    pub fn bound_count(&self) -> usize {
        self.attractive_axis_poles
            .iter()
            .filter(|p| p.kind == PoleKind::Bound)
            .count()
    }

    /// The trajectory passing through an axis pole.
    pub fn trajectory_of(&self, pole: &Pole) -> Option<&Trajectory> {
        self.trajectories
            .iter()
            .find(|t| t.channel() == pole.channel && t.visits(pole.coupling.alpha(), pole.k, SAME_POLE))
    }
}

fn sort_poles(poles: &mut [Pole]) {
    poles.sort_by(|a, b| b.k.im.total_cmp(&a.k.im).then(a.k.re.total_cmp(&b.k.re)));
}

fn proximity_warnings(spec: &PotentialSpec, settings: &Settings) -> Result<Vec<ChartWarning>> {
    let u = spec.depth();
    let r = settings.critical_proximity;
    let mut out = Vec::new();
    for &channel in spec.channel().parity_channels() {
        let lo = (u - r).max(0.0);
        for c in critical_depths_between(channel, spec.mass(), spec.half_width(), lo, u + r, settings)? {
            out.push(ChartWarning::CriticalProximity {
                channel,
                side: c.side,
                index: c.index,
                critical_depth: c.depth,
                distance: (u - c.depth).abs(),
            });
        }
    }
    Ok(out)
}

/// Open paths are traced past the `α` cap, one turn at a time, while an end
/// is still inside the working window; poles there would otherwise be
/// missing from the chart. The extension stops at this multiple of the cap.
const MAX_CAP_EXTENSION: f64 = 4.0;

fn trace_covering_window(seed: &Pole, spec: &PotentialSpec, settings: &Settings) -> Result<Trajectory> {
    let (lower_left, upper_right) = working_window(spec);
    let inside = |k: C64| k.re > lower_left.re && k.re < upper_right.re && k.im > lower_left.im && k.im < upper_right.im;
    let mut local = *settings;
    loop {
        let t = trace_both(seed, spec, &local)?;
        let capped = t.closure == Closure::Open(OpenReason::AlphaCapExit);
        let ends_inside = [t.samples.first(), t.samples.last()]
            .into_iter()
            .flatten()
            .any(|s| inside(s.k));
        if !capped || !ends_inside || local.continuation.alpha_cap + TWO_PI > MAX_CAP_EXTENSION * settings.continuation.alpha_cap {
            return Ok(t);
        }
        local.continuation.alpha_cap += TWO_PI;
    }
}

/// Axis poles for both real couplings, then one trajectory per distinct
/// path through them.
pub fn build_chart(spec: &PotentialSpec, settings: &Settings) -> Result<PoleChart> {
    let mut attractive = Vec::new();
    let mut repulsive = Vec::new();
    for &channel in spec.channel().parity_channels() {
        attractive.extend(scan_axis(spec, ComplexCoupling::attractive(), channel, settings)?);
        repulsive.extend(scan_axis(spec, ComplexCoupling::repulsive(), channel, settings)?);
    }
    sort_poles(&mut attractive);
    sort_poles(&mut repulsive);

    let mut trajectories: Vec<Trajectory> = Vec::new();
    for &channel in spec.channel().parity_channels() {
        let channel_spec = spec.with_channel(channel);
        for seed in attractive.iter().chain(&repulsive).filter(|p| p.channel == channel) {
            let known = trajectories
                .iter()
                .any(|t| t.channel() == channel && t.visits(seed.coupling.alpha(), seed.k, SAME_POLE));
            if known {
                continue;
            }
            let t = trace_covering_window(seed, &channel_spec, settings).map_err(|e| Error::TraceFailure {
                seed: seed.k,
                source: Box::new(e),
            })?;
            trajectories.push(t);
        }
    }
    let topology = Topology::from_closures(trajectories.iter().map(|t| t.closure));
    Ok(PoleChart {
        spec: *spec,
        attractive_axis_poles: attractive,
        repulsive_axis_poles: repulsive,
        trajectories,
        topology,
        warnings: proximity_warnings(spec, settings)?,
        settings: *settings,
    })
}

/// Default working window `(lower_left, upper_right)`:
/// `|Re k| ≤ 8/a + 2√(2mU)`, `−(6/a + 2√(2mU)) ≤ Im k ≤ 2√(2mU) + 2/a`.
pub fn working_window(spec: &PotentialSpec) -> (C64, C64) {
    let a = spec.half_width();
    let q = 2.0 * spec.momentum_scale();
    (C64::new(-(8.0 / a + q), -(6.0 / a + q)), C64::new(8.0 / a + q, q + 2.0 / a))
}

/// Zeros counted in the working window at `γ = 1` against the poles the
/// chart's trajectories pass at `α ≡ 0 (mod 2π)` inside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletenessCheck {
    pub channel: Channel,
    /// The window actually used, after nudging its edges off any zero.
    pub region: CountRegion,
    pub counted: u32,
    pub traced: u32,
}

impl CompletenessCheck {
    pub fn holds(&self) -> bool {
        self.counted == self.traced
    }
}

pub fn completeness(chart: &PoleChart) -> Result<Vec<CompletenessCheck>> {
    let (lower_left, upper_right) = working_window(&chart.spec);
    let mut out = Vec::new();
    for &channel in chart.spec.channel().parity_channels() {
        let spec = chart.spec.with_channel(channel);
        let region = CountRegion::new(lower_left, upper_right, channel, ComplexCoupling::attractive())?;
        let (counted, region) = count_zeros_nudged(&region, &spec, 1e-3, 8)?;
        let mut points: Vec<C64> = Vec::new();
        for t in chart.trajectories.iter().filter(|t| t.channel() == channel) {
            for k in t.points_at_phase(0.0, SAME_POLE) {
                if region.contains(k) && !points.iter().any(|p| (p - k).norm() < SAME_POLE) {
                    points.push(k);
                }
            }
        }
        let traced = points
            .iter()
            .map(|k| {
                chart
                    .attractive_axis_poles
                    .iter()
                    .find(|p| p.channel == channel && (p.k - k).norm() < SAME_POLE)
                    .map_or(1, |p| p.multiplicity)
            })
            .sum();
        out.push(CompletenessCheck {
            channel,
            region,
            counted,
            traced,
        });
    }
    Ok(out)
}

/// Hausdorff distance between each channel's sampled point set and its
/// image under `k → −k*`; the largest over channels.
pub fn mirror_defect(chart: &PoleChart) -> f64 {
    let mut worst: f64 = 0.0;
    for &channel in chart.spec.channel().parity_channels() {
        let points: Vec<C64> = chart
            .trajectories
            .iter()
            .filter(|t| t.channel() == channel)
            .flat_map(|t| t.samples.iter().map(|s| s.k))
            .collect();
        let mirrored: Vec<C64> = points.iter().map(|k| -k.conj()).collect();
        worst = worst.max(hausdorff(&points, &mirrored));
    }
    worst
}

/// Retrace every trajectory with all step lengths halved and return the
/// largest deviation of the original samples from the retraced paths.
pub fn step_halving_defect(chart: &PoleChart) -> Result<f64> {
    let mut fine = chart.settings;
    fine.continuation = fine.continuation.halved_steps();
    // open paths keep the extended cap they were traced with
    let mut worst: f64 = 0.0;
    for t in &chart.trajectories {
        let spec = chart.spec.with_channel(t.channel());
        let (lo, hi) = t.alpha_span();
        fine.continuation.alpha_cap = (hi - lo) / 2.0;
        let retraced = trace_both(&t.seed, &spec, &fine)?;
        if retraced.closure != t.closure {
            return Ok(f64::INFINITY);
        }
        worst = worst.max(sample_deviation(t, &retraced, &spec, &fine)?);
    }
    Ok(worst)
}
