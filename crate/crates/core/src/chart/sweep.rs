use alloc::vec::Vec;

use super::{build_chart, critical_depths_between, bound_thresholds_between, CriticalDepth, PoleChart, Topology};
use crate::settings::Settings;
use crate::{Channel, Error, PotentialSpec, Result};

/// One depth of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub requested_depth: f64,
    /// Differs from the request when it sat on a critical depth.
    pub depth: f64,
    /// The critical depth that forced a nudge.
    pub nudged_from: Option<f64>,
    pub chart: PoleChart,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum TransitionCause {
    Critical(CriticalDepth),
    Threshold { channel: Channel, n: usize, depth: f64 },
}

impl TransitionCause {
    pub fn depth(&self) -> f64 {
        match self {
            TransitionCause::Critical(c) => c.depth,
            TransitionCause::Threshold { depth, .. } => *depth,
        }
    }
}

/// A change in topology or bound-state count between consecutive depths.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub from_depth: f64,
    pub to_depth: f64,
    pub before: Topology,
    pub after: Topology,
    pub bound_before: usize,
    pub bound_after: usize,
    /// Critical depths and bound thresholds inside `(from_depth, to_depth]`.
    pub causes: Vec<TransitionCause>,
}

impl Transition {
    pub fn is_attributed(&self) -> bool {
        !self.causes.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DepthSweep {
    pub points: Vec<SweepPoint>,
    pub transitions: Vec<Transition>,
}

fn nudged(depth: f64, channels: &[Channel], spec: &PotentialSpec, settings: &Settings) -> Result<(f64, Option<f64>)> {
    let nudge = settings.sweep_nudge;
    for &channel in channels {
        let lo = (depth - nudge).max(0.0);
        let near = critical_depths_between(channel, spec.mass(), spec.half_width(), lo, depth + nudge, settings)?;
        if let Some(c) = near.first() {
            let side = if depth >= c.depth { 1.0 } else { -1.0 };
            return Ok((c.depth + side * nudge, Some(c.depth)));
        }
    }
    Ok((depth, None))
}

/// Charts at each depth of `depths` (ascending) for `base`'s mass, width
/// and channel, with every change between neighbours attributed to the
/// critical depths and bound thresholds it straddles.
pub fn depth_sweep(base: &PotentialSpec, depths: &[f64], settings: &Settings) -> Result<DepthSweep> {
    if depths.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument("sweep depths must be strictly ascending"));
    }
    let channels = base.channel().parity_channels();
    let mut points = Vec::with_capacity(depths.len());
    for &requested in depths {
        let (depth, nudged_from) = nudged(requested, channels, base, settings)?;
        let spec = base.with_depth(depth)?;
        points.push(SweepPoint {
            requested_depth: requested,
            depth,
            nudged_from,
            chart: build_chart(&spec, settings)?,
        });
    }
    let mut transitions = Vec::new();
    for pair in points.windows(2) {
        let (p, q) = (&pair[0], &pair[1]);
        let (before, after) = (p.chart.topology, q.chart.topology);
        let (bound_before, bound_after) = (p.chart.bound_count(), q.chart.bound_count());
        if before == after && bound_before == bound_after {
            continue;
        }
        let mut causes = Vec::new();
        for &channel in channels {
            for c in critical_depths_between(channel, base.mass(), base.half_width(), p.depth, q.depth, settings)? {
                causes.push(TransitionCause::Critical(c));
            }
            for (n, depth) in bound_thresholds_between(channel, base.mass(), base.half_width(), p.depth, q.depth)? {
                causes.push(TransitionCause::Threshold { channel, n, depth });
            }
        }
        causes.sort_by(|a, b| a.depth().total_cmp(&b.depth()));
        transitions.push(Transition {
            from_depth: p.depth,
            to_depth: q.depth,
            before,
            after,
            bound_before,
            bound_after,
            causes,
        });
    }
    Ok(DepthSweep { points, transitions })
}
