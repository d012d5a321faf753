//! Output documents. Each carries the schema version and a provenance
//! block holding the full run configuration; none carries a timestamp, so
//! identical configurations give byte-identical files.

use rectpole_core::chart::{
    ChartWarning, CriticalDepth, DepthSweep, PoleChart, Topology, Transition, TransitionCause,
};
use rectpole_core::rootfinder::Pole;
use rectpole_core::trajectory::{Closure, OpenReason, Sample, Trajectory};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::verify::VerifyReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub engine: String,
    pub engine_version: String,
    pub command: String,
    pub config: RunConfig,
    pub warnings: Vec<WarningRecord>,
}

impl Provenance {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Self {
            engine: env!("CARGO_PKG_NAME").to_owned(),
            engine_version: env!("CARGO_PKG_VERSION").to_owned(),
            command: command.to_owned(),
            config: config.clone(),
            warnings: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WarningRecord {
    pub kind: String,
    pub channel: String,
    pub side: String,
    pub index: usize,
    pub critical_depth: f64,
    pub distance: f64,
}

impl From<&ChartWarning> for WarningRecord {
    fn from(w: &ChartWarning) -> Self {
        match *w {
            ChartWarning::CriticalProximity {
                channel,
                side,
                index,
                critical_depth,
                distance,
            } => Self {
                kind: "critical_proximity".to_owned(),
                channel: channel.name().to_owned(),
                side: side.name().to_owned(),
                index,
                critical_depth,
                distance,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoleRecord {
    pub re_k: f64,
    pub im_k: f64,
    pub channel: String,
    pub gamma_alpha: f64,
    pub kind: String,
    pub multiplicity: u32,
    pub residual: f64,
}

impl From<&Pole> for PoleRecord {
    fn from(p: &Pole) -> Self {
        Self {
            re_k: p.k.re,
            im_k: p.k.im,
            channel: p.channel.name().to_owned(),
            gamma_alpha: p.coupling.alpha(),
            kind: p.kind.name().to_owned(),
            multiplicity: p.multiplicity,
            residual: p.residual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleRecord {
    pub alpha: f64,
    pub re_k: f64,
    pub im_k: f64,
}

impl From<&Sample> for SampleRecord {
    fn from(s: &Sample) -> Self {
        Self {
            alpha: s.alpha,
            re_k: s.k.re,
            im_k: s.k.im,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryRecord {
    pub channel: String,
    pub seed: PoleRecord,
    pub closure: String,
    /// `k_window_exit` or `alpha_cap_exit` for open paths.
    pub open_reason: Option<String>,
    /// Turns of `α` before a `closed_longer` path returns.
    pub turns: Option<u32>,
    pub samples: Vec<SampleRecord>,
    pub collisions: Vec<SampleRecord>,
    pub axis_crossings: Vec<SampleRecord>,
}

impl From<&Trajectory> for TrajectoryRecord {
    fn from(t: &Trajectory) -> Self {
        let open_reason = match t.closure {
            Closure::Open(OpenReason::KWindowExit) => Some("k_window_exit".to_owned()),
            Closure::Open(OpenReason::AlphaCapExit) => Some("alpha_cap_exit".to_owned()),
            _ => None,
        };
        let turns = match t.closure {
            Closure::ClosedLonger { turns } => Some(turns),
            _ => None,
        };
        let samples = |v: &[Sample]| v.iter().map(SampleRecord::from).collect();
        Self {
            channel: t.channel().name().to_owned(),
            seed: PoleRecord::from(&t.seed),
            closure: t.closure.name().to_owned(),
            open_reason,
            turns,
            samples: samples(&t.samples),
            collisions: samples(&t.collisions),
            axis_crossings: samples(&t.axis_crossings),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyRecord {
    pub closed_2pi: u32,
    pub closed_4pi: u32,
    pub closed_longer: u32,
    pub open: u32,
}

impl From<Topology> for TopologyRecord {
    fn from(t: Topology) -> Self {
        Self {
            closed_2pi: t.closed_2pi,
            closed_4pi: t.closed_4pi,
            closed_longer: t.closed_longer,
            open: t.open,
        }
    }
}

/// Poles, and for `chart` the trajectories through them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDocument {
    pub schema_version: u32,
    pub provenance: Provenance,
    pub poles: Vec<PoleRecord>,
    pub trajectories: Vec<TrajectoryRecord>,
    /// Absent for a bare axis scan.
    pub topology: Option<TopologyRecord>,
}

impl ChartDocument {
    pub fn from_poles(config: &RunConfig, poles: &[Pole]) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            provenance: Provenance::new("axis", config),
            poles: poles.iter().map(PoleRecord::from).collect(),
            trajectories: Vec::new(),
            topology: None,
        }
    }

    pub fn from_chart(config: &RunConfig, chart: &PoleChart) -> Self {
        let mut provenance = Provenance::new("chart", config);
        provenance.warnings = chart.warnings.iter().map(WarningRecord::from).collect();
        Self {
            schema_version: SCHEMA_VERSION,
            provenance,
            poles: chart.axis_poles().map(PoleRecord::from).collect(),
            trajectories: chart.trajectories.iter().map(TrajectoryRecord::from).collect(),
            topology: Some(chart.topology.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalRecord {
    pub channel: String,
    pub side: String,
    pub index: usize,
    pub depth: f64,
    pub re_k_c: f64,
    pub im_k_c: f64,
    pub residual: f64,
    pub slope: f64,
    pub multiplicity: u32,
    pub direction: String,
    /// Poles just below the critical depth.
    pub incoming: Vec<PoleRecord>,
    /// Poles just above it.
    pub outgoing: Vec<PoleRecord>,
}

impl From<&CriticalDepth> for CriticalRecord {
    fn from(c: &CriticalDepth) -> Self {
        Self {
            channel: c.channel.name().to_owned(),
            side: c.side.name().to_owned(),
            index: c.index,
            depth: c.depth,
            re_k_c: c.k_c.re,
            im_k_c: c.k_c.im,
            residual: c.residual,
            slope: c.slope,
            multiplicity: c.multiplicity,
            direction: c.event.direction.name().to_owned(),
            incoming: c.event.incoming.iter().map(PoleRecord::from).collect(),
            outgoing: c.event.outgoing.iter().map(PoleRecord::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalDocument {
    pub schema_version: u32,
    pub provenance: Provenance,
    pub critical: CriticalRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdRecord {
    pub channel: String,
    pub n: usize,
    pub depth: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdDocument {
    pub schema_version: u32,
    pub provenance: Provenance,
    pub threshold: ThresholdRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepPointRecord {
    pub requested_depth: f64,
    pub depth: f64,
    pub nudged_from: Option<f64>,
    pub topology: TopologyRecord,
    pub bound_count: usize,
    pub poles: Vec<PoleRecord>,
    pub warnings: Vec<WarningRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CauseRecord {
    /// `critical` or `threshold`.
    pub kind: String,
    pub channel: String,
    pub depth: f64,
    /// Collision side, for critical causes.
    pub side: Option<String>,
    /// Collision or bound-state index.
    pub index: usize,
    pub direction: Option<String>,
}

impl From<&TransitionCause> for CauseRecord {
    fn from(c: &TransitionCause) -> Self {
        match c {
            TransitionCause::Critical(c) => Self {
                kind: "critical".to_owned(),
                channel: c.channel.name().to_owned(),
                depth: c.depth,
                side: Some(c.side.name().to_owned()),
                index: c.index,
                direction: Some(c.event.direction.name().to_owned()),
            },
            TransitionCause::Threshold { channel, n, depth } => Self {
                kind: "threshold".to_owned(),
                channel: channel.name().to_owned(),
                depth: *depth,
                side: None,
                index: *n,
                direction: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionRecord {
    pub from_depth: f64,
    pub to_depth: f64,
    pub before: TopologyRecord,
    pub after: TopologyRecord,
    pub bound_before: usize,
    pub bound_after: usize,
    pub causes: Vec<CauseRecord>,
}

impl From<&Transition> for TransitionRecord {
    fn from(t: &Transition) -> Self {
        Self {
            from_depth: t.from_depth,
            to_depth: t.to_depth,
            before: t.before.into(),
            after: t.after.into(),
            bound_before: t.bound_before,
            bound_after: t.bound_after,
            causes: t.causes.iter().map(CauseRecord::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepDocument {
    pub schema_version: u32,
    pub provenance: Provenance,
    pub points: Vec<SweepPointRecord>,
    pub transitions: Vec<TransitionRecord>,
}

impl SweepDocument {
    pub fn new(config: &RunConfig, sweep: &DepthSweep) -> Self {
        let points = sweep
            .points
            .iter()
            .map(|p| SweepPointRecord {
                requested_depth: p.requested_depth,
                depth: p.depth,
                nudged_from: p.nudged_from,
                topology: p.chart.topology.into(),
                bound_count: p.chart.bound_count(),
                poles: p.chart.axis_poles().map(PoleRecord::from).collect(),
                warnings: p.chart.warnings.iter().map(WarningRecord::from).collect(),
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            provenance: Provenance::new("sweep", config),
            points,
            transitions: sweep.transitions.iter().map(TransitionRecord::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyDocument {
    pub schema_version: u32,
    pub provenance: Provenance,
    pub report: VerifyReport,
}

/// Any document with a `schema_version` field.
pub trait Versioned: DeserializeOwned {
    fn schema_version(&self) -> u32;
}

macro_rules! versioned {
    ($($t:ty),*) => {$(
        impl Versioned for $t {
            fn schema_version(&self) -> u32 {
                self.schema_version
            }
        }
    )*};
}

versioned!(ChartDocument, CriticalDocument, ThresholdDocument, SweepDocument, VerifyDocument);

/// Parse a document, rejecting unknown fields and other schema versions.
pub fn parse<T: Versioned>(text: &str) -> Result<T, CliError> {
    let doc: T = serde_json::from_str(text).map_err(|e| CliError::usage(format!("invalid document: {e}")))?;
    if doc.schema_version() != SCHEMA_VERSION {
        return Err(CliError::usage(format!(
            "schema version {} is not supported (expected {SCHEMA_VERSION})",
            doc.schema_version()
        )));
    }
    Ok(doc)
}
