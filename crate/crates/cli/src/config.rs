//! Run configuration: every knob a command reads, in one serialisable
//! record. Defaults, then a `--config` file, then explicit flags.

use std::path::{Path, PathBuf};

use rectpole_core::settings::{ContinuationSettings, Settings};
use rectpole_core::{Channel, ComplexCoupling, PotentialSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ChannelName {
    Plus,
    Minus,
    Full,
}

impl ChannelName {
    pub fn channel(self) -> Channel {
        match self {
            ChannelName::Plus => Channel::Plus,
            ChannelName::Minus => Channel::Minus,
            ChannelName::Full => Channel::Full,
        }
    }
}

/// Sign of the real coupling: the well (`+1`) or the barrier (`−1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gamma {
    #[serde(rename = "+1")]
    Attractive,
    #[serde(rename = "-1")]
    Repulsive,
}

impl Gamma {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s.trim() {
            "+1" | "1" => Ok(Gamma::Attractive),
            "-1" => Ok(Gamma::Repulsive),
            other => Err(format!("gamma must be +1 or -1, got {other:?}")),
        }
    }

    pub fn coupling(self) -> ComplexCoupling {
        match self {
            Gamma::Attractive => ComplexCoupling::attractive(),
            Gamma::Repulsive => ComplexCoupling::repulsive(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ContinuationConfig {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub alpha_cap: f64,
    /// `|k|` limit in units of `1/a`.
    pub k_window: f64,
    pub closure_tolerance: f64,
    pub double_zero_radius: f64,
    pub corrector_iterations: usize,
    pub easy_steps_to_grow: usize,
}

impl Default for ContinuationConfig {
    fn default() -> Self {
        let c = ContinuationSettings::default();
        Self {
            initial_step: c.initial_step,
            min_step: c.min_step,
            max_step: c.max_step,
            alpha_cap: c.alpha_cap,
            k_window: c.k_window,
            closure_tolerance: c.closure_tolerance,
            double_zero_radius: c.double_zero_radius,
            corrector_iterations: c.corrector_iterations,
            easy_steps_to_grow: c.easy_steps_to_grow,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub tol_axis: f64,
    pub newton_step: f64,
    pub newton_iterations: usize,
    pub axis_samples: usize,
    pub critical_proximity: f64,
    pub sweep_nudge: f64,
    /// Largest relation residual `verify` accepts.
    pub verify: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let s = Settings::default();
        Self {
            tol_axis: s.tol_axis,
            newton_step: s.newton.step_tolerance,
            newton_iterations: s.newton.max_iterations,
            axis_samples: s.axis.samples_per_segment,
            critical_proximity: s.critical_proximity,
            sweep_nudge: s.sweep_nudge,
            verify: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub m: f64,
    pub a: f64,
    #[serde(rename = "U")]
    pub u: Option<f64>,
    pub channel: ChannelName,
    pub gamma: Gamma,
    /// Which collision `critical` solves for, from 1.
    pub index: usize,
    /// Which bound state `threshold` reports, from 1.
    pub n: usize,
    /// Depths visited by `sweep`, ascending.
    pub depths: Vec<f64>,
    pub continuation: ContinuationConfig,
    pub tolerances: Tolerances,
    pub output: OutputConfig,
    /// Random samples drawn by `verify`.
    pub samples: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            m: 1.0,
            a: 1.5,
            u: None,
            channel: ChannelName::Plus,
            gamma: Gamma::Attractive,
            index: 1,
            n: 1,
            depths: Vec::new(),
            continuation: ContinuationConfig::default(),
            tolerances: Tolerances::default(),
            output: OutputConfig::default(),
            samples: 200,
            seed: 0,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::usage(format!("{name} must be positive and finite, got {v}")))
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("invalid config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        positive("m", self.m)?;
        positive("a", self.a)?;
        if let Some(u) = self.u {
            if !(u.is_finite() && u >= 0.0) {
                return Err(CliError::usage(format!("U must be non-negative and finite, got {u}")));
            }
        }
        let c = &self.continuation;
        for (name, v) in [
            ("initial_step", c.initial_step),
            ("min_step", c.min_step),
            ("max_step", c.max_step),
            ("alpha_cap", c.alpha_cap),
            ("k_window", c.k_window),
            ("closure_tolerance", c.closure_tolerance),
            ("double_zero_radius", c.double_zero_radius),
        ] {
            positive(name, v)?;
        }
        if !(c.min_step <= c.initial_step && c.initial_step <= c.max_step) {
            return Err(CliError::usage("steps must satisfy min_step <= initial_step <= max_step"));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("tol_axis", t.tol_axis),
            ("newton_step", t.newton_step),
            ("critical_proximity", t.critical_proximity),
            ("sweep_nudge", t.sweep_nudge),
            ("verify", t.verify),
        ] {
            positive(name, v)?;
        }
        for (name, v) in [
            ("corrector_iterations", c.corrector_iterations),
            ("easy_steps_to_grow", c.easy_steps_to_grow),
            ("newton_iterations", t.newton_iterations),
            ("axis_samples", t.axis_samples),
            ("index", self.index),
            ("n", self.n),
            ("samples", self.samples),
        ] {
            if v == 0 {
                return Err(CliError::usage(format!("{name} must be at least 1")));
            }
        }
        if self.depths.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(CliError::usage("depths must be non-negative and finite"));
        }
        Ok(())
    }

    pub fn settings(&self) -> Settings {
        let mut s = Settings::default();
        let c = &self.continuation;
        s.continuation = ContinuationSettings {
            initial_step: c.initial_step,
            min_step: c.min_step,
            max_step: c.max_step,
            alpha_cap: c.alpha_cap,
            k_window: c.k_window,
            closure_tolerance: c.closure_tolerance,
            double_zero_radius: c.double_zero_radius,
            corrector_iterations: c.corrector_iterations,
            easy_steps_to_grow: c.easy_steps_to_grow,
        };
        let t = &self.tolerances;
        s.tol_axis = t.tol_axis;
        s.newton.step_tolerance = t.newton_step;
        s.newton.max_iterations = t.newton_iterations;
        s.axis.samples_per_segment = t.axis_samples;
        s.critical_proximity = t.critical_proximity;
        s.sweep_nudge = t.sweep_nudge;
        s
    }

    pub fn depth(&self) -> Result<f64, CliError> {
        self.u.ok_or_else(|| CliError::usage("--U is required"))
    }

    pub fn spec(&self) -> Result<PotentialSpec, CliError> {
        Ok(PotentialSpec::new(self.m, self.a, self.depth()?, self.channel.channel())?)
    }

    pub fn format(&self) -> Format {
        self.output.format.unwrap_or(Format::Json)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_engine() {
        let c = RunConfig::default();
        assert_eq!(c.settings(), Settings::default());
        c.validate().unwrap();
    }

    #[test]
    fn round_trips_and_rejects_unknown_fields() {
        let c = RunConfig {
            u: Some(2.0),
            depths: vec![0.1, 0.2],
            ..RunConfig::default()
        };
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), c);
        assert!(serde_json::from_str::<RunConfig>(r#"{"m": 1, "depth": 2}"#).is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"continuation": {"step": 1}}"#).is_err());
        let partial: RunConfig = serde_json::from_str(r#"{"U": 0.5, "gamma": "-1"}"#).unwrap();
        assert_eq!((partial.u, partial.gamma, partial.a), (Some(0.5), Gamma::Repulsive, 1.5));
    }

    #[test]
    fn validation() {
        let bad = |f: fn(&mut RunConfig)| {
            let mut c = RunConfig::default();
            f(&mut c);
            c.validate().is_err()
        };
        assert!(bad(|c| c.a = -1.0));
        assert!(bad(|c| c.u = Some(f64::NAN)));
        assert!(bad(|c| c.tolerances.tol_axis = 0.0));
        assert!(bad(|c| c.continuation.min_step = 1.0));
        assert!(bad(|c| c.index = 0));
    }

    #[test]
    fn gamma_spellings() {
        assert_eq!(Gamma::parse("+1"), Ok(Gamma::Attractive));
        assert_eq!(Gamma::parse("1"), Ok(Gamma::Attractive));
        assert_eq!(Gamma::parse("-1"), Ok(Gamma::Repulsive));
        assert!(Gamma::parse("0").is_err());
    }
}
