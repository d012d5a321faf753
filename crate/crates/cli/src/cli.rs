//! Command-line flags. Every flag is optional at parse time; an explicit
//! flag overrides the `--config` file, which overrides the defaults.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{ChannelName, Format, Gamma, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "rectpole",
    version,
    about = "S-matrix poles and pole trajectories of the 1D symmetric rectangular potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Poles on the imaginary momentum axis at real coupling.
    Axis(AxisArgs),
    /// Full pole chart: axis poles at both couplings and their trajectories.
    Chart(ChartArgs),
    /// Depth at which two poles coalesce at k_c = -i/a.
    Critical(CriticalArgs),
    /// Depth at which the n-th bound state of a channel appears.
    Threshold(ThresholdArgs),
    /// Charts over a list of depths, with the transitions between them.
    Sweep(SweepArgs),
    /// Randomised check of the S-matrix identities.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Axis(_) => "axis",
            Command::Chart(_) => "chart",
            Command::Critical(_) => "critical",
            Command::Threshold(_) => "threshold",
            Command::Sweep(_) => "sweep",
            Command::Verify(_) => "verify",
        }
    }

    pub fn config_path(&self) -> Option<&PathBuf> {
        match self {
            Command::Axis(a) => a.potential.config.as_ref(),
            Command::Chart(a) => a.potential.config.as_ref(),
            Command::Critical(a) => a.potential.config.as_ref(),
            Command::Threshold(a) => a.potential.config.as_ref(),
            Command::Sweep(a) => a.potential.config.as_ref(),
            Command::Verify(a) => a.potential.config.as_ref(),
        }
    }

    /// Write every explicitly given flag into `config`.
    pub fn apply(&self, config: &mut RunConfig) {
        match self {
            Command::Axis(a) => {
                a.potential.apply(config);
                if a.depth.is_some() {
                    config.u = a.depth;
                }
                set(&mut config.gamma, a.gamma);
                a.output.apply(config);
            }
            Command::Chart(a) => {
                a.potential.apply(config);
                if a.depth.is_some() {
                    config.u = a.depth;
                }
                a.continuation.apply(config);
                a.output.apply(config);
                if a.svg.is_some() {
                    config.output.svg = a.svg.clone();
                }
            }
            Command::Critical(a) => {
                a.potential.apply(config);
                set(&mut config.gamma, a.gamma);
                set(&mut config.index, a.index);
                set_out(config, &a.out);
            }
            Command::Threshold(a) => {
                a.potential.apply(config);
                set(&mut config.n, a.n);
                set_out(config, &a.out);
            }
            Command::Sweep(a) => {
                a.potential.apply(config);
                if let Some(d) = &a.depths {
                    config.depths = d.clone();
                }
                a.continuation.apply(config);
                set_out(config, &a.out);
            }
            Command::Verify(a) => {
                a.potential.apply(config);
                set(&mut config.samples, a.samples);
                set(&mut config.seed, a.seed);
                set_out(config, &a.out);
            }
        }
    }
}

fn set<T: Copy>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn set_out(config: &mut RunConfig, out: &Option<PathBuf>) {
    if out.is_some() {
        config.output.out = out.clone();
    }
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    /// Run configuration file (JSON, same schema as the provenance block).
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Particle mass.
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<f64>,
    /// Half width of the potential.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, value_enum)]
    pub channel: Option<ChannelName>,
}

impl PotentialArgs {
    fn apply(&self, config: &mut RunConfig) {
        set(&mut config.m, self.m);
        set(&mut config.a, self.a);
        set(&mut config.channel, self.channel);
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl OutputArgs {
    fn apply(&self, config: &mut RunConfig) {
        set_out(config, &self.out);
        if self.format.is_some() {
            config.output.format = self.format;
        }
    }
}

#[derive(Debug, Args)]
pub struct ContinuationArgs {
    #[arg(long, value_name = "DALPHA")]
    pub initial_step: Option<f64>,
    #[arg(long, value_name = "DALPHA")]
    pub min_step: Option<f64>,
    #[arg(long, value_name = "DALPHA")]
    pub max_step: Option<f64>,
    /// Cap on accumulated |Δα| per tracing direction.
    #[arg(long)]
    pub alpha_cap: Option<f64>,
    /// Trajectories stop once |k| exceeds this many units of 1/a.
    #[arg(long)]
    pub k_window: Option<f64>,
    #[arg(long)]
    pub closure_tolerance: Option<f64>,
}

impl ContinuationArgs {
    fn apply(&self, config: &mut RunConfig) {
        let c = &mut config.continuation;
        set(&mut c.initial_step, self.initial_step);
        set(&mut c.min_step, self.min_step);
        set(&mut c.max_step, self.max_step);
        set(&mut c.alpha_cap, self.alpha_cap);
        set(&mut c.k_window, self.k_window);
        set(&mut c.closure_tolerance, self.closure_tolerance);
    }
}

#[derive(Debug, Args)]
pub struct AxisArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Potential depth.
    #[arg(long = "U", allow_negative_numbers = true)]
    pub depth: Option<f64>,
    /// +1 for the well, -1 for the barrier.
    #[arg(long, allow_hyphen_values = true, value_parser = Gamma::parse)]
    pub gamma: Option<Gamma>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ChartArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Potential depth.
    #[arg(long = "U", allow_negative_numbers = true)]
    pub depth: Option<f64>,
    #[command(flatten)]
    pub continuation: ContinuationArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Also write the chart as an SVG figure.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Side of the collision: +1 for the well, -1 for the barrier.
    #[arg(long, allow_hyphen_values = true, value_parser = Gamma::parse)]
    pub gamma: Option<Gamma>,
    /// Collision number on that side, from 1 in ascending depth.
    #[arg(long)]
    pub index: Option<usize>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Bound state number, from 1.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Comma-separated ascending depths.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub depths: Option<Vec<f64>>,
    #[command(flatten)]
    pub continuation: ContinuationArgs,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Seed of the ChaCha sample stream.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}
