//! Numerical knobs shared by the root finder, continuation and charts.
//!
//! Defaults are the values the engine is validated with; everything is
//! plain data so front ends can snapshot it into output provenance.

use core::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub axis: AxisScanSettings,
    pub newton: NewtonSettings,
    pub continuation: ContinuationSettings,
    /// `|Re k|` below which a pole counts as lying on the imaginary axis.
    pub tol_axis: f64,
    /// Distance in `U` to a critical depth that triggers a proximity warning.
    pub critical_proximity: f64,
    /// Distance a sweep keeps from critical depths.
    pub sweep_nudge: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisScanSettings {
    /// Uniform samples per regime segment of the imaginary axis.
    pub samples_per_segment: usize,
    /// Explicit `κ` range for `k = iκ`; `None` uses `±(3√(2mU) + 5/a)`.
    pub kappa_range: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonSettings {
    pub max_iterations: usize,
    /// Converged once `|Δk| < step_tolerance · (1 + |k|)`.
    pub step_tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationSettings {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Cap on accumulated `|Δα|` for one tracing direction.
    pub alpha_cap: f64,
    /// Trajectories stop once `|k|` exceeds `k_window / a`.
    pub k_window: f64,
    pub closure_tolerance: f64,
    /// Guard radius around `k_c` for collision bookkeeping.
    pub double_zero_radius: f64,
    /// Corrector iterations allowed before the step is halved.
    pub corrector_iterations: usize,
    /// Easy steps in a row before the step is doubled.
    pub easy_steps_to_grow: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            axis: AxisScanSettings::default(),
            newton: NewtonSettings::default(),
            continuation: ContinuationSettings::default(),
            tol_axis: 1e-9,
            critical_proximity: 1e-5,
            sweep_nudge: 1e-6,
        }
    }
}

impl Default for AxisScanSettings {
    fn default() -> Self {
        Self {
            samples_per_segment: 2000,
            kappa_range: None,
        }
    }
}

impl Default for NewtonSettings {
    fn default() -> Self {
        Self {
            max_iterations: 50,
            step_tolerance: 1e-12,
        }
    }
}

impl Default for ContinuationSettings {
    fn default() -> Self {
        Self {
            initial_step: 0.01,
            min_step: 1e-6,
            max_step: 0.05,
            alpha_cap: 8.0 * PI,
            k_window: 40.0,
            closure_tolerance: 1e-6,
            double_zero_radius: 1e-3,
            corrector_iterations: 4,
            easy_steps_to_grow: 5,
        }
    }
}

impl ContinuationSettings {
    /// Same settings with every step length halved.
    pub fn halved_steps(&self) -> Self {
        Self {
            initial_step: self.initial_step * 0.5,
            min_step: self.min_step * 0.5,
            max_step: self.max_step * 0.5,
            ..*self
        }
    }
}
