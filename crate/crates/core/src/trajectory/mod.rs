//! Pole paths under `γ = e^{iα}`.
//!
//! A pole is followed in `α` with an Euler predictor
//! `dk/dα = -(∂D/∂α)/(∂D/∂k)` and a Newton corrector at fixed `α`. Steps are
//! clipped so that every multiple of `π` past the seed is sampled exactly;
//! those are the real couplings where paths meet the axis spectra and where
//! closure is decided. Near `k_c = -i/a` the path may pass a double zero,
//! handled by the local model in [`branch`].

mod branch;

use alloc::vec::Vec;
use core::f64::consts::PI;

// Unused once std is linked (dev builds); required for no_std math.
#[allow(unused_imports)]
use num_traits::Float;

pub use branch::{
    branch_at_double_zero, collision_event, local_model, CollisionDirection, CollisionEvent, LocalModel, Parameter,
};

use crate::rootfinder::{newton_solve, residual_bound, Pole, PoleKind};
use crate::settings::{NewtonSettings, Settings};
use crate::smatrix::jost;
use crate::{collision_momentum, Channel, ComplexCoupling, Error, PotentialSpec, Result, C64};

const TWO_PI: f64 = 2.0 * PI;
/// Slack when comparing accumulated `α` against landmarks.
const ALPHA_SLACK: f64 = 1e-9;

/// One point of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub alpha: f64,
    pub k: C64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpenReason {
    /// `|k|` left the working window.
    KWindowExit,
    /// Accumulated `|Δα|` reached the cap.
    AlphaCapExit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Closure {
    Closed2Pi,
    Closed4Pi,
    /// Returns to the seed only after `turns > 2` full turns of `α`.
    ClosedLonger { turns: u32 },
    Open(OpenReason),
}

impl Closure {
    fn from_turns(turns: u32) -> Self {
        match turns {
            1 => Closure::Closed2Pi,
            2 => Closure::Closed4Pi,
            turns => Closure::ClosedLonger { turns },
        }
    }

    pub fn is_closed(self) -> bool {
        !matches!(self, Closure::Open(_))
    }

    pub fn name(self) -> &'static str {
        match self {
            Closure::Closed2Pi => "closed_2pi",
            Closure::Closed4Pi => "closed_4pi",
            Closure::ClosedLonger { .. } => "closed_longer",
            Closure::Open(_) => "open",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Increasing => 1.0,
            Direction::Decreasing => -1.0,
        }
    }
}

/// A traced pole path.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub seed: Pole,
    /// Ordered by ascending `alpha`; contains the seed.
    pub samples: Vec<Sample>,
    pub closure: Closure,
    /// Samples within the guard radius of `k_c`, plus points where a double
    /// zero was crossed with the local model.
    pub collisions: Vec<Sample>,
    /// Points with `|Re k| < tol_axis`, refined by bisection in `α` where the
    /// path crosses between samples.
    pub axis_crossings: Vec<Sample>,
}

impl Trajectory {
    pub fn channel(&self) -> Channel {
        self.seed.channel
    }

    pub fn seed_alpha(&self) -> f64 {
        self.seed.coupling.alpha()
    }

    pub fn alpha_span(&self) -> (f64, f64) {
        let first = self.samples.first().map_or(self.seed_alpha(), |s| s.alpha);
        let last = self.samples.last().map_or(self.seed_alpha(), |s| s.alpha);
        (first, last)
    }

    /// Whether some sample sits at `α ≡ alpha (mod 2π)` within `tol` of `k`.
    pub fn visits(&self, alpha: f64, k: C64, tol: f64) -> bool {
        self.samples
            .iter()
            .any(|s| same_phase(s.alpha, alpha) && (s.k - k).norm() < tol)
    }

    /// Distinct momenta sampled at `α ≡ alpha (mod 2π)`, merged within `tol`.
    pub fn points_at_phase(&self, alpha: f64, tol: f64) -> Vec<C64> {
        let mut out: Vec<C64> = Vec::new();
        for s in self.samples.iter().filter(|s| same_phase(s.alpha, alpha)) {
            if !out.iter().any(|k| (k - s.k).norm() < tol) {
                out.push(s.k);
            }
        }
        out
    }

    /// The pole on this path at an arbitrary `alpha` inside the sampled
    /// span, continued from the nearest sample.
    pub fn k_at(&self, alpha: f64, spec: &PotentialSpec, settings: &Settings) -> Result<C64> {
        let (lo, hi) = self.alpha_span();
        if !(alpha >= lo - ALPHA_SLACK && alpha <= hi + ALPHA_SLACK) {
            return Err(Error::InvalidArgument("alpha outside the traced span"));
        }
        self.continued_to(alpha, spec, settings)
    }

    fn continued_to(&self, alpha: f64, spec: &PotentialSpec, settings: &Settings) -> Result<C64> {
        let start = self
            .samples
            .iter()
            .min_by(|a, b| (a.alpha - alpha).abs().total_cmp(&(b.alpha - alpha).abs()))
            .ok_or(Error::InvalidArgument("empty trajectory"))?;
        continue_to(self.channel(), *start, alpha, spec, &settings.newton)
    }
}

/// Largest `|k − k'|` over the samples `(α, k)` of `reference`, with `k'`
/// the pole on `other` at the same `α`. Samples just past the end of
/// `other` (window exits land on slightly different `α`) are reached by
/// continuing from its last sample.
pub fn sample_deviation(reference: &Trajectory, other: &Trajectory, spec: &PotentialSpec, settings: &Settings) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for s in &reference.samples {
        let k = other.continued_to(s.alpha, spec, settings)?;
        worst = worst.max((k - s.k).norm());
    }
    Ok(worst)
}

fn same_phase(a: f64, b: f64) -> bool {
    let turns = (a - b) / TWO_PI;
    (turns - turns.round()).abs() * TWO_PI < ALPHA_SLACK
}

/// Continue the pole at `from` to `alpha` in small predictor-corrector steps.
fn continue_to(channel: Channel, from: Sample, alpha: f64, spec: &PotentialSpec, newton: &NewtonSettings) -> Result<C64> {
    const SUBSTEP: f64 = 1e-3;
    let span = alpha - from.alpha;
    let pieces = (span.abs() / SUBSTEP).ceil().max(1.0) as usize;
    let mut k = from.k;
    for i in 1..=pieces {
        let a0 = from.alpha + span * (i - 1) as f64 / pieces as f64;
        let a1 = if i == pieces {
            alpha
        } else {
            from.alpha + span * i as f64 / pieces as f64
        };
        let j = jost(channel, k, ComplexCoupling::from_alpha(a0), spec);
        let predicted = k - j.d_alpha / j.d_k * (a1 - a0);
        let out = newton_solve(channel, predicted, ComplexCoupling::from_alpha(a1), spec, newton)?;
        if !out.converged {
            return Err(Error::Stall { alpha: a1, k: predicted });
        }
        k = out.k;
    }
    Ok(k)
}

/// Result of one corrector attempt.
enum Step {
    Accepted(C64),
    Rejected,
}

struct Tracer<'a> {
    channel: Channel,
    spec: &'a PotentialSpec,
    settings: &'a Settings,
    k_c: C64,
}

impl Tracer<'_> {
    fn coupling(&self, alpha: f64) -> ComplexCoupling {
        ComplexCoupling::from_alpha(alpha)
    }

    fn attempt(&self, k: C64, alpha: f64, delta: f64) -> Step {
        let cont = &self.settings.continuation;
        let j = jost(self.channel, k, self.coupling(alpha), self.spec);
        let predicted = k - j.d_alpha / j.d_k * delta;
        if !predicted.is_finite() {
            return Step::Rejected;
        }
        let newton = NewtonSettings {
            max_iterations: cont.corrector_iterations,
            ..self.settings.newton
        };
        let target = self.coupling(alpha + delta);
        let out = match newton_solve(self.channel, predicted, target, self.spec, &newton) {
            Ok(out) if out.converged => out,
            _ => return Step::Rejected,
        };
        if (out.k - k).norm() > 0.1 * (1.0 + k.norm()) {
            return Step::Rejected;
        }
        let residual = jost(self.channel, out.k, target, self.spec).value.norm();
        if residual >= residual_bound(out.k) {
            return Step::Rejected;
        }
        Step::Accepted(out.k)
    }

    /// Cross the double zero at `k_c` from a stall at `(alpha, k)`: the
    /// collision happens at the nearest landmark, and the path resumes as far
    /// past it as the stall was before it.
    fn cross_double_zero(&self, alpha: f64, landmark: f64, sign: f64) -> Result<Sample> {
        let mut gap = (landmark - alpha).abs().max(self.settings.continuation.min_step);
        let model = local_model(self.channel, self.k_c, Parameter::Alpha, self.coupling(landmark), self.spec);
        for _ in 0..8 {
            let target = landmark + sign * gap;
            let branches = branch_at_double_zero(&model, sign * gap)?;
            for seed in branches {
                let radius = 0.5 * (seed - self.k_c).norm().max(1e-9);
                let Ok(out) = newton_solve(self.channel, seed, self.coupling(target), self.spec, &self.settings.newton)
                else {
                    continue;
                };
                if out.converged && (out.k - seed).norm() < radius {
                    return Ok(Sample {
                        alpha: target,
                        k: out.k,
                    });
                }
            }
            gap *= 2.0;
        }
        Err(Error::ModelInvalid)
    }
}

/// Follow `seed` in one direction of `α` until it closes on itself, leaves
/// the `k` window, or the accumulated `|Δα|` reaches the cap.
pub fn trace(seed: &Pole, direction: Direction, spec: &PotentialSpec, settings: &Settings) -> Result<Trajectory> {
    let residual = jost(seed.channel, seed.k, seed.coupling, spec).value.norm();
    if !(residual < residual_bound(seed.k)) || seed.channel == Channel::Full {
        return Err(Error::SeedNotOnPole { k: seed.k, residual });
    }
    let cont = &settings.continuation;
    let tracer = Tracer {
        channel: seed.channel,
        spec,
        settings,
        k_c: collision_momentum(spec.half_width()),
    };
    let sign = direction.sign();
    let alpha0 = seed.coupling.alpha();
    let window = cont.k_window / spec.half_width();

    let mut k = seed.k;
    let mut acc = 0.0;
    let mut h = cont.initial_step;
    let mut easy_run = 0;
    let mut samples = alloc::vec![Sample { alpha: alpha0, k }];
    let mut collisions = Vec::new();
    let closure = loop {
        if acc >= cont.alpha_cap - ALPHA_SLACK {
            break Closure::Open(OpenReason::AlphaCapExit);
        }
        let landmark = ((acc / PI + ALPHA_SLACK).floor() + 1.0) * PI;
        let mut step = h;
        let mut next_acc = acc + step;
        if next_acc > landmark - ALPHA_SLACK {
            step = landmark - acc;
            next_acc = landmark;
        }
        if next_acc > cont.alpha_cap {
            step = cont.alpha_cap - acc;
            next_acc = cont.alpha_cap;
        }
        let alpha = alpha0 + sign * acc;
        match tracer.attempt(k, alpha, sign * step) {
            Step::Accepted(next) => {
                k = next;
                acc = next_acc;
                easy_run += 1;
                if easy_run >= cont.easy_steps_to_grow {
                    h = (2.0 * h).min(cont.max_step);
                    easy_run = 0;
                }
            }
            Step::Rejected => {
                h *= 0.5;
                easy_run = 0;
                if h >= cont.min_step {
                    continue;
                }
                if (k - tracer.k_c).norm() >= 10.0 * cont.double_zero_radius {
                    return Err(Error::Stall { alpha, k });
                }
                let crossed = tracer
                    .cross_double_zero(alpha, alpha0 + sign * landmark, sign)
                    .map_err(|_| Error::StallAtDoubleZero { alpha, k })?;
                collisions.push(Sample {
                    alpha: alpha0 + sign * landmark,
                    k: tracer.k_c,
                });
                k = crossed.k;
                acc = (crossed.alpha - alpha0).abs();
                h = cont.initial_step;
            }
        }
        let sample = Sample {
            alpha: alpha0 + sign * acc,
            k,
        };
        samples.push(sample);
        if (k - tracer.k_c).norm() < cont.double_zero_radius {
            collisions.push(sample);
        }
        if k.norm() > window {
            break Closure::Open(OpenReason::KWindowExit);
        }
        let turns = (acc / TWO_PI).round();
        if turns >= 1.0 && (acc - turns * TWO_PI).abs() < ALPHA_SLACK && (k - seed.k).norm() < cont.closure_tolerance {
            break Closure::from_turns(turns as u32);
        }
    };
    if direction == Direction::Decreasing {
        samples.reverse();
        collisions.reverse();
    }
    let axis_crossings = axis_crossings(seed.channel, &samples, spec, settings);
    Ok(Trajectory {
        seed: *seed,
        samples,
        closure,
        collisions,
        axis_crossings,
    })
}

/// Trace `seed` in both directions and join the halves into one path.
///
/// For a closed path each half covers one full period, so the sample set is
/// closed under the mirror map. The closure label is that of the increasing
/// half.
pub fn trace_both(seed: &Pole, spec: &PotentialSpec, settings: &Settings) -> Result<Trajectory> {
    let forward = trace(seed, Direction::Increasing, spec, settings)?;
    let backward = trace(seed, Direction::Decreasing, spec, settings)?;
    let mut samples = backward.samples;
    samples.extend_from_slice(&forward.samples[1..]);
    let mut collisions = backward.collisions;
    collisions.extend_from_slice(&forward.collisions);
    let mut axis = backward.axis_crossings;
    for s in forward.axis_crossings {
        if !axis.iter().any(|o| o.alpha == s.alpha && o.k == s.k) {
            axis.push(s);
        }
    }
    Ok(Trajectory {
        seed: *seed,
        samples,
        closure: forward.closure,
        collisions,
        axis_crossings: axis,
    })
}

/// Closure label recomputed from the samples: the smallest number of full
/// turns after which the path is back at its seed, or `Open` with the given
/// exit reason.
pub fn classify_closure(trajectory: &Trajectory, tolerance: f64, exit: OpenReason) -> Closure {
    let alpha0 = trajectory.seed_alpha();
    let k0 = trajectory.seed.k;
    let mut best: Option<u32> = None;
    for s in &trajectory.samples {
        let turns = ((s.alpha - alpha0) / TWO_PI).round();
        if turns != 0.0
            && (s.alpha - alpha0 - turns * TWO_PI).abs() < ALPHA_SLACK
            && (s.k - k0).norm() < tolerance
        {
            let n = turns.abs() as u32;
            best = Some(best.map_or(n, |b| b.min(n)));
        }
    }
    best.map_or(Closure::Open(exit), Closure::from_turns)
}

/// The image of a trajectory under `(α, k) → (2α_s − α, −k*)`, with `α_s`
/// the seed's phase. For real `γ_s` this is again a pole path.
pub fn mirror(trajectory: &Trajectory, tol_axis: f64) -> Trajectory {
    let alpha_s = trajectory.seed_alpha();
    let map = |s: &Sample| Sample {
        alpha: 2.0 * alpha_s - s.alpha,
        k: -s.k.conj(),
    };
    let seed_k = -trajectory.seed.k.conj();
    let seed = Pole {
        k: seed_k,
        kind: PoleKind::classify(seed_k, trajectory.seed.multiplicity, tol_axis),
        ..trajectory.seed
    };
    let mut samples: Vec<Sample> = trajectory.samples.iter().map(map).collect();
    samples.reverse();
    let mut collisions: Vec<Sample> = trajectory.collisions.iter().map(map).collect();
    collisions.reverse();
    let mut axis_crossings: Vec<Sample> = trajectory.axis_crossings.iter().map(map).collect();
    axis_crossings.reverse();
    Trajectory {
        seed,
        samples,
        closure: trajectory.closure,
        collisions,
        axis_crossings,
    }
}

/// Hausdorff distance between two sets of momenta.
pub fn hausdorff(a: &[C64], b: &[C64]) -> f64 {
    fn directed(from: &[C64], to: &[C64]) -> f64 {
        from.iter()
            .map(|p| to.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    }
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    directed(a, b).max(directed(b, a))
}

/// Momenta of a trajectory's samples.
pub fn point_set(trajectory: &Trajectory) -> Vec<C64> {
    trajectory.samples.iter().map(|s| s.k).collect()
}

fn axis_crossings(channel: Channel, samples: &[Sample], spec: &PotentialSpec, settings: &Settings) -> Vec<Sample> {
    let tol = settings.tol_axis;
    let mut out: Vec<Sample> = samples.iter().copied().filter(|s| s.k.re.abs() < tol).collect();
    for pair in samples.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.k.re.abs() < tol || b.k.re.abs() < tol || a.k.re.signum() == b.k.re.signum() {
            continue;
        }
        if let Some(s) = bisect_crossing(channel, a, b, spec, settings) {
            out.push(s);
        }
    }
    out.sort_by(|x, y| x.alpha.total_cmp(&y.alpha));
    out
}

/// Refine a sign change of `Re k` between two samples by bisection in `α`.
fn bisect_crossing(channel: Channel, a: Sample, b: Sample, spec: &PotentialSpec, settings: &Settings) -> Option<Sample> {
    let (mut lo, mut hi) = (a, b);
    for _ in 0..80 {
        let alpha = 0.5 * (lo.alpha + hi.alpha);
        let k = continue_to(channel, lo, alpha, spec, &settings.newton).ok()?;
        let mid = Sample { alpha, k };
        if k.re.abs() < settings.tol_axis || (hi.alpha - lo.alpha).abs() < 1e-15 {
            return Some(mid);
        }
        if k.re.signum() == lo.k.re.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}
