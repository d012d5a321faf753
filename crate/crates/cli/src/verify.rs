//! Randomised identity checks of the closed-form S-matrix.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rectpole_core::smatrix::{
    factorisation_residual, s_full, s_minus, s_plus, transfer_matrix_s, verify_relations, Layer, Matrix2,
};
use rectpole_core::{Channel, ComplexCoupling, Error, PotentialSpec, C64};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::CliError;

/// Failing samples kept in the report.
const MAX_LISTED: usize = 20;
/// Redraws allowed when a sample lands on a pole.
const MAX_REDRAWS: usize = 100;

const CHANNEL_UNITARITY: f64 = 1e-12;
const PARITY_BASIS: f64 = 1e-12;
const FACTORISATION: f64 = 1e-12;
const TRANSFER_MATRIX: f64 = 1e-8;
const LAYER_SPLIT: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSummary {
    pub name: String,
    pub tolerance: f64,
    pub max_residual: f64,
    pub samples: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailingSample {
    pub check: String,
    pub re_k: f64,
    pub im_k: f64,
    pub gamma_alpha: f64,
    pub depth: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub samples: usize,
    pub seed: u64,
    /// Largest residual of the analyticity relations and `S₁₁ = S₂₂`.
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub checks: Vec<CheckSummary>,
    pub failing: Vec<FailingSample>,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Tally {
    checks: Vec<CheckSummary>,
    failing: Vec<FailingSample>,
}

impl Tally {
    fn record(&mut self, name: &str, tolerance: f64, residual: f64, k: C64, coupling: ComplexCoupling, depth: f64) {
        let index = match self.checks.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.checks.push(CheckSummary {
                    name: name.to_owned(),
                    tolerance,
                    max_residual: 0.0,
                    samples: 0,
                    failures: 0,
                });
                self.checks.len() - 1
            }
        };
        let c = &mut self.checks[index];
        c.samples += 1;
        // NaN counts as a failure
        let ok = residual <= tolerance;
        c.max_residual = if residual.is_nan() { f64::INFINITY } else { c.max_residual.max(residual) };
        if !ok {
            c.failures += 1;
            if self.failing.len() < MAX_LISTED {
                self.failing.push(FailingSample {
                    check: name.to_owned(),
                    re_k: k.re,
                    im_k: k.im,
                    gamma_alpha: coupling.alpha(),
                    depth,
                    residual,
                });
            }
        }
    }
}

fn matrix(r: Result<rectpole_core::smatrix::SMatrixValue, Error>) -> Result<Option<Matrix2>, CliError> {
    match r {
        Ok(v) => Ok(v.matrix()),
        Err(Error::PoleHit { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn scalar(r: Result<rectpole_core::smatrix::SMatrixValue, Error>) -> Result<Option<C64>, CliError> {
    match r {
        Ok(v) => Ok(v.scalar()),
        Err(Error::PoleHit { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

struct Draw {
    k: C64,
    coupling: ComplexCoupling,
    depth: f64,
}

fn complex_draw(rng: &mut ChaCha8Rng, a: f64) -> Draw {
    Draw {
        k: C64::new(rng.random_range(-10.5..10.5) / a, rng.random_range(-6.0..6.0) / a),
        coupling: ComplexCoupling::from_alpha(rng.random_range(-PI..PI)),
        depth: rng.random_range(0.0..6.0),
    }
}

fn real_draw(rng: &mut ChaCha8Rng, a: f64, real_coupling: bool) -> Draw {
    let q = rng.random_range(0.075..12.0) / a;
    let k = C64::new(if rng.random_bool(0.5) { q } else { -q }, 0.0);
    let coupling = if real_coupling {
        if rng.random_bool(0.5) {
            ComplexCoupling::attractive()
        } else {
            ComplexCoupling::repulsive()
        }
    } else {
        ComplexCoupling::from_alpha(rng.random_range(-PI..PI))
    };
    Draw {
        k,
        coupling,
        depth: rng.random_range(0.0..6.0),
    }
}

/// `samples` draws for each family of checks, from a ChaCha stream seeded
/// with `seed`.
pub fn run(config: &RunConfig) -> Result<VerifyReport, CliError> {
    config.validate()?;
    let (m, a) = (config.m, config.a);
    let spec = |u: f64, ch: Channel| PotentialSpec::new(m, a, u, ch);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut t = Tally {
        checks: Vec::new(),
        failing: Vec::new(),
    };
    let tol = config.tolerances.verify;

    for _ in 0..config.samples {
        // complex k and γ
        let mut done = false;
        for _ in 0..MAX_REDRAWS {
            let d = complex_draw(&mut rng, a);
            let full = spec(d.depth, Channel::Full)?;
            let r = match verify_relations(d.k, d.coupling, &full) {
                Ok(r) => r,
                Err(Error::PoleHit { .. }) => continue,
                Err(e) => return Err(e.into()),
            };
            let (Some(hat), Some(sp), Some(sm)) = (
                matrix(s_full(d.k, d.coupling, &full))?.map(|s| {
                    let u = Matrix2::parity_transform();
                    u * s * u.transpose()
                }),
                scalar(s_plus(d.k, d.coupling, &spec(d.depth, Channel::Plus)?))?,
                scalar(s_minus(d.k, d.coupling, &spec(d.depth, Channel::Minus)?))?,
            ) else {
                continue;
            };
            let rec = |t: &mut Tally, name: &str, tolerance: f64, residual: f64| {
                t.record(name, tolerance, residual, d.k, d.coupling, d.depth)
            };
            rec(&mut t, "reflection", tol, r.reflection);
            rec(&mut t, "unitarity", tol, r.unitarity);
            rec(&mut t, "conjugation", tol, r.conjugation);
            rec(&mut t, "s11_equals_s22", 0.0, r.symmetry);
            let scale = hat.max_abs().max(1.0);
            let parity = [
                (hat.get(0, 0) - sp).norm(),
                (hat.get(1, 1) - sm).norm(),
                hat.get(0, 1).norm(),
                hat.get(1, 0).norm(),
            ]
            .into_iter()
            .fold(0.0, f64::max)
                / scale;
            rec(&mut t, "parity_basis", PARITY_BASIS, parity);
            rec(&mut t, "factorisation", FACTORISATION, factorisation_residual(d.k, d.coupling, &full));
            done = true;
            break;
        }
        if !done {
            return Err(CliError::Sampling("every redraw landed on a pole"));
        }

        // real k, real γ: the parity channels are unitary
        let d = real_draw(&mut rng, a, true);
        let sp = scalar(s_plus(d.k, d.coupling, &spec(d.depth, Channel::Plus)?))?;
        let sm = scalar(s_minus(d.k, d.coupling, &spec(d.depth, Channel::Minus)?))?;
        if let (Some(sp), Some(sm)) = (sp, sm) {
            let residual = (sp.norm() - 1.0).abs().max((sm.norm() - 1.0).abs());
            t.record("channel_unitarity", CHANNEL_UNITARITY, residual, d.k, d.coupling, d.depth);
        }

        // real k, complex γ: closed form against the layered oracle
        let d = real_draw(&mut rng, a, false);
        let Some(analytic) = matrix(s_full(d.k, d.coupling, &spec(d.depth, Channel::Full)?))? else {
            continue;
        };
        let one = transfer_matrix_s(d.k, d.coupling, m, &[Layer::new(2.0 * a, -d.depth)])?
            .matrix()
            .expect("transfer matrices are full");
        let split = transfer_matrix_s(
            d.k,
            d.coupling,
            m,
            &[Layer::new(0.8 * a, -d.depth), Layer::new(1.2 * a, -d.depth)],
        )?
        .matrix()
        .expect("transfer matrices are full");
        let oracle = (analytic - one).max_abs() / analytic.max_abs().max(1.0);
        let split_residual = (split - one).max_abs() / one.max_abs().max(1.0);
        t.record("transfer_matrix", TRANSFER_MATRIX, oracle, d.k, d.coupling, d.depth);
        t.record("layer_split", LAYER_SPLIT, split_residual, d.k, d.coupling, d.depth);
    }

    let max_residual = t
        .checks
        .iter()
        .filter(|c| matches!(c.name.as_str(), "reflection" | "unitarity" | "conjugation" | "s11_equals_s22"))
        .map(|c| c.max_residual)
        .fold(0.0, f64::max);
    let passed = t.checks.iter().all(|c| c.failures == 0);
    Ok(VerifyReport {
        samples: config.samples,
        seed: config.seed,
        max_residual,
        tolerance: tol,
        passed,
        checks: t.checks,
        failing: t.failing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(samples: usize, seed: u64) -> RunConfig {
        RunConfig {
            samples,
            seed,
            ..RunConfig::default()
        }
    }

    #[test]
    fn default_run_passes() {
        let r = run(&config(200, 7)).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.max_residual < 1e-10);
        assert_eq!(r.check("s11_equals_s22").unwrap().max_residual, 0.0);
        assert_eq!(r.check("reflection").unwrap().samples, 200);
    }

    #[test]
    fn same_seed_same_report() {
        assert_eq!(run(&config(20, 3)).unwrap(), run(&config(20, 3)).unwrap());
        assert_ne!(run(&config(20, 3)).unwrap(), run(&config(20, 4)).unwrap());
    }

    #[test]
    fn impossible_tolerance_fails_with_listed_samples() {
        let mut c = config(10, 1);
        c.tolerances.verify = 1e-300;
        let r = run(&c).unwrap();
        assert!(!r.passed);
        assert!(!r.failing.is_empty() && r.failing.len() <= MAX_LISTED);
    }
}
