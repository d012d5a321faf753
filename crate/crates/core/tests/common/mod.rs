//! Scalar oracles written directly from the real transcendental equations,
//! sharing no code with the engine.

#![allow(dead_code)]

pub const M: f64 = 1.0;
pub const A: f64 = 1.5;

pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) < 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Every root of `f` on `[lo, hi]` found from sign changes on `n` cells,
/// skipping cells where `|f|` jumps through a pole rather than a zero.
pub fn roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let step = (hi - lo) / n as f64;
    for i in 0..n {
        let (x0, x1) = (lo + i as f64 * step, lo + (i + 1) as f64 * step);
        let (f0, f1) = (f(x0), f(x1));
        if f0 * f1 < 0.0 {
            let r = bisect(&f, x0, x1);
            if f(r).abs() < 1e-6 * (1.0 + f0.abs() + f1.abs()) {
                out.push(r);
            }
        }
    }
    out
}

/// Symmetric repulsive collision, `y tanh y = 1`, `U = (y² − 1)/(2ma²)`.
pub fn critical_plus_repulsive() -> f64 {
    let y = bisect(|y| y * y.tanh() - 1.0, 0.5, 2.0);
    (y * y - 1.0) / (2.0 * M * A * A)
}

/// Symmetric attractive collision, `x tan x = −1`, `U = (x² + 1)/(2ma²)`.
pub fn critical_plus_attractive() -> f64 {
    let x = bisect(|x| x * x.sin() + x.cos(), 2.0, 3.1);
    (x * x + 1.0) / (2.0 * M * A * A)
}

/// Antisymmetric attractive collision, `tan x = x`.
pub fn critical_minus_attractive() -> f64 {
    let x = bisect(|x| x * x.cos() - x.sin(), 3.2, 4.7);
    (x * x + 1.0) / (2.0 * M * A * A)
}

/// `κ` of the symmetric poles `k = iκ` of the well with `|κ| < √(2mU)`:
/// `q sin qa = κ cos qa` with `q = √(2mU − κ²)`.
pub fn plus_well_axis_poles(u: f64) -> Vec<f64> {
    let q0 = (2.0 * M * u).sqrt();
    let f = |kappa: f64| {
        let q = (q0 * q0 - kappa * kappa).max(0.0).sqrt();
        q * (q * A).sin() - kappa * (q * A).cos()
    };
    roots(f, -q0 + 1e-12, q0 - 1e-12, 20000)
}

/// Antisymmetric analogue, `q cos qa + κ sin qa = 0`.
pub fn minus_well_axis_poles(u: f64) -> Vec<f64> {
    let q0 = (2.0 * M * u).sqrt();
    let f = |kappa: f64| {
        let q = (q0 * q0 - kappa * kappa).max(0.0).sqrt();
        if q == 0.0 {
            return kappa * A;
        }
        q * (q * A).cos() + kappa * (q * A).sin()
    };
    roots(f, -q0 + 1e-12, q0 - 1e-12, 20000)
}

/// Symmetric virtual poles of the barrier: `κ = −q tanh qa`,
/// `q = √(κ² + 2mU)`.
pub fn plus_barrier_axis_poles(u: f64, kappa_min: f64) -> Vec<f64> {
    let f = |kappa: f64| {
        let q = (kappa * kappa + 2.0 * M * u).sqrt();
        kappa + q * (q * A).tanh()
    };
    roots(f, kappa_min, -1e-12, 20000)
}
