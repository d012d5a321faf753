//! Even entire functions of the interior phase `z = Ka`, written in terms of
//! `w = z²` so that both channels are free of `√` branch ambiguity:
//!
//! `c(w) = cos z`, `s(w) = sin z / z`, and the `w`-derivatives
//! `c' = -s/2`, `s' = (c - s)/(2w)`, `s'' = (-s/2 - 3s')/(2w)`.
//!
//! Every value is multiplied by the same positive factor `e^{-|Im z|}` so
//! that large `|Im z|` cannot overflow. Ratios, arguments and Newton steps
//! are unaffected by that factor.


// Unused once std is linked (dev builds); required for no_std math.
#[allow(unused_imports)]
use num_traits::Float;
use crate::C64;

const SERIES_RADIUS: f64 = 1.0;
const SERIES_TERMS: usize = 16;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Kernel {
    pub c: C64,
    pub s: C64,
    pub ds: C64,
    pub dds: C64,
    /// `|Im z|`; multiply by `exp(log_scale)` to undo the scaling.
    pub log_scale: f64,
}

impl Kernel {
    pub fn dc(&self) -> C64 {
        -self.s * 0.5
    }

    pub fn ddc(&self) -> C64 {
        -self.ds * 0.5
    }
}

pub(crate) fn kernel(w: C64) -> Kernel {
    let z = w.sqrt();
    let log_scale = z.im.abs();
    if w.norm() < SERIES_RADIUS {
        let f = (-log_scale).exp();
        let (c, s, ds, dds) = series(w);
        return Kernel {
            c: c * f,
            s: s * f,
            ds: ds * f,
            dds: dds * f,
            log_scale,
        };
    }
    let t = (-2.0 * log_scale).exp();
    let ch = 0.5 * (1.0 + t);
    let sh = 0.5 * (1.0 - t) * z.im.signum();
    let (sx, cx) = z.re.sin_cos();
    let c = C64::new(cx * ch, -sx * sh);
    let sin = C64::new(sx * ch, cx * sh);
    let s = sin / z;
    let ds = (c - s) / (w * 2.0);
    let dds = (-s * 0.5 - ds * 3.0) / (w * 2.0);
    Kernel {
        c,
        s,
        ds,
        dds,
        log_scale,
    }
}

/// Taylor series of `c, s, s', s''` about `w = 0`.
fn series(w: C64) -> (C64, C64, C64, C64) {
    let zero = C64::new(0.0, 0.0);
    let (mut c, mut s, mut ds, mut dds) = (zero, zero, zero, zero);
    // c = Σ (-1)^n w^n / (2n)!, s = Σ (-1)^n w^n / (2n+1)!
    let mut even_fact = 1.0;
    let mut sign = 1.0;
    let mut pow = [C64::new(1.0, 0.0); SERIES_TERMS];
    for n in 1..SERIES_TERMS {
        pow[n] = pow[n - 1] * w;
    }
    for n in 0..SERIES_TERMS {
        let nf = n as f64;
        let odd_fact = even_fact * (2.0 * nf + 1.0);
        c += pow[n] * (sign / even_fact);
        s += pow[n] * (sign / odd_fact);
        if n >= 1 {
            ds += pow[n - 1] * (sign * nf / odd_fact);
        }
        if n >= 2 {
            dds += pow[n - 2] * (sign * nf * (nf - 1.0) / odd_fact);
        }
        even_fact = odd_fact * (2.0 * nf + 2.0);
        sign = -sign;
    }
    (c, s, ds, dds)
}

/// Real `c(w)` and `s(w)` for real `w`, scaled by the same positive factor.
pub(crate) fn real_kernel(w: f64) -> (f64, f64) {
    if w.abs() < SERIES_RADIUS {
        let (c, s, _, _) = series(C64::new(w, 0.0));
        let f = if w < 0.0 { (-(-w).sqrt()).exp() } else { 1.0 };
        return (c.re * f, s.re * f);
    }
    if w > 0.0 {
        let z = w.sqrt();
        (z.cos(), z.sin() / z)
    } else {
        let y = (-w).sqrt();
        let t = (-2.0 * y).exp();
        (0.5 * (1.0 + t), 0.5 * (1.0 - t) / y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unscaled(w: C64) -> (C64, C64, C64, C64) {
        let k = kernel(w);
        let f = k.log_scale.exp();
        (k.c * f, k.s * f, k.ds * f, k.dds * f)
    }

    #[test]
    fn series_and_closed_form_agree_at_the_switch() {
        for &(re, im) in &[(0.999, 0.0), (-0.7, 0.7), (0.0, -0.999), (0.5, 0.8)] {
            let w = C64::new(re, im);
            let (c0, s0, d0, dd0) = series(w);
            let z = w.sqrt();
            let c1 = z.cos();
            let s1 = z.sin() / z;
            let d1 = (c1 - s1) / (w * 2.0);
            let dd1 = (-s1 * 0.5 - d1 * 3.0) / (w * 2.0);
            assert!((c0 - c1).norm() < 1e-14);
            assert!((s0 - s1).norm() < 1e-14);
            assert!((d0 - d1).norm() < 1e-13);
            assert!((dd0 - dd1).norm() < 1e-11);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-5;
        for &(re, im) in &[(0.3, 0.2), (4.0, -2.0), (-9.0, 1.0), (25.0, 30.0)] {
            let w = C64::new(re, im);
            let (c, s, ds, dds) = unscaled(w);
            let (cp, sp, dsp, _) = unscaled(w + h);
            let (cm, sm, dsm, _) = unscaled(w - h);
            assert!(((cp - cm) / (2.0 * h) + s * 0.5).norm() < 1e-8 * (1.0 + c.norm()));
            assert!(((sp - sm) / (2.0 * h) - ds).norm() < 1e-8 * (1.0 + s.norm()));
            assert!(((dsp - dsm) / (2.0 * h) - dds).norm() < 1e-7 * (1.0 + ds.norm()));
        }
    }

    #[test]
    fn scaling_survives_huge_imaginary_phase() {
        // z ≈ 800i would overflow cosh without the scale factor
        let w = C64::new(-640_000.0, 1.0);
        let k = kernel(w);
        assert!(k.c.is_finite() && k.s.is_finite() && k.ds.is_finite());
        assert!((k.log_scale - 800.0).abs() < 1e-3);
        assert!((k.c.norm() - 0.5).abs() < 1e-6);
    }

    #[test]
    fn real_kernel_matches_complex() {
        for &w in &[-30.0, -0.5, 0.0, 0.4, 2.0, 50.0] {
            let (c, s) = real_kernel(w);
            let k = kernel(C64::new(w, 0.0));
            assert!((c - k.c.re).abs() < 1e-14, "w = {w}");
            assert!((s - k.s.re).abs() < 1e-14, "w = {w}");
        }
    }
}
