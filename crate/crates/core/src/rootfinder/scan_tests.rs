use core::f64::consts::PI;

use alloc::vec::Vec;

use super::*;
use crate::Error;
use crate::settings::Settings;
use crate::{collision_momentum, PotentialSpec};

fn spec(u: f64, channel: Channel) -> PotentialSpec {
    PotentialSpec::new(1.0, 1.5, u, channel).unwrap()
}

fn kinds(poles: &[Pole]) -> Vec<PoleKind> {
    poles.iter().map(|p| p.kind).collect()
}

/// Scalar oracle for the attractive symmetric collision: x tan x = −1.
fn plus_attractive_critical() -> f64 {
    let (mut lo, mut hi) = (PI / 2.0 + 1e-9, PI - 1e-9);
    let f = |x: f64| x * x.sin() + x.cos();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == (f(lo) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    (x * x + 1.0) / (2.0 * 1.5 * 1.5)
}

#[test]
fn shallow_symmetric_well_inventory() {
    let s = spec(0.09, Channel::Plus);
    let st = Settings::default();
    let att = scan_axis(&s, ComplexCoupling::attractive(), Channel::Plus, &st).unwrap();
    assert_eq!(kinds(&att), [PoleKind::Bound]);
    let rep = scan_axis(&s, ComplexCoupling::repulsive(), Channel::Plus, &st).unwrap();
    assert_eq!(kinds(&rep), [PoleKind::Virtual, PoleKind::Virtual]);
    for p in att.iter().chain(&rep) {
        assert!(p.residual < 1e-12);
        assert_eq!(p.k.re, 0.0);
    }
}

#[test]
fn shallow_antisymmetric_well_inventory() {
    let s = spec(0.02, Channel::Minus);
    let st = Settings::default();
    let att = scan_axis(&s, ComplexCoupling::attractive(), Channel::Minus, &st).unwrap();
    assert_eq!(kinds(&att), [PoleKind::Virtual]);
}

#[test]
fn free_particle_has_no_axis_poles() {
    let st = Settings::default();
    for ch in [Channel::Plus, Channel::Minus, Channel::Full] {
        for g in [ComplexCoupling::attractive(), ComplexCoupling::repulsive()] {
            assert!(scan_axis(&spec(0.0, ch), g, ch, &st).unwrap().is_empty());
        }
    }
}

#[test]
fn axis_scan_needs_real_coupling() {
    let st = Settings::default();
    let err = scan_axis(&spec(1.0, Channel::Plus), ComplexCoupling::from_alpha(0.2), Channel::Plus, &st);
    assert!(err.is_err());
}

#[test]
fn ground_state_binds_at_any_depth() {
    let st = Settings::default();
    let att = scan_axis(&spec(1e-4, Channel::Plus), ComplexCoupling::attractive(), Channel::Plus, &st).unwrap();
    assert_eq!(att.iter().filter(|p| p.kind == PoleKind::Bound).count(), 1);
}

#[test]
fn doubled_grid_gives_the_same_poles() {
    let base = Settings::default();
    let mut dense = base;
    dense.axis.samples_per_segment *= 2;
    for (u, ch) in [(0.09, Channel::Plus), (3.0, Channel::Plus), (5.0, Channel::Minus), (0.2, Channel::Minus)] {
        for g in [ComplexCoupling::attractive(), ComplexCoupling::repulsive()] {
            let a = scan_axis(&spec(u, ch), g, ch, &base).unwrap();
            let b = scan_axis(&spec(u, ch), g, ch, &dense).unwrap();
            assert_eq!(a.len(), b.len(), "u={u} {ch:?}");
            for (p, q) in a.iter().zip(&b) {
                assert!((p.k - q.k).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn axis_poles_are_newton_fixed_points() {
    let st = Settings::default();
    for (u, ch) in [(0.09, Channel::Plus), (2.0, Channel::Plus), (4.8, Channel::Minus)] {
        for g in [ComplexCoupling::attractive(), ComplexCoupling::repulsive()] {
            for p in scan_axis(&spec(u, ch), g, ch, &st).unwrap() {
                let r = newton_refine(p.k, ch, g, &spec(u, ch), &st, None).unwrap();
                assert!((r.k - p.k).norm() < 1e-12);
                assert_eq!(r.kind, p.kind);
            }
        }
    }
}

#[test]
fn newton_fixed_point_and_basin() {
    let st = Settings::default();
    let s = spec(0.09, Channel::Plus);
    let g = ComplexCoupling::attractive();
    let bound = scan_axis(&s, g, Channel::Plus, &st).unwrap()[0];
    let out = newton_solve(Channel::Plus, bound.k, g, &s, &st.newton).unwrap();
    assert!(out.converged);
    assert_eq!(out.iterations, 1);
    assert!((out.k - bound.k).norm() < 1e-15);

    let seed = bound.k + C64::new(1e-3, 1e-3);
    let p = newton_refine(seed, Channel::Plus, g, &s, &st, Some(0.1)).unwrap();
    assert!((p.k - bound.k).norm() < 1e-12);
    assert_eq!(p.kind, PoleKind::Bound);
}

#[test]
fn newton_reports_wandering_seeds() {
    let st = Settings::default();
    let s = spec(0.09, Channel::Plus);
    let g = ComplexCoupling::attractive();
    let bound = scan_axis(&s, g, Channel::Plus, &st).unwrap()[0];
    let err = newton_refine(bound.k + C64::new(0.05, 0.0), Channel::Plus, g, &s, &st, Some(1e-4)).unwrap_err();
    assert!(matches!(err, Error::ConvergedElsewhere { .. }));
}

#[test]
fn newton_at_the_double_zero() {
    let st = Settings::default();
    let s = spec(plus_attractive_critical(), Channel::Plus);
    let kc = collision_momentum(1.5);
    match newton_refine(kc + C64::new(2e-4, 1e-4), Channel::Plus, ComplexCoupling::attractive(), &s, &st, None) {
        Ok(p) => {
            assert_eq!(p.kind, PoleKind::DoubleZero);
            assert_eq!(p.multiplicity, 2);
            assert!((p.k - kc).norm() < 1e-6);
        }
        Err(e) => assert!(matches!(e, Error::NoConvergence { .. }), "{e}"),
    }
}

#[test]
fn counting_simple_and_double_zeros() {
    let st = Settings::default();
    let s = spec(0.09, Channel::Plus);
    let g = ComplexCoupling::attractive();
    let bound = scan_axis(&s, g, Channel::Plus, &st).unwrap()[0];
    let n = count_zeros(&CountRegion::square(bound.k, 1e-2, Channel::Plus, g), &s).unwrap();
    assert_eq!(n, 1);

    let uc = plus_attractive_critical();
    let kc = collision_momentum(1.5);
    let n = count_zeros(&CountRegion::square(kc, 1e-3, Channel::Plus, g), &spec(uc, Channel::Plus)).unwrap();
    assert_eq!(n, 2);
    // just below the critical depth: two simple zeros in the same box
    let below = spec(uc - 1e-7, Channel::Plus);
    let n = count_zeros(&CountRegion::square(kc, 1e-3, Channel::Plus, g), &below).unwrap();
    assert_eq!(n, 2);
}

#[test]
fn no_off_axis_poles_in_upper_half_plane_for_real_potential() {
    let g = ComplexCoupling::attractive();
    for (u, ch) in [(1.0, Channel::Plus), (5.0, Channel::Minus), (3.0, Channel::Full)] {
        let s = spec(u, ch);
        let right = CountRegion::new(C64::new(0.05, 0.05), C64::new(6.0, 4.0), ch, g).unwrap();
        let left = CountRegion::new(C64::new(-6.0, 0.05), C64::new(-0.05, 4.0), ch, g).unwrap();
        assert_eq!(count_zeros(&right, &s).unwrap(), 0);
        assert_eq!(count_zeros(&left, &s).unwrap(), 0);
    }
}

#[test]
fn count_rejects_contours_through_zeros() {
    let st = Settings::default();
    let s = spec(0.09, Channel::Plus);
    let g = ComplexCoupling::attractive();
    let bound = scan_axis(&s, g, Channel::Plus, &st).unwrap()[0];
    // lower edge through the pole
    let region = CountRegion::new(C64::new(-0.5, bound.k.im), C64::new(0.5, 1.0), Channel::Plus, g).unwrap();
    assert!(matches!(count_zeros(&region, &s), Err(Error::EdgeTooClose { .. })));
    let (n, used) = count_zeros_nudged(&region, &s, 1e-3, 4).unwrap();
    assert_eq!(n, 1);
    assert!(used.contains(bound.k));
}

#[test]
fn real_coupling_pole_set_is_mirror_symmetric() {
    let st = Settings::default();
    let s = spec(1.0, Channel::Plus);
    let g = ComplexCoupling::attractive();
    // resonances seeded from their large-|k| positions
    for n in 1..6 {
        let seed = C64::new(PI * n as f64 / 1.5, -1.0);
        let p = newton_refine(seed, Channel::Plus, g, &s, &st, None).unwrap();
        let mirror = newton_refine(-p.k.conj(), Channel::Plus, g, &s, &st, None).unwrap();
        assert!((mirror.k + p.k.conj()).norm() < 1e-10);
        assert_eq!(p.kind, PoleKind::Resonance);
        assert_eq!(mirror.kind, PoleKind::Antiresonance);
    }
}
