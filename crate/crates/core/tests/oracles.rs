mod common;

use common::*;
use rectpole_core::chart::{bound_threshold, critical_depth, CriticalSelector, Side};
use rectpole_core::rootfinder::{scan_axis, PoleKind};
use rectpole_core::{Channel, ComplexCoupling, PotentialSpec, Settings};

fn scan(u: f64, channel: Channel, coupling: ComplexCoupling) -> Vec<f64> {
    let spec = PotentialSpec::new(M, A, u, channel).unwrap();
    scan_axis(&spec, coupling, channel, &Settings::default())
        .unwrap()
        .iter()
        .map(|p| p.k.im)
        .collect()
}

fn assert_same(mut engine: Vec<f64>, mut oracle: Vec<f64>, what: &str) {
    engine.sort_by(f64::total_cmp);
    oracle.sort_by(f64::total_cmp);
    assert_eq!(engine.len(), oracle.len(), "{what}: {engine:?} vs {oracle:?}");
    for (e, o) in engine.iter().zip(&oracle) {
        assert!((e - o).abs() < 1e-10, "{what}: {e} vs {o}");
    }
}

#[test]
fn well_poles_inside_the_interior_window_match() {
    for u in [0.09, 1.0, 2.0, 3.0, 5.0] {
        let q0 = (2.0 * M * u).sqrt();
        let inside = |v: Vec<f64>| v.into_iter().filter(|k| k.abs() < q0).collect::<Vec<_>>();
        assert_same(
            inside(scan(u, Channel::Plus, ComplexCoupling::attractive())),
            plus_well_axis_poles(u),
            &format!("plus U={u}"),
        );
        assert_same(
            inside(scan(u, Channel::Minus, ComplexCoupling::attractive())),
            minus_well_axis_poles(u),
            &format!("minus U={u}"),
        );
    }
}

#[test]
fn barrier_virtual_poles_match() {
    for u in [0.02, 0.05, 0.09, 0.0976] {
        let engine = scan(u, Channel::Plus, ComplexCoupling::repulsive());
        let oracle = plus_barrier_axis_poles(u, -10.0);
        assert_same(engine, oracle, &format!("barrier U={u}"));
    }
    assert!(plus_barrier_axis_poles(0.1, -10.0).is_empty());
}

#[test]
fn critical_depths_match_scalar_equations() {
    let st = Settings::default();
    let cases = [
        (Channel::Plus, Side::Repulsive, critical_plus_repulsive()),
        (Channel::Plus, Side::Attractive, critical_plus_attractive()),
        (Channel::Minus, Side::Attractive, critical_minus_attractive()),
    ];
    for (channel, side, oracle) in cases {
        let c = critical_depth(channel, CriticalSelector { side, index: 1 }, M, A, &st).unwrap();
        assert!((c.depth - oracle).abs() < 1e-8, "{channel:?} {side:?}");
    }
    assert!((critical_plus_repulsive() - 0.09760640886459286).abs() < 1e-12);
    assert!((critical_plus_attractive() - 1.962436546941773).abs() < 1e-12);
    assert!((critical_minus_attractive() - 4.709050790317951).abs() < 1e-12);
}

#[test]
fn bound_count_changes_only_at_thresholds() {
    let u0 = bound_threshold(Channel::Minus, 1, M, A).unwrap();
    let count = |u: f64| {
        let spec = PotentialSpec::new(M, A, u, Channel::Minus).unwrap();
        scan_axis(&spec, ComplexCoupling::attractive(), Channel::Minus, &Settings::default())
            .unwrap()
            .iter()
            .filter(|p| p.kind == PoleKind::Bound)
            .count()
    };
    let (mut lo, mut hi) = (0.2, 2.0);
    assert_eq!((count(lo), count(hi)), (0, 1));
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if count(mid) == 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!((0.5 * (lo + hi) - u0).abs() < 1e-4);
    let u1 = bound_threshold(Channel::Plus, 1, M, A).unwrap();
    let plus = |u: f64| {
        let spec = PotentialSpec::new(M, A, u, Channel::Plus).unwrap();
        scan_axis(&spec, ComplexCoupling::attractive(), Channel::Plus, &Settings::default())
            .unwrap()
            .iter()
            .filter(|p| p.kind == PoleKind::Bound)
            .count()
    };
    assert_eq!(plus(u1 - 1e-3), 1);
    assert_eq!(plus(u1 + 1e-3), 2);
}
