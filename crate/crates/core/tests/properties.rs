use core::f64::consts::PI;

use proptest::prelude::*;
use rectpole_core::rootfinder::{newton_refine, residual_bound, scan_axis, PoleKind};
use rectpole_core::smatrix::{
    denom_minus_for, denom_plus_for, factorisation_residual, interior_momentum, jost, s_full, s_minus, s_plus,
    transfer_matrix_s, verify_relations, Layer,
};
use rectpole_core::trajectory::trace_both;
use rectpole_core::{Channel, ComplexCoupling, Error, PotentialSpec, Settings, C64};

fn spec(u: f64, channel: Channel) -> PotentialSpec {
    PotentialSpec::new(1.0, 1.5, u, channel).unwrap()
}

fn momentum() -> impl Strategy<Value = C64> {
    (-7.0..7.0f64, -4.0..4.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn coupling() -> impl Strategy<Value = ComplexCoupling> {
    (-PI..PI).prop_map(ComplexCoupling::from_alpha)
}

fn skip_poles<T>(r: Result<T, Error>) -> Result<T, TestCaseError> {
    match r {
        Ok(v) => Ok(v),
        Err(Error::PoleHit { .. }) => Err(TestCaseError::reject("sample on a pole")),
        Err(e) => Err(TestCaseError::fail(e.to_string())),
    }
}

proptest! {
    #[test]
    fn analyticity_relations(k in momentum(), g in coupling(), u in 0.0..6.0f64) {
        let r = skip_poles(verify_relations(k, g, &spec(u, Channel::Full)))?;
        prop_assert!(r.max() < 1e-10, "{r:?}");
        prop_assert_eq!(r.symmetry, 0.0);
    }

    #[test]
    fn channels_are_unitary_on_the_real_axis(q in 0.01..10.0f64, u in 0.0..6.0f64, well in any::<bool>()) {
        let g = if well { ComplexCoupling::attractive() } else { ComplexCoupling::repulsive() };
        let k = C64::new(q, 0.0);
        let sp = skip_poles(s_plus(k, g, &spec(u, Channel::Plus)))?.scalar().unwrap();
        let sm = skip_poles(s_minus(k, g, &spec(u, Channel::Minus)))?.scalar().unwrap();
        prop_assert!((sp.norm() - 1.0).abs() < 1e-12);
        prop_assert!((sm.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parity_basis_is_diagonal(k in momentum(), g in coupling(), u in 0.0..6.0f64) {
        let hat = skip_poles(s_full(k, g, &spec(u, Channel::Full)))?.to_parity_basis().unwrap();
        let sp = skip_poles(s_plus(k, g, &spec(u, Channel::Plus)))?.scalar().unwrap();
        let sm = skip_poles(s_minus(k, g, &spec(u, Channel::Minus)))?.scalar().unwrap();
        let scale = hat.max_abs().max(1.0);
        prop_assert!((hat.get(0, 0) - sp).norm() < 1e-12 * scale);
        prop_assert!((hat.get(1, 1) - sm).norm() < 1e-12 * scale);
        prop_assert!(hat.get(0, 1).norm() < 1e-12 * scale);
    }

    #[test]
    fn full_denominator_factorises(k in momentum(), g in coupling(), u in 0.0..6.0f64) {
        prop_assert!(factorisation_residual(k, g, &spec(u, Channel::Full)) < 1e-12);
    }

    #[test]
    fn reduced_denominators_ignore_the_interior_branch(k in momentum(), g in coupling(), u in 0.0..6.0f64) {
        let s = spec(u, Channel::Plus);
        let kint = interior_momentum(k, g, &s);
        let flip = kint.flipped();
        let p = denom_plus_for(k, kint, 1.5);
        prop_assert!((p - denom_plus_for(k, flip, 1.5)).norm() <= 1e-13 * p.norm().max(1.0));
        prop_assert_eq!(kint.squared(), flip.squared());
        let m = denom_minus_for(k, kint, 1.5);
        prop_assert!((m + denom_minus_for(k, flip, 1.5)).norm() <= 1e-13 * m.norm().max(1.0));
    }

    #[test]
    fn transfer_matrix_agrees_with_closed_form(q in 0.05..8.0f64, sign in any::<bool>(), g in coupling(), u in 0.0..6.0f64) {
        let k = C64::new(if sign { q } else { -q }, 0.0);
        let analytic = skip_poles(s_full(k, g, &spec(u, Channel::Full)))?.matrix().unwrap();
        let one = transfer_matrix_s(k, g, 1.0, &[Layer::new(3.0, -u)]).unwrap().matrix().unwrap();
        let two = transfer_matrix_s(k, g, 1.0, &[Layer::new(1.2, -u), Layer::new(1.8, -u)]).unwrap().matrix().unwrap();
        prop_assert!((analytic - one).max_abs() < 1e-8 * analytic.max_abs().max(1.0));
        prop_assert!((two - one).max_abs() < 1e-10 * one.max_abs().max(1.0));
    }

    #[test]
    fn classification_matches_location(re in -3.0..3.0f64, im in -3.0..3.0f64, on_axis in any::<bool>()) {
        let tol = 1e-9;
        let k = C64::new(if on_axis { 0.0 } else { re }, im);
        let kind = PoleKind::classify(k, 1, tol);
        let expected = if k.norm() < tol {
            PoleKind::Threshold
        } else if k.re.abs() < tol {
            if k.im > 0.0 { PoleKind::Bound } else { PoleKind::Virtual }
        } else if k.im < 0.0 {
            if k.re > 0.0 { PoleKind::Resonance } else { PoleKind::Antiresonance }
        } else {
            PoleKind::UpperHalfPlane
        };
        prop_assert_eq!(kind, expected);
        prop_assert_eq!(PoleKind::classify(k, 2, tol), PoleKind::DoubleZero);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mirrored_poles_are_poles(u in 0.05..5.0f64, n in 1usize..4, alpha in -PI..PI, plus in any::<bool>()) {
        let channel = if plus { Channel::Plus } else { Channel::Minus };
        let s = spec(u, channel);
        let st = Settings::default();
        let g = ComplexCoupling::from_alpha(alpha);
        let seed = C64::new(n as f64 * PI / 1.5, -0.8);
        let Ok(p) = newton_refine(seed, channel, g, &s, &st, None) else {
            return Err(TestCaseError::reject("seed did not converge"));
        };
        let mirror = -p.k.conj();
        prop_assert!(jost(channel, mirror, g.conj(), &s).value.norm() < residual_bound(mirror));
        let q = newton_refine(mirror, channel, g.conj(), &s, &st, Some(1e-6)).unwrap();
        prop_assert!((q.k - mirror).norm() < 1e-9);
    }

    #[test]
    fn short_traces_stay_on_the_pole(u in 0.05..5.0f64, plus in any::<bool>()) {
        let channel = if plus { Channel::Plus } else { Channel::Minus };
        let s = spec(u, channel);
        let mut st = Settings::default();
        st.continuation.alpha_cap = 1.0;
        let poles = scan_axis(&s, ComplexCoupling::attractive(), channel, &st).unwrap();
        prop_assume!(!poles.is_empty());
        // a depth within reach of a collision may legitimately stall
        let t = match trace_both(&poles[0], &s, &st) {
            Ok(t) => t,
            Err(Error::StallAtDoubleZero { .. }) => return Err(TestCaseError::reject("critical depth")),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for w in t.samples.windows(2) {
            prop_assert!(w[0].alpha < w[1].alpha);
        }
        for sample in &t.samples {
            let d = jost(channel, sample.k, ComplexCoupling::from_alpha(sample.alpha), &s).value.norm();
            prop_assert!(d < residual_bound(sample.k), "alpha {} k {}", sample.alpha, sample.k);
        }
    }
}
