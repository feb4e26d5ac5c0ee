//! Randomized invariants of the numerical building blocks.

use std::f64::consts::PI;

use fastforward::device::{duration_g_units, duration_ns, flux_frequency, invert_flux, TransmonSpec};
use fastforward::dynamics::TwoLevelState;
use fastforward::ffst::{roots_of, PhaseRoots};
use fastforward::itt::{Bounds, NelderMead};
use fastforward::numeric::wrap_phase;
use fastforward::sta::{eigenpair, Branch};
use num_complex::Complex64;
use proptest::prelude::*;

fn beta(offset: f64, p: f64, q: f64, f: f64) -> f64 {
    offset - (p * f.sin() + q * f.cos())
}

/// Roots found by scanning for sign changes on a fine grid over [−π, π).
fn scanned_roots(offset: f64, p: f64, q: f64, n: usize) -> Vec<f64> {
    let h = 2.0 * PI / n as f64;
    let mut out = Vec::new();
    for j in 0..n {
        let a = -PI + j as f64 * h;
        let (ba, bb) = (beta(offset, p, q, a), beta(offset, p, q, a + h));
        if ba == 0.0 || ba * bb < 0.0 {
            out.push(a + 0.5 * h);
        }
    }
    out
}

fn state(a: (f64, f64, f64, f64)) -> Option<TwoLevelState> {
    TwoLevelState::normalized(Complex64::new(a.0, a.1), Complex64::new(a.2, a.3)).ok()
}

proptest! {
    #[test]
    fn roots_agree_with_brute_force_scan(
        offset in -3.0..3.0f64,
        p in -2.0..2.0f64,
        q in -2.0..2.0f64,
    ) {
        let r = p.hypot(q);
        // Skip near-tangent cases, where a finite scan cannot resolve the pair.
        prop_assume!(r > 1e-3 && ((offset / r).abs() - 1.0).abs() > 1e-3);
        let roots = roots_of(offset, p, q).to_vec();
        let scan = scanned_roots(offset, p, q, 10_000);
        prop_assert_eq!(roots.len(), scan.len());
        let h = 2.0 * PI / 10_000.0;
        for f in roots {
            prop_assert!(beta(offset, p, q, f).abs() < 1e-10);
            let nearest = scan
                .iter()
                .map(|s| wrap_phase(s - f).abs())
                .fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= h, "root {} has no scanned partner", f);
        }
    }

    #[test]
    fn never_more_than_two_roots(offset in -5.0..5.0f64, p in -5.0..5.0f64, q in -5.0..5.0f64) {
        let roots = roots_of(offset, p, q);
        prop_assert!(roots.count() <= 2);
        for f in roots.to_vec() {
            prop_assert!((-PI..PI).contains(&f));
        }
    }

    /// With a purely imaginary overlap z = iy the equation reduces to
    /// cos f₂ = α: two roots while α < 1, none once α > 1.
    #[test]
    fn imaginary_overlap_dichotomy(y in prop_oneof![-1.0..-1e-3f64, 1e-3..1.0f64], alpha in 0.0..2.0f64) {
        prop_assume!((alpha - 1.0).abs() > 1e-6);
        let g = 1.0;
        let g_ff = 1.0;
        let roots = roots_of(alpha * g * y, g_ff * 0.0, g_ff * y);
        if alpha < 1.0 {
            prop_assert!(matches!(roots, PhaseRoots::Two(..)), "{:?}", roots);
        } else {
            prop_assert!(matches!(roots, PhaseRoots::None), "{:?}", roots);
        }
    }

    #[test]
    fn beta_is_two_pi_periodic(offset in -40.0..40.0f64, p in -1.0..1.0f64, q in -1.0..1.0f64, f in -PI..PI) {
        let a = beta(offset, p, q, f);
        let b = beta(offset, p, q, f + 2.0 * PI);
        let scale = 1.0 + offset.abs() + p.abs() + q.abs();
        prop_assert!((a - b).abs() <= 16.0 * f64::EPSILON * scale * (1.0 + f.abs() + 2.0 * PI));
    }

    #[test]
    fn eigenpairs_solve_the_eigenproblem(delta in -100.0..100.0f64, g in 0.1..10.0f64) {
        for branch in [Branch::Upper, Branch::Lower] {
            let e = eigenpair(delta, g, branch);
            prop_assert!(e.residual(delta, g) < 1e-12, "{:?}", e);
            let (a, b) = e.amplitudes;
            prop_assert!((a * a + b * b - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn flux_inversion_round_trips(u in 0.0..=1.0f64) {
        let spec = TransmonSpec::prototype();
        let (low, high) = spec.band().unwrap();
        let target = low + u * (high - low);
        let phi = invert_flux(target, &spec).unwrap();
        prop_assert!((0.0..=0.5).contains(&phi));
        prop_assert!((flux_frequency(phi, &spec).unwrap() - target).abs() < 1e-9);
    }

    #[test]
    fn time_units_round_trip(t in 1e-3..1e3f64, g in 1e-3..1.0f64) {
        let back = duration_g_units(duration_ns(t, g), g);
        prop_assert!((back - t).abs() <= 1e-12 * t);
    }

    #[test]
    fn fidelity_is_symmetric_and_phase_blind(
        a in (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64),
        b in (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64),
        phase in -PI..PI,
    ) {
        let (Some(a), Some(b)) = (state(a), state(b)) else { return Ok(()) };
        let fab = a.fidelity(&b);
        prop_assert!((fab - b.fidelity(&a)).abs() < 1e-15);
        prop_assert!((0.0..=1.0 + 1e-15).contains(&fab));
        let rot = Complex64::from_polar(1.0, phase);
        let b_rot = TwoLevelState { phi1: b.phi1 * rot, phi2: b.phi2 * rot };
        prop_assert!((a.fidelity(&b_rot) - fab).abs() < 1e-14);
        prop_assert!((a.fidelity(&a) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn wrap_phase_is_a_canonical_representative(x in -1e3..1e3f64) {
        let w = wrap_phase(x);
        prop_assert!((-PI..PI).contains(&w));
        let turns = (x - w) / (2.0 * PI);
        prop_assert!((turns - turns.round()).abs() < 1e-9);
    }

    #[test]
    fn nelder_mead_is_monotone_and_deterministic(
        cx in -0.8..0.8f64,
        cy in -0.8..0.8f64,
        sx in 0.5..5.0f64,
        x0 in -0.9..0.9f64,
    ) {
        let f = |x: &[f64]| sx * (x[0] - cx).powi(2) + (x[1] - cy).powi(2) + 0.3 * x[0] * x[1];
        let bounds = Bounds::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let nm = NelderMead::default();
        let a = nm.minimize(f, &[x0, -x0], &bounds).unwrap();
        let b = nm.minimize(f, &[x0, -x0], &bounds).unwrap();
        prop_assert_eq!(&a.x, &b.x);
        prop_assert_eq!(&a.history, &b.history);
        for w in a.history.windows(2) {
            prop_assert!(w[1] <= w[0]);
        }
        prop_assert!(a.value <= f(&[x0, -x0]));
        prop_assert!(a.evaluations <= nm.max_evaluations);
    }
}
