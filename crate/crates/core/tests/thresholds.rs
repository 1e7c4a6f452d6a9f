mod common;

use common::sts;
use gqc_core::{bisection_threshold, classify, closed_form_thresholds, Criterion};
use proptest::prelude::*;

#[test]
fn closed_form_matches_bisection_on_noise_grid() {
    for i in 0..20 {
        for j in 0..20 {
            let (a, b) = (3.0 * i as f64 / 19.0, 3.0 * j as f64 / 19.0);
            let t = closed_form_thresholds(a, b).unwrap();
            for crit in Criterion::ALL {
                let root = bisection_threshold(a, b, crit, 10.0).unwrap().unwrap();
                assert!(
                    (root - t.get(crit)).abs() < 1e-8,
                    "({a},{b}) {crit:?}: {root} vs {}",
                    t.get(crit)
                );
            }
        }
    }
}

#[test]
fn reference_thresholds() {
    let t = closed_form_thresholds(1.0, 2.0).unwrap();
    assert!((t.r_steer_ab - 0.962_423_650_119_206_9).abs() < 1e-14);
    assert!((t.r_steer_ba - 1.031_718_534_447_780_3).abs() < 1e-14);
    assert!((t.r_st_duan - 1.039_720_770_839_918).abs() < 1e-14);
}

#[test]
fn flags_switch_at_thresholds() {
    for &(a, b) in &[(0.0, 1.0), (0.4, 1.3), (2.0, 0.5), (1.0, 1.0)] {
        let t = closed_form_thresholds(a, b).unwrap();
        let below = |r: f64| classify(&sts((r - 1e-3).max(0.0), a, b)).unwrap().0;
        let above = |r: f64| classify(&sts(r + 1e-3, a, b)).unwrap().0;
        if t.r_ent > 0.0 {
            assert!(!below(t.r_ent).entangled_ppt);
        }
        assert!(above(t.r_ent).entangled_ppt);
        assert!(above(t.r_steer_ab).steer_ab);
        assert!(above(t.r_steer_ba).steer_ba);
        if t.r_steer_ab > 0.0 {
            assert!(!below(t.r_steer_ab).steer_ab);
        }
        assert!(!below(t.r_qt_duan).duan_entangled || t.r_qt_duan == 0.0);
        assert!(above(t.r_qt_duan).duan_entangled);
        assert!(!below(t.r_st_duan).symmetric_epr);
        assert!(above(t.r_st_duan).symmetric_epr);
    }
}

proptest! {
    #[test]
    fn steering_thresholds_mirror(a in 0.0..10.0f64, b in 0.0..10.0f64) {
        let t = closed_form_thresholds(a, b).unwrap();
        let u = closed_form_thresholds(b, a).unwrap();
        prop_assert_eq!(t.r_steer_ab, u.r_steer_ba);
        prop_assert_eq!(t.r_steer_ba, u.r_steer_ab);
    }

    #[test]
    fn thresholds_are_ordered(a in 0.0..10.0f64, b in 0.0..10.0f64) {
        let t = closed_form_thresholds(a, b).unwrap();
        prop_assert!(t.r_ent <= t.r_steer_ab.min(t.r_steer_ba));
        prop_assert!(t.r_ent <= t.r_qt_duan + 1e-14);
        prop_assert!(t.r_qt_duan < t.r_st_duan);
    }
}
