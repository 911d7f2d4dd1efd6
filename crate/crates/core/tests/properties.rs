use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use plyfold::angles::{beta_eq_default, f_alpha, kinematics};
use plyfold::construct::{build_multilayer, ConstructionParams};
use plyfold::scaling::{sorted_regimes, upper_bound};
use plyfold::{dist_so2_squared, rotation, Field, Mat2, Spec};
use proptest::prelude::*;

fn mat() -> impl Strategy<Value = Mat2> {
    prop::array::uniform4(-3.0..3.0f64).prop_map(|a| Mat2::new(a[0], a[1], a[2], a[3]))
}

fn spec() -> impl Strategy<Value = Spec> {
    (-1.0..1.0f64, 0.7..5.0f64, 1usize..300, -16.0..-1.0f64)
        .prop_map(|(h, l, n, g)| Spec::new(10f64.powf(h), 10f64.powf(h + l), n, 10f64.powf(g)).unwrap())
}

proptest! {
    #[test]
    fn dist_is_rotation_invariant(a in mat(), phi in -3.2..3.2f64, psi in -3.2..3.2f64) {
        let d = dist_so2_squared(&a);
        let moved = rotation(phi) * a * rotation(psi);
        prop_assert!(d >= 0.0);
        prop_assert!((dist_so2_squared(&moved) - d).abs() <= 1e-11 * (1.0 + d));
    }

    #[test]
    fn dist_vanishes_on_rotations(phi in -10.0..10.0f64) {
        prop_assert!(dist_so2_squared(&rotation(phi)) < 1e-24);
    }

    #[test]
    fn dist_bounded_by_any_rotation(a in mat(), phi in -3.2..3.2f64) {
        // the minimum over SO(2) is below the distance to any particular rotation
        prop_assert!(dist_so2_squared(&a) <= (a - rotation(phi)).frobenius_sq() + 1e-12);
    }

    #[test]
    fn f_alpha_decreasing(alpha in 1e-4..1.5f64, t in 0.01..0.98f64, dt in 0.001..0.01f64) {
        let b1 = alpha + (FRAC_PI_2 - alpha) * t;
        let b2 = alpha + (FRAC_PI_2 - alpha) * (t + dt);
        prop_assert!(f_alpha(alpha, b2).unwrap() < f_alpha(alpha, b1).unwrap());
    }

    #[test]
    fn beta_eq_is_touching_root(alpha in 1e-6..1.5f64) {
        let b = beta_eq_default(alpha).unwrap();
        prop_assert!(alpha < b && b < FRAC_PI_2);
        prop_assert!(kinematics(alpha, b).unwrap().admissible);
        let beyond = b + 1e-6 * (FRAC_PI_2 - b);
        prop_assert!(!kinematics(alpha, beyond).unwrap().admissible);
    }

    #[test]
    fn beta_eq_increasing(a in 1e-6..1.4f64, da in 1e-4..0.1f64) {
        prop_assert!(beta_eq_default(a + da).unwrap() > beta_eq_default(a).unwrap());
    }

    #[test]
    fn bound_monotone(s in spec(), a in 1e-4..1.5f64, k in 1.01..3.0f64) {
        let e = upper_bound(&s, a).unwrap().0;
        prop_assert!(upper_bound(&s, (a * k).min(FRAC_PI_2)).unwrap().0 >= e * (1.0 - 1e-12));
        let more_plies = Spec { n: s.n + 1, ..s };
        let tougher = Spec { gamma: s.gamma * k, ..s };
        prop_assert!(upper_bound(&more_plies, a).unwrap().0 <= e * (1.0 + 1e-12));
        prop_assert!(upper_bound(&tougher, a).unwrap().0 >= e * (1.0 - 1e-12));
    }

    #[test]
    fn regimes_partition(s in spec()) {
        let r = sorted_regimes(&s);
        prop_assert_eq!(r[0].lo, 0.0);
        prop_assert_eq!(r[r.len() - 1].hi, FRAC_PI_2);
        prop_assert!(r.windows(2).all(|w| w[0].hi == w[1].lo && w[0].label != w[1].label));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_fold_round_trips(alpha in 0.02..FRAC_PI_4, frac in 0.05..1.0f64, n in 1usize..8, t in 0.0..1.0f64) {
        let s = Spec::new(1.0, 60.0, 8, 1e-6).unwrap();
        let beta = alpha + (beta_eq_default(alpha).unwrap() - alpha) * frac;
        let (lo, hi) = ConstructionParams::l_arc_range(&s, beta, n);
        prop_assume!(lo > 0.0 && lo <= hi);
        let la = (lo * (hi / lo).powf(t)).clamp(lo, hi);
        let built = ConstructionParams::new(&s, beta, n, la).and_then(|p| build_multilayer(&s, alpha, &p));
        prop_assume!(built.is_ok());
        let f = built.unwrap();
        let back = Field::from_json(&f.to_json()).unwrap();
        for x in [-60.0, -3.3, 0.0, 0.7, 29.0, 60.0] {
            for y in [0.0, 0.31, 0.5, 0.999, 1.0] {
                prop_assert_eq!(f.eval(x, y).unwrap(), back.eval(x, y).unwrap());
            }
        }
        // odd symmetry of the fold: u1 is odd and u2 even in x1
        let (p, q) = (f.eval(7.5, 0.4).unwrap(), f.eval(-7.5, 0.4).unwrap());
        prop_assert!((p[0] + q[0]).abs() < 1e-9 && (p[1] - q[1]).abs() < 1e-9);
    }
}
