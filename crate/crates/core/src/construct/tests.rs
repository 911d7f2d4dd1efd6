use super::*;
use crate::angles::beta_eq_default;
use crate::linalg::rotation;
use crate::MaterialSpec;

fn reference() -> MaterialSpec<f64> {
    MaterialSpec::new(1.0, 10.0, 8, 1e-6).unwrap()
}

fn sample_multilayer(alpha: f64, n: usize, beta_frac: f64, l_arc: f64) -> DeformationField<f64> {
    let s = MaterialSpec::new(1.0, 40.0, 8, 1e-6).unwrap();
    let beq = beta_eq_default(alpha).unwrap();
    let beta = alpha + (beq - alpha) * beta_frac;
    let p = ConstructionParams::new(&s, beta, n, l_arc).unwrap();
    build_multilayer(&s, alpha, &p).unwrap()
}

fn frob(a: &crate::Mat2, b: &crate::Mat2) -> f64 {
    (*a - *b).frobenius()
}

#[test]
fn plate_endpoint_and_boundary_gradient() {
    let s = reference();
    let a = 0.3;
    let f = build_plate(&s, a).unwrap();
    // v(-L): arc end at -L/2 followed by a straight run of length L/2 at angle +alpha
    let r = s.l / (2.0 * a);
    let end = [-r * a.sin() - 0.5 * s.l * a.cos(), r * a.cos() - 0.5 * s.l * a.sin()];
    let got = f.eval(-s.l, 0.0).unwrap();
    assert!((got[0] - end[0]).abs() < 1e-12 && (got[1] - end[1]).abs() < 1e-12, "{got:?} {end:?}");
    for &x2 in &[0.0, 0.4, 0.99] {
        assert_eq!(f.eval_grad(0.9 * s.l, x2).unwrap(), rotation(-a));
        assert_eq!(f.eval_grad(-0.9 * s.l, x2).unwrap(), rotation(a));
    }
    assert!(f.eval(10.5, 0.0).is_err());
    assert!(f.eval(0.0, -0.1).is_err());
}

#[test]
fn plate_tiny_angle_is_identity() {
    let f = build_plate(&reference(), 1e-12).unwrap();
    for &(x1, x2) in &[(0.0, 0.0), (3.0, 0.5), (-7.0, 0.9)] {
        let g = f.eval_grad(x1, x2).unwrap();
        assert!(frob(&g, &crate::Mat2::identity()) < 1e-11);
    }
}

#[test]
fn plate_gradient_matches_finite_differences() {
    let f = build_plate(&reference(), 0.4).unwrap();
    let e = 1e-6;
    for &(x1, x2) in &[(0.7, 0.3), (-2.2, 0.8), (6.0, 0.5)] {
        let g = f.eval_grad(x1, x2).unwrap();
        let (p, m) = (f.eval(x1 + e, x2).unwrap(), f.eval(x1 - e, x2).unwrap());
        let (q, r) = (f.eval(x1, x2 + e).unwrap(), f.eval(x1, x2 - e).unwrap());
        let fd = crate::Mat2::new(
            (p[0] - m[0]) / (2.0 * e),
            (q[0] - r[0]) / (2.0 * e),
            (p[1] - m[1]) / (2.0 * e),
            (q[1] - r[1]) / (2.0 * e),
        );
        assert!(frob(&g, &fd) < 1e-6);
    }
}

#[test]
fn cpa_branches_meet_and_stretch_free() {
    let s = reference();
    let a = 0.2;
    let b = 0.5 * (a + beta_eq_default(a).unwrap());
    let f = build_cpa(&s, a, b).unwrap();
    let kin = *f.kinematics().unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let x2 = s.h * (i as f64 + 0.5) / 100.0;
        for sign in [-1.0, 1.0] {
            let x1 = sign * kin.zeta * (s.h - x2);
            let inner = [x1 * b.cos(), x1.abs() * b.sin() + kin.d * x2];
            let outer = f.eval(x1, x2).unwrap(); // boundary line belongs to the outer branch
            worst = worst.max((inner[0] - outer[0]).hypot(inner[1] - outer[1]));
        }
    }
    assert!(worst < 1e-12, "{worst}");
    for &(x1, x2) in &[(0.1, 0.2), (-0.05, 0.5), (4.0, 0.5), (-6.0, 0.1)] {
        let g = f.eval_grad(x1, x2).unwrap();
        assert!((g.a11.hypot(g.a21) - 1.0).abs() < 1e-14);
    }
    let g = f.eval_grad(0.01, 0.5).unwrap();
    assert_eq!(g, crate::Mat2::new(b.cos(), 0.0, b.sin(), kin.d));
    assert_eq!(f.eval_grad(5.0, 0.5).unwrap(), rotation(-a));
    // F* = R_beta [[1, d sin b], [0, d cos b]]
    let fstar = rotation(b) * crate::Mat2::new(1.0, kin.d * b.sin(), 0.0, kin.d * b.cos());
    assert!(frob(&g, &fstar) < 1e-14);
}

#[test]
fn cpa_rejects_steep_or_wide_folds() {
    let s = reference();
    let a = 0.2;
    assert!(build_cpa(&s, a, beta_eq_default(a).unwrap() * 1.02).is_err());
    assert!(build_cpa(&s, a, a * 1.0001).is_err());
}

#[test]
fn multilayer_curves_are_isometric_with_bounded_curvature() {
    let f = sample_multilayer(0.3, 5, 0.7, 1.2);
    let p = f.params().unwrap();
    let kmax = (f.alpha() + p.beta) / p.l_arc;
    for layer in f.layers() {
        let m = &layer.midline;
        let e = 1e-5;
        for i in 0..1000 {
            let x = -40.0 + 80.0 * (i as f64 + 0.37) / 1000.0;
            let t = m.tangent(x);
            assert!((t[0].hypot(t[1]) - 1.0).abs() < 1e-12);
            let (a, b) = (m.point(x + e), m.point(x - e));
            let fd = [(a[0] - b[0]) / (2.0 * e), (a[1] - b[1]) / (2.0 * e)];
            assert!((fd[0] - t[0]).abs() < 1e-8 && (fd[1] - t[1]).abs() < 1e-8);
            // second difference, away from the kinks
            let (ta, tb) = (m.tangent(x + e), m.tangent(x - e));
            let k2 = ((ta[0] - tb[0]) / (2.0 * e)).hypot((ta[1] - tb[1]) / (2.0 * e));
            assert!(k2 <= kmax * (1.0 + 1e-6));
            assert!(m.orientation(x).abs() <= f.alpha().max(p.beta) + 1e-15);
        }
    }
}

#[test]
fn multilayer_closure_outside_fold() {
    let f = sample_multilayer(0.25, 4, 0.5, 1.0);
    let p = f.params().unwrap();
    let a = f.alpha();
    let ls = f.layers();
    for j in 0..ls.len() - 1 {
        let start = ls[j].down_slope.max(ls[j + 1].down_slope) + 2.0 * p.l_arc;
        for k in 0..20 {
            let x = start + (40.0 - start) * k as f64 / 19.0;
            let (u, v) = (ls[j].midline.point(x), ls[j + 1].midline.point(x));
            let want = rotation(-a).apply([0.0, ls[j].thickness]);
            assert!((v[0] - u[0] - want[0]).abs() < 1e-12 && (v[1] - u[1] - want[1]).abs() < 1e-12);
            // and mirrored side
            let (u, v) = (ls[j].midline.point(-x), ls[j + 1].midline.point(-x));
            let want = rotation(a).apply([0.0, ls[j].thickness]);
            assert!((v[0] - u[0] - want[0]).abs() < 1e-12 && (v[1] - u[1] - want[1]).abs() < 1e-12);
        }
    }
}

#[test]
fn multilayer_boundary_symmetry_and_gap_at_centre() {
    let f = sample_multilayer(0.3, 6, 1.0, 2.0);
    let s = *f.spec();
    let a = f.alpha();
    let kin = *f.kinematics().unwrap();
    for i in 0..50 {
        let x1 = s.l / 2.0 + s.l / 2.0 * i as f64 / 49.0;
        for j in 0..f.layer_count() {
            let x2 = f.boundaries()[j] + 0.5 * f.layers()[j].thickness;
            assert!(frob(&f.eval_grad(x1, x2).unwrap(), &rotation(-a)) < 1e-12);
            assert!(frob(&f.eval_grad(-x1, x2).unwrap(), &rotation(a)) < 1e-12);
        }
    }
    for &(x1, x2) in &[(0.3, 0.1), (2.5, 0.55), (7.0, 0.9), (30.0, 0.3)] {
        let (p, q) = (f.eval(x1, x2).unwrap(), f.eval(-x1, x2).unwrap());
        assert!((p[0] + q[0]).abs() < 1e-12 && (p[1] - q[1]).abs() < 1e-12);
    }
    // trace gap at x1 = 0: straight stack lifted by d * b_j versus (1) * thickness
    for i in 1..f.layer_count() {
        let below = f.layers()[i - 1].thickness;
        let want = (kin.d - 1.0) * below;
        let gap = f.interface_gap(i, 0.0);
        assert!((gap - want).abs() < 1e-12, "{gap} vs {want}");
        // and eval on either side agrees with the traces
        let b = f.boundaries()[i];
        let up = f.eval(0.0, b).unwrap();
        let dn = f.eval(0.0, b - 1e-13).unwrap();
        assert!(((up[1] - dn[1]) - want).abs() < 1e-9);
    }
}

#[test]
fn jump_support_is_inside_the_fold() {
    let f = sample_multilayer(0.2, 5, 0.6, 1.5);
    let la = f.params().unwrap().l_arc;
    for i in 1..f.layer_count() {
        let reach = f.layers()[i - 1].down_slope + 2.0 * la;
        for k in 0..2000 {
            let x = -40.0 + 80.0 * k as f64 / 1999.0;
            if f.interface_gap(i, x) > 1e-10 {
                assert!(x.abs() < reach + 1e-9, "interface {i} x {x} reach {reach}");
            }
        }
    }
}

#[test]
fn single_layer_has_no_interfaces() {
    let f = sample_multilayer(0.2, 1, 0.5, 3.0);
    assert_eq!(f.interface_count(), 0);
    assert_eq!(f.boundaries(), &[0.0, 1.0]);
}

#[test]
fn interface_row_belongs_to_upper_layer() {
    let f = sample_multilayer(0.2, 4, 0.5, 1.5);
    let b1 = f.boundaries()[1];
    assert_eq!(f.layer_index(b1), 1);
    assert_eq!(f.layer_index(b1 - 1e-12), 0);
    assert_eq!(f.layer_index(1.0), 3);
}

#[test]
fn json_round_trip_is_bit_identical() {
    let s = reference();
    let fields = vec![
        build_plate(&s, 0.37).unwrap(),
        build_cpa(&s, 0.2, 0.5 * (0.2 + beta_eq_default(0.2).unwrap())).unwrap(),
        sample_multilayer(0.3, 7, 0.9, 1.1),
    ];
    for f in fields {
        let back = DeformationField::<f64>::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        for &(x1, x2) in &[(0.123, 0.456), (-3.3, 0.01), (9.9, 0.99)] {
            let (a, b) = (f.eval(x1, x2).unwrap(), back.eval(x1, x2).unwrap());
            assert_eq!(a[0].to_bits(), b[0].to_bits());
            assert_eq!(a[1].to_bits(), b[1].to_bits());
        }
        let j: serde_json::Value = serde_json::from_str(&f.to_json()).unwrap();
        for key in ["kind", "spec", "alpha", "params", "boundaries"] {
            assert!(j.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn unchecked_builder_keeps_negative_controls_loadable() {
    let s = MaterialSpec::new(1.0, 10.0, 4, 1e-6).unwrap();
    let p = ConstructionParams::new(&s, 0.5, 4, 2.0).unwrap();
    assert!(build_multilayer(&s, 0.1, &p).is_err());
    let f = build_multilayer_unchecked(&s, 0.1, &p).unwrap();
    assert!(!f.is_checked());
    let back = DeformationField::<f64>::from_json(&f.to_json()).unwrap();
    assert_eq!(back, f);
}

#[test]
fn single_precision_fields_evaluate() {
    let s = MaterialSpec::new(1.0f32, 10.0, 4, 1e-6).unwrap();
    let a = 0.2f32;
    let beta = crate::angles::beta_eq(a, 1e-6).unwrap() * 0.99;
    let p = ConstructionParams::new(&s, beta, 4, 0.8).unwrap();
    let f = build_multilayer(&s, a, &p).unwrap();
    let g = f.eval_grad(8.0, 0.5).unwrap();
    assert!((g - rotation(-a)).frobenius() < 1e-6);
}
