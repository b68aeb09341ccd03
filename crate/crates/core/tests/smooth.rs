use binet::smooth::*;
use binet::{Block, SmoothError};
use nalgebra::{Matrix3, Rotation3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fd(h: f64) -> Derivatives {
    Derivatives::FiniteDifference(FDConfig::new(h).unwrap())
}

/// Closed-form coefficients of spherical coordinates in the order (θ, r, φ).
fn spherical_table(th: f64, r: f64) -> [[f64; 3]; 3] {
    [[0.0, 1.0 / r, 0.0], [0.0, 0.0, 0.0], [1.0 / th.tan(), 1.0 / r, 0.0]]
}

/// Closed-form coefficients of parabolic coordinates in the order (σ, τ, φ).
fn parabolic_table(s: f64, t: f64) -> [[f64; 3]; 3] {
    let q = s * s + t * t;
    [[0.0, t / q, 0.0], [s / q, 0.0, 0.0], [1.0 / s, 1.0 / t, 0.0]]
}

fn sample_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<[f64; 3]> {
    (0..n).map(|_| [rng.gen_range(0.3..1.2), rng.gen_range(0.6..1.8), rng.gen_range(-1.0..1.0)]).collect()
}

fn max_table_error(c: &ConjugateCoefficients, want: &[[f64; 3]; 3]) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                m = m.max((c.a[i][j] - want[i][j]).abs() / want[i][j].abs().max(1.0));
            }
        }
    }
    m
}

#[test]
fn spherical_and_parabolic_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for u in sample_points(&mut rng, 20) {
        let c = coefficients_at(&SmoothSystem::spherical(), &u).unwrap();
        assert!(max_table_error(&c, &spherical_table(u[0], u[1])) < 1e-12);
        assert!(c.max_span_residual() < 1e-12);
        let c = coefficients_at(&SmoothSystem::parabolic(), &u).unwrap();
        assert!(max_table_error(&c, &parabolic_table(u[0], u[1])) < 1e-12);
        let c = coefficients_at(&SmoothSystem::spherical().with_derivatives(fd(1e-4)), &u).unwrap();
        assert!(max_table_error(&c, &spherical_table(u[0], u[1])) <= 1e-4);
    }
}

#[test]
fn affine_systems_have_zero_coefficients() {
    for name in ["affine", "shear", "cartesian"] {
        let s = SmoothSystem::builtin(name).unwrap();
        let u = s.default_point();
        let c = coefficients_at(&s, &u).unwrap();
        assert_eq!(c.max_abs(), 0.0);
        assert_eq!(compatibility_residual(&s, &u).unwrap(), [0.0; 3]);
        assert_eq!(laplace_transform(&s, &u, 1, 3), Err(SmoothError::VanishingCoefficient { i: 1, j: 3 }));
    }
}

#[test]
fn compatibility_holds_on_orthogonal_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for u in sample_points(&mut rng, 10) {
        for s in [SmoothSystem::spherical(), SmoothSystem::parabolic()] {
            let r = compatibility_residual(&s, &u).unwrap();
            assert!(r.iter().all(|&x| x <= 1e-6), "{}: {r:?}", s.name);
        }
    }
}

#[test]
fn focal_points_of_spherical_coordinates() {
    let s = SmoothSystem::spherical();
    let u = [0.7, 1.3, 0.4];
    let l = laplace_transform(&s, &u, 1, 3).unwrap();
    assert!(!l.degenerate);
    let jet = s.jet(&u).unwrap();
    let want = jet.x - jet.d[0] * u[0].tan();
    assert!((l.point - want).norm() < 1e-12);
    // in the order (r, θ, φ) every focal point is the center
    let rtp = s.relabeled([1, 0, 2]);
    let u2 = [1.3, 0.7, 0.4];
    let l = laplace_transform(&rtp, &u2, 1, 3).unwrap();
    assert!(l.point.norm() < 1e-12);
    assert!(l.degenerate);
    assert_eq!(theorem71_check(&rtp, &u2, 1e-6).unwrap().verdict, Biconditional::NotApplicable);
}

#[test]
fn biconditional_on_builtin_systems() {
    let expect = [
        ("spherical", Biconditional::Holds, true),
        ("parabolic", Biconditional::Holds, true),
        ("affine", Biconditional::Holds, false),
        ("shear", Biconditional::Holds, false),
        ("cartesian", Biconditional::NotApplicable, true),
    ];
    for (name, verdict, orthogonal) in expect {
        for d in [Derivatives::Analytic, fd(1e-4)] {
            let s = SmoothSystem::builtin(name).unwrap().with_derivatives(d);
            let t = theorem71_check(&s, &s.default_point(), s.default_tol()).unwrap();
            assert_eq!(t.verdict, verdict, "{name} {d:?}");
            assert_eq!(t.orthogonal, orthogonal, "{name}");
            assert_eq!(t.report.pass(), orthogonal, "{name}");
        }
    }
    let t = theorem71_check(&SmoothSystem::shear(), &[0.0; 3], 1e-6).unwrap();
    assert!((t.first - 0.5f64.sqrt()).abs() < 1e-15);
    assert_eq!(t.conditions, Some(false));
}

#[test]
fn biconditional_on_random_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let axis = Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let rot = Rotation3::from_scaled_axis(axis).into_inner() * rng.gen_range(0.5..2.0);
        let t = Vector3::new(rng.gen_range(-1.0..1.0), 0.3, -0.2);
        let shear = Matrix3::identity() + Matrix3::from_fn(|_, _| rng.gen_range(-0.1..0.1));
        for base in [SmoothSystem::spherical(), SmoothSystem::parabolic()] {
            let u = base.default_point();
            let good = base.transformed(rot, t);
            let r = theorem71_check(&good, &u, 1e-6).unwrap();
            assert_eq!((r.verdict, r.orthogonal), (Biconditional::Holds, true));
            let bad = base.transformed(shear, t);
            let r = theorem71_check(&bad, &u, 1e-6).unwrap();
            assert_eq!((r.verdict, r.orthogonal), (Biconditional::Holds, false));
            assert!(r.second.unwrap() > 1e-6);
            let r = theorem71_check(&bad.with_derivatives(fd(1e-4)), &u, 1e-4).unwrap();
            assert_eq!(r.verdict, Biconditional::Holds);
        }
    }
}

#[test]
fn laplace_derivative_matches_the_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for u in sample_points(&mut rng, 20) {
        let s = SmoothSystem::parabolic();
        let a = laplace_derivative_fd(&s, &u).unwrap();
        let b = laplace_derivative_formula(&s, &u).unwrap();
        assert!((a - b).norm() / b.norm() <= 1e-4, "{u:?}");
    }
}

#[test]
fn finite_differences_are_second_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pts = sample_points(&mut rng, 20);
    let err = |h: f64| -> f64 {
        pts.iter()
            .map(|u| {
                let c = coefficients_at(&SmoothSystem::spherical().with_derivatives(fd(h)), u).unwrap();
                max_table_error(&c, &spherical_table(u[0], u[1]))
            })
            .sum()
    };
    let ratio = err(1e-2) / err(5e-3);
    assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn step_bounds() {
    assert!(FDConfig::new(1e-6).is_ok() && FDConfig::new(1e-2).is_ok());
    assert_eq!(FDConfig::new(0.1), Err(SmoothError::InvalidStep(0.1)));
    assert_eq!(FDConfig::new(1e-7), Err(SmoothError::InvalidStep(1e-7)));
}

#[test]
fn out_of_domain_points() {
    let s = SmoothSystem::spherical();
    assert_eq!(s.eval(&[0.5, -1.0, 0.0]), Err(SmoothError::OutOfDomain([0.5, -1.0, 0.0])));
    // the pole of spherical coordinates has dependent tangents
    assert_eq!(coefficients_at(&s, &[0.0, 1.0, 0.0]).unwrap_err(), SmoothError::DependentTangents);
}

#[test]
fn tabulated_samples_reproduce_the_verdict() {
    let s = SmoothSystem::spherical();
    let u = s.default_point();
    let h = 2e-3;
    let origin = [u[0] - 3.0 * h, u[1] - 3.0 * h, u[2] - 3.0 * h];
    let tab = TabulatedSystem::sample(&s, origin, [h; 3], [7, 7, 7]).unwrap();
    let back: TabulatedSystem = serde_json::from_str(&serde_json::to_string(&tab).unwrap()).unwrap();
    assert_eq!(back, tab);
    let ts = SmoothSystem::tabulated(tab);
    assert_eq!(ts.default_point(), [origin[0] + 3.0 * h, origin[1] + 3.0 * h, origin[2] + 3.0 * h]);
    let r = theorem71_check(&ts, &ts.default_point(), 1e-4).unwrap();
    assert_eq!((r.verdict, r.orthogonal), (Biconditional::Holds, true));
    assert!(matches!(ts.eval(&[0.0, 0.0, 0.0]), Err(SmoothError::OutOfDomain(_))));
}

#[test]
fn sampled_defects_shrink_with_the_step() {
    let s = SmoothSystem::spherical();
    let block = Block::cube(3, 2);
    let u0 = [0.6, 1.0, 0.2];
    let runs: Vec<_> = [0.2, 0.1, 0.05, 0.025].iter().map(|&e| sample_discrete(&s, &u0, e, &block).unwrap()).collect();
    for w in runs.windows(2) {
        assert!(w[1].orthogonality_defect < w[0].orthogonality_defect);
    }
    // coordinate quads of a surface of revolution are isosceles trapezoids
    assert!(runs.iter().all(|r| r.planarity_defect < 1e-13 && r.cross_defect.is_some()));

    let aff = SmoothSystem::builtin("affine").unwrap();
    let c = sample_discrete(&aff, &aff.default_point(), 0.3, &block).unwrap();
    assert!(c.planarity_defect < 1e-14);

    let cart = SmoothSystem::cartesian();
    let d = sample_discrete(&cart, &[0.0; 3], 0.5, &block).unwrap();
    assert_eq!(d.orthogonality_defect, 0.0);
    assert!(d.cross_defect.is_none());
    assert!(d.report.warnings.iter().any(|w| w.contains("infinity")));
    let f = binet::FaceId::new(vec![0, 0, 0], 2, 3);
    assert!(d.binet.faces.get(&f).unwrap().affine(1e-9).is_none());
}

