use binet::projective::*;
use binet::{GeomError, ProjPoint, ProjSubspace, Quadric, ToleranceConfig};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

const RANK: f64 = 1e-9;

fn pt(x: &[f64]) -> ProjPoint {
    ProjPoint::from_affine(x)
}

fn span(cols: &[Vec<f64>]) -> ProjSubspace {
    let m = DMatrix::from_columns(&cols.iter().map(|c| DVector::from_column_slice(c)).collect::<Vec<_>>());
    ProjSubspace::from_columns(&m, RANK)
}

fn same(a: &ProjSubspace, b: &ProjSubspace) -> f64 {
    a.containment_residual(b).max(b.containment_residual(a))
}

#[test]
fn lines_of_the_plane() {
    let l1 = join_points(&[&pt(&[0.0, 0.0]), &pt(&[1.0, 0.0])], RANK).unwrap();
    let l2 = join_points(&[&pt(&[0.0, 1.0]), &pt(&[1.0, 2.0])], RANK).unwrap();
    assert_eq!((l1.dim(), l2.dim()), (1, 1));
    let x = meet(&l1, &l2, RANK).unwrap().as_point().unwrap();
    let a = x.affine(1e-12).unwrap();
    assert!((a[0] + 1.0).abs() < 1e-14 && a[1].abs() < 1e-14);
    // parallel lines meet at infinity
    let l3 = join_points(&[&pt(&[0.0, 1.0]), &pt(&[1.0, 1.0])], RANK).unwrap();
    let y = meet(&l1, &l3, RANK).unwrap().as_point().unwrap();
    assert!(y.affine(1e-12).is_none());
    assert!(y.distance(&ProjPoint::at_infinity(&[1.0, 0.0]).unwrap()) < 1e-15);
    // coincident points span only a point
    assert_eq!(join_points(&[&pt(&[2.0, 3.0]), &pt(&[2.0, 3.0])], RANK).unwrap().dim(), 0);
}

#[test]
fn empty_and_whole_spaces() {
    let e = ProjSubspace::empty(3);
    let w = ProjSubspace::whole(3);
    assert_eq!((e.dim(), w.dim()), (-1, 3));
    let l = join_points(&[&pt(&[0.0, 0.0, 0.0]), &pt(&[1.0, 2.0, 3.0])], RANK).unwrap();
    assert_eq!(join(&[&l, &e], RANK).unwrap().dim(), 1);
    assert_eq!(meet(&l, &w, RANK).unwrap().dim(), 1);
    let skew = join_points(&[&pt(&[0.0, 1.0, 0.0]), &pt(&[0.0, 1.0, 1.0])], RANK).unwrap();
    assert!(meet(&l, &skew, RANK).unwrap().is_empty());
    assert!(matches!(join(&[&l, &ProjSubspace::whole(4)], RANK), Err(GeomError::AmbientMismatch(3, 4))));
}

#[test]
fn polars_for_the_moebius_quadric() {
    let q = Quadric::moebius(3);
    assert_eq!(q.signature(), (4, 1));
    assert!(!q.is_degenerate());
    // the polar hyperplane of a sphere's lift contains the lifts of the
    // spheres orthogonal to it
    let center = DVector::from_column_slice(&[1.0, 0.0, 0.0, 0.0, 0.0]);
    let h = polar_point(&ProjPoint::new(center).unwrap(), &q, RANK).unwrap();
    assert_eq!(h.dim(), 3);
    let inside = ProjPoint::from_slice(&[0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
    assert!(h.contains(&inside, 1e-12));
    assert!(q.normalized_pairing(&inside, &ProjPoint::from_slice(&[1.0, 0.0, 0.0, 0.0, 0.0]).unwrap()) < 1e-15);
    assert!(Quadric::new(DMatrix::from_diagonal(&DVector::from_column_slice(&[1.0, 0.0, 1.0])), RANK).is_degenerate());
}

#[test]
fn canonical_representatives() {
    let v = DVector::from_column_slice(&[0.3, -2.0, 1.0]);
    let c = canonicalize(&v).unwrap();
    assert!((c.norm() - 1.0).abs() < 1e-15);
    assert!(c[1] > 0.0);
    assert_eq!(canonicalize(&DVector::zeros(3)), Err(GeomError::ZeroVector));
    assert_eq!(canonicalize(&DVector::from_column_slice(&[f64::NAN, 1.0])), Err(GeomError::NonFinite));
}

#[test]
fn stereographic_fibers() {
    let cp = CentralProjection::moebius(3);
    let tol = ToleranceConfig::default();
    assert!(matches!(cp.project(cp.center(), tol.tol_point), Err(GeomError::CenterFiber)));
    let x = [0.4, -1.5, 2.0];
    let line = cp.fiber_line(&x);
    assert_eq!(line.dim(), 1);
    assert!(line.contains(cp.center(), 1e-14));
    assert_eq!(cp.target().dim(), 3);
}

#[test]
fn default_tolerances_are_validated() {
    assert!(ToleranceConfig::default().validate().is_ok());
    let bad = ToleranceConfig { tol_rank: 0.0, ..ToleranceConfig::default() };
    assert!(matches!(bad.validate(), Err(GeomError::InvalidTolerance(_))));
}

fn vector(len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-1.0f64..1.0, len).prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
}

/// A subspace of RP^d spanned by `k` random points.
fn subspace(d: usize, k: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    proptest::collection::vec(vector(d + 1), k)
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent_and_scale_free(v in vector(5), s in prop_oneof![-100.0f64..-0.01, 0.01f64..100.0]) {
        let v = DVector::from_vec(v);
        let c = canonicalize(&v).unwrap();
        prop_assert_eq!(canonicalize(&c).unwrap(), c.clone());
        let cs = canonicalize(&(&v * s)).unwrap();
        prop_assert!((cs - &c).norm() < 1e-14);
    }

    #[test]
    fn polarity_is_an_involution(d in 3usize..=4, k in 1usize..=3, seed in any::<u64>()) {
        let q = Quadric::moebius(d - 1);
        let mut r = binet::generate::rng(seed);
        let cols: Vec<Vec<f64>> = (0..k).map(|_| (0..=d).map(|_| rand::Rng::gen_range(&mut r, -1.0..1.0)).collect()).collect();
        let s = span(&cols);
        let p = polar(&s, &q, RANK).unwrap();
        prop_assert_eq!(s.dim() + p.dim(), d as isize - 1);
        let pp = polar(&p, &q, RANK).unwrap();
        prop_assert!(same(&s, &pp) < 1e-10);
    }

    #[test]
    fn join_and_meet_dimensions(a in subspace(4, 3), b in subspace(4, 3)) {
        let (sa, sb) = (span(&a), span(&b));
        prop_assume!(sa.dim() == 2 && sb.dim() == 2);
        let j = join(&[&sa, &sb], RANK).unwrap();
        let m = meet(&sa, &sb, RANK).unwrap();
        prop_assert_eq!(j.dim() + m.dim(), sa.dim() + sb.dim());
        for p in m.points() {
            prop_assert!(sa.contains(&p, 1e-9) && sb.contains(&p, 1e-9));
        }
    }

    #[test]
    fn fibers_project_back(x in proptest::collection::vec(-3.0f64..3.0, 3), t in -5.0f64..5.0) {
        let cp = CentralProjection::moebius(3);
        let line = cp.fiber_line(&x);
        let b = line.basis();
        let p = ProjPoint::new(b.column(0) * t.cos() + b.column(1) * t.sin()).unwrap();
        prop_assume!(p.distance(cp.center()) > 1e-3);
        let y = cp.project(&p, 1e-9).unwrap();
        for a in 0..3 {
            prop_assert!((y[a] - x[a]).abs() < 1e-8 * (1.0 + x[a].abs()));
        }
        prop_assert!(cp.embed(&x).distance(&ProjPoint::new(cp.embed_vec(&x)).unwrap()) == 0.0);
    }
}
