use binet::conjugate::{restrict_face_net, ConjugateBinet, PlaneField, VertexNet};
use binet::generate::{
    coordinate_plane_data, random_circular_cube, random_polar_binet, random_projectivity, rng, transform_point,
    PolarParams, QuadricKind,
};
use binet::polar::{check_polarity, propagate_polar_binet};
use binet::principal::*;
use binet::projective::{join_points, meet, polar_point, CentralProjection, ProjSubspace};
use binet::{Block, Cell, CubeId, FaceId, GeomError, ProjPoint, ToleranceConfig, VertexId};
use nalgebra::{DMatrix, DVector};

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn polar_source(seed: u64, block: &Block) -> binet::polar::PolarBinet {
    random_polar_binet(&mut rng(seed), block, QuadricKind::Moebius { n: 3 }, PolarParams::default(), &tol()).unwrap()
}

fn principal_source(seed: u64, block: &Block) -> ConjugateBinet {
    project_binet(&polar_source(seed, block).binet, &CentralProjection::moebius(3), &tol()).unwrap()
}

/// Projected coordinate-plane data of a polar binet, with its vertex planes.
fn initial_data(src: &binet::polar::PolarBinet, block: &Block) -> (ConjugateBinet, PlaneField) {
    let cp = CentralProjection::moebius(3);
    let cd = coordinate_plane_data(src, block);
    (project_binet(&cd.binet, &cp, &tol()).unwrap(), project_planes(&cd.planes, &cp, &tol()))
}

fn v(c: &[i64]) -> VertexId {
    VertexId(c.to_vec())
}

#[test]
fn sphere_lift_round_trip_and_pairing() {
    let a = SphereRep::new(&[0.0, 0.0, 0.0], 1.0);
    let b = SphereRep::new(&[2.0, 0.0, 0.0], 3.0);
    assert_eq!(a.orthogonality(&b), 0.0);
    let q = binet::Quadric::moebius(3);
    let (pa, pb) = (a.to_lift().unwrap(), b.to_lift().unwrap());
    assert!(q.normalized_pairing(&pa, &pb) < 1e-15);
    for s in [a, b, SphereRep::new(&[0.3, -1.2, 4.0], -0.7)] {
        let back = SphereRep::from_lift(&s.to_lift().unwrap(), 1e-9).unwrap();
        for (x, y) in back.center.iter().zip(&s.center) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!((back.sq_radius - s.sq_radius).abs() < 1e-12);
    }
    // the projection center itself has no finite sphere
    let bpt = ProjPoint::from_slice(&[1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
    assert!(matches!(SphereRep::from_lift(&bpt, 1e-9), Err(GeomError::InfinitePoint(None))));
}

fn one_cross(f2: [f64; 3]) -> ConjugateBinet {
    let mut b = ConjugateBinet::new(3);
    b.vertices.insert(v(&[0, 0, 0]), ProjPoint::from_affine(&[0.0, 0.0, 0.0]));
    b.vertices.insert(v(&[1, 0, 0]), ProjPoint::from_affine(&[1.0, 0.0, 0.0]));
    b.faces.insert(FaceId::new(vec![0, 0, 0], 1, 2), ProjPoint::from_affine(&[0.5, -1.0, 0.0]));
    b.faces.insert(FaceId::new(vec![0, 0, 0], 1, 3), ProjPoint::from_affine(&f2));
    b
}

#[test]
fn single_cross_cosines() {
    let ok = check_principal(&one_cross([0.5, 2.0, 0.0]), &tol()).unwrap();
    assert!(ok.pass());
    assert_eq!(ok.count("cross orthogonality"), 1);
    assert_eq!(ok.max_residual("cross orthogonality"), 0.0);
    let bad = check_principal(&one_cross([1.5, 2.0, 0.0]), &tol()).unwrap();
    assert!(!bad.pass());
    let w = bad.worst().unwrap();
    assert_eq!(w.cell, Some(Cell::Edge(binet::EdgeId::new(vec![0, 0, 0], 1))));
    assert!((w.residual - 1.0 / 10f64.sqrt()).abs() < 1e-12);
}

#[test]
fn projected_polar_binets_are_principal() {
    for seed in 0..5 {
        let b = principal_source(seed, &Block::cube(3, 2));
        let rep = check_principal(&b, &tol()).unwrap();
        assert!(rep.pass(), "seed {seed}: {:?}", rep.worst());
        // 3 directions × 2·3·3 edges, four faces each inside [0,2]^3 or fewer
        assert!(rep.count("cross orthogonality") == 54);
        assert!(rep.count("edge face points collinear") > 0);
    }
}

#[test]
fn infinite_point_is_reported_with_its_cell() {
    let mut b = one_cross([0.5, 2.0, 0.0]);
    let f = FaceId::new(vec![0, 0, 0], 1, 3);
    b.faces.insert(f.clone(), ProjPoint::at_infinity(&[0.0, 1.0, 0.0]).unwrap());
    assert_eq!(check_principal(&b, &tol()).unwrap_err(), GeomError::InfinitePoint(Some(Cell::Face(f))));
}

#[test]
fn single_quad_lift_radius() {
    let mut b = ConjugateBinet::new(2);
    for (c, x) in [([0, 0], [0.0, 0.0]), ([1, 0], [2.0, 0.0]), ([0, 1], [0.0, 2.0]), ([1, 1], [2.0, 2.0])] {
        b.vertices.insert(v(&c), ProjPoint::from_affine(&x));
    }
    b.faces.insert(FaceId::new(vec![0, 0], 1, 2), ProjPoint::from_affine(&[1.0, 0.0]));
    let lift = moebius_lift(&b, 0.25, &v(&[0, 0]), &tol()).unwrap();
    let s = lift.sphere(&Cell::Face(FaceId::new(vec![0, 0], 1, 2)), &tol()).unwrap();
    assert!((s.sq_radius - 0.75).abs() < 1e-12);
    let s = lift.sphere(&Cell::Vertex(v(&[1, 1])), &tol()).unwrap();
    // |(2,2) − (1,0)|² − 0.75
    assert!((s.sq_radius - 4.25).abs() < 1e-12);
}

#[test]
fn lift_steps_agree_with_fiber_meets_polar() {
    let b = principal_source(3, &Block::cube(3, 1));
    let lift = moebius_lift(&b, 0.1, &v(&[0, 0, 0]), &tol()).unwrap();
    let cp = CentralProjection::moebius(3);
    let q = binet::Quadric::moebius(3);
    for (f, pf) in b.faces.iter() {
        let x = pf.affine(1e-9).unwrap();
        let fiber = cp.fiber_line(x.as_slice());
        for w in f.vertices() {
            let pol = polar_point(&lift.lift.binet.vertices.values[&w], &q, 1e-9).unwrap();
            let p = meet(&fiber, &pol, 1e-9).unwrap().as_point().unwrap();
            assert!(p.distance(&lift.lift.binet.faces.values[f]) < 1e-9);
        }
    }
}

#[test]
fn lift_family_shares_its_projection() {
    for seed in 0..5 {
        let b = principal_source(seed, &Block::cube(3, 2));
        let l1 = moebius_lift(&b, 0.1, &v(&[0, 0, 0]), &tol()).unwrap();
        let l2 = moebius_lift(&b, 0.3, &v(&[1, 1, 1]), &tol()).unwrap();
        assert!(l1.closure <= 1e-8 && l2.closure <= 1e-8);
        let (d, _) = l1.lift.binet.compare(&l2.lift.binet);
        assert!(d > 1e-3, "different parameters give different lifts");
        let (p1, p2) = (l1.project(&tol()).unwrap(), l2.project(&tol()).unwrap());
        assert!(p1.compare(&b).0 <= 1e-10);
        assert!(p2.compare(&b).0 <= 1e-10);
        let pol = check_polarity(&l1.lift.binet, &l1.lift.quadric, &tol());
        assert!(pol.pass());
    }
}

#[test]
fn perturbation_ladder_matches_principal_verdict() {
    let b = principal_source(11, &Block::cube(3, 2));
    let f = FaceId::new(vec![1, 0, 1], 1, 2);
    for eps in [0.0, 1e-6, 1e-3, 1e-2] {
        let mut c = b.clone();
        let x = c.faces.values[&f].affine(1e-9).unwrap();
        c.faces.insert(f.clone(), ProjPoint::from_affine(&[x[0], x[1] + eps, x[2]]));
        let principal = check_principal(&c, &tol()).unwrap().pass();
        let lifted = moebius_lift(&c, 0.1, &v(&[0, 0, 0]), &tol());
        assert_eq!(principal, eps == 0.0);
        assert_eq!(lifted.is_ok(), principal, "eps {eps}");
        if eps > 0.0 {
            assert!(matches!(lifted, Err(GeomError::ClosureFailure { .. })));
        }
    }
}

#[test]
fn build_principal_round_trip() {
    let block = Block::cube(3, 2);
    for seed in 0..4 {
        let src = polar_source(seed, &block);
        let projected = project_binet(&src.binet, &CentralProjection::moebius(3), &tol()).unwrap();
        let (initial, planes) = initial_data(&src, &block);
        let built = build_principal(&initial, &planes, &block, 0.1, &tol()).unwrap();
        let rep = check_principal(&built.binet, &tol()).unwrap();
        assert!(rep.max_residual("cross orthogonality") <= 1e-8);
        let (d, cell) = projected.compare(&built.binet);
        assert!(d <= 1e-7, "seed {seed}: {d:e} at {cell:?}");
    }
}

#[test]
fn build_principal_scales_with_the_data() {
    let block = Block::cube(3, 2);
    let src = polar_source(5, &block);
    let (initial, planes) = initial_data(&src, &block);
    let lambda = 2.5;
    let scale = |b: &ConjugateBinet| {
        let mut out = ConjugateBinet::new(3);
        for (k, p) in b.vertices.iter() {
            out.vertices.insert(k.clone(), ProjPoint::from_affine((p.affine(1e-9).unwrap() * lambda).as_slice()));
        }
        for (k, p) in b.faces.iter() {
            out.faces.insert(k.clone(), ProjPoint::from_affine((p.affine(1e-9).unwrap() * lambda).as_slice()));
        }
        out
    };
    let mut scaled_planes = PlaneField::new(3);
    let m = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, lambda, lambda, lambda]));
    for (k, s) in &planes.planes {
        scaled_planes.insert(k.clone(), ProjSubspace::from_columns(&(&m * s.basis()), 1e-12));
    }
    let a = build_principal(&initial, &planes, &block, 0.1, &tol()).unwrap().binet;
    let b = build_principal(&scale(&initial), &scaled_planes, &block, 0.1 * lambda * lambda, &tol()).unwrap().binet;
    assert!(scale(&a).compare(&b).0 <= 1e-9);
}

#[test]
fn integer_grid_focal_points_are_flagged() {
    let block = Block::cube(3, 2);
    let mut b = ConjugateBinet::new(3);
    for w in block.vertices() {
        if block.on_coordinate_planes(&Cell::Vertex(w.clone())) {
            let x: Vec<f64> = w.0.iter().map(|&c| c as f64).collect();
            b.vertices.insert(w, ProjPoint::from_affine(&x));
        }
    }
    for f in block.faces() {
        if block.on_coordinate_planes(&Cell::Face(f.clone())) {
            let mut x: Vec<f64> = f.base.iter().map(|&c| c as f64).collect();
            x[f.dirs.0 - 1] += 0.5;
            x[f.dirs.1 - 1] += 0.5;
            b.faces.insert(f, ProjPoint::from_affine(&x));
        }
    }
    assert!(check_principal(&b, &tol()).unwrap().pass());
    // vertices on the far boundary see one or two face points; their planes
    // are the wall itself, or contain the common direction of two walls
    let mut planes = PlaneField::new(3);
    for w in b.vertices.keys() {
        let inc: Vec<(FaceId, ProjPoint)> =
            binet::lattice::faces_of_vertex(w).into_iter().filter_map(|f| b.faces.get(&f).map(|p| (f, p.clone()))).collect();
        if inc.len() == 1 {
            let (a, c) = inc[0].0.dirs;
            let x = b.vertices.values[w].affine(1e-9).unwrap();
            let (mut xa, mut xc) = (x.clone(), x.clone());
            xa[a - 1] += 1.0;
            xc[c - 1] += 1.0;
            let pts = [b.vertices.values[w].clone(), ProjPoint::from_affine(xa.as_slice()), ProjPoint::from_affine(xc.as_slice())];
            planes.insert(w.clone(), join_points(&[&pts[0], &pts[1], &pts[2]], 1e-9).unwrap());
            continue;
        }
        if inc.len() != 2 {
            continue;
        }
        let third = if inc[0].0.dirs == inc[1].0.dirs {
            b.vertices.values[w].clone()
        } else {
            let (a, c) = (inc[0].0.dirs, inc[1].0.dirs);
            let common = if a.0 == c.0 || a.0 == c.1 { a.0 } else { a.1 };
            let mut x = inc[0].1.affine(1e-9).unwrap();
            x[common - 1] += 1.0;
            ProjPoint::from_affine(x.as_slice())
        };
        planes.insert(w.clone(), join_points(&[&inc[0].1, &inc[1].1, &third], 1e-9).unwrap());
    }
    match build_principal(&b, &planes, &block, 0.1, &tol()) {
        Err(GeomError::InfinitePoint(Some(Cell::Face(f)))) => {
            // the first face off the coordinate planes is a focal point at infinity
            assert!(!block.on_coordinate_planes(&Cell::Face(f)));
        }
        other => panic!("expected a flagged point at infinity, got {other:?}"),
    }
}

fn layer_pair(b: &ConjugateBinet) -> (VertexNet, VertexNet) {
    (b.vertices.clone(), restrict_face_net(&b.faces, 1, 2))
}

#[test]
fn symmetric_extensions_agree() {
    for seed in 0..4 {
        let b = principal_source(seed, &Block::cube(3, 2));
        let (g, h) = layer_pair(&b);
        let sc = symmetric_extension_check(&g, &h, 1, 2, &tol()).unwrap();
        assert!(sc.first.pass() && sc.second.pass(), "seed {seed}");
        assert!(sc.report.pass());
        // a small projective map keeps h conjugate but breaks the pairing
        let m = random_projectivity(&mut rng(100 + seed), 3, 1e-2);
        let mut hp = VertexNet::new(3);
        for (k, p) in h.iter() {
            hp.insert(k.clone(), transform_point(&m, p));
        }
        let sc = symmetric_extension_check(&g, &hp, 1, 2, &tol()).unwrap();
        assert!(!sc.first.pass() && !sc.second.pass(), "seed {seed}");
        assert!(sc.agree());
    }
}

#[test]
fn symmetric_extensions_in_two_dimensions_swap_roles() {
    let mut r = rng(2);
    let src = random_polar_binet(&mut r, &Block::cube(2, 2), QuadricKind::Moebius { n: 3 }, PolarParams::default(), &tol()).unwrap();
    let b = project_binet(&src.binet, &CentralProjection::moebius(3), &tol()).unwrap();
    let (g, h) = layer_pair(&b);
    let (first, second) = symmetric_extensions(&g, &h, 1, 2, &tol()).unwrap();
    assert!(first.faces.compare(&b.faces).max <= 1e-12);
    assert_eq!(first.faces.len(), b.faces.len());
    for (f, p) in second.faces.iter() {
        let w = f.base_vertex().plus(&[1, 2]);
        assert!(p.distance(&g.values[&w]) <= 1e-12);
    }
    assert_eq!(second.vertices, h);
}

#[test]
fn concircular_face_has_vertical_axis() {
    let mut b = ConjugateBinet::new(3);
    let f = FaceId::new(vec![0, 0], 1, 2);
    let angles: [f64; 4] = [0.3, 1.9, 3.4, 5.0];
    for (w, t) in f.vertices().iter().zip(angles) {
        b.vertices.insert(w.clone(), ProjPoint::from_affine(&[t.cos(), t.sin(), 0.0]));
    }
    b.faces.insert(f.clone(), ProjPoint::from_affine(&[0.0, 0.0, 0.7]));
    let lift = moebius_lift(&b, 0.0, &v(&[0, 0]), &tol()).unwrap();
    let axis = face_circle_axis(&lift, &f, &tol()).unwrap();
    assert!(axis.direction[0].abs() < 1e-12 && axis.direction[1].abs() < 1e-12);
    assert!(axis.distance(&DVector::from_vec(vec![0.0, 0.0, -3.0])) < 1e-12);
    assert_eq!(axis.circle_plane.dim(), 2);
}

#[test]
fn cube_sphere_of_a_centered_cube() {
    let mut r = rng(4);
    for _ in 0..5 {
        let b = random_circular_cube(&mut r, &[0.0, 0.0, 0.0], 0.5);
        let lift = moebius_lift(&b, 0.0, &v(&[0, 0, 0]), &tol()).unwrap();
        // circular net anchored on the quadric: the whole vertex lift is on it
        let q = binet::Quadric::moebius(3);
        for (_, p) in lift.lift.binet.vertices.iter() {
            assert!(q.normalized_pairing(p, p) <= 1e-8);
        }
        let cs = cube_sphere(&lift, &CubeId::new(vec![0, 0, 0], 1, 2, 3), &tol()).unwrap();
        for x in &cs.sphere.center {
            assert!(x.abs() < 1e-10);
        }
        assert!(cs.axis_residual <= 1e-8);
        // the cube sphere passes through all eight corners
        assert!((cs.sphere.sq_radius - 0.75).abs() < 1e-10);
        assert!(cs.orthogonality <= 1e-10);
    }
}

#[test]
fn cube_spheres_of_random_lifts_meet_the_axes() {
    for seed in 0..5 {
        let b = principal_source(seed, &Block::cube(3, 2));
        let lift = moebius_lift(&b, 0.1, &v(&[0, 0, 0]), &tol()).unwrap();
        for c in Block::cube(3, 2).cubes() {
            let cs = cube_sphere(&lift, &c, &tol()).unwrap();
            assert!(cs.axis_residual <= 1e-8, "seed {seed} cube {c:?}: {}", cs.axis_residual);
            assert!(cs.orthogonality <= 1e-7);
            let am = axes_meet(&b, &c, &tol()).unwrap();
            let center = DVector::from_column_slice(&cs.sphere.center);
            assert!((am.point - center).norm() <= 1e-8);
        }
    }
}

#[test]
fn circular_cube_completion_stays_on_the_quadric() {
    let mut r = rng(9);
    let block = Block::cube(3, 1);
    let b = random_circular_cube(&mut r, &[0.2, -0.1, 0.4], 0.6);
    let lift = moebius_lift(&b, 0.0, &v(&[0, 0, 0]), &tol()).unwrap();
    let mut initial = lift.lift.clone();
    initial.binet = ConjugateBinet {
        vertices: lift.lift.binet.vertices.filtered(|w| w.0 != [1, 1, 1]),
        faces: lift.lift.binet.faces.filtered(|f| block.on_coordinate_planes(&Cell::Face(f.clone()))),
    };
    initial.planes.planes.retain(|w, _| w.0 != [1, 1, 1]);
    let mut stripped = initial.clone();
    stripped.binet.vertices = initial.binet.vertices.clone();
    let prop = propagate_polar_binet(&stripped, &block, &tol()).unwrap();
    let q = binet::Quadric::moebius(3);
    let top = &prop.net.binet.vertices.values[&v(&[1, 1, 1])];
    assert!(q.normalized_pairing(top, top) <= 1e-8);
    assert!(prop.net.binet.compare(&lift.lift.binet).0 <= 1e-9);
}
