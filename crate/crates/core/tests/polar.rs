use binet::conjugate::{check_face_net, check_vertex_net};
use binet::generate::{coordinate_plane_data, random_polar_binet, rng, PolarParams, QuadricKind};
use binet::polar::{check_polar_inclusions, check_polarity, propagate_polar_binet, propagate_polar_cube};
use binet::{Block, Cell, CubeId, FaceId, ProjPoint, ToleranceConfig};

#[test]
fn generated_polar_binet_is_polar_and_conjugate() {
    let tol = ToleranceConfig::default();
    let block = Block::cube(3, 2);
    for seed in 0..5 {
        let pb = random_polar_binet(&mut rng(seed), &block, QuadricKind::Moebius { n: 3 }, PolarParams::default(), &tol).unwrap();
        let pol = check_polarity(&pb.binet, &pb.quadric, &tol);
        assert!(pol.max_residual("pairing") < 1e-12, "{}", pol.max_residual("pairing"));
        assert!(check_vertex_net(&pb.binet.vertices, &tol).pass());
        let fr = check_face_net(&pb.binet.faces, &tol);
        assert!(fr.pass(), "{:?}", fr.worst());
        assert!(check_polar_inclusions(&pb, &tol).unwrap().pass());
    }
}

#[test]
fn polar_propagation_reproduces_source() {
    let tol = ToleranceConfig::default();
    let block = Block::cube(3, 2);
    for seed in 0..5 {
        let pb = random_polar_binet(&mut rng(seed), &block, QuadricKind::Moebius { n: 3 }, PolarParams::default(), &tol).unwrap();
        let init = coordinate_plane_data(&pb, &block);
        let out = propagate_polar_binet(&init, &block, &tol).unwrap();
        let (d, cell) = pb.binet.compare(&out.net.binet);
        assert!(d < 1e-9, "seed {seed}: {d} at {cell:?}");
    }
}

#[test]
fn completed_cubes_stay_polar() {
    let tol = ToleranceConfig::default();
    let block = Block::cube(3, 1);
    let c = CubeId::new(vec![0, 0, 0], 1, 2, 3);
    let mut worst: f64 = 0.0;
    for seed in 0..1000 {
        let pb = random_polar_binet(&mut rng(seed), &block, QuadricKind::Moebius { n: 3 }, PolarParams::default(), &tol).unwrap();
        let done = propagate_polar_cube(&coordinate_plane_data(&pb, &block), &c, &tol).unwrap();
        assert_eq!(done.faces.len(), 3);
        worst = worst.max(done.max_pairing);
    }
    assert!(worst <= 1e-9, "{worst}");
}

#[test]
fn polar_hypercubes_are_consistent() {
    let tol = ToleranceConfig::default();
    let block = Block::cube(4, 1);
    let mut worst: f64 = 0.0;
    for seed in 0..100 {
        let pb = random_polar_binet(&mut rng(seed), &block, QuadricKind::Moebius { n: 3 }, PolarParams::default(), &tol).unwrap();
        let out = propagate_polar_binet(&coordinate_plane_data(&pb, &block), &block, &tol).unwrap();
        assert!(!out.discrepancies.is_empty());
        worst = worst.max(out.max_discrepancy()).max(pb.binet.compare(&out.net.binet).0);
        assert!(check_polarity(&out.net.binet, &out.net.quadric, &tol).pass());
    }
    assert!(worst <= 1e-7, "{worst}");
}

#[test]
fn perturbed_face_breaks_polarity() {
    let tol = ToleranceConfig::default();
    let block = Block::cube(3, 1);
    let mut pb = random_polar_binet(&mut rng(4), &block, QuadricKind::Moebius { n: 3 }, PolarParams::default(), &tol).unwrap();
    let f = FaceId::new(vec![0, 0, 0], 1, 3);
    let p = pb.binet.faces.get(&f).unwrap().hom().map(|x| x + 1e-2);
    pb.binet.faces.insert(f.clone(), ProjPoint::new(p).unwrap());
    let rep = check_polarity(&pb.binet, &pb.quadric, &tol);
    assert!(!rep.pass());
    assert!(rep.failures().all(|r| r.cell == Some(Cell::Face(f.clone()))));
}
