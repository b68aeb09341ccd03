//! Deterministic seeded fixtures.
//!
//! Random polar binets are built from a random conjugate vertex net G on
//! the lattice with one extra direction of length one, living in RP^d:
//! the vertex point is `G(v,0)`, the vertex plane is the polar of the line
//! `G(v,0) ∨ G(v,1)` and the face point is the pole of the 3-space spanned
//! by the eight points of `f × {0,1}`. Polarity then holds by construction,
//! and with the Möbius quadric the projection is a principal binet.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conjugate::{complete_vertex_cube, extend_face_net, ConjugateBinet, PlaneField, VertexNet};
use crate::error::GeomError;
use crate::lattice::{Block, Cell, CubeId, VertexId};
use crate::polar::{vertex_plane_from_pair, PolarBinet};
use crate::docs::{docs_lift_from_vertices, Docs};
use crate::principal::project_binet;
use crate::projective::{fit_subspace, polar, CentralProjection, ProjPoint, Quadric, ToleranceConfig};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// How affine coordinates of the generator are read as homogeneous vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// `y ↦ (1, y)`.
    Standard,
    /// `(c, ρ) ↦ ((ρ+1)/2, c, (ρ−1)/2)` with `ρ = |c|² − r²`: the sphere with
    /// center `c` and squared radius `r²` for the Möbius quadric.
    Sphere,
}

impl Chart {
    pub fn to_hom(&self, y: &DVector<f64>) -> DVector<f64> {
        match self {
            Chart::Standard => {
                let mut v = DVector::zeros(y.len() + 1);
                v[0] = 1.0;
                v.rows_mut(1, y.len()).copy_from(y);
                v
            }
            Chart::Sphere => {
                let m = y.len();
                let rho = y[m - 1];
                let mut v = DVector::zeros(m + 1);
                v[0] = (rho + 1.0) / 2.0;
                v.rows_mut(1, m - 1).copy_from(&y.rows(0, m - 1));
                v[m] = (rho - 1.0) / 2.0;
                v
            }
        }
    }
}

fn uniform(rng: &mut ChaCha8Rng, m: usize, amp: f64) -> DVector<f64> {
    DVector::from_fn(m, |_, _| rng.gen_range(-amp..=amp))
}

/// A random generic conjugate vertex net on the block.
///
/// Points on the coordinate planes are perturbations of `ideal` (each face
/// kept planar by construction); all other points follow by cube
/// completion in the order of increasing support.
pub fn random_qnet(
    rng: &mut ChaCha8Rng,
    block: &Block,
    ideal: &dyn Fn(&VertexId) -> DVector<f64>,
    chart: Chart,
    noise: f64,
    tol: &ToleranceConfig,
) -> Result<VertexNet, GeomError> {
    let origin = VertexId(block.origin.clone());
    let m = ideal(&origin).len();
    let ambient = m;
    let mut verts = block.vertices();
    verts.sort_by_key(|v| (block.support(v), v.sum(), v.clone()));
    let mut affine: std::collections::BTreeMap<VertexId, DVector<f64>> = Default::default();
    let mut net = VertexNet::new(ambient);
    for u in verts {
        let support: Vec<usize> =
            (1..=block.dim()).filter(|&k| u.0[k - 1] != block.origin[k - 1]).collect();
        let y = match support.len() {
            0 => Some(ideal(&u) + uniform(rng, m, noise)),
            1 => {
                let prev = u.back(support[0]);
                Some(&affine[&prev] + (ideal(&u) - ideal(&prev)) + uniform(rng, m, noise))
            }
            2 => {
                let (k, l) = (support[0], support[1]);
                let x = u.back(k).back(l);
                let (px, pk, pl) = (&affine[&x], &affine[&x.step(k)], &affine[&x.step(l)]);
                let mm = DMatrix::from_columns(&[pk - px, pl - px]);
                let target = ideal(&u) - px;
                let lam = (mm.transpose() * &mm).cholesky().expect("independent steps").solve(&(mm.transpose() * &target));
                let lam = lam + uniform(rng, 2, noise);
                Some(px + mm * lam)
            }
            _ => None,
        };
        match y {
            Some(y) => {
                net.insert(u.clone(), ProjPoint::new(chart.to_hom(&y))?);
                affine.insert(u, y);
            }
            None => {
                let (i, j, k) = (support[0], support[1], support[2]);
                let base = u.back(i).back(j).back(k);
                let c = CubeId::new(base.0, i, j, k);
                let (p, _) = complete_vertex_cube(&net, &c, tol)?;
                net.insert(u, p);
            }
        }
    }
    Ok(net)
}

/// Which quadric a generated polar binet refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadricKind {
    /// The Möbius quadric of R^n, ambient RP^{n+1}.
    Moebius { n: usize },
    /// The identity form on RP^d, useful for generic conjugate nets.
    Identity { d: usize },
}

impl QuadricKind {
    pub fn quadric(&self) -> Quadric {
        match *self {
            QuadricKind::Moebius { n } => Quadric::moebius(n),
            QuadricKind::Identity { d } => Quadric::identity(d),
        }
    }

    pub fn ambient(&self) -> usize {
        match *self {
            QuadricKind::Moebius { n } => n + 1,
            QuadricKind::Identity { d } => d,
        }
    }
}

/// Fixed generic embedding of lattice directions into R^n.
fn direction(k: usize, n: usize) -> DVector<f64> {
    let extra = [[0.3, -0.2, 0.25, 0.15], [-0.25, 0.3, 0.2, -0.1], [0.2, 0.25, -0.3, 0.2]];
    let mut d = DVector::zeros(n);
    if k <= n {
        d[k - 1] = 1.0;
    } else {
        let row = extra[(k - n - 1) % 3];
        for a in 0..n {
            d[a] = row[a % 4] * (1.0 + 0.1 * (k - n - 1) as f64);
        }
    }
    d
}

/// Parameters of [`random_polar_binet`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarParams {
    pub noise: f64,
    pub r0_sq: f64,
    pub r1_sq: f64,
}

impl Default for PolarParams {
    fn default() -> Self {
        Self { noise: 0.05, r0_sq: 0.1, r1_sq: 0.175 }
    }
}

/// A random polar binet on the block (lattice dimension `block.dim()`),
/// complete with vertex planes.
pub fn random_polar_binet(
    rng: &mut ChaCha8Rng,
    block: &Block,
    kind: QuadricKind,
    params: PolarParams,
    tol: &ToleranceConfig,
) -> Result<PolarBinet, GeomError> {
    let nl = block.dim();
    let d = kind.ambient();
    let n = d - 1;
    let w = DVector::from_fn(n, |a, _| [0.35, 0.25, 0.3, 0.2][a % 4]);
    let ideal = move |u: &VertexId| -> DVector<f64> {
        let mut c = DVector::zeros(n);
        for k in 1..=nl {
            c += direction(k, n) * (u.0[k - 1] as f64);
        }
        let s = u.0[nl] as f64;
        c += &w * s;
        let r2 = if s == 0.0 { params.r0_sq } else { params.r1_sq };
        let mut y = DVector::zeros(n + 1);
        y.rows_mut(0, n).copy_from(&c);
        y[n] = c.norm_squared() - r2;
        y
    };
    let mut origin = block.origin.clone();
    origin.push(0);
    let mut sides = block.sides.clone();
    sides.push(1);
    let prism = Block::with_origin(origin, sides);
    let chart = match kind {
        QuadricKind::Moebius { .. } => Chart::Sphere,
        QuadricKind::Identity { .. } => Chart::Standard,
    };
    let g = random_qnet(rng, &prism, &ideal, chart, params.noise, tol)?;
    let q = kind.quadric();
    let layer = |v: &VertexId, s: i64| {
        let mut c = v.0.clone();
        c.push(s);
        VertexId(c)
    };
    let mut binet = ConjugateBinet::new(d);
    let mut planes = PlaneField::new(d);
    for v in block.vertices() {
        let p0 = g.get(&layer(&v, 0)).expect("layer 0").clone();
        let p1 = g.get(&layer(&v, 1)).expect("layer 1");
        planes.insert(v.clone(), vertex_plane_from_pair(&p0, p1, &q, tol)?);
        binet.vertices.insert(v, p0);
    }
    for f in block.faces() {
        let mut pts = Vec::with_capacity(8);
        for v in f.vertices() {
            for s in 0..2 {
                pts.push(g.get(&layer(&v, s)).expect("prism point"));
            }
        }
        // the eight points span a 3-space by construction; fitting it keeps
        // propagation drift from flipping the rank decision
        let span = fit_subspace(&pts, 3);
        let pole = polar(&span, &q, tol.tol_rank)?;
        let p = pole
            .as_point()
            .ok_or(GeomError::NonGenericMeet { cell: Cell::Face(f.clone()), dim: pole.dim() })?;
        binet.faces.insert(f, p);
    }
    Ok(PolarBinet { binet, planes, quadric: q })
}

/// Cells of a planed binet lying on the coordinate planes of the block.
pub fn coordinate_plane_data(pb: &PolarBinet, block: &Block) -> PolarBinet {
    let on = |c: Cell| block.on_coordinate_planes(&c) && match &c {
        Cell::Vertex(v) => block.contains(v),
        Cell::Face(f) => block.contains_face(f),
        _ => false,
    };
    let mut out = pb.clone();
    out.binet.vertices = pb.binet.vertices.filtered(|v| on(Cell::Vertex(v.clone())));
    out.binet.faces = pb.binet.faces.filtered(|f| on(Cell::Face(f.clone())));
    out.planes.planes.retain(|v, _| on(Cell::Vertex(v.clone())));
    out
}

/// A random principal binet on the block: the projection of a random polar
/// binet for the Möbius quadric of R^3.
pub fn random_principal_binet(rng: &mut ChaCha8Rng, block: &Block, tol: &ToleranceConfig) -> Result<ConjugateBinet, GeomError> {
    let pb = random_polar_binet(rng, block, QuadricKind::Moebius { n: 3 }, PolarParams::default(), tol)?;
    project_binet(&pb.binet, &CentralProjection::moebius(3), tol)
}

/// Random projective transformation close to the identity.
pub fn random_projectivity(rng: &mut ChaCha8Rng, d: usize, amp: f64) -> DMatrix<f64> {
    DMatrix::identity(d + 1, d + 1) + DMatrix::from_fn(d + 1, d + 1, |_, _| rng.gen_range(-amp..=amp))
}

pub fn transform_point(m: &DMatrix<f64>, p: &ProjPoint) -> ProjPoint {
    ProjPoint::new(m * p.hom()).expect("invertible map")
}

/// The seven lower vertices of the unit cube in the chart of RP^3.
pub fn affine_cube_seed() -> VertexNet {
    let mut g = VertexNet::new(3);
    for v in Block::cube(3, 1).vertices() {
        if v.0 != [1, 1, 1] {
            let x: Vec<f64> = v.0.iter().map(|&c| c as f64).collect();
            g.insert(v, ProjPoint::from_affine(&x));
        }
    }
    g
}

/// Vertex net sampled from an affine image `x ↦ A x + t` of the lattice.
pub fn affine_vertex_net(block: &Block, a: &DMatrix<f64>, t: &DVector<f64>) -> VertexNet {
    let mut g = VertexNet::new(a.nrows());
    for v in block.vertices() {
        let x = DVector::from_iterator(v.dim(), v.0.iter().map(|&c| c as f64));
        let y = a * x + t;
        g.insert(v, ProjPoint::from_affine(y.as_slice()));
    }
    g
}

/// A principal binet on `[0,1]^3` whose vertex points are the corners of the
/// cube `center + [−half, half]^3` and whose face points sit on the face axes
/// at random heights. Every quad is a square, so the vertex net is circular.
pub fn random_circular_cube(rng: &mut ChaCha8Rng, center: &[f64; 3], half: f64) -> ConjugateBinet {
    let mut b = ConjugateBinet::new(3);
    let block = Block::cube(3, 1);
    let at = |v: &VertexId| -> Vec<f64> { (0..3).map(|a| center[a] + half * (2 * v.0[a] - 1) as f64).collect() };
    for v in block.vertices() {
        b.vertices.insert(v.clone(), ProjPoint::from_affine(&at(&v)));
    }
    for f in block.faces() {
        let mut x = vec![0.0; 3];
        for v in f.vertices() {
            for (a, c) in at(&v).iter().enumerate() {
                x[a] += c / 4.0;
            }
        }
        let (i, j) = f.dirs;
        let k = 6 - i - j;
        x[k - 1] += rng.gen_range(-0.5..0.5) * half;
        b.faces.insert(f, ProjPoint::from_affine(&x));
    }
    b
}

/// A random dOCS on the block (lattice dimension at least 3) in R^3: a
/// random conjugate net of spheres, completed by the poles of its cube
/// spans and projected.
pub fn random_docs(rng: &mut ChaCha8Rng, block: &Block, tol: &ToleranceConfig) -> Result<Docs, GeomError> {
    let nl = block.dim();
    let ideal = move |u: &VertexId| -> DVector<f64> {
        let mut c = DVector::zeros(3);
        for k in 1..=nl {
            c += direction(k, 3) * (u.0[k - 1] as f64);
        }
        let mut y = DVector::zeros(4);
        y.rows_mut(0, 3).copy_from(&c);
        y[3] = c.norm_squared() - 0.1;
        y
    };
    let g = random_qnet(rng, block, &ideal, Chart::Sphere, 0.05, tol)?;
    docs_lift_from_vertices(g, 3, tol)?.project(tol)
}

/// A random generic conjugate vertex net in R^3 on the block, close to the
/// lattice spanned by fixed generic directions.
pub fn random_conjugate_net(rng: &mut ChaCha8Rng, block: &Block, tol: &ToleranceConfig) -> Result<VertexNet, GeomError> {
    let nl = block.dim();
    let ideal = move |u: &VertexId| -> DVector<f64> {
        let mut c = DVector::zeros(3);
        for k in 1..=nl {
            c += direction(k, 3) * (u.0[k - 1] as f64);
        }
        c
    };
    random_qnet(rng, block, &ideal, Chart::Standard, 0.05, tol)
}

/// The integer grid on the block with the centers of the 12-faces,
/// extended to a face net. The other face points are focal points of a
/// translation net and lie at infinity.
pub fn cartesian_binet(block: &Block, tol: &ToleranceConfig) -> Result<ConjugateBinet, GeomError> {
    let n = block.dim();
    let g = affine_vertex_net(block, &DMatrix::identity(n, n), &DVector::zeros(n));
    let mut h12 = VertexNet::new(n);
    for f in block.faces().into_iter().filter(|f| f.dirs == (1, 2)) {
        let mut x: Vec<f64> = f.base.iter().map(|&c| c as f64).collect();
        x[0] += 0.5;
        x[1] += 0.5;
        h12.insert(VertexId(f.base.clone()), ProjPoint::from_affine(&x));
    }
    let faces = extend_face_net(&h12, 1, 2, tol)?;
    Ok(ConjugateBinet { vertices: g, faces })
}
