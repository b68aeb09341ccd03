//! Principal binets in R^n, their Möbius lifts to RP^{n+1}, and the circles
//! and spheres a lift attaches to faces and cubes.
//!
//! A point of RP^{n+1} off the tangent hyperplane at the projection center
//! `B` encodes the sphere of R^n with the projected point as center. Two such
//! spheres are orthogonal exactly when their lift points are polar, which
//! turns every lift question into arithmetic on squared radii.

use std::collections::{BTreeMap, VecDeque};

use log::debug;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::conjugate::{extend_face_net, plane_field, ConjugateBinet, PlaneField, VertexNet};
use crate::error::GeomError;
use crate::lattice::{faces_of_edge, faces_of_vertex, Block, Cell, CubeId, EdgeId, FaceId, VertexId};
use crate::polar::{propagate_polar_binet, PolarBinet};
use crate::projective::{
    fit_subspace, join, join_points_audited, meet, polar, polar_point, singular_ratio, CentralProjection, ProjPoint, ProjSubspace, Quadric,
    ToleranceConfig,
};
use crate::report::CheckReport;

/// A sphere of R^n by center and signed squared radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereRep {
    pub center: Vec<f64>,
    pub sq_radius: f64,
}

impl SphereRep {
    pub fn new(center: &[f64], sq_radius: f64) -> Self {
        Self { center: center.to_vec(), sq_radius }
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// `((ρ+1)/2, c, (ρ−1)/2)` with `ρ = |c|² − r²`.
    pub fn lift_vec(&self) -> DVector<f64> {
        let n = self.dim();
        let rho = self.center.iter().map(|x| x * x).sum::<f64>() - self.sq_radius;
        let mut v = DVector::zeros(n + 2);
        v[0] = (rho + 1.0) / 2.0;
        for (a, x) in self.center.iter().enumerate() {
            v[a + 1] = *x;
        }
        v[n + 1] = (rho - 1.0) / 2.0;
        v
    }

    pub fn to_lift(&self) -> Result<ProjPoint, GeomError> {
        ProjPoint::new(self.lift_vec())
    }

    /// Inverse of [`SphereRep::to_lift`]. Points on the tangent hyperplane at
    /// the projection center have no finite center.
    pub fn from_lift(p: &ProjPoint, tol_point: f64) -> Result<Self, GeomError> {
        let h = p.hom();
        let m = h.len();
        let den = h[0] - h[m - 1];
        if den.abs() <= tol_point {
            return Err(GeomError::InfinitePoint(None));
        }
        let center: Vec<f64> = (1..m - 1).map(|a| h[a] / den).collect();
        let q = -h[0] * h[0] + h.rows(1, m - 1).norm_squared();
        Ok(Self { center, sq_radius: q / (den * den) })
    }

    /// `|c − c′|² − r² − r′²`, zero for orthogonal spheres.
    pub fn orthogonality(&self, other: &SphereRep) -> f64 {
        let d2: f64 = self.center.iter().zip(&other.center).map(|(a, b)| (a - b) * (a - b)).sum();
        d2 - self.sq_radius - other.sq_radius
    }

    /// The sphere centered at `center` orthogonal to `self`.
    pub fn orthogonal_at(&self, center: &[f64]) -> SphereRep {
        let d2: f64 = self.center.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
        SphereRep::new(center, d2 - self.sq_radius)
    }
}

pub(crate) fn affine_of(p: &ProjPoint, c: Cell, tol: &ToleranceConfig) -> Result<DVector<f64>, GeomError> {
    p.affine(tol.tol_point).ok_or(GeomError::InfinitePoint(Some(c)))
}

fn edges_of(b: &ConjugateBinet) -> Vec<EdgeId> {
    let mut out = Vec::new();
    for v in b.vertices.keys() {
        for k in 1..=v.dim() {
            if b.vertices.contains(&v.step(k)) {
                out.push(EdgeId::new(v.0.clone(), k));
            }
        }
    }
    out
}

/// Cross orthogonality of a binet in R^n.
///
/// For every edge, the line of the two vertex points is compared with the
/// line of every pair of face points through the edge. The face points of
/// one edge must also be collinear (they lie on the meet of the two vertex
/// planes), which is reported separately.
pub fn check_principal(b: &ConjugateBinet, tol: &ToleranceConfig) -> Result<CheckReport, GeomError> {
    let mut rep = CheckReport::new("principal");
    let mut degenerate = 0;
    for e in edges_of(b) {
        let (v, w) = e.endpoints();
        let xv = affine_of(&b.vertices.values[&v], Cell::Vertex(v.clone()), tol)?;
        let xw = affine_of(&b.vertices.values[&w], Cell::Vertex(w.clone()), tol)?;
        let d1 = &xw - &xv;
        let faces: Vec<(FaceId, &ProjPoint)> =
            faces_of_edge(&e).into_iter().filter_map(|f| b.faces.get(&f).map(|p| (f, p))).collect();
        let mut pts = Vec::with_capacity(faces.len());
        for (f, p) in &faces {
            pts.push(affine_of(p, Cell::Face(f.clone()), tol)?);
        }
        let cell = Some(Cell::Edge(e.clone()));
        let mut worst: Option<f64> = None;
        for a in 0..pts.len() {
            for c in a + 1..pts.len() {
                let d2 = &pts[c] - &pts[a];
                let den = d1.norm() * d2.norm();
                if den <= tol.tol_point * tol.tol_point {
                    degenerate += 1;
                    continue;
                }
                let cos = d1.dot(&d2).abs() / den;
                worst = Some(worst.map_or(cos, |w| w.max(cos)));
            }
        }
        if let Some(w) = worst {
            rep.push("cross orthogonality", cell.clone(), w, tol.tol_orth);
        }
        if faces.len() >= 3 {
            let rows: Vec<DVector<f64>> = faces.iter().map(|(_, p)| p.hom().clone()).collect();
            rep.push("edge face points collinear", cell, singular_ratio(&rows, 2), tol.tol_incidence);
        }
    }
    if degenerate > 0 {
        rep.warn(format!("{degenerate} crosses with coincident points skipped"));
    }
    if rep.is_empty() {
        rep.warn("no cross in the domain");
    }
    Ok(rep)
}

/// Project every point of a binet in RP^{n+1} to R^n. Fails if any point
/// lands at infinity.
pub fn project_binet(b: &ConjugateBinet, cp: &CentralProjection, tol: &ToleranceConfig) -> Result<ConjugateBinet, GeomError> {
    let n = cp.ambient() - 1;
    let mut out = ConjugateBinet::new(n);
    for (v, p) in b.vertices.iter() {
        let x = cp.project(p, tol.tol_point).map_err(|e| with_cell(e, Cell::Vertex(v.clone())))?;
        out.vertices.insert(v.clone(), ProjPoint::from_affine(x.as_slice()));
    }
    for (f, p) in b.faces.iter() {
        let x = cp.project(p, tol.tol_point).map_err(|e| with_cell(e, Cell::Face(f.clone())))?;
        out.faces.insert(f.clone(), ProjPoint::from_affine(x.as_slice()));
    }
    Ok(out)
}

fn with_cell(e: GeomError, c: Cell) -> GeomError {
    match e {
        GeomError::InfinitePoint(None) => GeomError::InfinitePoint(Some(c)),
        e => e,
    }
}

/// A polar binet for the Möbius quadric projecting onto a principal binet.
#[derive(Debug, Clone, PartialEq)]
pub struct MoebiusLift {
    pub lift: PolarBinet,
    pub projection: CentralProjection,
    /// Squared radius of the sphere at the anchor.
    pub family_parameter: f64,
    pub anchor: VertexId,
    /// Worst disagreement of a lift point re-derived along a second path.
    pub closure: f64,
}

impl MoebiusLift {
    /// Euclidean dimension n of the projected binet.
    pub fn n(&self) -> usize {
        self.projection.ambient() - 1
    }

    pub fn sphere(&self, c: &Cell, tol: &ToleranceConfig) -> Result<SphereRep, GeomError> {
        let p = self.lift.binet.point(c).ok_or_else(|| GeomError::MissingCell(c.clone()))?;
        SphereRep::from_lift(p, tol.tol_point).map_err(|e| with_cell(e, c.clone()))
    }

    pub fn project(&self, tol: &ToleranceConfig) -> Result<ConjugateBinet, GeomError> {
        project_binet(&self.lift.binet, &self.projection, tol)
    }
}

/// Lift a principal binet, starting from the sphere with squared radius
/// `r0_sq` centered at the anchor vertex.
///
/// Cells are visited breadth first over vertex–face incidences. Each new
/// cell gets the sphere centered at its point that is orthogonal to the
/// sphere it was reached from; on the lift this is the meet of the fiber
/// line with the polar hyperplane. Every other incidence re-derives the
/// lift point, and the worst disagreement must stay below `tol_point`.
pub fn moebius_lift(p: &ConjugateBinet, r0_sq: f64, anchor: &VertexId, tol: &ToleranceConfig) -> Result<MoebiusLift, GeomError> {
    let n = p.ambient();
    let mut centers: BTreeMap<Cell, Vec<f64>> = BTreeMap::new();
    for (v, q) in p.vertices.iter() {
        centers.insert(Cell::Vertex(v.clone()), affine_of(q, Cell::Vertex(v.clone()), tol)?.as_slice().to_vec());
    }
    for (f, q) in p.faces.iter() {
        centers.insert(Cell::Face(f.clone()), affine_of(q, Cell::Face(f.clone()), tol)?.as_slice().to_vec());
    }
    let start = Cell::Vertex(anchor.clone());
    let Some(c0) = centers.get(&start) else { return Err(GeomError::MissingCell(start)) };
    let mut spheres: BTreeMap<Cell, SphereRep> = BTreeMap::new();
    let mut lifts: BTreeMap<Cell, ProjPoint> = BTreeMap::new();
    let s0 = SphereRep::new(c0, r0_sq);
    lifts.insert(start.clone(), s0.to_lift()?);
    spheres.insert(start.clone(), s0);
    let mut queue = VecDeque::from([start]);
    let mut closure: f64 = 0.0;
    let mut worst_cell = None;
    while let Some(c) = queue.pop_front() {
        let neighbors: Vec<Cell> = match &c {
            Cell::Vertex(v) => faces_of_vertex(v).into_iter().map(Cell::Face).collect(),
            Cell::Face(f) => f.vertices().into_iter().map(Cell::Vertex).collect(),
            _ => Vec::new(),
        };
        let here = spheres[&c].clone();
        for w in neighbors {
            let Some(cw) = centers.get(&w) else { continue };
            let s = here.orthogonal_at(cw);
            let lp = s.to_lift()?;
            match lifts.get(&w) {
                Some(existing) => {
                    let d = existing.distance(&lp);
                    if d > closure {
                        closure = d;
                        worst_cell = Some(w.clone());
                    }
                }
                None => {
                    lifts.insert(w.clone(), lp);
                    spheres.insert(w.clone(), s);
                    queue.push_back(w);
                }
            }
        }
    }
    if let Some(c) = centers.keys().find(|c| !lifts.contains_key(*c)) {
        return Err(GeomError::MissingCell(c.clone()));
    }
    if closure > tol.tol_point {
        return Err(GeomError::ClosureFailure { cell: worst_cell.expect("worst cell recorded"), residual: closure });
    }
    let mut binet = ConjugateBinet::new(n + 1);
    for (c, lp) in lifts {
        match c {
            Cell::Vertex(v) => binet.vertices.insert(v, lp),
            Cell::Face(f) => binet.faces.insert(f, lp),
            _ => unreachable!("only vertices and faces are lifted"),
        }
    }
    let planes = plane_field(&binet.faces, tol.tol_rank);
    debug!("lift of {} cells, closure {closure:.2e}", centers.len());
    Ok(MoebiusLift {
        lift: PolarBinet { binet, planes, quadric: Quadric::moebius(n) },
        projection: CentralProjection::moebius(n),
        family_parameter: r0_sq,
        anchor: anchor.clone(),
        closure,
    })
}

/// Result of [`build_principal`].
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalBuild {
    pub binet: ConjugateBinet,
    pub lift: MoebiusLift,
    /// Disagreement of cells reached by more than one cube.
    pub max_discrepancy: f64,
}

/// The plane of a lift at a vertex with lift point `p` whose projection is
/// the plane `plane` of R^n: `p^⊥ ∩ (plane ∨ B)`.
pub fn lift_plane(
    p: &ProjPoint,
    plane: &ProjSubspace,
    cp: &CentralProjection,
    q: &Quadric,
    cell: &VertexId,
    tol: &ToleranceConfig,
) -> Result<ProjSubspace, GeomError> {
    let cone = join(&[&cp.embed_subspace(plane), &ProjSubspace::from(cp.center())], tol.tol_rank)?;
    let s = meet(&polar_point(p, q, tol.tol_rank)?, &cone, tol.tol_rank)?;
    if s.dim() != 2 {
        return Err(GeomError::NonGenericMeet { cell: Cell::Vertex(cell.clone()), dim: s.dim() });
    }
    Ok(s)
}

/// Extend principal data on the coordinate planes of a block to the whole
/// block: lift, complete cubes of the lift, project.
///
/// `planes` gives vertex planes in R^n where the incident face points of
/// the initial data do not span one (on the far boundary of the block a
/// vertex has only two). Given planes take precedence over fitted ones.
pub fn build_principal(
    initial: &ConjugateBinet,
    planes: &PlaneField,
    block: &Block,
    r0_sq: f64,
    tol: &ToleranceConfig,
) -> Result<PrincipalBuild, GeomError> {
    let anchor = VertexId(block.origin.clone());
    let mut lift = moebius_lift(initial, r0_sq, &anchor, tol)?;
    for (v, plane) in &planes.planes {
        let Some(p) = lift.lift.binet.vertices.get(v) else { continue };
        let lp = lift_plane(p, plane, &lift.projection, &lift.lift.quadric, v, tol)?;
        lift.lift.planes.insert(v.clone(), lp);
    }
    let prop = propagate_polar_binet(&lift.lift, block, tol)?;
    let max_discrepancy = prop.max_discrepancy();
    lift.lift = prop.net;
    let binet = lift.project(tol)?;
    Ok(PrincipalBuild { binet, lift, max_discrepancy })
}

/// Vertex planes of a lift read in R^n.
pub fn project_planes(planes: &PlaneField, cp: &CentralProjection, tol: &ToleranceConfig) -> PlaneField {
    let mut out = PlaneField::new(cp.ambient() - 1);
    for (v, s) in &planes.planes {
        out.insert(v.clone(), cp.project_subspace(s, tol.tol_rank));
    }
    out
}

/// Verdicts of the two extensions of a pair of conjugate vertex nets.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryCheck {
    /// `(g, ⌈h⌉)` on the original lattice.
    pub first: CheckReport,
    /// `(⌈g⌉, h)` on the lattice whose vertices are the ij-faces.
    pub second: CheckReport,
    pub report: CheckReport,
}

impl SymmetryCheck {
    pub fn agree(&self) -> bool {
        self.first.pass() == self.second.pass()
    }
}

/// The two binets obtained by extending `h` (keyed by the base vertices of
/// the ij-faces) to a face net, or `g` to a face net of the second lattice.
///
/// In the second lattice the vertex `r` is the ij-face with base `r`, and
/// the ij-face with base `r` is the vertex `r + e_i + e_j`.
pub fn symmetric_extensions(
    g: &VertexNet,
    h: &VertexNet,
    i: usize,
    j: usize,
    tol: &ToleranceConfig,
) -> Result<(ConjugateBinet, ConjugateBinet), GeomError> {
    let (i, j) = (i.min(j), i.max(j));
    let first = ConjugateBinet { vertices: g.clone(), faces: extend_face_net(h, i, j, tol)? };
    let mut shifted = VertexNet::new(g.ambient);
    for (v, p) in g.iter() {
        shifted.insert(v.back(i).back(j), p.clone());
    }
    let second = ConjugateBinet { vertices: h.clone(), faces: extend_face_net(&shifted, i, j, tol)? };
    Ok((first, second))
}

/// Principal verdicts of both extensions, which must agree.
pub fn symmetric_extension_check(
    g: &VertexNet,
    h: &VertexNet,
    i: usize,
    j: usize,
    tol: &ToleranceConfig,
) -> Result<SymmetryCheck, GeomError> {
    let (b1, b2) = symmetric_extensions(g, h, i, j, tol)?;
    let first = check_principal(&b1, tol)?;
    let second = check_principal(&b2, tol)?;
    let mut report = CheckReport::new("symmetric extension");
    for (name, r) in [("first extension", &first), ("second extension", &second)] {
        let worst = r.worst().map(|w| (w.cell.clone(), w.residual)).unwrap_or((None, 0.0));
        report.push_verdict(name, worst.0, worst.1, r.pass());
    }
    let agree = first.pass() == second.pass();
    report.push_verdict("verdicts agree", None, if agree { 0.0 } else { 1.0 }, agree);
    Ok(SymmetryCheck { first, second, report })
}

/// The circle of a face and its axis: the line through the face point
/// orthogonal to the plane of the four vertex points.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleAxis {
    pub face: FaceId,
    pub circle_plane: ProjSubspace,
    pub point: DVector<f64>,
    pub direction: DVector<f64>,
}

impl CircleAxis {
    pub fn distance(&self, x: &DVector<f64>) -> f64 {
        let d = x - &self.point;
        (&d - &self.direction * self.direction.dot(&d)).norm()
    }
}

pub(crate) fn require_space(n: usize) -> Result<(), GeomError> {
    if n != 3 {
        return Err(GeomError::AmbientMismatch(n, 3));
    }
    Ok(())
}

/// Axis of the face `f` of a binet in R^3 from its projected points.
pub fn face_axis(b: &ConjugateBinet, f: &FaceId, tol: &ToleranceConfig) -> Result<(DVector<f64>, DVector<f64>), GeomError> {
    require_space(b.ambient())?;
    let fp = b.faces.get(f).ok_or_else(|| GeomError::MissingCell(Cell::Face(f.clone())))?;
    let point = affine_of(fp, Cell::Face(f.clone()), tol)?;
    let pts: Option<Vec<&ProjPoint>> = f.vertices().iter().map(|v| b.vertices.get(v)).collect();
    let pts = pts.ok_or_else(|| GeomError::MissingCell(Cell::Face(f.clone())))?;
    let (span, _) = join_points_audited(&pts, tol.tol_rank)?;
    if span.dim() < 2 {
        return Err(GeomError::NonGenericMeet { cell: Cell::Face(f.clone()), dim: span.dim() });
    }
    let form = fit_subspace(&pts, 2).dual_basis(tol.tol_rank);
    let normal = form.column(0).rows(1, 3).into_owned();
    let nn = normal.norm();
    if nn <= tol.tol_point {
        // the plane of the quad is the plane at infinity
        return Err(GeomError::InfinitePoint(Some(Cell::Face(f.clone()))));
    }
    Ok((point, normal / nn))
}

/// Circle plane and axis of a face of a lift of a binet in R^3.
pub fn face_circle_axis(lift: &MoebiusLift, f: &FaceId, tol: &ToleranceConfig) -> Result<CircleAxis, GeomError> {
    require_space(lift.n())?;
    let g = &lift.lift.binet.vertices;
    let pts: Option<Vec<&ProjPoint>> = f.vertices().iter().map(|v| g.get(v)).collect();
    let pts = pts.ok_or_else(|| GeomError::MissingCell(Cell::Face(f.clone())))?;
    let circle_plane = fit_subspace(&pts, 2);
    let mut proj = ConjugateBinet::new(3);
    for v in f.vertices() {
        let x = lift.projection.project(&g.values[&v], tol.tol_point).map_err(|e| with_cell(e, Cell::Vertex(v.clone())))?;
        proj.vertices.insert(v, ProjPoint::from_affine(x.as_slice()));
    }
    let fp = lift.lift.binet.faces.get(f).ok_or_else(|| GeomError::MissingCell(Cell::Face(f.clone())))?;
    let x = lift.projection.project(fp, tol.tol_point).map_err(|e| with_cell(e, Cell::Face(f.clone())))?;
    proj.faces.insert(f.clone(), ProjPoint::from_affine(x.as_slice()));
    let (point, direction) = face_axis(&proj, f, tol)?;
    Ok(CircleAxis { face: f.clone(), circle_plane, point, direction })
}

/// The sphere of a cube of a lift: the pole of the 3-space spanned by its
/// eight vertex lift points.
#[derive(Debug, Clone, PartialEq)]
pub struct CubeSphere {
    pub cube: CubeId,
    pub sphere: SphereRep,
    /// Largest distance of the center from the six face axes, relative to
    /// the cube diameter.
    pub axis_residual: f64,
    /// Largest `| |c − c_i|² − r² − r_i² |` over the eight vertex spheres.
    pub orthogonality: f64,
}

/// Largest distance between two vertex points of a cube.
pub fn cube_diameter(pts: &[DVector<f64>]) -> f64 {
    let mut d: f64 = 0.0;
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            d = d.max((&pts[a] - &pts[b]).norm());
        }
    }
    d
}

pub fn cube_sphere(lift: &MoebiusLift, c: &CubeId, tol: &ToleranceConfig) -> Result<CubeSphere, GeomError> {
    require_space(lift.n())?;
    let g = &lift.lift.binet.vertices;
    let pts: Option<Vec<&ProjPoint>> = c.vertices().iter().map(|v| g.get(v)).collect();
    let pts = pts.ok_or_else(|| GeomError::MissingCell(Cell::Cube(c.clone())))?;
    let (span, _) = join_points_audited(&pts, tol.tol_rank)?;
    if span.dim() != 3 {
        return Err(GeomError::DegenerateCube { cell: Cell::Cube(c.clone()), dim: span.dim() });
    }
    let pole = polar(&span, &lift.lift.quadric, tol.tol_rank)?;
    let pole = pole.as_point().ok_or(GeomError::DegenerateCube { cell: Cell::Cube(c.clone()), dim: pole.dim() })?;
    let sphere = SphereRep::from_lift(&pole, tol.tol_point).map_err(|e| with_cell(e, Cell::Cube(c.clone())))?;
    let center = DVector::from_column_slice(&sphere.center);
    let mut orthogonality: f64 = 0.0;
    let mut xs = Vec::with_capacity(8);
    for v in c.vertices() {
        let s = lift.sphere(&Cell::Vertex(v), tol)?;
        orthogonality = orthogonality.max(s.orthogonality(&sphere).abs());
        xs.push(DVector::from_column_slice(&s.center));
    }
    let mut worst: f64 = 0.0;
    for f in c.faces() {
        let axis = face_circle_axis(lift, &f, tol)?;
        worst = worst.max(axis.distance(&center));
    }
    Ok(CubeSphere { cube: c.clone(), axis_residual: worst / cube_diameter(&xs), sphere, orthogonality })
}

/// Six face axes of every complete cube of a binet in R^3 and the
/// least-squares point closest to them.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisMeet {
    pub point: DVector<f64>,
    /// Largest distance to one of the axes, relative to the cube diameter.
    pub residual: f64,
}

pub fn axes_meet(b: &ConjugateBinet, c: &CubeId, tol: &ToleranceConfig) -> Result<AxisMeet, GeomError> {
    let mut m = DMatrix::<f64>::zeros(3, 3);
    let mut rhs = DVector::<f64>::zeros(3);
    let mut axes = Vec::with_capacity(6);
    for f in c.faces() {
        let (p, d) = face_axis(b, &f, tol)?;
        let proj = DMatrix::identity(3, 3) - &d * d.transpose();
        rhs += &proj * &p;
        m += proj;
        axes.push((p, d));
    }
    let eig = m.clone().symmetric_eigen();
    let top = eig.eigenvalues.max();
    if eig.eigenvalues.min() <= tol.tol_rank * top {
        return Err(GeomError::DegenerateAxes(Cell::Cube(c.clone())));
    }
    let x = m.cholesky().ok_or(GeomError::DegenerateAxes(Cell::Cube(c.clone())))?.solve(&rhs);
    let mut worst: f64 = 0.0;
    for (p, d) in &axes {
        let r = &x - p;
        worst = worst.max((&r - d * d.dot(&r)).norm());
    }
    let xs: Vec<DVector<f64>> = c
        .vertices()
        .iter()
        .map(|v| {
            let q = b.vertices.get(v).ok_or_else(|| GeomError::MissingCell(Cell::Vertex(v.clone())))?;
            affine_of(q, Cell::Vertex(v.clone()), tol)
        })
        .collect::<Result<_, _>>()?;
    Ok(AxisMeet { point: x, residual: worst / cube_diameter(&xs) })
}

/// Restriction of a binet to the vertices and the faces of one layer.
pub fn vertex_and_layer(b: &ConjugateBinet, i: usize, j: usize) -> (VertexNet, VertexNet) {
    (b.vertices.clone(), crate::conjugate::restrict_face_net(&b.faces, i, j))
}
