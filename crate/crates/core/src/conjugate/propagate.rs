use log::debug;

use crate::error::GeomError;
use crate::lattice::{Block, Cell, CubeId, FaceId, VertexId};
use crate::projective::{join_points, meet_point, ProjPoint, ProjSubspace, ToleranceConfig};

use super::{plane_at, FaceNet, PlaneField, VertexNet};

/// Result of a propagation run.
///
/// Cells that are reached by more than one cube (or that were already in
/// the input) are recomputed and the disagreement is recorded, which is how
/// path independence on hypercubes is measured.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagation<T> {
    pub net: T,
    pub discrepancies: Vec<(Cell, f64)>,
    /// Worst rank margin among the meets performed (see `RankAudit`).
    pub worst_margin: f64,
}

impl<T> Propagation<T> {
    pub fn max_discrepancy(&self) -> f64 {
        self.discrepancies.iter().map(|(_, d)| *d).fold(0.0, f64::max)
    }
}

fn corner(c: &CubeId, steps: &[usize]) -> VertexId {
    VertexId(c.base.clone()).plus(steps)
}

/// The eighth vertex of a cube from its seven lower vertices: the meet of
/// the three planes through `x_i, x_ij, x_ik`.
pub fn complete_vertex_cube(g: &VertexNet, c: &CubeId, tol: &ToleranceConfig) -> Result<(ProjPoint, f64), GeomError> {
    let [i, j, k] = c.dir_list();
    let mut planes = Vec::with_capacity(3);
    for (a, b, d) in [(i, j, k), (j, i, k), (k, i, j)] {
        let pts: Option<Vec<&ProjPoint>> =
            [corner(c, &[a]), corner(c, &[a, b]), corner(c, &[a, d])].iter().map(|v| g.get(v)).collect();
        let pts = pts.ok_or_else(|| GeomError::MissingCell(Cell::Cube(c.clone())))?;
        let s = join_points(&pts, tol.tol_rank)?;
        if s.dim() != 2 {
            return Err(GeomError::DegenerateCube { cell: Cell::Cube(c.clone()), dim: s.dim() });
        }
        planes.push(s);
    }
    meet_point(&[&planes[0], &planes[1], &planes[2]], tol.tol_rank)
        .map_err(|dim| GeomError::DegenerateCube { cell: Cell::Cube(c.clone()), dim })
}

/// Complete every cube of the block whose lower vertices are known.
pub fn propagate_vertex_net(
    initial: &VertexNet,
    block: &Block,
    tol: &ToleranceConfig,
) -> Result<Propagation<VertexNet>, GeomError> {
    let mut net = initial.clone();
    let mut out = Vec::new();
    let mut worst: f64 = 0.0;
    for c in block.cubes() {
        let lower_known = c.vertices()[..7].iter().all(|v| net.contains(v));
        if !lower_known {
            continue;
        }
        let (p, margin) = complete_vertex_cube(&net, &c, tol)?;
        worst = worst.max(margin);
        let top = c.top_vertex();
        match net.get(&top) {
            Some(q) => out.push((Cell::Cube(c.clone()), q.distance(&p))),
            None => net.insert(top, p),
        }
    }
    if let Some(v) = block.vertices().into_iter().find(|v| !net.contains(v)) {
        return Err(GeomError::MissingCell(Cell::Vertex(v)));
    }
    debug!("vertex propagation: {} points, worst margin {worst:.2e}", net.len());
    Ok(Propagation { net, discrepancies: out, worst_margin: worst })
}

/// The three upper faces and the top plane of a cube of a face net.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceCubeCompletion {
    pub faces: Vec<(FaceId, ProjPoint)>,
    pub top: VertexId,
    pub plane: ProjSubspace,
    pub margin: f64,
}

/// Upper faces are meets of the planes at their three lower vertices; the
/// top plane is spanned by the three new face points.
pub fn complete_face_cube(
    h: &FaceNet,
    planes: &PlaneField,
    c: &CubeId,
    tol: &ToleranceConfig,
) -> Result<FaceCubeCompletion, GeomError> {
    let [i, j, k] = c.dir_list();
    let mut faces = Vec::with_capacity(3);
    let mut margin: f64 = 0.0;
    for (a, b, d) in [(i, j, k), (i, k, j), (j, k, i)] {
        let vs = [corner(c, &[d]), corner(c, &[a, d]), corner(c, &[b, d])];
        let mut ps = Vec::with_capacity(3);
        for v in &vs {
            let p = plane_at(h, planes, v, tol.tol_rank).ok_or_else(|| GeomError::MissingCell(Cell::Vertex(v.clone())))?;
            ps.push(p);
        }
        let f = FaceId::new(corner(c, &[d]).0, a, b);
        let (p, m) = meet_point(&[&ps[0], &ps[1], &ps[2]], tol.tol_rank)
            .map_err(|dim| GeomError::DegenerateCube { cell: Cell::Face(f.clone()), dim })?;
        margin = margin.max(m);
        faces.push((f, p));
    }
    let pts: Vec<&ProjPoint> = faces.iter().map(|(_, p)| p).collect();
    let plane = join_points(&pts, tol.tol_rank)?;
    if plane.dim() != 2 {
        return Err(GeomError::DegenerateCube { cell: Cell::Cube(c.clone()), dim: plane.dim() });
    }
    Ok(FaceCubeCompletion { faces, top: c.top_vertex(), plane, margin })
}

fn face_cube_ready(h: &FaceNet, planes: &PlaneField, c: &CubeId, tol: &ToleranceConfig) -> bool {
    let [i, j, k] = c.dir_list();
    [corner(c, &[i]), corner(c, &[j]), corner(c, &[k]), corner(c, &[i, j]), corner(c, &[i, k]), corner(c, &[j, k])]
        .iter()
        .all(|v| planes.get(v).is_some() || plane_at(h, planes, v, tol.tol_rank).is_some())
}

/// Propagate a face net from face points and planes on the coordinate
/// planes of the block.
pub fn propagate_face_net(
    faces: &FaceNet,
    planes: &PlaneField,
    block: &Block,
    tol: &ToleranceConfig,
) -> Result<Propagation<(FaceNet, PlaneField)>, GeomError> {
    let mut h = faces.clone();
    let mut pf = planes.clone();
    let mut out = Vec::new();
    let mut worst: f64 = 0.0;
    for c in block.cubes() {
        if !face_cube_ready(&h, &pf, &c, tol) {
            continue;
        }
        let done = complete_face_cube(&h, &pf, &c, tol)?;
        worst = worst.max(done.margin);
        for (f, p) in done.faces {
            match h.get(&f) {
                Some(q) => out.push((Cell::Face(f.clone()), q.distance(&p))),
                None => h.insert(f, p),
            }
        }
        match pf.get(&done.top) {
            Some(q) => {
                let d = q.containment_residual(&done.plane).max(done.plane.containment_residual(q));
                out.push((Cell::Vertex(done.top.clone()), d));
            }
            None => pf.insert(done.top, done.plane),
        }
    }
    if let Some(f) = block.faces().into_iter().find(|f| !h.contains(f)) {
        return Err(GeomError::MissingCell(Cell::Face(f)));
    }
    debug!("face propagation: {} points, worst margin {worst:.2e}", h.len());
    Ok(Propagation { net: (h, pf), discrepancies: out, worst_margin: worst })
}
