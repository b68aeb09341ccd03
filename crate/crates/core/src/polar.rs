//! Conjugate binets whose incident vertex and face points are polar with
//! respect to a quadric, and their cube-by-cube completion.

use log::debug;

use crate::conjugate::{
    complete_face_cube, complete_vertex_cube, face_plane, ConjugateBinet, PlaneField, Propagation,
};
use crate::error::GeomError;
use crate::lattice::{Block, Cell, CubeId, FaceId, VertexId};
use crate::projective::{polar, polar_point, ProjPoint, ProjSubspace, Quadric, ToleranceConfig};
use crate::report::CheckReport;

/// A conjugate binet together with its vertex planes □b(v) and the quadric.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarBinet {
    pub binet: ConjugateBinet,
    pub planes: PlaneField,
    pub quadric: Quadric,
}

/// Largest normalized pairing `|b(v)ᵀQb(f)|` over all incident pairs.
pub fn check_polarity(b: &ConjugateBinet, q: &Quadric, tol: &ToleranceConfig) -> CheckReport {
    let mut rep = CheckReport::new("polarity");
    for (f, pf) in b.faces.iter() {
        let worst = f
            .vertices()
            .iter()
            .filter_map(|v| b.vertices.get(v))
            .map(|pv| q.normalized_pairing(pv, pf))
            .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
        if let Some(w) = worst {
            rep.push("pairing", Some(Cell::Face(f.clone())), w, tol.tol_orth);
        }
    }
    if rep.is_empty() {
        rep.warn("no incident vertex and face pair in the domain");
    }
    rep
}

/// Containments □b(d) ⊆ b(d)^⊥ for vertices with a plane and for faces with
/// at least three vertex points.
pub fn check_polar_inclusions(pb: &PolarBinet, tol: &ToleranceConfig) -> Result<CheckReport, GeomError> {
    let mut rep = CheckReport::new("polar inclusions");
    for (v, plane) in &pb.planes.planes {
        if let Some(p) = pb.binet.vertices.get(v) {
            let pol = polar_point(p, &pb.quadric, tol.tol_rank)?;
            rep.push("vertex plane in polar", Some(Cell::Vertex(v.clone())), pol.containment_residual(plane), tol.tol_incidence);
        }
    }
    for (f, p) in pb.binet.faces.iter() {
        let Ok(plane) = face_plane(&pb.binet.vertices, f, tol.tol_rank) else { continue };
        let pol = polar_point(p, &pb.quadric, tol.tol_rank)?;
        rep.push("face plane in polar", Some(Cell::Face(f.clone())), pol.containment_residual(&plane), tol.tol_incidence);
    }
    Ok(rep)
}

/// New cells of one completed cube.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarCubeCompletion {
    pub cube: CubeId,
    pub faces: Vec<(FaceId, ProjPoint)>,
    pub vertex: (VertexId, ProjPoint),
    pub plane: ProjSubspace,
    /// Largest normalized pairing over the incidences involving new cells.
    pub max_pairing: f64,
    pub margin: f64,
}

/// Complete a cube from its seven lower vertices, three lower faces and the
/// planes at its six middle vertices.
///
/// The upper face points are meets of vertex planes, the top vertex is the
/// meet of the three upper face planes and the top plane is spanned by the
/// new face points. Polarity of the new incidences is then a consequence,
/// and is measured rather than imposed.
pub fn propagate_polar_cube(pb: &PolarBinet, c: &CubeId, tol: &ToleranceConfig) -> Result<PolarCubeCompletion, GeomError> {
    let fc = complete_face_cube(&pb.binet.faces, &pb.planes, c, tol)?;
    let (v, vm) = complete_vertex_cube(&pb.binet.vertices, c, tol)?;
    let top = c.top_vertex();
    let q = &pb.quadric;
    let mut max_pairing: f64 = 0.0;
    for (f, pf) in &fc.faces {
        for w in f.vertices() {
            let pw = if w == top { Some(&v) } else { pb.binet.vertices.get(&w) };
            if let Some(pw) = pw {
                max_pairing = max_pairing.max(q.normalized_pairing(pw, pf));
            }
        }
    }
    Ok(PolarCubeCompletion {
        cube: c.clone(),
        faces: fc.faces,
        vertex: (top, v),
        plane: fc.plane,
        max_pairing,
        margin: fc.margin.max(vm),
    })
}

/// Complete every cube of the block in wavefront order. Recomputed cells
/// are compared with their existing values.
pub fn propagate_polar_binet(
    initial: &PolarBinet,
    block: &Block,
    tol: &ToleranceConfig,
) -> Result<Propagation<PolarBinet>, GeomError> {
    let mut pb = initial.clone();
    let mut out = Vec::new();
    let mut worst: f64 = 0.0;
    for c in block.cubes() {
        let verts = c.vertices();
        if !verts[..7].iter().all(|v| pb.binet.vertices.contains(v)) {
            continue;
        }
        let done = propagate_polar_cube(&pb, &c, tol)?;
        worst = worst.max(done.margin);
        for (f, p) in done.faces {
            match pb.binet.faces.get(&f) {
                Some(q) => out.push((Cell::Face(f.clone()), q.distance(&p))),
                None => pb.binet.faces.insert(f, p),
            }
        }
        let (v, p) = done.vertex;
        match pb.binet.vertices.get(&v) {
            Some(q) => out.push((Cell::Vertex(v.clone()), q.distance(&p))),
            None => pb.binet.vertices.insert(v.clone(), p),
        }
        match pb.planes.get(&v) {
            Some(q) => {
                let d = q.containment_residual(&done.plane).max(done.plane.containment_residual(q));
                out.push((Cell::Cube(c.clone()), d));
            }
            None => pb.planes.insert(v, done.plane),
        }
    }
    if let Some(v) = block.vertices().into_iter().find(|v| !pb.binet.vertices.contains(v)) {
        return Err(GeomError::MissingCell(Cell::Vertex(v)));
    }
    if let Some(f) = block.faces().into_iter().find(|f| !pb.binet.faces.contains(f)) {
        return Err(GeomError::MissingCell(Cell::Face(f)));
    }
    debug!("polar propagation: worst margin {worst:.2e}");
    Ok(Propagation { net: pb, discrepancies: out, worst_margin: worst })
}

/// The plane of a vertex of a polar binet that is determined by the vertex
/// point alone: the polar of the line through `p` and a second point.
pub fn vertex_plane_from_pair(p: &ProjPoint, second: &ProjPoint, q: &Quadric, tol: &ToleranceConfig) -> Result<ProjSubspace, GeomError> {
    let line = crate::projective::join_points(&[p, second], tol.tol_rank)?;
    polar(&line, q, tol.tol_rank)
}
