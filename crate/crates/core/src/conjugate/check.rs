use std::collections::{BTreeMap, BTreeSet};

use crate::lattice::{faces_of_vertex, Block, Cell, VertexId};
use crate::projective::{join_points, meet_point, singular_ratio, ProjPoint, ProjSubspace, ToleranceConfig};
use crate::report::CheckReport;

use super::{incident_face_points, plane_at, FaceNet, PlaneField, VertexNet};

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| (a, b, c))))
}

/// Planarity and non-degeneracy of every complete face.
///
/// The planarity residual is σ₄/σ₁ of the four unit representatives; the
/// non-degeneracy margin is the smallest σ₃/σ₁ over the four triples.
pub fn check_vertex_net(g: &VertexNet, tol: &ToleranceConfig) -> CheckReport {
    let mut rep = CheckReport::new("conjugate vertex net");
    let mut faces = BTreeSet::new();
    for v in g.keys() {
        faces.extend(faces_of_vertex(v));
    }
    let mut incomplete = 0;
    for f in &faces {
        let pts: Vec<&ProjPoint> = f.vertices().iter().filter_map(|v| g.get(v)).collect();
        if pts.len() < 4 {
            if pts.len() == 3 {
                incomplete += 1;
            }
            continue;
        }
        let rows: Vec<_> = pts.iter().map(|p| p.hom().clone()).collect();
        let cell = Some(Cell::Face(f.clone()));
        rep.push("planarity", cell.clone(), singular_ratio(&rows, 3), tol.tol_incidence);
        let margin = triples(4)
            .map(|(a, b, c)| singular_ratio(&[rows[a].clone(), rows[b].clone(), rows[c].clone()], 2))
            .fold(f64::INFINITY, f64::min);
        rep.push_verdict("nondegeneracy margin", cell, margin, margin > tol.tol_incidence);
    }
    if incomplete > 0 {
        rep.warn(format!("{incomplete} incomplete faces skipped"));
    }
    if rep.is_empty() {
        rep.warn("no complete face in the domain");
    }
    rep
}

/// Coplanarity of the face points around each vertex, non-degeneracy of
/// their span and of each triple within one direction layer, and for each
/// face the requirement that the planes of any three of its vertices meet
/// exactly in the face point.
pub fn check_face_net(h: &FaceNet, tol: &ToleranceConfig) -> CheckReport {
    let mut rep = CheckReport::new("conjugate face net");
    let mut verts = BTreeSet::new();
    for f in h.keys() {
        verts.extend(f.vertices());
    }
    for v in &verts {
        let pts = incident_face_points(h, v);
        // on the boundary of the domain the known faces may all pass through
        // one edge, and then they are collinear by conjugacy
        if pts.len() < 3 || pts[0].0.edges().iter().any(|e| pts.iter().all(|(f, _)| f.edges().contains(e))) {
            continue;
        }
        let rows: Vec<_> = pts.iter().map(|(_, p)| p.hom().clone()).collect();
        let cell = Some(Cell::Vertex(v.clone()));
        if pts.len() >= 4 {
            rep.push("coplanarity", cell.clone(), singular_ratio(&rows, 3), tol.tol_incidence);
        }
        // faces through a common edge are always collinear, so triples are
        // taken within one direction layer, where the faces around v form
        // a dual quad
        let mut margin = singular_ratio(&rows, 2);
        let mut layers: BTreeMap<(usize, usize), Vec<_>> = BTreeMap::new();
        for (f, p) in &pts {
            layers.entry(f.dirs).or_default().push(p.hom().clone());
        }
        for layer in layers.values() {
            for (a, b, c) in triples(layer.len()) {
                margin = margin.min(singular_ratio(&[layer[a].clone(), layer[b].clone(), layer[c].clone()], 2));
            }
        }
        rep.push_verdict("nondegeneracy margin", cell, margin, margin > tol.tol_incidence);
    }
    let empty = PlaneField::new(h.ambient);
    let vertex_planes: BTreeMap<&VertexId, ProjSubspace> = verts
        .iter()
        .filter(|v| incident_face_points(h, v).len() >= 3)
        .filter_map(|v| Some((v, plane_at(h, &empty, v, tol.tol_rank)?)))
        .collect();
    for (f, p) in h.iter() {
        let planes: Vec<_> = f.vertices().iter().filter_map(|v| vertex_planes.get(v)).collect();
        if planes.len() < 3 {
            continue;
        }
        let mut worst: f64 = 0.0;
        for (a, b, c) in triples(planes.len()) {
            worst = match meet_point(&[planes[a], planes[b], planes[c]], tol.tol_rank) {
                Ok((q, _)) => worst.max(q.distance(p)),
                Err(_) => f64::INFINITY,
            };
        }
        rep.push("quad planes meet", Some(Cell::Face(f.clone())), worst, tol.tol_point.max(tol.tol_incidence));
    }
    if rep.is_empty() {
        rep.warn("no vertex with three incident face points");
    }
    rep
}

/// Span dimension of one sub-block against its expected generic value.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditEntry {
    pub block: Block,
    pub dim: isize,
    pub expected: i64,
    pub pass: bool,
    pub generic: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DimensionAudit {
    pub entries: Vec<AuditEntry>,
}

impl DimensionAudit {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn all_generic(&self) -> bool {
        self.entries.iter().all(|e| e.generic)
    }

    pub fn to_report(&self) -> CheckReport {
        let mut rep = CheckReport::new("dimension audit");
        for e in &self.entries {
            let excess = (e.dim as i64 - e.expected).max(0) as f64;
            rep.push_verdict("span excess", Some(Cell::Vertex(VertexId(e.block.origin.clone()))), excess, e.pass);
            if !e.generic {
                rep.warn(format!(
                    "sub-block at {:?} with sides {:?} spans dimension {} below {}",
                    e.block.origin, e.block.sides, e.dim, e.expected
                ));
            }
        }
        rep
    }
}

fn audit_with(
    block: &Block,
    ambient: usize,
    offset: i64,
    mut span_dim: impl FnMut(&Block) -> Option<isize>,
) -> DimensionAudit {
    let mut out = DimensionAudit::default();
    for sb in block.sub_blocks() {
        let Some(dim) = span_dim(&sb) else { continue };
        let expected = sb.delta() + offset;
        let cap = expected.min(ambient as i64);
        out.entries.push(AuditEntry {
            pass: dim as i64 <= expected,
            generic: dim as i64 == cap,
            block: sb,
            dim,
            expected,
        });
    }
    out
}

/// Span of the points on each sub-block against the sum of side lengths.
pub fn dimension_audit_vertices(g: &VertexNet, block: &Block, tol: &ToleranceConfig) -> DimensionAudit {
    audit_with(block, g.ambient, 0, |sb| {
        let pts: Option<Vec<&ProjPoint>> = sb.vertices().iter().map(|v| g.get(v)).collect();
        Some(join_points(&pts?, tol.tol_rank).ok()?.dim())
    })
}

/// Span of the planes on each sub-block against two plus the sum of side
/// lengths.
pub fn dimension_audit_planes(planes: &PlaneField, block: &Block, tol: &ToleranceConfig) -> DimensionAudit {
    audit_with(block, planes.ambient, 2, |sb| {
        let ps: Option<Vec<_>> = sb.vertices().iter().map(|v| planes.get(v)).collect();
        let ps = ps?;
        let refs: Vec<_> = ps.iter().copied().collect();
        Some(crate::projective::join(&refs, tol.tol_rank).ok()?.dim())
    })
}
