//! Conjugate vertex-nets, face-nets and binets.

mod check;
mod extend;
mod propagate;

pub use check::{check_face_net, check_vertex_net, dimension_audit_planes, dimension_audit_vertices, AuditEntry, DimensionAudit};
pub use extend::{extend_face_net, restrict_face_net};
pub use propagate::{
    complete_face_cube, complete_vertex_cube, propagate_face_net, propagate_vertex_net, FaceCubeCompletion,
    Propagation,
};

use std::collections::BTreeMap;

use crate::error::GeomError;
use crate::lattice::{faces_of_vertex, Cell, FaceId, VertexId};
use crate::projective::{fit_subspace, join_points_audited, ProjPoint, ProjSubspace};

/// A finite map from cells to points of RP^ambient.
#[derive(Debug, Clone, PartialEq)]
pub struct PointMap<K: Ord> {
    pub ambient: usize,
    pub values: BTreeMap<K, ProjPoint>,
}

/// The map g on vertices.
pub type VertexNet = PointMap<VertexId>;
/// The map h on faces.
pub type FaceNet = PointMap<FaceId>;

/// Largest pointwise distance between two maps over the keys of the first.
#[derive(Debug, Clone, PartialEq)]
pub struct NetDiff<K> {
    pub max: f64,
    pub worst: Option<K>,
    pub compared: usize,
    pub missing: usize,
}

impl<K: Ord + Clone> PointMap<K> {
    pub fn new(ambient: usize) -> Self {
        Self { ambient, values: BTreeMap::new() }
    }

    pub fn insert(&mut self, k: K, p: ProjPoint) {
        assert_eq!(p.ambient(), self.ambient, "point in wrong ambient space");
        self.values.insert(k, p);
    }

    pub fn get(&self, k: &K) -> Option<&ProjPoint> {
        self.values.get(k)
    }

    pub fn contains(&self, k: &K) -> bool {
        self.values.contains_key(k)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.values.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &ProjPoint)> {
        self.values.iter()
    }

    /// Restrict to the keys accepted by `keep`.
    pub fn filtered(&self, keep: impl Fn(&K) -> bool) -> Self {
        Self {
            ambient: self.ambient,
            values: self.values.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    pub fn compare(&self, other: &Self) -> NetDiff<K> {
        let mut d = NetDiff { max: 0.0, worst: None, compared: 0, missing: 0 };
        for (k, p) in &self.values {
            match other.values.get(k) {
                Some(q) => {
                    d.compared += 1;
                    let x = p.distance(q);
                    if x > d.max || x.is_nan() {
                        d.max = x;
                        d.worst = Some(k.clone());
                    }
                }
                None => d.missing += 1,
            }
        }
        d
    }
}

/// The plane field □h on vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneField {
    pub ambient: usize,
    pub planes: BTreeMap<VertexId, ProjSubspace>,
}

impl PlaneField {
    pub fn new(ambient: usize) -> Self {
        Self { ambient, planes: BTreeMap::new() }
    }

    pub fn get(&self, v: &VertexId) -> Option<&ProjSubspace> {
        self.planes.get(v)
    }

    pub fn insert(&mut self, v: VertexId, s: ProjSubspace) {
        assert_eq!(s.ambient(), self.ambient, "plane in wrong ambient space");
        self.planes.insert(v, s);
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }
}

/// Face points of `h` incident to `v`.
pub fn incident_face_points<'a>(h: &'a FaceNet, v: &VertexId) -> Vec<(FaceId, &'a ProjPoint)> {
    faces_of_vertex(v).into_iter().filter_map(|f| h.get(&f).map(|p| (f, p))).collect()
}

/// The plane at `v`: taken from `planes` when given, otherwise fitted to
/// the incident face points of `h`, which must span at least a plane.
pub fn plane_at(h: &FaceNet, planes: &PlaneField, v: &VertexId, tol_rank: f64) -> Option<ProjSubspace> {
    if let Some(p) = planes.get(v) {
        return Some(p.clone());
    }
    let pts: Vec<&ProjPoint> = incident_face_points(h, v).into_iter().map(|(_, p)| p).collect();
    if pts.len() < 3 {
        return None;
    }
    let (span, _) = join_points_audited(&pts, tol_rank).ok()?;
    (span.dim() >= 2).then(|| fit_subspace(&pts, 2))
}

/// Plane field of a face net at every vertex with enough incident points.
pub fn plane_field(h: &FaceNet, tol_rank: f64) -> PlaneField {
    let mut out = PlaneField::new(h.ambient);
    let empty = PlaneField::new(h.ambient);
    let mut seen = std::collections::BTreeSet::new();
    for f in h.keys() {
        for v in f.vertices() {
            if seen.insert(v.clone()) {
                if let Some(p) = plane_at(h, &empty, &v, tol_rank) {
                    out.insert(v, p);
                }
            }
        }
    }
    out
}

/// The plane □b(f) through the vertex points of a face, from any three of
/// its known vertices.
pub fn face_plane(g: &VertexNet, f: &FaceId, tol_rank: f64) -> Result<ProjSubspace, GeomError> {
    let pts: Vec<&ProjPoint> = f.vertices().iter().filter_map(|v| g.get(v)).collect();
    if pts.len() < 3 {
        return Err(GeomError::MissingCell(Cell::Face(f.clone())));
    }
    let (span, _) = join_points_audited(&pts, tol_rank)?;
    if span.dim() < 2 {
        return Err(GeomError::NonGenericMeet { cell: Cell::Face(f.clone()), dim: span.dim() });
    }
    Ok(fit_subspace(&pts, 2))
}

/// A map on vertices and faces whose two parts are conjugate nets.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateBinet {
    pub vertices: VertexNet,
    pub faces: FaceNet,
}

impl ConjugateBinet {
    pub fn new(ambient: usize) -> Self {
        Self { vertices: VertexNet::new(ambient), faces: FaceNet::new(ambient) }
    }

    pub fn ambient(&self) -> usize {
        self.vertices.ambient
    }

    /// Lattice dimension N, read from any key.
    pub fn lattice_dim(&self) -> Option<usize> {
        self.vertices.keys().next().map(|v| v.dim()).or_else(|| self.faces.keys().next().map(|f| f.dim()))
    }

    pub fn point(&self, c: &Cell) -> Option<&ProjPoint> {
        match c {
            Cell::Vertex(v) => self.vertices.get(v),
            Cell::Face(f) => self.faces.get(f),
            _ => None,
        }
    }

    /// Largest distance to `other` over the cells of `self`, and the cell
    /// where it occurs. Cells missing from `other` count as infinitely far.
    pub fn compare(&self, other: &ConjugateBinet) -> (f64, Option<Cell>) {
        let a = self.vertices.compare(&other.vertices);
        let b = self.faces.compare(&other.faces);
        if a.missing + b.missing > 0 {
            let missing = self
                .vertices
                .keys()
                .find(|k| !other.vertices.contains(k))
                .map(|v| Cell::Vertex(v.clone()))
                .or_else(|| self.faces.keys().find(|k| !other.faces.contains(k)).map(|f| Cell::Face(f.clone())));
            return (f64::INFINITY, missing);
        }
        if a.max >= b.max {
            (a.max, a.worst.map(Cell::Vertex))
        } else {
            (b.max, b.worst.map(Cell::Face))
        }
    }
}
