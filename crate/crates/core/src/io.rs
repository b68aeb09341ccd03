//! JSON net documents and OBJ export.
//!
//! A document stores one kind of net as a flat list of cells with either
//! homogeneous coordinates (`hom`, a point of RP^ambient_n) or affine ones
//! (`affine`, a point of R^ambient_n; only dOCS use these). Homogeneous
//! vectors are canonicalized on load, so loading and saving is idempotent.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::conjugate::{ConjugateBinet, FaceNet, PlaneField, PointMap, VertexNet};
use crate::docs::{Docs, DocsLift};
use crate::error::DocError;
use crate::lattice::{Cell, CellKind, CubeId, VertexId};
use crate::polar::PolarBinet;
use crate::principal::{face_axis, MoebiusLift};
use crate::projective::{canonicalize, CentralProjection, ProjPoint, ProjSubspace, Quadric, ToleranceConfig};

pub const SCHEMA_VERSION: &str = "binet-doc/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocKind {
    VertexNet,
    FaceNet,
    Binet,
    PolarBinet,
    PrincipalBinet,
    Docs,
    Lift,
}

impl DocKind {
    pub fn name(&self) -> &'static str {
        match self {
            DocKind::VertexNet => "vertex_net",
            DocKind::FaceNet => "face_net",
            DocKind::Binet => "binet",
            DocKind::PolarBinet => "polar_binet",
            DocKind::PrincipalBinet => "principal_binet",
            DocKind::Docs => "docs",
            DocKind::Lift => "lift",
        }
    }

    fn allows(&self, k: CellKind) -> bool {
        match self {
            DocKind::VertexNet => k == CellKind::Vertex,
            DocKind::FaceNet => k == CellKind::Face,
            DocKind::Docs => matches!(k, CellKind::Vertex | CellKind::Cube),
            DocKind::Lift => k != CellKind::Edge,
            _ => matches!(k, CellKind::Vertex | CellKind::Face),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellValue {
    pub cell: Cell,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine: Option<Vec<f64>>,
}

/// A vertex plane given by spanning vectors, stored as written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneValue {
    pub vertex: Vec<i64>,
    pub basis: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetDocument {
    pub schema_version: String,
    pub ambient_n: usize,
    #[serde(rename = "lattice_N")]
    pub lattice_n: usize,
    pub kind: DocKind,
    pub cells: Vec<CellValue>,
    /// Symmetric form of the quadric, row by row.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadric: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub planes: Vec<PlaneValue>,
    #[serde(default)]
    pub metadata: BTreeMap<String, serde_json::Value>,
    /// Residual report of the command that wrote the document.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<serde_json::Value>,
}

fn schema(msg: impl Into<String>) -> DocError {
    DocError::Schema(msg.into())
}

fn hom_cells<'a, K: Ord + Clone + 'a>(
    m: &'a PointMap<K>,
    wrap: impl Fn(K) -> Cell + 'a,
) -> impl Iterator<Item = CellValue> + 'a {
    m.iter().map(move |(k, p)| CellValue { cell: wrap(k.clone()), hom: Some(p.hom().as_slice().to_vec()), affine: None })
}

fn plane_values(planes: &PlaneField) -> Vec<PlaneValue> {
    planes
        .planes
        .iter()
        .map(|(v, s)| PlaneValue {
            vertex: v.0.clone(),
            basis: s.basis().column_iter().map(|c| c.as_slice().to_vec()).collect(),
        })
        .collect()
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

impl NetDocument {
    pub fn new(kind: DocKind, ambient_n: usize, lattice_n: usize) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            ambient_n,
            lattice_n,
            kind,
            cells: Vec::new(),
            quadric: None,
            planes: Vec::new(),
            metadata: BTreeMap::new(),
            report: None,
        }
    }

    pub fn from_vertex_net(g: &VertexNet) -> Self {
        let n = g.keys().next().map_or(0, |v| v.dim());
        let mut d = Self::new(DocKind::VertexNet, g.ambient, n);
        d.cells.extend(hom_cells(g, Cell::Vertex));
        d.finish()
    }

    pub fn from_face_net(h: &FaceNet, planes: &PlaneField) -> Self {
        let n = h.keys().next().map_or(0, |f| f.dim());
        let mut d = Self::new(DocKind::FaceNet, h.ambient, n);
        d.cells.extend(hom_cells(h, Cell::Face));
        d.planes = plane_values(planes);
        d.finish()
    }

    /// A binet document of kind `Binet` or `PrincipalBinet`.
    pub fn from_binet(b: &ConjugateBinet, kind: DocKind) -> Self {
        let mut d = Self::new(kind, b.ambient(), b.lattice_dim().unwrap_or(0));
        d.cells.extend(hom_cells(&b.vertices, Cell::Vertex));
        d.cells.extend(hom_cells(&b.faces, Cell::Face));
        d.finish()
    }

    pub fn from_polar(pb: &PolarBinet) -> Self {
        let mut d = Self::from_binet(&pb.binet, DocKind::PolarBinet);
        d.quadric = Some(matrix_rows(pb.quadric.form()));
        d.planes = plane_values(&pb.planes);
        d
    }

    pub fn from_docs(x: &Docs) -> Self {
        let mut d = Self::new(DocKind::Docs, x.ambient().unwrap_or(0), x.lattice_dim().unwrap_or(0));
        for (v, y) in &x.vertex_values {
            d.cells.push(CellValue { cell: Cell::Vertex(v.clone()), hom: None, affine: Some(y.as_slice().to_vec()) });
        }
        for (c, y) in &x.cube_values {
            d.cells.push(CellValue { cell: Cell::Cube(c.clone()), hom: None, affine: Some(y.as_slice().to_vec()) });
        }
        d.finish()
    }

    pub fn from_lift(l: &MoebiusLift) -> Self {
        let mut d = Self::from_polar(&l.lift);
        d.kind = DocKind::Lift;
        d.metadata.insert("family_parameter".into(), l.family_parameter.into());
        d.metadata.insert("anchor".into(), serde_json::json!(l.anchor.0));
        d.metadata.insert("closure".into(), l.closure.into());
        d
    }

    pub fn from_docs_lift(l: &DocsLift) -> Self {
        let n = l.vertices.keys().next().map_or(0, |v| v.dim());
        let mut d = Self::new(DocKind::Lift, l.vertices.ambient, n);
        d.cells.extend(hom_cells(&l.vertices, Cell::Vertex));
        d.cells.extend(hom_cells(&l.cubes, Cell::Cube));
        d.quadric = Some(matrix_rows(l.quadric.form()));
        d.finish()
    }

    fn finish(mut self) -> Self {
        self.cells.sort_by(|a, b| a.cell.cmp(&b.cell));
        self
    }

    pub fn with_planes(mut self, planes: &PlaneField) -> Self {
        self.planes = plane_values(planes);
        self
    }

    pub fn with_meta(mut self, key: &str, value: impl Serialize) -> Self {
        self.metadata.insert(key.into(), serde_json::to_value(value).expect("metadata serializes"));
        self
    }

    /// Checks the schema and every cell, then canonicalizes homogeneous
    /// coordinates and sorts the cells.
    pub fn validate(&mut self) -> Result<(), DocError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(schema(format!("schema_version {:?}, expected {SCHEMA_VERSION:?}", self.schema_version)));
        }
        if self.lattice_n < 2 {
            return Err(schema(format!("lattice_N = {} < 2", self.lattice_n)));
        }
        let affine_kind = self.kind == DocKind::Docs;
        for cv in &mut self.cells {
            let c = &cv.cell;
            if c.base().len() != self.lattice_n {
                return Err(schema(format!("{c} does not live on Z^{}", self.lattice_n)));
            }
            if !self.kind.allows(c.kind()) {
                return Err(schema(format!("{c} is not allowed in a {} document", self.kind.name())));
            }
            match (&mut cv.hom, &cv.affine, affine_kind) {
                (Some(h), None, false) => {
                    if h.len() != self.ambient_n + 1 {
                        return Err(schema(format!("{c}: {} homogeneous coordinates in RP^{}", h.len(), self.ambient_n)));
                    }
                    let u = canonicalize(&DVector::from_column_slice(h)).map_err(|e| schema(format!("{c}: {e}")))?;
                    *h = u.as_slice().to_vec();
                }
                (None, Some(a), true) => {
                    if a.len() != self.ambient_n {
                        return Err(schema(format!("{c}: {} affine coordinates in R^{}", a.len(), self.ambient_n)));
                    }
                    if a.iter().any(|x| !x.is_finite()) {
                        return Err(schema(format!("{c}: non-finite coordinates")));
                    }
                }
                _ => {
                    let want = if affine_kind { "affine" } else { "hom" };
                    return Err(schema(format!("{c}: expected exactly the field {want:?}")));
                }
            }
        }
        self.cells.sort_by(|a, b| a.cell.cmp(&b.cell));
        if let Some(w) = self.cells.windows(2).find(|w| w[0].cell == w[1].cell) {
            return Err(schema(format!("{} appears twice", w[0].cell)));
        }
        let needs_quadric = matches!(self.kind, DocKind::PolarBinet | DocKind::Lift);
        match &self.quadric {
            None if needs_quadric => return Err(schema(format!("a {} document needs a quadric", self.kind.name()))),
            Some(q) => {
                let m = self.ambient_n + 1;
                if q.len() != m || q.iter().any(|r| r.len() != m) {
                    return Err(schema(format!("quadric must be {m}x{m}")));
                }
            }
            None => {}
        }
        for p in &self.planes {
            if p.vertex.len() != self.lattice_n || p.basis.iter().any(|b| b.len() != self.ambient_n + 1) {
                return Err(schema(format!("plane at vertex {:?} has the wrong shape", p.vertex)));
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self, DocError> {
        let mut d: NetDocument = serde_json::from_str(s).map_err(|e| DocError::Parse(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn read(path: &str) -> Result<Self, DocError> {
        let s = std::fs::read_to_string(path).map_err(|e| DocError::Io { path: path.into(), source: e })?;
        Self::from_json(&s)
    }

    fn expect(&self, kinds: &[DocKind]) -> Result<(), DocError> {
        if kinds.contains(&self.kind) {
            return Ok(());
        }
        let expected = kinds.iter().map(|k| k.name()).collect::<Vec<_>>().join(" or ");
        Err(DocError::WrongKind { expected, found: self.kind.name().into() })
    }

    fn points(&self, kind: CellKind) -> impl Iterator<Item = (&Cell, ProjPoint)> + '_ {
        self.cells.iter().filter(move |c| c.cell.kind() == kind).filter_map(|c| {
            let h = c.hom.as_ref()?;
            Some((&c.cell, ProjPoint::from_slice(h).expect("validated")))
        })
    }

    pub fn vertex_net(&self) -> VertexNet {
        let mut g = VertexNet::new(self.ambient_n);
        for (c, p) in self.points(CellKind::Vertex) {
            if let Cell::Vertex(v) = c {
                g.insert(v.clone(), p);
            }
        }
        g
    }

    pub fn face_net(&self) -> FaceNet {
        let mut h = FaceNet::new(self.ambient_n);
        for (c, p) in self.points(CellKind::Face) {
            if let Cell::Face(f) = c {
                h.insert(f.clone(), p);
            }
        }
        h
    }

    /// Vertex and face parts of any homogeneous document.
    pub fn binet(&self) -> Result<ConjugateBinet, DocError> {
        if self.kind == DocKind::Docs {
            return Err(DocError::WrongKind { expected: "homogeneous net".into(), found: self.kind.name().into() });
        }
        Ok(ConjugateBinet { vertices: self.vertex_net(), faces: self.face_net() })
    }

    pub fn plane_field(&self, tol: &ToleranceConfig) -> PlaneField {
        let mut pf = PlaneField::new(self.ambient_n);
        for p in &self.planes {
            let cols: Vec<DVector<f64>> = p.basis.iter().map(|b| DVector::from_column_slice(b)).collect();
            let m = DMatrix::from_columns(&cols);
            pf.insert(VertexId(p.vertex.clone()), ProjSubspace::from_columns(&m, tol.tol_rank));
        }
        pf
    }

    pub fn quadric(&self) -> Option<Quadric> {
        let rows = self.quadric.as_ref()?;
        let m = rows.len();
        Some(Quadric::new(DMatrix::from_fn(m, m, |i, j| rows[i][j]), 1e-12))
    }

    pub fn polar_binet(&self, tol: &ToleranceConfig) -> Result<PolarBinet, DocError> {
        self.expect(&[DocKind::PolarBinet, DocKind::Lift])?;
        let quadric = self.quadric().ok_or_else(|| schema("missing quadric"))?;
        Ok(PolarBinet { binet: self.binet()?, planes: self.plane_field(tol), quadric })
    }

    pub fn docs(&self) -> Result<Docs, DocError> {
        self.expect(&[DocKind::Docs])?;
        let mut x = Docs::new();
        for cv in &self.cells {
            let y = DVector::from_column_slice(cv.affine.as_ref().expect("validated"));
            match &cv.cell {
                Cell::Vertex(v) => {
                    x.vertex_values.insert(v.clone(), y);
                }
                Cell::Cube(c) => {
                    x.cube_values.insert(c.clone(), y);
                }
                _ => unreachable!("validated"),
            }
        }
        Ok(x)
    }

    /// True for lifts of dOCS (vertex and cube cells).
    pub fn is_docs_lift(&self) -> bool {
        self.kind == DocKind::Lift && self.cells.iter().any(|c| c.cell.kind() == CellKind::Cube)
    }

    pub fn moebius_lift(&self, tol: &ToleranceConfig) -> Result<MoebiusLift, DocError> {
        self.expect(&[DocKind::Lift])?;
        if self.ambient_n < 2 {
            return Err(schema("a lift lives in RP^(n+1) with n >= 1"));
        }
        let lift = self.polar_binet(tol)?;
        let family_parameter = self
            .metadata
            .get("family_parameter")
            .and_then(|v| v.as_f64())
            .ok_or_else(|| schema("lift metadata needs family_parameter"))?;
        let anchor: Vec<i64> = self
            .metadata
            .get("anchor")
            .and_then(|v| serde_json::from_value(v.clone()).ok())
            .ok_or_else(|| schema("lift metadata needs anchor"))?;
        let closure = self.metadata.get("closure").and_then(|v| v.as_f64()).unwrap_or(0.0);
        Ok(MoebiusLift {
            lift,
            projection: CentralProjection::moebius(self.ambient_n - 1),
            family_parameter,
            anchor: VertexId(anchor),
            closure,
        })
    }

    pub fn docs_lift(&self) -> Result<DocsLift, DocError> {
        self.expect(&[DocKind::Lift])?;
        let quadric = self.quadric().ok_or_else(|| schema("missing quadric"))?;
        let mut cubes: PointMap<CubeId> = PointMap::new(self.ambient_n);
        for (c, p) in self.points(CellKind::Cube) {
            if let Cell::Cube(c) = c {
                cubes.insert(c.clone(), p);
            }
        }
        Ok(DocsLift {
            vertices: self.vertex_net(),
            cubes,
            quadric,
            projection: CentralProjection::moebius(self.ambient_n - 1),
        })
    }
}

/// OBJ text and the list of cells that could not be written.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjExport {
    pub text: String,
    pub warnings: Vec<String>,
    pub vertex_count: usize,
}

struct ObjWriter {
    text: String,
    count: usize,
}

impl ObjWriter {
    fn vertex(&mut self, y: &[f64]) -> usize {
        let c = |k: usize| y.get(k).copied().unwrap_or(0.0);
        let _ = writeln!(self.text, "v {} {} {}", c(0), c(1), c(2));
        self.count += 1;
        self.count
    }
}

/// Point clouds of the document's cells, lattice edges between vertex
/// points, dual edges between adjacent cubes of a dOCS and, with `axes`,
/// the face axes of a binet in R^3 as short segments.
///
/// Only the first three affine coordinates are written. Points at infinity
/// are skipped and listed in the warnings.
pub fn to_obj(doc: &NetDocument, axes: bool, tol: &ToleranceConfig) -> ObjExport {
    let mut w = ObjWriter { text: String::new(), count: 0 };
    let mut warnings = Vec::new();
    let _ = writeln!(w.text, "# {} on Z^{} in dimension {}", doc.kind.name(), doc.lattice_n, doc.ambient_n);
    if doc.ambient_n > 3 {
        warnings.push(format!("coordinates beyond the third of R^{} are dropped", doc.ambient_n));
    }
    let mut index: BTreeMap<Cell, usize> = BTreeMap::new();
    for (group, kind) in [("vertices", CellKind::Vertex), ("faces", CellKind::Face), ("cubes", CellKind::Cube)] {
        let cells: Vec<&CellValue> = doc.cells.iter().filter(|c| c.cell.kind() == kind).collect();
        if cells.is_empty() {
            continue;
        }
        let _ = writeln!(w.text, "o {group}");
        for cv in cells {
            let y = match (&cv.hom, &cv.affine) {
                (_, Some(a)) => Some(a.clone()),
                (Some(h), None) => {
                    let p = ProjPoint::from_slice(h).expect("validated");
                    p.affine(tol.tol_point).map(|a| a.as_slice().to_vec())
                }
                _ => None,
            };
            match y {
                Some(y) => {
                    index.insert(cv.cell.clone(), w.vertex(&y));
                }
                None => warnings.push(format!("{} is at infinity", cv.cell)),
            }
        }
    }
    let mut lines = String::new();
    for (c, &a) in &index {
        match c {
            Cell::Vertex(v) => {
                for k in 1..=v.dim() {
                    if let Some(&b) = index.get(&Cell::Vertex(v.step(k))) {
                        let _ = writeln!(lines, "l {a} {b}");
                    }
                }
            }
            Cell::Cube(cube) => {
                for m in (1..=cube.dim()).filter(|m| !cube.dir_list().contains(m)) {
                    let [i, j, k] = cube.dir_list();
                    let next = CubeId::new(VertexId(cube.base.clone()).step(m).0, i, j, k);
                    if let Some(&b) = index.get(&Cell::Cube(next)) {
                        let _ = writeln!(lines, "l {a} {b}");
                    }
                }
            }
            _ => {}
        }
    }
    if !lines.is_empty() {
        let _ = writeln!(w.text, "o edges");
        w.text.push_str(&lines);
    }
    if axes {
        match doc.binet() {
            Ok(b) if b.ambient() == 3 => {
                let _ = writeln!(w.text, "o axes");
                for f in b.faces.keys() {
                    let Ok((p, d)) = face_axis(&b, f, tol) else {
                        warnings.push(format!("no axis at {}", Cell::Face(f.clone())));
                        continue;
                    };
                    let half = f
                        .vertices()
                        .iter()
                        .filter_map(|v| b.vertices.get(v)?.affine(tol.tol_point))
                        .map(|q| (q - &p).norm())
                        .fold(0.0, f64::max)
                        .max(1e-3)
                        * 0.5;
                    let a = w.vertex((&p - &d * half).as_slice());
                    let c = w.vertex((&p + &d * half).as_slice());
                    let _ = writeln!(w.text, "l {a} {c}");
                }
            }
            _ => warnings.push("axes are only drawn for binets in R^3".into()),
        }
    }
    ObjExport { text: w.text, warnings, vertex_count: w.count }
}
