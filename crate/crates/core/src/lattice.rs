//! Cells of Z^N and their incidences.
//!
//! Directions are labelled 1..=N; coordinate `k` of a base vector belongs to
//! direction `k + 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GeomError;

fn add_dir(base: &[i64], dir: usize, by: i64) -> Vec<i64> {
    let mut b = base.to_vec();
    b[dir - 1] += by;
    b
}

fn fmt_coords(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub Vec<i64>);

impl VertexId {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn origin(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `self + e_dir`.
    pub fn step(&self, dir: usize) -> Self {
        Self(add_dir(&self.0, dir, 1))
    }

    /// `self − e_dir`.
    pub fn back(&self, dir: usize) -> Self {
        Self(add_dir(&self.0, dir, -1))
    }

    /// `self + Σ e_d` over `dirs`.
    pub fn plus(&self, dirs: &[usize]) -> Self {
        let mut v = self.0.clone();
        for d in dirs {
            v[d - 1] += 1;
        }
        Self(v)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// The face `(r, r+e_i, r+e_i+e_j, r+e_j)`, `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId {
    pub base: Vec<i64>,
    pub dirs: (usize, usize),
}

impl FaceId {
    /// Directions may be given in either order.
    pub fn new(base: Vec<i64>, i: usize, j: usize) -> Self {
        assert!(i != j && i >= 1 && j >= 1 && i.max(j) <= base.len(), "invalid face directions ({i},{j})");
        Self { base, dirs: (i.min(j), i.max(j)) }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base_vertex(&self) -> VertexId {
        VertexId(self.base.clone())
    }

    /// Vertices in cyclic order starting at the base.
    pub fn vertices(&self) -> [VertexId; 4] {
        let v = self.base_vertex();
        let (i, j) = self.dirs;
        [v.clone(), v.step(i), v.plus(&[i, j]), v.step(j)]
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        let (i, j) = self.dirs;
        v.0.iter().zip(&self.base).enumerate().all(|(k, (x, b))| {
            let d = k + 1;
            if d == i || d == j {
                *x == *b || *x == *b + 1
            } else {
                x == b
            }
        })
    }

    pub fn edges(&self) -> [EdgeId; 4] {
        let (i, j) = self.dirs;
        let v = self.base_vertex();
        [
            EdgeId::new(v.0.clone(), i),
            EdgeId::new(v.step(i).0, j),
            EdgeId::new(v.step(j).0, i),
            EdgeId::new(v.0, j),
        ]
    }

    pub fn other_dir(&self, d: usize) -> usize {
        if d == self.dirs.0 {
            self.dirs.1
        } else {
            self.dirs.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId {
    pub base: Vec<i64>,
    pub dir: usize,
}

impl EdgeId {
    pub fn new(base: Vec<i64>, dir: usize) -> Self {
        assert!(dir >= 1 && dir <= base.len(), "invalid edge direction {dir}");
        Self { base, dir }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        let v = VertexId(self.base.clone());
        let w = v.step(self.dir);
        (v, w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeId {
    pub base: Vec<i64>,
    pub dirs: (usize, usize, usize),
}

impl CubeId {
    pub fn new(base: Vec<i64>, i: usize, j: usize, k: usize) -> Self {
        let mut d = [i, j, k];
        d.sort_unstable();
        assert!(d[0] >= 1 && d[0] < d[1] && d[1] < d[2] && d[2] <= base.len(), "invalid cube directions {d:?}");
        Self { base, dirs: (d[0], d[1], d[2]) }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn dir_list(&self) -> [usize; 3] {
        [self.dirs.0, self.dirs.1, self.dirs.2]
    }

    /// The eight vertices, indexed by the bit pattern of the steps taken.
    pub fn vertices(&self) -> [VertexId; 8] {
        let d = self.dir_list();
        let v = VertexId(self.base.clone());
        std::array::from_fn(|m| {
            let steps: Vec<usize> = (0..3).filter(|b| m & (1 << b) != 0).map(|b| d[b]).collect();
            v.plus(&steps)
        })
    }

    /// The six faces: for each direction pair, the lower face then the upper.
    pub fn faces(&self) -> [FaceId; 6] {
        let [i, j, k] = self.dir_list();
        let v = VertexId(self.base.clone());
        [
            FaceId::new(v.0.clone(), i, j),
            FaceId::new(v.step(k).0, i, j),
            FaceId::new(v.0.clone(), i, k),
            FaceId::new(v.step(j).0, i, k),
            FaceId::new(v.0.clone(), j, k),
            FaceId::new(v.step(i).0, j, k),
        ]
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        let d = self.dir_list();
        v.0.iter().zip(&self.base).enumerate().all(|(k, (x, b))| {
            if d.contains(&(k + 1)) {
                *x == *b || *x == *b + 1
            } else {
                x == b
            }
        })
    }

    pub fn contains_face(&self, f: &FaceId) -> bool {
        let d = self.dir_list();
        d.contains(&f.dirs.0) && d.contains(&f.dirs.1) && f.vertices().iter().all(|v| self.contains_vertex(v))
    }

    pub fn top_vertex(&self) -> VertexId {
        VertexId(self.base.clone()).plus(&self.dir_list())
    }
}

/// Two vertices and two faces, each vertex incident to both faces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossId {
    pub v: VertexId,
    pub v2: VertexId,
    pub f: FaceId,
    pub f2: FaceId,
}

impl CrossId {
    pub fn new(v: VertexId, v2: VertexId, f: FaceId, f2: FaceId) -> Result<Self, GeomError> {
        if v == v2 || f == f2 {
            return Err(GeomError::InvalidCross("repeated cell".into()));
        }
        for vv in [&v, &v2] {
            for ff in [&f, &f2] {
                if !ff.contains_vertex(vv) {
                    return Err(GeomError::InvalidCross(format!(
                        "vertex ({}) is not incident to face {}",
                        fmt_coords(&vv.0),
                        Cell::Face(ff.clone())
                    )));
                }
            }
        }
        Ok(Self { v, v2, f, f2 })
    }
}

/// Any cell of Z^N used as a map key or report location.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CellRepr", into = "CellRepr")]
pub enum Cell {
    Vertex(VertexId),
    Edge(EdgeId),
    Face(FaceId),
    Cube(CubeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    Vertex,
    Edge,
    Face,
    Cube,
}

impl Cell {
    pub fn kind(&self) -> CellKind {
        match self {
            Cell::Vertex(_) => CellKind::Vertex,
            Cell::Edge(_) => CellKind::Edge,
            Cell::Face(_) => CellKind::Face,
            Cell::Cube(_) => CellKind::Cube,
        }
    }

    pub fn base(&self) -> &[i64] {
        match self {
            Cell::Vertex(v) => &v.0,
            Cell::Edge(e) => &e.base,
            Cell::Face(f) => &f.base,
            Cell::Cube(c) => &c.base,
        }
    }

    pub fn dirs(&self) -> Vec<usize> {
        match self {
            Cell::Vertex(_) => vec![],
            Cell::Edge(e) => vec![e.dir],
            Cell::Face(f) => vec![f.dirs.0, f.dirs.1],
            Cell::Cube(c) => c.dir_list().to_vec(),
        }
    }

    fn order_key(&self) -> (i64, Vec<i64>, Vec<usize>) {
        (self.base().iter().sum(), self.base().to_vec(), self.dirs())
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dirs = self.dirs().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Cell::Vertex(v) => write!(f, "vertex({})", fmt_coords(&v.0)),
            Cell::Edge(e) => write!(f, "edge({};{dirs})", fmt_coords(&e.base)),
            Cell::Face(x) => write!(f, "face({};{dirs})", fmt_coords(&x.base)),
            Cell::Cube(c) => write!(f, "cube({};{dirs})", fmt_coords(&c.base)),
        }
    }
}

impl From<VertexId> for Cell {
    fn from(v: VertexId) -> Self {
        Cell::Vertex(v)
    }
}
impl From<FaceId> for Cell {
    fn from(f: FaceId) -> Self {
        Cell::Face(f)
    }
}
impl From<CubeId> for Cell {
    fn from(c: CubeId) -> Self {
        Cell::Cube(c)
    }
}
impl From<EdgeId> for Cell {
    fn from(e: EdgeId) -> Self {
        Cell::Edge(e)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CellRepr {
    #[serde(rename = "type")]
    kind: String,
    base: Vec<i64>,
    #[serde(default)]
    dirs: Vec<usize>,
}

impl From<Cell> for CellRepr {
    fn from(c: Cell) -> Self {
        let kind = match c.kind() {
            CellKind::Vertex => "vertex",
            CellKind::Edge => "edge",
            CellKind::Face => "face",
            CellKind::Cube => "cube",
        };
        CellRepr { kind: kind.into(), base: c.base().to_vec(), dirs: c.dirs() }
    }
}

impl TryFrom<CellRepr> for Cell {
    type Error = String;

    fn try_from(r: CellRepr) -> Result<Self, String> {
        let n = r.base.len();
        if n < 2 {
            return Err(format!("lattice dimension {n} < 2"));
        }
        let ok = |d: &usize| *d >= 1 && *d <= n;
        if !r.dirs.iter().all(ok) {
            return Err(format!("direction out of range 1..={n}: {:?}", r.dirs));
        }
        let strictly_increasing = r.dirs.windows(2).all(|w| w[0] < w[1]);
        match (r.kind.as_str(), r.dirs.len()) {
            ("vertex", 0) => Ok(Cell::Vertex(VertexId(r.base))),
            ("edge", 1) => Ok(Cell::Edge(EdgeId::new(r.base, r.dirs[0]))),
            ("face", 2) if strictly_increasing => Ok(Cell::Face(FaceId::new(r.base, r.dirs[0], r.dirs[1]))),
            ("cube", 3) if strictly_increasing => {
                Ok(Cell::Cube(CubeId::new(r.base, r.dirs[0], r.dirs[1], r.dirs[2])))
            }
            (k, m) => Err(format!("malformed cell: type {k:?} with {m} directions {:?}", r.dirs)),
        }
    }
}

/// All faces incident to `v`, sorted by base then directions.
pub fn faces_of_vertex(v: &VertexId) -> Vec<FaceId> {
    let n = v.dim();
    let mut out = Vec::with_capacity(2 * n * (n - 1));
    for i in 1..=n {
        for j in i + 1..=n {
            for (di, dj) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                let mut b = v.0.clone();
                b[i - 1] -= di;
                b[j - 1] -= dj;
                out.push(FaceId::new(b, i, j));
            }
        }
    }
    out.sort();
    out
}

/// All faces containing the edge, sorted.
pub fn faces_of_edge(e: &EdgeId) -> Vec<FaceId> {
    let n = e.dim();
    let mut out = Vec::with_capacity(2 * (n - 1));
    for m in (1..=n).filter(|&m| m != e.dir) {
        out.push(FaceId::new(e.base.clone(), e.dir, m));
        out.push(FaceId::new(add_dir(&e.base, m, -1), e.dir, m));
    }
    out.sort();
    out
}

/// All crosses over the edge, one per unordered pair of faces.
pub fn crosses_of_edge(e: &EdgeId) -> Vec<CrossId> {
    let (v, v2) = e.endpoints();
    let fs = faces_of_edge(e);
    let mut out = Vec::new();
    for a in 0..fs.len() {
        for b in a + 1..fs.len() {
            out.push(CrossId { v: v.clone(), v2: v2.clone(), f: fs[a].clone(), f2: fs[b].clone() });
        }
    }
    out
}

/// All 3-cubes containing the edge, sorted.
pub fn cubes_of_edge(e: &EdgeId) -> Vec<CubeId> {
    let n = e.dim();
    let others: Vec<usize> = (1..=n).filter(|&m| m != e.dir).collect();
    let mut out = Vec::new();
    for a in 0..others.len() {
        for b in a + 1..others.len() {
            let (m, l) = (others[a], others[b]);
            for (dm, dl) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                let base = add_dir(&add_dir(&e.base, m, -dm), l, -dl);
                out.push(CubeId::new(base, e.dir, m, l));
            }
        }
    }
    out.sort();
    out
}

/// All 3-cubes containing the face, sorted.
pub fn cubes_of_face(f: &FaceId) -> Vec<CubeId> {
    let n = f.dim();
    let (i, j) = f.dirs;
    let mut out = Vec::new();
    for k in (1..=n).filter(|&k| k != i && k != j) {
        out.push(CubeId::new(f.base.clone(), i, j, k));
        out.push(CubeId::new(add_dir(&f.base, k, -1), i, j, k));
    }
    out.sort();
    out
}

/// The vertex of Z^N that an ij-face is identified with.
pub fn identify_face_layer(f: &FaceId, i: usize, j: usize) -> Result<VertexId, GeomError> {
    if f.dirs != (i.min(j), i.max(j)) {
        return Err(GeomError::WrongLayer(Cell::Face(f.clone())));
    }
    Ok(f.base_vertex())
}

/// Inverse of [`identify_face_layer`].
pub fn face_of_layer(v: &VertexId, i: usize, j: usize) -> FaceId {
    FaceId::new(v.0.clone(), i, j)
}

/// Role of a cell in `V_N ∪ (F_N ∖ F_N^{ij})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplementRole {
    Vertex,
    OtherFace,
}

/// Classifier and enumerator for the vertices together with all faces that
/// are not ij-faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplementCells {
    pub n: usize,
    pub i: usize,
    pub j: usize,
}

pub fn complement_cells(n: usize, i: usize, j: usize) -> ComplementCells {
    assert!(1 <= i && i < j && j <= n, "need 1 <= i < j <= N");
    ComplementCells { n, i, j }
}

impl ComplementCells {
    pub fn classify(&self, c: &Cell) -> Option<ComplementRole> {
        match c {
            Cell::Vertex(v) if v.dim() == self.n => Some(ComplementRole::Vertex),
            Cell::Face(f) if f.dim() == self.n && f.dirs != (self.i, self.j) => Some(ComplementRole::OtherFace),
            _ => None,
        }
    }

    /// Cells of the family lying in the block, in wavefront order.
    pub fn cells_in(&self, block: &Block) -> Vec<Cell> {
        let mut out: Vec<Cell> = block.vertices().into_iter().map(Cell::Vertex).collect();
        out.extend(block.faces().into_iter().filter(|f| f.dirs != (self.i, self.j)).map(Cell::Face));
        sort_wavefront(&mut out);
        out
    }
}

/// The box `origin + [0,a_1] × … × [0,a_N]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub origin: Vec<i64>,
    pub sides: Vec<i64>,
}

impl Block {
    pub fn new(sides: Vec<i64>) -> Self {
        assert!(sides.iter().all(|&a| a >= 0), "block sides must be nonnegative");
        Self { origin: vec![0; sides.len()], sides }
    }

    pub fn with_origin(origin: Vec<i64>, sides: Vec<i64>) -> Self {
        assert_eq!(origin.len(), sides.len());
        assert!(sides.iter().all(|&a| a >= 0), "block sides must be nonnegative");
        Self { origin, sides }
    }

    pub fn cube(n: usize, a: i64) -> Self {
        Self::new(vec![a; n])
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    /// Sum of side lengths.
    pub fn delta(&self) -> i64 {
        self.sides.iter().sum()
    }

    /// Glue `other` to the far side of `self` along direction `dir`.
    pub fn concat(&self, other: &Block, dir: usize) -> Option<Block> {
        let k = dir - 1;
        for m in 0..self.dim() {
            if m != k && self.sides[m] != other.sides[m] {
                return None;
            }
        }
        let mut sides = self.sides.clone();
        sides[k] += other.sides[k];
        Some(Block::with_origin(self.origin.clone(), sides))
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        v.0.iter().zip(&self.origin).zip(&self.sides).all(|((x, o), a)| *x >= *o && *x <= o + a)
    }

    fn rel(&self, base: &[i64]) -> Vec<i64> {
        base.iter().zip(&self.origin).map(|(x, o)| x - o).collect()
    }

    fn boxes(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for (l, h) in lo.iter().zip(hi) {
            let mut next = Vec::new();
            for p in &out {
                for x in *l..=*h {
                    let mut q = p.clone();
                    q.push(x);
                    next.push(q);
                }
            }
            out = next;
        }
        out.retain(|p| p.iter().zip(lo).zip(hi).all(|((x, l), h)| x >= l && x <= h));
        out
    }

    /// Vertices in wavefront order.
    pub fn vertices(&self) -> Vec<VertexId> {
        let hi: Vec<i64> = self.origin.iter().zip(&self.sides).map(|(o, a)| o + a).collect();
        let mut out: Vec<VertexId> = Self::boxes(&self.origin, &hi).into_iter().map(VertexId).collect();
        out.sort_by_key(|v| (v.sum(), v.clone()));
        out
    }

    fn bases_for(&self, dirs: &[usize]) -> Vec<Vec<i64>> {
        if dirs.iter().any(|d| self.sides[d - 1] == 0) {
            return vec![];
        }
        let hi: Vec<i64> = (0..self.dim())
            .map(|k| self.origin[k] + self.sides[k] - if dirs.contains(&(k + 1)) { 1 } else { 0 })
            .collect();
        Self::boxes(&self.origin, &hi)
    }

    /// Edges inside the block in wavefront order.
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut out = Vec::new();
        for d in 1..=self.dim() {
            out.extend(self.bases_for(&[d]).into_iter().map(|b| EdgeId::new(b, d)));
        }
        out.sort_by_key(|e| (e.base.iter().sum::<i64>(), e.base.clone(), e.dir));
        out
    }

    /// Faces inside the block in wavefront order.
    pub fn faces(&self) -> Vec<FaceId> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.extend(self.bases_for(&[i, j]).into_iter().map(|b| FaceId::new(b, i, j)));
            }
        }
        out.sort_by_key(|f| (f.base.iter().sum::<i64>(), f.base.clone(), f.dirs));
        out
    }

    /// 3-cubes inside the block in wavefront order.
    pub fn cubes(&self) -> Vec<CubeId> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    out.extend(self.bases_for(&[i, j, k]).into_iter().map(|b| CubeId::new(b, i, j, k)));
                }
            }
        }
        out.sort_by_key(|c| (c.base.iter().sum::<i64>(), c.base.clone(), c.dirs));
        out
    }

    pub fn contains_face(&self, f: &FaceId) -> bool {
        f.vertices().iter().all(|v| self.contains(v))
    }

    pub fn contains_cube(&self, c: &CubeId) -> bool {
        self.contains(&VertexId(c.base.clone())) && self.contains(&c.top_vertex())
    }

    /// Number of directions in which the vertex leaves the origin.
    pub fn support(&self, v: &VertexId) -> usize {
        self.rel(&v.0).iter().filter(|&&x| x != 0).count()
    }

    /// Whether the cell lies in a 2-dimensional coordinate plane through the
    /// block origin.
    pub fn on_coordinate_planes(&self, c: &Cell) -> bool {
        match c {
            Cell::Vertex(v) => self.support(v) <= 2,
            Cell::Edge(e) => {
                let r = self.rel(&e.base);
                r.iter().enumerate().filter(|(k, x)| **x != 0 && k + 1 != e.dir).count() <= 1
            }
            Cell::Face(f) => {
                let r = self.rel(&f.base);
                r.iter().enumerate().all(|(k, x)| *x == 0 || k + 1 == f.dirs.0 || k + 1 == f.dirs.1)
            }
            Cell::Cube(_) => false,
        }
    }

    /// All sub-blocks with integer corners, including degenerate ones.
    pub fn sub_blocks(&self) -> Vec<Block> {
        let mut out = vec![Block { origin: vec![], sides: vec![] }];
        for k in 0..self.dim() {
            let mut next = Vec::new();
            for b in &out {
                for lo in 0..=self.sides[k] {
                    for len in 0..=(self.sides[k] - lo) {
                        let mut nb = b.clone();
                        nb.origin.push(self.origin[k] + lo);
                        nb.sides.push(len);
                        next.push(nb);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Cells of one kind in wavefront order.
    pub fn wavefront(&self, kind: CellKind) -> Vec<Cell> {
        match kind {
            CellKind::Vertex => self.vertices().into_iter().map(Cell::Vertex).collect(),
            CellKind::Edge => self.edges().into_iter().map(Cell::Edge).collect(),
            CellKind::Face => self.faces().into_iter().map(Cell::Face).collect(),
            CellKind::Cube => self.cubes().into_iter().map(Cell::Cube).collect(),
        }
    }
}

/// Sort by coordinate sum of the base, then base, then directions.
pub fn sort_wavefront(cells: &mut [Cell]) {
    cells.sort_by_key(|c| c.order_key());
}
