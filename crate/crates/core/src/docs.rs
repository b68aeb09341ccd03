//! Discrete orthogonal coordinate systems: maps on vertices and 3-cubes
//! whose edges are orthogonal to the dual edges across each shared face.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use log::debug;
use nalgebra::DVector;

use crate::conjugate::{propagate_vertex_net, ConjugateBinet, FaceNet, PointMap, VertexNet};
use crate::error::GeomError;
use crate::lattice::{cubes_of_face, faces_of_edge, faces_of_vertex, Block, Cell, CubeId, EdgeId, FaceId, VertexId};
use crate::principal::{affine_of, axes_meet, require_space, MoebiusLift};
use crate::projective::{
    fit_subspace, join, join_points, meet, polar, singular_ratio, CentralProjection, ProjPoint, ProjSubspace, Quadric, ToleranceConfig,
};
use crate::report::CheckReport;

/// The map x on vertices and 3-cubes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Docs {
    pub vertex_values: BTreeMap<VertexId, DVector<f64>>,
    pub cube_values: BTreeMap<CubeId, DVector<f64>>,
}

impl Docs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ambient(&self) -> Option<usize> {
        self.vertex_values.values().chain(self.cube_values.values()).next().map(|x| x.len())
    }

    pub fn lattice_dim(&self) -> Option<usize> {
        self.vertex_values.keys().next().map(|v| v.dim())
    }

    /// Smallest block containing every vertex.
    pub fn bounding_block(&self) -> Option<Block> {
        let n = self.lattice_dim()?;
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for v in self.vertex_values.keys() {
            for k in 0..n {
                lo[k] = lo[k].min(v.0[k]);
                hi[k] = hi[k].max(v.0[k]);
            }
        }
        let sides = lo.iter().zip(&hi).map(|(a, b)| b - a).collect();
        Some(Block::with_origin(lo, sides))
    }

    /// Every vertex of the bounding block has a value.
    pub fn vertex_block(&self) -> Option<Block> {
        let b = self.bounding_block()?;
        b.vertices().iter().all(|v| self.vertex_values.contains_key(v)).then_some(b)
    }

    /// Largest Euclidean distance over the cells of `self`, with the worst
    /// cell. Cells missing from `other` count as infinitely far.
    pub fn compare(&self, other: &Docs) -> (f64, Option<Cell>) {
        let mut worst = (0.0, None);
        let mut see = |d: f64, c: Cell| {
            if d > worst.0 || d.is_nan() {
                worst = (d, Some(c));
            }
        };
        for (v, x) in &self.vertex_values {
            let d = other.vertex_values.get(v).map_or(f64::INFINITY, |y| (x - y).norm());
            see(d, Cell::Vertex(v.clone()));
        }
        for (c, x) in &self.cube_values {
            let d = other.cube_values.get(c).map_or(f64::INFINITY, |y| (x - y).norm());
            see(d, Cell::Cube(c.clone()));
        }
        worst
    }

    pub fn translated(&self, t: &DVector<f64>) -> Docs {
        Docs {
            vertex_values: self.vertex_values.iter().map(|(k, x)| (k.clone(), x + t)).collect(),
            cube_values: self.cube_values.iter().map(|(k, x)| (k.clone(), x + t)).collect(),
        }
    }
}

fn abs_cosine(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return f64::INFINITY;
    }
    (a.dot(b) / (na * nb)).abs()
}

/// Cube pairs across the faces through an edge, both present in `x`.
fn dual_edges(x: &Docs, e: &EdgeId) -> BTreeSet<(CubeId, CubeId)> {
    let mut out = BTreeSet::new();
    for f in faces_of_edge(e) {
        let cs: Vec<CubeId> = cubes_of_face(&f).into_iter().filter(|c| x.cube_values.contains_key(c)).collect();
        for a in 0..cs.len() {
            for b in a + 1..cs.len() {
                out.insert((cs[a].clone(), cs[b].clone()));
            }
        }
    }
    out
}

/// Orthogonality of every edge x(v) ∨ x(v′) to every dual edge
/// x(c) ∨ x(c′) of two cubes sharing a face through it, as |cos|.
pub fn check_docs(x: &Docs, tol: &ToleranceConfig) -> CheckReport {
    let mut rep = CheckReport::new("docs");
    for (v, xv) in &x.vertex_values {
        for d in 1..=v.dim() {
            let Some(xw) = x.vertex_values.get(&v.step(d)) else { continue };
            let e = EdgeId::new(v.0.clone(), d);
            let dv = xw - xv;
            for (c, c2) in dual_edges(x, &e) {
                let dc = &x.cube_values[&c2] - &x.cube_values[&c];
                rep.push("edge orthogonality", Some(Cell::Edge(e.clone())), abs_cosine(&dv, &dc), tol.tol_orth);
            }
        }
    }
    if rep.is_empty() {
        rep.warn("no edge with a pair of adjacent cubes in the domain");
    }
    rep
}

/// A dOCS with the report of its construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DocsBuild {
    pub docs: Docs,
    pub report: CheckReport,
}

fn cubes_with_faces(b: &ConjugateBinet) -> Vec<CubeId> {
    let mut out = BTreeSet::new();
    for f in b.faces.keys() {
        for c in cubes_of_face(f) {
            if c.faces().iter().all(|g| b.faces.contains(g)) && c.vertices().iter().all(|v| b.vertices.contains(v)) {
                out.insert(c);
            }
        }
    }
    out.into_iter().collect()
}

/// The dOCS of a principal binet in R^3: vertices are kept, each complete
/// cube goes to the least-squares meet of its six face axes.
pub fn binet_to_docs(p: &ConjugateBinet, tol: &ToleranceConfig) -> Result<DocsBuild, GeomError> {
    require_space(p.ambient())?;
    let mut docs = Docs::new();
    for (v, q) in p.vertices.iter() {
        docs.vertex_values.insert(v.clone(), affine_of(q, Cell::Vertex(v.clone()), tol)?);
    }
    let mut rep = CheckReport::new("binet to docs");
    for c in cubes_with_faces(p) {
        let m = axes_meet(p, &c, tol)?;
        rep.push("axis concurrency", Some(Cell::Cube(c.clone())), m.residual, tol.tol_incidence);
        docs.cube_values.insert(c, m.point);
    }
    if docs.cube_values.is_empty() {
        rep.warn("no complete cube");
    }
    rep.merge(check_docs(&docs, tol));
    Ok(DocsBuild { docs, report: rep })
}

/// Block whose faces all have both adjacent cubes inside the vertex block
/// of `x`: the vertex block shrunk by one on every side.
pub fn docs_inner_block(x: &Docs) -> Result<Block, GeomError> {
    let b = x
        .vertex_block()
        .ok_or_else(|| GeomError::InvalidDomain("vertex values must fill a block".into()))?;
    if b.dim() != 3 || b.sides.iter().any(|&s| s < 3) {
        return Err(GeomError::InvalidDomain(format!("need a 3D vertex block with sides >= 3, got {:?}", b.sides)));
    }
    Ok(Block::with_origin(b.origin.iter().map(|o| o + 1).collect(), b.sides.iter().map(|s| s - 2).collect()))
}

/// Faces that carry free values when reconstructing a binet on `inner`:
/// the three faces at the origin, the 12-faces along axis 1, the 23-faces
/// along axis 2 and the 13-faces along axis 3.
pub fn docs_seed_faces(inner: &Block) -> Vec<FaceId> {
    let o = &inner.origin;
    let mut out = vec![FaceId::new(o.clone(), 1, 2), FaceId::new(o.clone(), 1, 3), FaceId::new(o.clone(), 2, 3)];
    for (axis, (i, j)) in [(1, (1, 2)), (2, (2, 3)), (3, (1, 3))] {
        for t in 1..=inner.sides[axis - 1] {
            let mut b = o.clone();
            b[axis - 1] += t;
            out.push(FaceId::new(b, i, j));
        }
    }
    out
}

/// Faces in the coordinate planes of `inner`, reaching one step past its
/// far side so that every wall vertex sees at least three of them.
fn wall_faces(inner: &Block) -> Vec<FaceId> {
    let o = &inner.origin;
    let mut out = Vec::new();
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        for s in 0..=inner.sides[i - 1] {
            for t in 0..=inner.sides[j - 1] {
                let mut b = o.clone();
                b[i - 1] += s;
                b[j - 1] += t;
                out.push(FaceId::new(b, i, j));
            }
        }
    }
    out
}

/// The two cube points across a face.
fn constraint_line(x: &Docs, f: &FaceId) -> Result<(DVector<f64>, DVector<f64>), GeomError> {
    let cs = cubes_of_face(f);
    let get = |c: &CubeId| x.cube_values.get(c).cloned().ok_or_else(|| GeomError::MissingCell(Cell::Cube(c.clone())));
    match cs.as_slice() {
        [a, b] => Ok((get(a)?, get(b)?)),
        _ => Err(GeomError::InvalidDomain("constraint lines need lattice dimension 3".into())),
    }
}

fn line_distance(p: &DVector<f64>, (a, b): &(DVector<f64>, DVector<f64>)) -> f64 {
    let d = b - a;
    let r = p - a;
    let n2 = d.norm_squared();
    if n2 == 0.0 {
        return r.norm();
    }
    (&r - &d * (d.dot(&r) / n2)).norm()
}

fn line_through((a, b): &(DVector<f64>, DVector<f64>), tol_rank: f64) -> Result<ProjSubspace, GeomError> {
    join_points(&[&ProjPoint::from_affine(a.as_slice()), &ProjPoint::from_affine(b.as_slice())], tol_rank)
}

/// A principal binet rebuilt from a dOCS.
#[derive(Debug, Clone, PartialEq)]
pub struct DocsReconstruction {
    pub binet: ConjugateBinet,
    pub report: CheckReport,
}

/// Principal binet on the inner block of `x` from the values of the seed
/// faces (see [`docs_seed_faces`]).
///
/// Every face point lies on the line through its two cube points, and the
/// face points around a vertex are coplanar. Unknown faces are filled one
/// at a time by meeting that line with the plane of the known face points
/// at one of their vertices, always taking the best conditioned meet
/// available.
pub fn docs_to_binet(x: &Docs, seeds: &FaceNet, tol: &ToleranceConfig) -> Result<DocsReconstruction, GeomError> {
    require_space(seeds.ambient)?;
    let inner = docs_inner_block(x)?;
    let mut targets = wall_faces(&inner);
    targets.extend(inner.faces());
    targets.sort();
    targets.dedup();
    let in_scope: BTreeSet<&FaceId> = targets.iter().collect();
    let mut lines = BTreeMap::new();
    for f in &targets {
        let l = constraint_line(x, f)?;
        lines.insert(f.clone(), (line_through(&l, tol.tol_rank)?, l));
    }

    let mut known = FaceNet::new(3);
    for f in docs_seed_faces(&inner) {
        if !seeds.contains(&f) {
            return Err(GeomError::MissingCell(Cell::Face(f)));
        }
    }
    for (f, p) in seeds.iter() {
        let Some((_, line)) = lines.get(f) else { continue };
        let y = affine_of(p, Cell::Face(f.clone()), tol)?;
        let residual = line_distance(&y, line) / y.norm().max(1.0);
        if residual > tol.tol_incidence {
            return Err(GeomError::SeedOffLine { cell: Cell::Face(f.clone()), residual });
        }
        known.insert(f.clone(), p.clone());
    }

    loop {
        // (score, face, meet)
        let mut best: Option<(f64, &FaceId, ProjSubspace)> = None;
        for f in targets.iter().filter(|f| !known.contains(f)) {
            let line = &lines[f].0;
            for w in f.vertices() {
                let pts: Vec<&ProjPoint> = faces_of_vertex(&w)
                    .iter()
                    .filter(|g| in_scope.contains(g))
                    .filter_map(|g| known.get(g))
                    .collect();
                if pts.len() < 3 {
                    continue;
                }
                let rows: Vec<_> = pts.iter().map(|p| p.hom().clone()).collect();
                let spread = singular_ratio(&rows, 2);
                if spread <= tol.tol_rank {
                    continue;
                }
                let plane = fit_subspace(&pts, 2);
                let normal = plane.dual_basis(tol.tol_rank);
                let transversal = (normal.transpose() * line.basis()).norm();
                let score = spread.min(transversal);
                if best.as_ref().is_some_and(|b| b.0 >= score) {
                    continue;
                }
                best = Some((score, f, meet(line, &plane, tol.tol_rank)?));
            }
        }
        let Some((_, f, m)) = best else { break };
        let p = m.as_point().ok_or(GeomError::NonGenericMeet { cell: Cell::Face(f.clone()), dim: m.dim() })?;
        known.insert(f.clone(), p);
    }
    if let Some(f) = targets.iter().find(|f| !known.contains(f)) {
        return Err(GeomError::MissingCell(Cell::Face(f.clone())));
    }

    let mut binet = ConjugateBinet::new(3);
    for v in inner.vertices() {
        let y = x.vertex_values.get(&v).ok_or_else(|| GeomError::MissingCell(Cell::Vertex(v.clone())))?;
        binet.vertices.insert(v, ProjPoint::from_affine(y.as_slice()));
    }
    let mut rep = CheckReport::new("docs to binet");
    for f in inner.faces() {
        let p = known.get(&f).ok_or_else(|| GeomError::MissingCell(Cell::Face(f.clone())))?.clone();
        affine_of(&p, Cell::Face(f.clone()), tol)?;
        rep.push("constraint line", Some(Cell::Face(f.clone())), lines[&f].0.residual(&p), tol.tol_incidence);
        binet.faces.insert(f, p);
    }
    for v in inner.vertices() {
        let rows: Vec<_> = faces_of_vertex(&v).iter().filter_map(|f| binet.faces.get(f)).map(|p| p.hom().clone()).collect();
        if rows.len() >= 4 {
            rep.push("face points coplanar", Some(Cell::Vertex(v)), singular_ratio(&rows, 3), tol.tol_incidence);
        }
    }
    debug!("docs to binet: {} faces from {} seeds", binet.faces.len(), seeds.len());
    Ok(DocsReconstruction { binet, report: rep })
}

/// A Möbius lift of a dOCS: vertex and cube points in RP^{n+1}, incident
/// pairs polar with respect to the Möbius quadric.
#[derive(Debug, Clone, PartialEq)]
pub struct DocsLift {
    pub vertices: VertexNet,
    pub cubes: PointMap<CubeId>,
    pub quadric: Quadric,
    pub projection: CentralProjection,
}

impl DocsLift {
    pub fn project(&self, tol: &ToleranceConfig) -> Result<Docs, GeomError> {
        let mut out = Docs::new();
        for (v, p) in self.vertices.iter() {
            let y = self.projection.project(p, tol.tol_point).map_err(|e| with_cell(e, Cell::Vertex(v.clone())))?;
            out.vertex_values.insert(v.clone(), y);
        }
        for (c, p) in self.cubes.iter() {
            let y = self.projection.project(p, tol.tol_point).map_err(|e| with_cell(e, Cell::Cube(c.clone())))?;
            out.cube_values.insert(c.clone(), y);
        }
        Ok(out)
    }
}

fn with_cell(e: GeomError, c: Cell) -> GeomError {
    match e {
        GeomError::InfinitePoint(None) | GeomError::CenterFiber => GeomError::InfinitePoint(Some(c)),
        e => e,
    }
}

/// Cubes of any direction triple whose eight vertices are all present.
fn complete_cubes(vertices: &VertexNet) -> Vec<CubeId> {
    let mut out = Vec::new();
    for v in vertices.keys() {
        let n = v.dim();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    let c = CubeId::new(v.0.clone(), i, j, k);
                    if c.vertices().iter().all(|w| vertices.contains(w)) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

/// Completes a lifted vertex net in RP^{n+1} by the poles of its cube spans.
///
/// For n > 3 the pole of a cube span is a subspace; the cube point is then
/// its meet with the join of the span and the projection center.
pub fn docs_lift_from_vertices(vertices: VertexNet, n: usize, tol: &ToleranceConfig) -> Result<DocsLift, GeomError> {
    let q = Quadric::moebius(n);
    let cp = CentralProjection::moebius(n);
    let mut cubes = PointMap::new(vertices.ambient);
    for c in complete_cubes(&vertices) {
        let pts: Vec<&ProjPoint> = c.vertices().iter().map(|v| &vertices.values[v]).collect();
        let span = join_points(&pts, tol.tol_rank)?;
        if span.dim() != 3 {
            return Err(GeomError::DegenerateCube { cell: Cell::Cube(c), dim: span.dim() });
        }
        let mut pole = polar(&span, &q, tol.tol_rank)?;
        if pole.dim() > 0 {
            // in R^n with n > 3 the orthogonal spheres form a pencil; take the
            // one centered in the affine span of the cube
            let through = join(&[&span, &ProjSubspace::from(cp.center())], tol.tol_rank)?;
            pole = meet(&pole, &through, tol.tol_rank)?;
        }
        let p = pole.as_point().ok_or(GeomError::DegenerateCube { cell: Cell::Cube(c.clone()), dim: pole.dim() })?;
        cubes.insert(c, p);
    }
    Ok(DocsLift { vertices, cubes, quadric: q, projection: cp })
}

/// The dOCS lift carried by a Möbius lift of a principal binet.
pub fn docs_lift_of(lift: &MoebiusLift, tol: &ToleranceConfig) -> Result<DocsLift, GeomError> {
    docs_lift_from_vertices(lift.lift.binet.vertices.clone(), lift.n(), tol)
}

/// Normalized pairing of every incident vertex and cube of a lift.
pub fn check_docs_lift(l: &DocsLift, tol: &ToleranceConfig) -> CheckReport {
    let mut rep = CheckReport::new("docs lift");
    for (c, pc) in l.cubes.iter() {
        for v in c.vertices() {
            if let Some(pv) = l.vertices.get(&v) {
                rep.push("vertex-cube polarity", Some(Cell::Cube(c.clone())), l.quadric.normalized_pairing(pv, pc), tol.tol_incidence);
            }
        }
    }
    rep
}

/// Agreement required of a hypercube completed along different paths.
pub const PATH_TOLERANCE: f64 = 1e-7;

/// Outcome of [`check_docs_consistency`].
#[derive(Debug, Clone, PartialEq)]
pub struct DocsConsistency {
    /// Completed data, absent when some cube could not be completed.
    pub docs: Option<Docs>,
    pub lift: Option<DocsLift>,
    pub report: CheckReport,
}

/// Squared radii of the lift by walking vertex–cube incidences from the
/// smallest vertex, which gets `r0_sq`. Returns the radii and the worst
/// disagreement met on a second path.
fn lift_radii(
    x: &Docs,
    r0_sq: f64,
) -> Result<(BTreeMap<VertexId, f64>, BTreeMap<CubeId, f64>, f64, Option<Cell>), GeomError> {
    let anchor = x.vertex_values.keys().next().ok_or_else(|| GeomError::InvalidDomain("no vertex values".into()))?;
    let mut rv = BTreeMap::from([(anchor.clone(), r0_sq)]);
    let mut rc: BTreeMap<CubeId, f64> = BTreeMap::new();
    let mut queue = VecDeque::from([Cell::Vertex(anchor.clone())]);
    let mut worst = (0.0, None);
    while let Some(cell) = queue.pop_front() {
        match cell {
            Cell::Vertex(v) => {
                let r = rv[&v];
                for (c, xc) in x.cube_values.iter().filter(|(c, _)| c.contains_vertex(&v)) {
                    let s = (xc - &x.vertex_values[&v]).norm_squared() - r;
                    match rc.get(c) {
                        Some(&old) => {
                            let d = (old - s).abs() / (1.0 + old.abs());
                            if d > worst.0 {
                                worst = (d, Some(Cell::Cube(c.clone())));
                            }
                        }
                        None => {
                            rc.insert(c.clone(), s);
                            queue.push_back(Cell::Cube(c.clone()));
                        }
                    }
                }
            }
            Cell::Cube(c) => {
                let s = rc[&c];
                for w in c.vertices() {
                    let Some(xw) = x.vertex_values.get(&w) else { continue };
                    let r = (&x.cube_values[&c] - xw).norm_squared() - s;
                    match rv.get(&w) {
                        Some(&old) => {
                            let d = (old - r).abs() / (1.0 + old.abs());
                            if d > worst.0 {
                                worst = (d, Some(Cell::Vertex(w.clone())));
                            }
                        }
                        None => {
                            rv.insert(w.clone(), r);
                            queue.push_back(Cell::Vertex(w));
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    if let Some(v) = x.vertex_values.keys().find(|v| !rv.contains_key(v)) {
        return Err(GeomError::MissingCell(Cell::Vertex(v.clone())));
    }
    Ok((rv, rc, worst.0, worst.1))
}

fn sphere_lift(center: &DVector<f64>, sq_radius: f64) -> ProjPoint {
    let n = center.len();
    let rho = center.norm_squared() - sq_radius;
    let mut h = DVector::zeros(n + 2);
    h[0] = (rho + 1.0) / 2.0;
    h.rows_mut(1, n).copy_from(center);
    h[n + 1] = (rho - 1.0) / 2.0;
    ProjPoint::new(h).expect("first and last entries differ")
}

/// Completes dOCS data on the unit hypercube from its lift and checks the
/// result.
///
/// The input holds the vertex values of a hypercube of lattice dimension
/// N ≥ 4 except possibly the top vertex, and the cube values of cubes
/// through the origin. The vertex part is lifted, completed as a conjugate
/// vertex net (recording the disagreement of the different paths to the
/// same vertex), the cube points are the poles of the cube spans, and the
/// projection is checked for orthogonality.
pub fn check_docs_consistency(initial: &Docs, r0_sq: f64, tol: &ToleranceConfig) -> Result<DocsConsistency, GeomError> {
    let nl = initial.lattice_dim().ok_or_else(|| GeomError::InvalidDomain("no vertex values".into()))?;
    if nl < 4 {
        return Err(GeomError::InvalidDomain(format!("consistency needs lattice dimension >= 4, got {nl}")));
    }
    let n = initial.ambient().unwrap_or(0);
    let block = initial.bounding_block().expect("vertices present");
    let mut rep = CheckReport::new("docs consistency");
    rep.merge(check_docs(initial, tol));

    let (rv, _, closure, at) = lift_radii(initial, r0_sq)?;
    rep.push("lift closure", at, closure, tol.tol_incidence);
    let mut net = VertexNet::new(n + 1);
    for (v, r) in &rv {
        net.insert(v.clone(), sphere_lift(&initial.vertex_values[v], *r));
    }
    let prop = match propagate_vertex_net(&net, &block, tol) {
        Ok(p) => p,
        Err(GeomError::DegenerateCube { cell, dim }) => {
            rep.push_verdict("cube completion", Some(cell), dim as f64, false);
            return Ok(DocsConsistency { docs: None, lift: None, report: rep });
        }
        Err(e) => return Err(e),
    };
    let mut worst = (0.0, None);
    for (c, d) in &prop.discrepancies {
        if *d > worst.0 || d.is_nan() {
            worst = (*d, Some(c.clone()));
        }
    }
    rep.push("path independence", worst.1, worst.0, PATH_TOLERANCE);
    if let Some(v) = block.vertices().into_iter().find(|v| !prop.net.contains(v)) {
        return Err(GeomError::MissingCell(Cell::Vertex(v)));
    }

    let lift = docs_lift_from_vertices(prop.net, n, tol)?;
    rep.merge(check_docs_lift(&lift, tol));
    let docs = lift.project(tol)?;
    for (c, y) in &initial.cube_values {
        let d = docs.cube_values.get(c).map_or(f64::INFINITY, |z| (z - y).norm());
        rep.push("cube agreement", Some(Cell::Cube(c.clone())), d, PATH_TOLERANCE);
    }
    let mut full = check_docs(&docs, tol);
    full.name = "completed docs".into();
    rep.merge(full);
    Ok(DocsConsistency { docs: Some(docs), lift: Some(lift), report: rep })
}

/// The Cartesian grid on a block of any lattice dimension: vertices at
/// their coordinates, cubes at their centers.
pub fn cartesian_docs(block: &Block) -> Docs {
    let mut out = Docs::new();
    for v in block.vertices() {
        let y = DVector::from_iterator(v.dim(), v.0.iter().map(|&c| c as f64));
        out.vertex_values.insert(v, y);
    }
    for c in block.cubes() {
        let mut y = DVector::from_iterator(c.dim(), c.base.iter().map(|&b| b as f64));
        for d in c.dir_list() {
            y[d - 1] += 0.5;
        }
        out.cube_values.insert(c, y);
    }
    out
}

/// Initial data for [`check_docs_consistency`]: the vertex values of the
/// hypercube except its top, and the cubes through the origin.
pub fn consistency_initial(x: &Docs, block: &Block) -> Docs {
    let top = VertexId(block.origin.iter().zip(&block.sides).map(|(o, s)| o + s).collect());
    let origin = VertexId(block.origin.clone());
    Docs {
        vertex_values: x.vertex_values.iter().filter(|(v, _)| **v != top).map(|(k, y)| (k.clone(), y.clone())).collect(),
        cube_values: x
            .cube_values
            .iter()
            .filter(|(c, _)| VertexId(c.base.clone()) == origin)
            .map(|(k, y)| (k.clone(), y.clone()))
            .collect(),
    }
}
