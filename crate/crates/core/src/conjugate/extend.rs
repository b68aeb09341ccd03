use std::collections::BTreeSet;

use nalgebra::DMatrix;

use crate::error::GeomError;
use crate::lattice::{Cell, FaceId, VertexId};
use crate::projective::{join_points, meet_all, null_space, ProjPoint, ProjSubspace, ToleranceConfig};

use super::{FaceNet, VertexNet};

/// The vertex net on F^{ij} obtained by reading the ij-faces of `h` at
/// their base vertices.
pub fn restrict_face_net(h: &FaceNet, i: usize, j: usize) -> VertexNet {
    let (i, j) = (i.min(j), i.max(j));
    let mut out = VertexNet::new(h.ambient);
    for (f, p) in h.iter() {
        if f.dirs == (i, j) {
            out.insert(f.base_vertex(), p.clone());
        }
    }
    out
}

fn shifted(v: &VertexId, plus: &[usize], minus: &[usize]) -> VertexId {
    let mut w = v.plus(plus);
    for d in minus {
        w = w.back(*d);
    }
    w
}

fn line(a: &ProjPoint, b: &ProjPoint, f: &FaceId, tol: &ToleranceConfig) -> Result<ProjSubspace, GeomError> {
    let l = join_points(&[a, b], tol.tol_rank)?;
    if l.dim() != 1 {
        return Err(GeomError::NonGenericMeet { cell: Cell::Face(f.clone()), dim: l.dim() });
    }
    Ok(l)
}

/// Common point of the lines p0p1 and p2p3, from the relation
/// `a p0 + b p1 = c p2 + d p3`. Solving for the coefficients directly keeps
/// the result accurate when the two points of a line are close together.
fn coplanar_meet(pts: &[&ProjPoint], f: &FaceId, tol: &ToleranceConfig) -> Result<ProjPoint, GeomError> {
    let fail = |dim| GeomError::NonGenericMeet { cell: Cell::Face(f.clone()), dim };
    let m = DMatrix::from_columns(&[pts[0].hom().clone(), pts[1].hom().clone(), -pts[2].hom(), -pts[3].hom()]);
    let (k, audit) = null_space(&m, tol.tol_rank);
    match audit.rank {
        3 => {}
        4 => return Err(fail(-1)),
        _ => return Err(fail(1)),
    }
    let c = k.column(0);
    let x = (pts[0].hom() * c[0] + pts[1].hom() * c[1] + pts[2].hom() * c[2] + pts[3].hom() * c[3]) * 0.5;
    ProjPoint::new(x)
}

/// The plane spanned by the four ij-face points around `w`.
fn layer_plane(
    hij: &VertexNet,
    w: &VertexId,
    i: usize,
    j: usize,
    f: &FaceId,
    tol: &ToleranceConfig,
) -> Option<Result<ProjSubspace, GeomError>> {
    let ks = [shifted(w, &[], &[]), shifted(w, &[], &[i]), shifted(w, &[], &[j]), shifted(w, &[], &[i, j])];
    let pts: Option<Vec<&ProjPoint>> = ks.iter().map(|k| hij.get(k)).collect();
    let pts = pts?;
    Some(join_points(&pts, tol.tol_rank).and_then(|s| {
        if s.dim() == 2 {
            Ok(s)
        } else {
            Err(GeomError::NonGenericMeet { cell: Cell::Face(f.clone()), dim: s.dim() })
        }
    }))
}

/// Value of the unique conjugate face net with ij-layer `hij` at the face
/// `f`, or `None` when the required layer points are outside the domain.
fn extension_at(hij: &VertexNet, i: usize, j: usize, f: &FaceId, tol: &ToleranceConfig) -> Option<Result<ProjPoint, GeomError>> {
    let (a, b) = f.dirs;
    let r = f.base_vertex();
    let fail = |dim| GeomError::NonGenericMeet { cell: Cell::Face(f.clone()), dim };
    if (a, b) == (i, j) {
        return hij.get(&r).cloned().map(Ok);
    }
    let touches = [a, b].iter().find(|d| **d == i || **d == j).copied();
    if let Some(t) = touches {
        // focal point: the face spans one layer direction t and a transversal
        // direction m; its two t-edges each carry a line of layer points
        let m = f.other_dir(t);
        let s = if t == j { i } else { j };
        let keys = [shifted(&r, &[], &[s]), r.clone(), shifted(&r, &[m], &[s]), shifted(&r, &[m], &[])];
        let pts: Option<Vec<&ProjPoint>> = keys.iter().map(|k| hij.get(k)).collect();
        let pts = pts?;
        let res = (|| {
            line(pts[0], pts[1], f, tol)?;
            line(pts[2], pts[3], f, tol)?;
            coplanar_meet(&pts, f, tol)
        })();
        return Some(res);
    }
    let mut planes = Vec::with_capacity(4);
    for w in f.vertices() {
        match layer_plane(hij, &w, i, j, f, tol)? {
            Ok(p) => planes.push(p),
            Err(e) => return Some(Err(e)),
        }
    }
    let refs: Vec<&ProjSubspace> = planes.iter().collect();
    Some(meet_all(&refs, tol.tol_rank).and_then(|s| s.as_point().ok_or_else(|| fail(s.dim()))))
}

/// Extend a vertex net on the ij-faces to the conjugate face net it is the
/// restriction of, on every face whose defining points are available.
///
/// `hij` is keyed by the base vertices of the ij-faces in Z^n.
pub fn extend_face_net(hij: &VertexNet, i: usize, j: usize, tol: &ToleranceConfig) -> Result<FaceNet, GeomError> {
    let (i, j) = (i.min(j), i.max(j));
    let mut out = FaceNet::new(hij.ambient);
    let Some(n) = hij.keys().next().map(|v| v.dim()) else { return Ok(out) };
    let mut candidates = BTreeSet::new();
    for r in hij.keys() {
        // every face whose extension reads r has its base within one step
        let mut bases = vec![r.0.clone()];
        for k in 0..n {
            let mut next = Vec::with_capacity(bases.len() * 3);
            for b in &bases {
                for delta in [-1, 0, 1] {
                    let mut c = b.clone();
                    c[k] += delta;
                    next.push(c);
                }
            }
            bases = next;
        }
        for b in bases {
            for a in 1..=n {
                for c in a + 1..=n {
                    candidates.insert(FaceId::new(b.clone(), a, c));
                }
            }
        }
    }
    for f in candidates {
        if let Some(p) = extension_at(hij, i, j, &f, tol) {
            out.insert(f, p?);
        }
    }
    Ok(out)
}
