//! Numerical projective geometry on homogeneous coordinates.
//!
//! Subspaces are stored as orthonormal column bases. Every rank decision
//! goes through one singular value threshold, `tol_rank` relative to the
//! largest singular value, and reports how close the decision was.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::GeomError;

/// Relative tolerances used by every numerical decision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub tol_rank: f64,
    pub tol_incidence: f64,
    pub tol_point: f64,
    pub tol_orth: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            tol_rank: 1e-9,
            tol_incidence: 1e-8,
            tol_point: 1e-9,
            tol_orth: 1e-8,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<(), GeomError> {
        for (name, v) in [
            ("tol_rank", self.tol_rank),
            ("tol_incidence", self.tol_incidence),
            ("tol_point", self.tol_point),
            ("tol_orth", self.tol_orth),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(GeomError::InvalidTolerance(format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        Ok(())
    }
}

/// Unit norm, first coordinate of largest magnitude positive.
pub fn canonicalize(v: &DVector<f64>) -> Result<DVector<f64>, GeomError> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    let n = v.norm();
    if n < 1e-300 {
        return Err(GeomError::ZeroVector);
    }
    // unit vectors are kept bit for bit, so canonicalizing is idempotent
    let mut u = if (n - 1.0).abs() <= 4.0 * f64::EPSILON { v.clone() } else { v / n };
    let mut k = 0;
    for i in 1..u.len() {
        if u[i].abs() > u[k].abs() {
            k = i;
        }
    }
    if u[k] < 0.0 {
        u.neg_mut();
    }
    Ok(u)
}

/// Distance between the points represented by two nonzero vectors.
///
/// Sign ambiguity is removed by taking the closer of `±b`, so near ties in
/// the canonical sign rule cannot produce spurious distances.
pub fn projective_distance(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let a = a / a.norm();
    let b = b / b.norm();
    (&a - &b).norm().min((&a + &b).norm())
}

/// A point of RP^d.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjPoint {
    hom: DVector<f64>,
}

impl ProjPoint {
    pub fn new(hom: DVector<f64>) -> Result<Self, GeomError> {
        Ok(Self { hom: canonicalize(&hom)? })
    }

    pub fn from_slice(hom: &[f64]) -> Result<Self, GeomError> {
        Self::new(DVector::from_column_slice(hom))
    }

    /// The point `(1, x)` of the standard affine chart.
    pub fn from_affine(x: &[f64]) -> Self {
        let mut v = DVector::zeros(x.len() + 1);
        v[0] = 1.0;
        for (i, xi) in x.iter().enumerate() {
            v[i + 1] = *xi;
        }
        Self::new(v).expect("affine points are finite and nonzero")
    }

    /// The point at infinity in direction `dir`.
    pub fn at_infinity(dir: &[f64]) -> Result<Self, GeomError> {
        let mut v = DVector::zeros(dir.len() + 1);
        for (i, x) in dir.iter().enumerate() {
            v[i + 1] = *x;
        }
        Self::new(v)
    }

    pub fn hom(&self) -> &DVector<f64> {
        &self.hom
    }

    /// Projective dimension d of the ambient RP^d.
    pub fn ambient(&self) -> usize {
        self.hom.len() - 1
    }

    /// Affine coordinates in the chart `x0 = 1`, or `None` when the weight
    /// is below `tol` (the point is at infinity).
    pub fn affine(&self, tol: f64) -> Option<DVector<f64>> {
        let w = self.hom[0];
        if w.abs() <= tol {
            return None;
        }
        Some(self.hom.rows(1, self.hom.len() - 1) / w)
    }

    pub fn distance(&self, other: &ProjPoint) -> f64 {
        projective_distance(&self.hom, &other.hom)
    }

    pub fn approx_eq(&self, other: &ProjPoint, tol_point: f64) -> bool {
        self.distance(other) <= tol_point
    }
}

/// Outcome of a singular value rank decision.
///
/// `margin` is the largest discarded singular value over the smallest
/// kept one. Values near 1 mean the decision was borderline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankAudit {
    pub rank: usize,
    pub margin: f64,
}

/// Singular values (descending) and right singular vectors of `a` by
/// one-sided Jacobi rotations.
///
/// nalgebra's bidiagonal SVD loses accuracy on exactly rank deficient
/// square inputs, which are the normal case here (coplanar points, stacked
/// dual constraints), so rank decisions use this routine instead.
fn jacobi_svd(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.ncols();
    let mut g = if a.nrows() < n {
        let mut p = DMatrix::zeros(n, n);
        p.rows_mut(0, a.nrows()).copy_from(a);
        p
    } else {
        a.clone()
    };
    let mut v = DMatrix::<f64>::identity(n, n);
    // columns at roundoff level are left alone; rotating them against each
    // other never settles and their norms are zero for every rank decision
    let floor = (f64::EPSILON * f64::EPSILON) * g.norm_squared();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = g.column(p).norm_squared();
                let beta = g.column(q).norm_squared();
                let gamma = g.column(p).dot(&g.column(q));
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() || alpha.min(beta) <= floor {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for m in [&mut g, &mut v] {
                    for r in 0..m.nrows() {
                        let (x, y) = (m[(r, p)], m[(r, q)]);
                        m[(r, p)] = c * x - s * y;
                        m[(r, q)] = s * x + c * y;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..n).map(|i| g.column(i).norm()).collect();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let s = idx.iter().map(|&i| norms[i]).collect();
    let v = DMatrix::from_columns(&idx.iter().map(|&i| v.column(i).into_owned()).collect::<Vec<_>>());
    (s, v)
}

/// Singular values and left singular vectors (as columns).
fn left_svd(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    jacobi_svd(&a.transpose())
}

fn audit(s: &[f64], tol_rank: f64) -> RankAudit {
    let top = s.first().copied().unwrap_or(0.0);
    if top <= 0.0 || !top.is_finite() {
        return RankAudit { rank: 0, margin: 0.0 };
    }
    let rank = s.iter().take_while(|&&x| x > tol_rank * top).count();
    let margin = if rank < s.len() { s[rank] / s[rank - 1] } else { 0.0 };
    RankAudit { rank, margin }
}

/// Orthonormal basis of the column space of `a`.
pub fn range(a: &DMatrix<f64>, tol_rank: f64) -> (DMatrix<f64>, RankAudit) {
    if a.ncols() == 0 {
        return (DMatrix::zeros(a.nrows(), 0), RankAudit { rank: 0, margin: 0.0 });
    }
    let (s, u) = left_svd(a);
    let au = audit(&s, tol_rank);
    (u.columns(0, au.rank).into_owned(), au)
}

/// Orthonormal basis of the right null space of `a`.
pub fn null_space(a: &DMatrix<f64>, tol_rank: f64) -> (DMatrix<f64>, RankAudit) {
    let k = a.ncols();
    if a.nrows() == 0 {
        return (DMatrix::identity(k, k), RankAudit { rank: 0, margin: 0.0 });
    }
    let (s, v) = jacobi_svd(a);
    let au = audit(&s, tol_rank);
    (v.columns(au.rank, k - au.rank).into_owned(), au)
}

/// Smallest over largest singular value of the rows of `pts`, each row
/// normalized first. A planarity or collinearity residual for point sets.
pub fn singular_ratio(rows: &[DVector<f64>], index: usize) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    let m = DMatrix::from_rows(&rows.iter().map(|r| (r / r.norm()).transpose()).collect::<Vec<_>>());
    let (s, _) = jacobi_svd(&m);
    if index >= s.len() || s[0] == 0.0 {
        return 0.0;
    }
    s[index] / s[0]
}

/// Best fitting subspace of projective dimension `dim` through the points:
/// the leading left singular vectors of their unit representatives.
pub fn fit_subspace(points: &[&ProjPoint], dim: usize) -> ProjSubspace {
    let d = points[0].ambient();
    let m = DMatrix::from_columns(&points.iter().map(|p| p.hom().clone()).collect::<Vec<_>>());
    let (s, u) = left_svd(&m);
    let k = (dim + 1).min(s.len()).min(d + 1);
    ProjSubspace::from_orthonormal(u.columns(0, k).into_owned())
}

/// A projective subspace spanned by the columns of an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjSubspace {
    basis: DMatrix<f64>,
}

impl ProjSubspace {
    pub fn empty(ambient: usize) -> Self {
        Self { basis: DMatrix::zeros(ambient + 1, 0) }
    }

    pub fn whole(ambient: usize) -> Self {
        Self { basis: DMatrix::identity(ambient + 1, ambient + 1) }
    }

    /// Span of arbitrary vectors stored as columns.
    pub fn from_columns(cols: &DMatrix<f64>, tol_rank: f64) -> Self {
        Self { basis: range(cols, tol_rank).0 }
    }

    /// Wrap a basis that is already orthonormal.
    fn from_orthonormal(basis: DMatrix<f64>) -> Self {
        Self { basis }
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn ambient(&self) -> usize {
        self.basis.nrows() - 1
    }

    /// Projective dimension, −1 for the empty subspace.
    pub fn dim(&self) -> isize {
        self.basis.ncols() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.basis.ncols() == 0
    }

    /// The point when the subspace has dimension 0.
    pub fn as_point(&self) -> Option<ProjPoint> {
        (self.dim() == 0).then(|| ProjPoint::new(self.basis.column(0).into_owned()).expect("basis column is a unit vector"))
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        (0..self.basis.ncols())
            .map(|i| ProjPoint::new(self.basis.column(i).into_owned()).expect("unit column"))
            .collect()
    }

    /// Distance of the unit vector of `v` from the linear span.
    pub fn residual_vec(&self, v: &DVector<f64>) -> f64 {
        let u = v / v.norm();
        let proj = &self.basis * (self.basis.transpose() * &u);
        (u - proj).norm()
    }

    pub fn residual(&self, p: &ProjPoint) -> f64 {
        self.residual_vec(p.hom())
    }

    pub fn contains(&self, p: &ProjPoint, tol_incidence: f64) -> bool {
        self.residual(p) <= tol_incidence
    }

    /// Worst residual of the basis of `other` against this subspace.
    pub fn containment_residual(&self, other: &ProjSubspace) -> f64 {
        (0..other.basis.ncols())
            .map(|i| self.residual_vec(&other.basis.column(i).into_owned()))
            .fold(0.0, f64::max)
    }

    /// Orthonormal basis of the orthogonal complement of the linear span:
    /// the linear forms vanishing on the subspace.
    pub fn dual_basis(&self, tol_rank: f64) -> DMatrix<f64> {
        if self.basis.ncols() == 0 {
            return DMatrix::identity(self.basis.nrows(), self.basis.nrows());
        }
        null_space(&self.basis.transpose(), tol_rank).0
    }
}

impl From<&ProjPoint> for ProjSubspace {
    fn from(p: &ProjPoint) -> Self {
        ProjSubspace::from_orthonormal(DMatrix::from_column_slice(p.hom.len(), 1, p.hom.as_slice()))
    }
}

fn check_ambient(mut dims: impl Iterator<Item = usize>) -> Result<Option<usize>, GeomError> {
    let Some(first) = dims.next() else { return Ok(None) };
    for d in dims {
        if d != first {
            return Err(GeomError::AmbientMismatch(first, d));
        }
    }
    Ok(Some(first))
}

/// Smallest subspace containing all operands.
pub fn join(parts: &[&ProjSubspace], tol_rank: f64) -> Result<ProjSubspace, GeomError> {
    Ok(join_audited(parts, tol_rank)?.0)
}

pub fn join_audited(parts: &[&ProjSubspace], tol_rank: f64) -> Result<(ProjSubspace, RankAudit), GeomError> {
    let Some(d) = check_ambient(parts.iter().map(|p| p.ambient()))? else {
        return Err(GeomError::AmbientMismatch(0, 0));
    };
    let cols: usize = parts.iter().map(|p| p.basis.ncols()).sum();
    let mut m = DMatrix::zeros(d + 1, cols);
    let mut c = 0;
    for p in parts {
        for i in 0..p.basis.ncols() {
            m.set_column(c, &p.basis.column(i));
            c += 1;
        }
    }
    let (b, au) = range(&m, tol_rank);
    Ok((ProjSubspace::from_orthonormal(b), au))
}

/// Span of a set of points.
pub fn join_points(points: &[&ProjPoint], tol_rank: f64) -> Result<ProjSubspace, GeomError> {
    Ok(join_points_audited(points, tol_rank)?.0)
}

pub fn join_points_audited(points: &[&ProjPoint], tol_rank: f64) -> Result<(ProjSubspace, RankAudit), GeomError> {
    let subs: Vec<ProjSubspace> = points.iter().map(|p| ProjSubspace::from(*p)).collect();
    let refs: Vec<&ProjSubspace> = subs.iter().collect();
    join_audited(&refs, tol_rank)
}

/// Intersection of two subspaces.
pub fn meet(a: &ProjSubspace, b: &ProjSubspace, tol_rank: f64) -> Result<ProjSubspace, GeomError> {
    meet_all(&[a, b], tol_rank)
}

/// Intersection of any number of subspaces, from the null space of all
/// their dual constraints stacked together.
pub fn meet_all(parts: &[&ProjSubspace], tol_rank: f64) -> Result<ProjSubspace, GeomError> {
    Ok(meet_all_audited(parts, tol_rank)?.0)
}

pub fn meet_all_audited(parts: &[&ProjSubspace], tol_rank: f64) -> Result<(ProjSubspace, RankAudit), GeomError> {
    let Some(d) = check_ambient(parts.iter().map(|p| p.ambient()))? else {
        return Err(GeomError::AmbientMismatch(0, 0));
    };
    let duals: Vec<DMatrix<f64>> = parts.iter().map(|p| p.dual_basis(tol_rank)).collect();
    let rows: usize = duals.iter().map(|m| m.ncols()).sum();
    let mut c = DMatrix::zeros(rows, d + 1);
    let mut r = 0;
    for m in &duals {
        for i in 0..m.ncols() {
            c.set_row(r, &m.column(i).transpose());
            r += 1;
        }
    }
    let (n, au) = null_space(&c, tol_rank);
    Ok((ProjSubspace::from_orthonormal(n), au))
}

/// Meet that must be a single point. Returns the point together with the
/// rank margin, or the dimension actually found.
pub fn meet_point(parts: &[&ProjSubspace], tol_rank: f64) -> Result<(ProjPoint, f64), isize> {
    match meet_all_audited(parts, tol_rank) {
        Ok((s, au)) => match s.as_point() {
            Some(p) => Ok((p, au.margin)),
            None => Err(s.dim()),
        },
        Err(_) => Err(-2),
    }
}

/// A symmetric bilinear form on R^{d+1}.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadric {
    form: DMatrix<f64>,
    positive: usize,
    negative: usize,
    degenerate: bool,
}

impl Quadric {
    /// Symmetrizes `form` and records its inertia.
    pub fn new(form: DMatrix<f64>, tol_rank: f64) -> Self {
        let form = (&form + form.transpose()) * 0.5;
        let eig = SymmetricEigen::new(form.clone());
        let top = eig.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let floor = tol_rank * top;
        let positive = eig.eigenvalues.iter().filter(|&&x| x > floor).count();
        let negative = eig.eigenvalues.iter().filter(|&&x| x < -floor).count();
        let degenerate = top == 0.0 || positive + negative < form.nrows();
        Self { form, positive, negative, degenerate }
    }

    /// `diag(−1, 1, …, 1)` on RP^{n+1}: the unit sphere of R^{n+1}.
    pub fn moebius(n: usize) -> Self {
        let mut d = vec![1.0; n + 2];
        d[0] = -1.0;
        Self::new(DMatrix::from_diagonal(&DVector::from_vec(d)), 1e-12)
    }

    pub fn identity(ambient: usize) -> Self {
        Self::new(DMatrix::identity(ambient + 1, ambient + 1), 1e-12)
    }

    pub fn form(&self) -> &DMatrix<f64> {
        &self.form
    }

    pub fn ambient(&self) -> usize {
        self.form.nrows() - 1
    }

    /// Numbers of positive and negative eigenvalues.
    pub fn signature(&self) -> (usize, usize) {
        (self.positive, self.negative)
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn pairing(&self, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        (a.transpose() * &self.form * b)[0]
    }

    /// `|aᵀQb|` for unit representatives.
    pub fn normalized_pairing(&self, a: &ProjPoint, b: &ProjPoint) -> f64 {
        self.pairing(a.hom(), b.hom()).abs()
    }
}

/// The polar subspace `{x : xᵀQs = 0 for all s in S}`.
pub fn polar(s: &ProjSubspace, q: &Quadric, tol_rank: f64) -> Result<ProjSubspace, GeomError> {
    if q.is_degenerate() {
        return Err(GeomError::DegenerateQuadric);
    }
    if s.ambient() != q.ambient() {
        return Err(GeomError::AmbientMismatch(s.ambient(), q.ambient()));
    }
    let qs = q.form() * s.basis();
    Ok(ProjSubspace::from_orthonormal(null_space(&qs.transpose(), tol_rank).0))
}

pub fn polar_point(p: &ProjPoint, q: &Quadric, tol_rank: f64) -> Result<ProjSubspace, GeomError> {
    polar(&ProjSubspace::from(p), q, tol_rank)
}

/// Central projection of RP^d from a point onto a hyperplane, read in an
/// affine chart of that hyperplane.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralProjection {
    center: ProjPoint,
    /// The target is `{x : normalᵀx = 0}`.
    normal: DVector<f64>,
    /// Homogeneous coordinates of RP^{d-1} read off a target point.
    chart: DMatrix<f64>,
    /// Right inverse of `chart` with image in the target.
    embed: DMatrix<f64>,
}

impl CentralProjection {
    pub fn new(
        center: ProjPoint,
        normal: DVector<f64>,
        chart: DMatrix<f64>,
        embed: DMatrix<f64>,
    ) -> Result<Self, GeomError> {
        let d = center.ambient();
        if normal.len() != d + 1 {
            return Err(GeomError::AmbientMismatch(d, normal.len() - 1));
        }
        if chart.shape() != (d, d + 1) || embed.shape() != (d + 1, d) {
            return Err(GeomError::AmbientMismatch(d, chart.ncols() - 1));
        }
        if normal.dot(center.hom()).abs() <= 1e-12 * normal.norm() {
            return Err(GeomError::CenterFiber);
        }
        Ok(Self { center, normal, chart, embed })
    }

    /// Stereographic projection of RP^{n+1} from `B = (1, 0, …, 0, 1)`
    /// onto the hyperplane `x_{n+1} = 0`.
    pub fn moebius(n: usize) -> Self {
        let d = n + 1;
        let mut b = vec![0.0; d + 1];
        b[0] = 1.0;
        b[d] = 1.0;
        let mut normal = DVector::zeros(d + 1);
        normal[d] = 1.0;
        let mut chart = DMatrix::zeros(d, d + 1);
        for i in 0..d {
            chart[(i, i)] = 1.0;
        }
        let embed = chart.transpose();
        Self::new(ProjPoint::from_slice(&b).expect("nonzero"), normal, chart, embed).expect("valid projection")
    }

    pub fn center(&self) -> &ProjPoint {
        &self.center
    }

    /// Projective dimension of the source space.
    pub fn ambient(&self) -> usize {
        self.center.ambient()
    }

    pub fn target(&self) -> ProjSubspace {
        ProjSubspace::from_columns(&self.embed, 1e-12)
    }

    /// Homogeneous image in RP^{d-1}; may be a point at infinity.
    pub fn project_hom(&self, p: &ProjPoint, tol_point: f64) -> Result<ProjPoint, GeomError> {
        if p.ambient() != self.ambient() {
            return Err(GeomError::AmbientMismatch(p.ambient(), self.ambient()));
        }
        if p.distance(&self.center) <= tol_point {
            return Err(GeomError::CenterFiber);
        }
        let b = self.center.hom();
        let t = p.hom() - b * (self.normal.dot(p.hom()) / self.normal.dot(b));
        ProjPoint::new(&self.chart * t).map_err(|_| GeomError::CenterFiber)
    }

    /// Affine coordinates of `(p ∨ B) ∩ target`.
    pub fn project(&self, p: &ProjPoint, tol_point: f64) -> Result<DVector<f64>, GeomError> {
        self.project_hom(p, tol_point)?.affine(tol_point).ok_or(GeomError::InfinitePoint(None))
    }

    /// Homogeneous point of the target with affine coordinates `x`.
    pub fn embed_vec(&self, x: &[f64]) -> DVector<f64> {
        &self.embed * ProjPoint::from_affine(x).hom()
    }

    pub fn embed(&self, x: &[f64]) -> ProjPoint {
        ProjPoint::new(self.embed_vec(x)).expect("embedding is injective")
    }

    /// Embed a subspace of RP^{d-1} into the target hyperplane.
    pub fn embed_subspace(&self, s: &ProjSubspace) -> ProjSubspace {
        ProjSubspace::from_columns(&(&self.embed * s.basis()), 1e-12)
    }

    /// Image of a subspace not containing the center.
    pub fn project_subspace(&self, s: &ProjSubspace, tol_rank: f64) -> ProjSubspace {
        let b = self.center.hom();
        let nb = self.normal.dot(b);
        let cols: Vec<DVector<f64>> = (0..s.basis().ncols())
            .map(|i| {
                let x = s.basis().column(i).into_owned();
                &self.chart * (&x - b * (self.normal.dot(&x) / nb))
            })
            .collect();
        ProjSubspace::from_columns(&DMatrix::from_columns(&cols), tol_rank)
    }

    /// The line `embed(x) ∨ B`.
    pub fn fiber_line(&self, x: &[f64]) -> ProjSubspace {
        let cols = DMatrix::from_columns(&[self.embed_vec(x), self.center.hom().clone()]);
        ProjSubspace::from_columns(&cols, 1e-12)
    }
}

/// Affine point and unit direction of a projective line of RP^n read in the
/// chart `x0 = 1`. `None` if the line lies at infinity.
pub fn affine_line(line: &ProjSubspace, tol: f64) -> Option<(DVector<f64>, DVector<f64>)> {
    if line.dim() != 1 {
        return None;
    }
    let b1 = line.basis().column(0).into_owned();
    let b2 = line.basis().column(1).into_owned();
    let (w1, w2) = (b1[0], b2[0]);
    let wn = (w1 * w1 + w2 * w2).sqrt();
    if wn <= tol {
        return None;
    }
    let p = &b1 * w1 + &b2 * w2;
    let d = &b1 * w2 - &b2 * w1;
    let n = p.len();
    let point = p.rows(1, n - 1) / p[0];
    let dir = d.rows(1, n - 1).into_owned();
    let dn = dir.norm();
    if dn == 0.0 {
        return None;
    }
    Some((point, dir / dn))
}
