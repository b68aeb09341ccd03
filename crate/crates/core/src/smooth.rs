//! Smooth triply conjugate systems x: U ⊂ R^3 → R^3.
//!
//! Coefficients are read off from ∂_i∂_j x = a_ij ∂_i x + a_ji ∂_j x by
//! least squares in the tangent basis. Directions are numbered 1..=3 as in
//! the lattice; `a[i][j]` below is a_{i+1,j+1}.

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use serde::{Deserialize, Serialize};

use crate::conjugate::ConjugateBinet;
use crate::error::SmoothError;
use crate::lattice::Block;
use crate::principal::check_principal;
use crate::projective::{ProjPoint, ToleranceConfig};
use crate::report::CheckReport;

/// Floor below which a coefficient, or the difference a_21 − a_31, counts as
/// zero (relative to the largest coefficient at the point, and at least 1).
pub const COEFFICIENT_FLOOR: f64 = 1e-8;

/// Second-order central differences with step `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FDConfig {
    pub h: f64,
}

impl FDConfig {
    pub fn new(h: f64) -> Result<Self, SmoothError> {
        if !(1e-6..=1e-2).contains(&h) {
            return Err(SmoothError::InvalidStep(h));
        }
        Ok(Self { h })
    }
}

impl Default for FDConfig {
    fn default() -> Self {
        Self { h: 1e-4 }
    }
}

/// Where derivatives come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Derivatives {
    Analytic,
    FiniteDifference(FDConfig),
    /// Central differences on the nodes of a tabulated system.
    Grid,
}

/// Samples of a map on a regular grid of parameter values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabulatedSystem {
    pub origin: [f64; 3],
    pub step: [f64; 3],
    pub shape: [usize; 3],
    /// Row-major, last index fastest.
    pub values: Vec<[f64; 3]>,
}

impl TabulatedSystem {
    /// Samples `s` on the grid.
    pub fn sample(s: &SmoothSystem, origin: [f64; 3], step: [f64; 3], shape: [usize; 3]) -> Result<Self, SmoothError> {
        let mut values = Vec::with_capacity(shape.iter().product());
        for a in 0..shape[0] {
            for b in 0..shape[1] {
                for c in 0..shape[2] {
                    let u = [
                        origin[0] + a as f64 * step[0],
                        origin[1] + b as f64 * step[1],
                        origin[2] + c as f64 * step[2],
                    ];
                    let x = s.eval(&u)?;
                    values.push([x[0], x[1], x[2]]);
                }
            }
        }
        Ok(Self { origin, step, shape, values })
    }

    fn node(&self, u: &[f64; 3]) -> Option<usize> {
        let mut idx = [0usize; 3];
        for k in 0..3 {
            let t = (u[k] - self.origin[k]) / self.step[k];
            let r = t.round();
            if (t - r).abs() > 1e-6 || r < 0.0 || r as usize >= self.shape[k] {
                return None;
            }
            idx[k] = r as usize;
        }
        Some((idx[0] * self.shape[1] + idx[1]) * self.shape[2] + idx[2])
    }
}

#[derive(Debug, Clone, PartialEq)]
enum MapKind {
    /// Spherical coordinates with parameters (θ, r, φ).
    Spherical,
    /// Parabolic coordinates with parameters (σ, τ, φ).
    Parabolic,
    Affine(Matrix3<f64>, Vector3<f64>),
    Tabulated(TabulatedSystem),
}

/// Value, tangents and mixed second derivatives at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub x: Vector3<f64>,
    pub d: [Vector3<f64>; 3],
    /// `dd[i][j]` for i ≠ j; the diagonal is unused and zero.
    pub dd: [[Vector3<f64>; 3]; 3],
}

/// A parametrized map with a choice of derivative source.
///
/// Parameter `i` of the system is parameter `labeling[i]` of the
/// underlying map, and an outer affine map `x ↦ A x + b` is applied last.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothSystem {
    pub name: String,
    kind: MapKind,
    labeling: [usize; 3],
    outer: Option<(Matrix3<f64>, Vector3<f64>)>,
    pub derivatives: Derivatives,
}

pub const BUILTIN_SYSTEMS: [&str; 5] = ["spherical", "parabolic", "affine", "shear", "cartesian"];

impl SmoothSystem {
    fn with_kind(name: &str, kind: MapKind) -> Self {
        Self { name: name.into(), kind, labeling: [0, 1, 2], outer: None, derivatives: Derivatives::Analytic }
    }

    /// x = r(sin θ cos φ, sin θ sin φ, cos θ) in the order (θ, r, φ).
    pub fn spherical() -> Self {
        Self::with_kind("spherical", MapKind::Spherical)
    }

    /// x = (στ cos φ, στ sin φ, (τ² − σ²)/2) in the order (σ, τ, φ).
    pub fn parabolic() -> Self {
        Self::with_kind("parabolic", MapKind::Parabolic)
    }

    pub fn affine(m: Matrix3<f64>, t: Vector3<f64>) -> Self {
        Self::with_kind("affine", MapKind::Affine(m, t))
    }

    /// x(u) = (u1 + u2, u2, u3).
    pub fn shear() -> Self {
        let mut s = Self::affine(Matrix3::new(1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0), Vector3::zeros());
        s.name = "shear".into();
        s
    }

    pub fn cartesian() -> Self {
        let mut s = Self::affine(Matrix3::identity(), Vector3::zeros());
        s.name = "cartesian".into();
        s
    }

    pub fn tabulated(t: TabulatedSystem) -> Self {
        let mut s = Self::with_kind("tabulated", MapKind::Tabulated(t));
        s.derivatives = Derivatives::Grid;
        s
    }

    /// One of [`BUILTIN_SYSTEMS`].
    pub fn builtin(name: &str) -> Option<Self> {
        Some(match name {
            "spherical" => Self::spherical(),
            "parabolic" => Self::parabolic(),
            "affine" => {
                let m = Matrix3::new(1.0, 0.3, -0.2, 0.1, 0.9, 0.4, -0.3, 0.2, 1.1);
                Self::affine(m, Vector3::new(0.5, -0.2, 0.1))
            }
            "shear" => Self::shear(),
            "cartesian" => Self::cartesian(),
            _ => return None,
        })
    }

    /// A point inside the natural domain of a built-in system, away from
    /// its singular set.
    pub fn default_point(&self) -> [f64; 3] {
        match self.kind {
            MapKind::Spherical | MapKind::Parabolic => {
                let natural = match self.kind {
                    MapKind::Spherical => [0.7, 1.3, 0.4],
                    _ => [0.8, 1.1, 0.3],
                };
                let mut u = [0.0; 3];
                for i in 0..3 {
                    u[i] = natural[self.labeling[i]];
                }
                u
            }
            MapKind::Affine(..) => [0.3, -0.2, 0.5],
            MapKind::Tabulated(ref t) => {
                let mut u = [0.0; 3];
                for k in 0..3 {
                    u[k] = t.origin[k] + (t.shape[k] / 2) as f64 * t.step[k];
                }
                u
            }
        }
    }

    /// Reorders the parameters: the new parameter `i` is the old `perm[i]`
    /// (0-based).
    pub fn relabeled(&self, perm: [usize; 3]) -> Self {
        let mut s = self.clone();
        s.labeling = [self.labeling[perm[0]], self.labeling[perm[1]], self.labeling[perm[2]]];
        s
    }

    /// Composes with the affine map `x ↦ m x + t`.
    pub fn transformed(&self, m: Matrix3<f64>, t: Vector3<f64>) -> Self {
        let mut s = self.clone();
        s.outer = Some(match self.outer {
            Some((m0, t0)) => (m * m0, m * t0 + t),
            None => (m, t),
        });
        s
    }

    pub fn with_derivatives(&self, d: Derivatives) -> Self {
        let mut s = self.clone();
        if !matches!(s.kind, MapKind::Tabulated(_)) {
            s.derivatives = d;
        }
        s
    }

    /// Tolerance at which verdicts are taken: 1e−6 with analytic
    /// derivatives, 1e−4 with finite differences.
    pub fn default_tol(&self) -> f64 {
        match self.derivatives {
            Derivatives::Analytic => 1e-6,
            _ => 1e-4,
        }
    }

    /// Step used to differentiate derived quantities (coefficients, focal
    /// points) along a parameter direction.
    pub fn outer_step(&self, axis: usize) -> f64 {
        match (&self.derivatives, &self.kind) {
            (Derivatives::Analytic, _) => 1e-4,
            (Derivatives::FiniteDifference(fd), _) => (10.0 * fd.h).min(1e-2),
            (Derivatives::Grid, MapKind::Tabulated(t)) => t.step[self.labeling[axis]],
            (Derivatives::Grid, _) => 1e-4,
        }
    }

    fn coefficient_floor(&self) -> f64 {
        match self.derivatives {
            Derivatives::Analytic => COEFFICIENT_FLOOR,
            Derivatives::FiniteDifference(fd) => COEFFICIENT_FLOOR.max(100.0 * f64::EPSILON / (fd.h * fd.h)),
            Derivatives::Grid => 1e-6,
        }
    }

    fn natural(&self, u: &[f64; 3]) -> [f64; 3] {
        let mut n = [0.0; 3];
        for i in 0..3 {
            n[self.labeling[i]] = u[i];
        }
        n
    }

    fn apply_outer(&self, x: Vector3<f64>, linear: bool) -> Vector3<f64> {
        match &self.outer {
            Some((m, _)) if linear => m * x,
            Some((m, t)) => m * x + t,
            None => x,
        }
    }

    /// x(u).
    pub fn eval(&self, u: &[f64; 3]) -> Result<Vector3<f64>, SmoothError> {
        let n = self.natural(u);
        let x = match &self.kind {
            MapKind::Spherical => {
                let [th, r, ph] = n;
                if r <= 0.0 {
                    return Err(SmoothError::OutOfDomain(*u));
                }
                Vector3::new(r * th.sin() * ph.cos(), r * th.sin() * ph.sin(), r * th.cos())
            }
            MapKind::Parabolic => {
                let [s, t, ph] = n;
                Vector3::new(s * t * ph.cos(), s * t * ph.sin(), (t * t - s * s) / 2.0)
            }
            MapKind::Affine(m, t) => m * Vector3::from(n) + t,
            MapKind::Tabulated(tab) => {
                let k = tab.node(&n).ok_or(SmoothError::OutOfDomain(*u))?;
                Vector3::from(tab.values[k])
            }
        };
        Ok(self.apply_outer(x, false))
    }

    fn analytic_natural(&self, n: &[f64; 3], u: &[f64; 3]) -> Result<Jet, SmoothError> {
        let z = Vector3::zeros();
        let mut dd = [[z; 3]; 3];
        let (x, d) = match &self.kind {
            MapKind::Spherical => {
                let [th, r, ph] = *n;
                if r <= 0.0 {
                    return Err(SmoothError::OutOfDomain(*u));
                }
                let (st, ct, sp, cp) = (th.sin(), th.cos(), ph.sin(), ph.cos());
                let x = Vector3::new(r * st * cp, r * st * sp, r * ct);
                let d_th = Vector3::new(r * ct * cp, r * ct * sp, -r * st);
                let d_r = Vector3::new(st * cp, st * sp, ct);
                let d_ph = Vector3::new(-r * st * sp, r * st * cp, 0.0);
                let th_r = d_th / r;
                let th_ph = Vector3::new(-r * ct * sp, r * ct * cp, 0.0);
                let r_ph = d_ph / r;
                dd[0][1] = th_r;
                dd[0][2] = th_ph;
                dd[1][2] = r_ph;
                (x, [d_th, d_r, d_ph])
            }
            MapKind::Parabolic => {
                let [s, t, ph] = *n;
                let (sp, cp) = (ph.sin(), ph.cos());
                let x = Vector3::new(s * t * cp, s * t * sp, (t * t - s * s) / 2.0);
                let d_s = Vector3::new(t * cp, t * sp, -s);
                let d_t = Vector3::new(s * cp, s * sp, t);
                let d_ph = Vector3::new(-s * t * sp, s * t * cp, 0.0);
                dd[0][1] = Vector3::new(cp, sp, 0.0);
                dd[0][2] = Vector3::new(-t * sp, t * cp, 0.0);
                dd[1][2] = Vector3::new(-s * sp, s * cp, 0.0);
                (x, [d_s, d_t, d_ph])
            }
            MapKind::Affine(m, t) => {
                (m * Vector3::from(*n) + t, [m.column(0).into(), m.column(1).into(), m.column(2).into()])
            }
            MapKind::Tabulated(_) => unreachable!("tabulated systems use grid differences"),
        };
        for i in 0..3 {
            for j in 0..i {
                dd[i][j] = dd[j][i];
            }
        }
        Ok(Jet { x, d, dd })
    }

    fn steps(&self) -> [f64; 3] {
        match (&self.derivatives, &self.kind) {
            (Derivatives::FiniteDifference(fd), _) => [fd.h; 3],
            (_, MapKind::Tabulated(t)) => {
                let mut s = [0.0; 3];
                for i in 0..3 {
                    s[i] = t.step[self.labeling[i]];
                }
                s
            }
            _ => [FDConfig::default().h; 3],
        }
    }

    /// Value, tangents and mixed partials at `u`.
    pub fn jet(&self, u: &[f64; 3]) -> Result<Jet, SmoothError> {
        if self.derivatives == Derivatives::Analytic && !matches!(self.kind, MapKind::Tabulated(_)) {
            let n = self.natural(u);
            let nat = self.analytic_natural(&n, u)?;
            let z = Vector3::zeros();
            let mut d = [z; 3];
            let mut dd = [[z; 3]; 3];
            for i in 0..3 {
                d[i] = self.apply_outer(nat.d[self.labeling[i]], true);
                for j in 0..3 {
                    if i != j {
                        dd[i][j] = self.apply_outer(nat.dd[self.labeling[i]][self.labeling[j]], true);
                    }
                }
            }
            return Ok(Jet { x: self.apply_outer(nat.x, false), d, dd });
        }
        let h = self.steps();
        let at = |du: [f64; 3]| self.eval(&[u[0] + du[0], u[1] + du[1], u[2] + du[2]]);
        let unit = |i: usize, s: f64| {
            let mut e = [0.0; 3];
            e[i] = s * h[i];
            e
        };
        let x = self.eval(u)?;
        let z = Vector3::zeros();
        let mut d = [z; 3];
        let mut dd = [[z; 3]; 3];
        for i in 0..3 {
            d[i] = (at(unit(i, 1.0))? - at(unit(i, -1.0))?) / (2.0 * h[i]);
            for j in i + 1..3 {
                let corner = |si: f64, sj: f64| {
                    let mut e = unit(i, si);
                    e[j] = sj * h[j];
                    at(e)
                };
                let m = (corner(1.0, 1.0)? - corner(1.0, -1.0)? - corner(-1.0, 1.0)? + corner(-1.0, -1.0)?)
                    / (4.0 * h[i] * h[j]);
                dd[i][j] = m;
                dd[j][i] = m;
            }
        }
        Ok(Jet { x, d, dd })
    }
}

/// The table a_ij at a point with the out-of-span residual of each mixed
/// partial.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateCoefficients {
    /// `a[i][j]` is a_{i+1,j+1}; the diagonal is zero.
    pub a: [[f64; 3]; 3],
    /// `span_residual[i][j]` (i < j) is |∂_i∂_j x − proj| relative to the
    /// largest of |∂_i∂_j x|, |∂_i x|, |∂_j x|.
    pub span_residual: [[f64; 3]; 3],
}

impl ConjugateCoefficients {
    /// a_ij with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i - 1][j - 1]
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_span_residual(&self) -> f64 {
        self.span_residual.iter().flatten().fold(0.0, |m: f64, v| m.max(*v))
    }
}

fn check_tangents(jet: &Jet) -> Result<(), SmoothError> {
    for i in 0..3 {
        for j in i + 1..3 {
            let (a, b) = (&jet.d[i], &jet.d[j]);
            let s = a.cross(b).norm() / (a.norm() * b.norm());
            if !(s > 1e-8) {
                return Err(SmoothError::DependentTangents);
            }
        }
    }
    Ok(())
}

fn coefficients_of(jet: &Jet, tol_span: f64) -> Result<ConjugateCoefficients, SmoothError> {
    check_tangents(jet)?;
    let mut a = [[0.0; 3]; 3];
    let mut res = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i + 1..3 {
            let (di, dj, m) = (&jet.d[i], &jet.d[j], &jet.dd[i][j]);
            let g = Matrix2::new(di.dot(di), di.dot(dj), dj.dot(di), dj.dot(dj));
            let rhs = Vector2::new(di.dot(m), dj.dot(m));
            let c = g.lu().solve(&rhs).ok_or(SmoothError::DependentTangents)?;
            let r = (m - di * c[0] - dj * c[1]).norm() / m.norm().max(di.norm()).max(dj.norm());
            if r > tol_span {
                return Err(SmoothError::NotConjugate { i: i + 1, j: j + 1, residual: r });
            }
            a[i][j] = c[0];
            a[j][i] = c[1];
            res[i][j] = r;
        }
    }
    Ok(ConjugateCoefficients { a, span_residual: res })
}

/// The coefficients a_ij at `u`. The span tolerance is the system's
/// default verdict tolerance.
pub fn coefficients_at(s: &SmoothSystem, u: &[f64; 3]) -> Result<ConjugateCoefficients, SmoothError> {
    coefficients_of(&s.jet(u)?, s.default_tol())
}

fn shifted(u: &[f64; 3], axis: usize, t: f64) -> [f64; 3] {
    let mut v = *u;
    v[axis] += t;
    v
}

/// ∂_k a_ij by central differences of the coefficients.
pub fn coefficient_derivative(s: &SmoothSystem, u: &[f64; 3], i: usize, j: usize, k: usize) -> Result<f64, SmoothError> {
    let h = s.outer_step(k - 1);
    let p = coefficients_at(s, &shifted(u, k - 1, h))?.get(i, j);
    let m = coefficients_at(s, &shifted(u, k - 1, -h))?.get(i, j);
    Ok((p - m) / (2.0 * h))
}

/// For each i (with j, k the other two directions), the larger of
/// |∂_k a_ij − R| and |∂_j a_ik − R| with R = a_ij a_jk + a_kj a_ik − a_ij a_ik.
pub fn compatibility_residual(s: &SmoothSystem, u: &[f64; 3]) -> Result<[f64; 3], SmoothError> {
    let c = coefficients_at(s, u)?;
    let mut out = [0.0; 3];
    for i in 1..=3 {
        let others: Vec<usize> = (1..=3).filter(|&m| m != i).collect();
        let (j, k) = (others[0], others[1]);
        let rhs = c.get(i, j) * c.get(j, k) + c.get(k, j) * c.get(i, k) - c.get(i, j) * c.get(i, k);
        let a = coefficient_derivative(s, u, i, j, k)?;
        let b = coefficient_derivative(s, u, i, k, j)?;
        out[i - 1] = (a - rhs).abs().max((b - rhs).abs());
    }
    Ok(out)
}

/// A focal point of the system.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacePoint {
    pub point: Vector3<f64>,
    pub pair: (usize, usize),
    /// a_21 and a_31 agree within the coefficient floor.
    pub degenerate: bool,
}

fn vanishes(c: &ConjugateCoefficients, v: f64, floor: f64) -> bool {
    v.abs() <= floor * c.max_abs().max(1.0)
}

/// L_ij = x − (1/a_ji) ∂_i x at `u`.
pub fn laplace_transform(s: &SmoothSystem, u: &[f64; 3], i: usize, j: usize) -> Result<LaplacePoint, SmoothError> {
    let jet = s.jet(u)?;
    let c = coefficients_of(&jet, s.default_tol())?;
    let aji = c.get(j, i);
    if vanishes(&c, aji, s.coefficient_floor()) {
        return Err(SmoothError::VanishingCoefficient { i, j });
    }
    let degenerate = vanishes(&c, c.get(2, 1) - c.get(3, 1), s.coefficient_floor());
    Ok(LaplacePoint { point: jet.x - jet.d[i - 1] / aji, pair: (i, j), degenerate })
}

/// ∂_2 L_13 by central differences of the focal point along u_2.
pub fn laplace_derivative_fd(s: &SmoothSystem, u: &[f64; 3]) -> Result<Vector3<f64>, SmoothError> {
    let h = s.outer_step(1);
    let p = laplace_transform(s, &shifted(u, 1, h), 1, 3)?.point;
    let m = laplace_transform(s, &shifted(u, 1, -h), 1, 3)?.point;
    Ok((p - m) / (2.0 * h))
}

/// ∂_2 L_13 = ((a_21 − a_31)/a_31)((a_32/a_31) ∂_1 x − ∂_2 x).
pub fn laplace_derivative_formula(s: &SmoothSystem, u: &[f64; 3]) -> Result<Vector3<f64>, SmoothError> {
    let jet = s.jet(u)?;
    let c = coefficients_of(&jet, s.default_tol())?;
    let a31 = c.get(3, 1);
    if vanishes(&c, a31, s.coefficient_floor()) {
        return Err(SmoothError::VanishingCoefficient { i: 1, j: 3 });
    }
    Ok((c.get(2, 1) - a31) / a31 * (jet.d[0] * (c.get(3, 2) / a31) - jet.d[1]))
}

/// Outcome of the biconditional at one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Biconditional {
    /// The two conditions and full orthogonality agree.
    Holds,
    Violated,
    /// The orthogonality of ∂_1 x, ∂_2 x holds but the second condition
    /// cannot be evaluated because the non-degeneracy
    /// assumptions fail.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem71 {
    /// |cos| between ∂_1 x and ∂_2 x.
    pub first: f64,
    /// |cos| between ∂_2 L_13 and ∂_3 x, when defined.
    pub second: Option<f64>,
    /// |cos| for the pairs 12, 13, 23.
    pub pairwise: [f64; 3],
    pub conditions: Option<bool>,
    pub orthogonal: bool,
    pub verdict: Biconditional,
    pub report: CheckReport,
}

fn abs_cos(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    (a.dot(b) / (a.norm() * b.norm())).abs()
}

/// Both conditions of the characterization against full orthogonality at
/// `u`, with tolerance `tol` on the cosines.
pub fn theorem71_check(s: &SmoothSystem, u: &[f64; 3], tol: f64) -> Result<Theorem71, SmoothError> {
    let jet = s.jet(u)?;
    let c = coefficients_of(&jet, tol)?;
    let mut rep = CheckReport::new(&format!("smooth {}", s.name));
    rep.push("conjugacy", None, c.max_span_residual(), tol);
    let pairwise = [abs_cos(&jet.d[0], &jet.d[1]), abs_cos(&jet.d[0], &jet.d[2]), abs_cos(&jet.d[1], &jet.d[2])];
    let first = pairwise[0];
    let floor = s.coefficient_floor();
    let mut missing = Vec::new();
    for (i, j) in [(3, 1), (3, 2)] {
        if vanishes(&c, c.get(i, j), floor) {
            missing.push(format!("a_{i}{j} vanishes"));
        }
    }
    if vanishes(&c, c.get(2, 1) - c.get(3, 1), floor) {
        missing.push("a_21 = a_31".to_string());
    }
    let mut second = None;
    if missing.is_empty() {
        let dl = laplace_derivative_fd(s, u)?;
        if dl.norm() <= COEFFICIENT_FLOOR * jet.d[1].norm() {
            missing.push("the derivative of L_13 vanishes".to_string());
        } else {
            second = Some(abs_cos(&dl, &jet.d[2]));
        }
    }
    rep.push("first condition <d1 x, d2 x>", None, first, tol);
    match second {
        Some(v) => rep.push("second condition <d2 L13, d3 x>", None, v, tol),
        None => rep.warn(format!("second condition not evaluated: {}", missing.join(", "))),
    }
    for (k, name) in ["orthogonality 12", "orthogonality 13", "orthogonality 23"].iter().enumerate() {
        rep.push(name, None, pairwise[k], tol);
    }
    let orthogonal = pairwise.iter().all(|&p| p <= tol);
    let conditions = match (first <= tol, second) {
        (false, _) => Some(false),
        (true, Some(v)) => Some(v <= tol),
        (true, None) => None,
    };
    let verdict = match conditions {
        Some(b) if b == orthogonal => Biconditional::Holds,
        Some(_) => Biconditional::Violated,
        None => Biconditional::NotApplicable,
    };
    rep.push_verdict("biconditional", None, (verdict == Biconditional::Violated) as u8 as f64, verdict != Biconditional::Violated);
    Ok(Theorem71 { first, second, pairwise, conditions, orthogonal, verdict, report: rep })
}

/// A conjugate binet sampled from a smooth system with its defects.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledBinet {
    pub binet: ConjugateBinet,
    /// Largest distance of a quad vertex from the plane of the other three,
    /// relative to the quad diameter.
    pub planarity_defect: f64,
    /// Largest |cos| between edges of different directions at a vertex.
    pub orthogonality_defect: f64,
    /// Largest cross cosine of the sampled binet, when all face points are
    /// finite.
    pub cross_defect: Option<f64>,
    pub report: CheckReport,
}

fn quad_planarity(p: [&Vector3<f64>; 4]) -> f64 {
    let n = (p[1] - p[0]).cross(&(p[3] - p[0]));
    let diam = p.iter().flat_map(|a| p.iter().map(move |b| (*a - *b).norm())).fold(0.0, f64::max);
    if n.norm() == 0.0 || diam == 0.0 {
        return 0.0;
    }
    (p[2] - p[0]).dot(&n).abs() / n.norm() / diam
}

/// Samples `s` at `u0 + eps·v` on the block. Vertices get x, 12-faces the
/// value at the face center, 23-faces the focal point L_13 and 13-faces
/// L_23 at the face center. Vanishing coefficients put the focal point at
/// infinity in the direction of the tangent, with a warning.
pub fn sample_discrete(s: &SmoothSystem, u0: &[f64; 3], eps: f64, block: &Block) -> Result<SampledBinet, SmoothError> {
    let at = |c: &[f64]| -> [f64; 3] {
        [u0[0] + eps * c[0], u0[1] + eps * c[1], u0[2] + eps * c[2]]
    };
    let mut binet = ConjugateBinet::new(3);
    let mut rep = CheckReport::new(&format!("sampled {}", s.name));
    let mut xs = std::collections::BTreeMap::new();
    for v in block.vertices() {
        let c: Vec<f64> = v.0.iter().map(|&k| k as f64).collect();
        let x = s.eval(&at(&c))?;
        binet.vertices.insert(v.clone(), ProjPoint::from_affine(x.as_slice()));
        xs.insert(v, x);
    }
    let mut infinite = 0;
    for f in block.faces() {
        let mut c: Vec<f64> = f.base.iter().map(|&k| k as f64).collect();
        c[f.dirs.0 - 1] += 0.5;
        c[f.dirs.1 - 1] += 0.5;
        let u = at(&c);
        let p = match f.dirs {
            (1, 2) => ProjPoint::from_affine(s.eval(&u)?.as_slice()),
            (a, b) => {
                // 23-faces carry L_13, 13-faces L_23
                let (i, j) = if (a, b) == (2, 3) { (1, 3) } else { (2, 3) };
                match laplace_transform(s, &u, i, j) {
                    Ok(l) => ProjPoint::from_affine(l.point.as_slice()),
                    Err(SmoothError::VanishingCoefficient { .. }) => {
                        infinite += 1;
                        let d = s.jet(&u)?.d[i - 1];
                        ProjPoint::at_infinity(d.as_slice()).map_err(|_| SmoothError::DependentTangents)?
                    }
                    Err(e) => return Err(e),
                }
            }
        };
        binet.faces.insert(f, p);
    }
    if infinite > 0 {
        rep.warn(format!("{infinite} focal points at infinity"));
    }
    let mut planarity: f64 = 0.0;
    for f in block.faces() {
        let [a, b, c, d] = f.vertices();
        planarity = planarity.max(quad_planarity([&xs[&a], &xs[&b], &xs[&c], &xs[&d]]));
    }
    let mut orth: f64 = 0.0;
    for v in block.vertices() {
        for i in 1..=3 {
            for j in i + 1..=3 {
                let (vi, vj) = (v.step(i), v.step(j));
                if let (Some(xi), Some(xj)) = (xs.get(&vi), xs.get(&vj)) {
                    orth = orth.max(abs_cos(&(xi - xs[&v]), &(xj - xs[&v])));
                }
            }
        }
    }
    let cross = if infinite == 0 {
        check_principal(&binet, &ToleranceConfig::default())
            .ok()
            .map(|r| r.max_residual("cross orthogonality"))
    } else {
        None
    };
    rep.push_verdict("planarity defect", None, planarity, true);
    rep.push_verdict("orthogonality defect", None, orth, true);
    if let Some(c) = cross {
        rep.push_verdict("cross defect", None, c, true);
    }
    Ok(SampledBinet { binet, planarity_defect: planarity, orthogonality_defect: orth, cross_defect: cross, report: rep })
}
