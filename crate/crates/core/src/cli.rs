//! The `binet` command line.
//!
//! Exit codes: 0 on success or a passing verification, 1 on a failing
//! verification or a geometric failure, 2 on bad arguments, I/O or schema
//! errors. `BINET_LOG` sets the log filter (default `warn`).

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::conjugate::{
    check_face_net, check_vertex_net, propagate_face_net, propagate_vertex_net, ConjugateBinet, FaceNet, Propagation,
    VertexNet,
};
use crate::docs::{
    binet_to_docs, cartesian_docs, check_docs, check_docs_consistency, consistency_initial, docs_inner_block,
    docs_seed_faces, docs_to_binet, Docs, PATH_TOLERANCE,
};
use crate::error::{DocError, GeomError, SmoothError};
use crate::generate::{
    affine_cube_seed, affine_vertex_net, cartesian_binet, coordinate_plane_data, random_conjugate_net, random_docs,
    random_polar_binet, random_principal_binet, rng, PolarParams, QuadricKind,
};
use crate::io::{to_obj, CellValue, DocKind, NetDocument};
use crate::lattice::{Block, Cell};
use crate::polar::{check_polar_inclusions, check_polarity, propagate_polar_binet};
use crate::principal::{build_principal, check_principal, moebius_lift, project_binet, project_planes};
use crate::projective::{CentralProjection, ProjPoint, ToleranceConfig};
use crate::report::{CheckReport, Report, RunConfig};
use crate::smooth::{sample_discrete, theorem71_check, Derivatives, FDConfig, SmoothSystem, TabulatedSystem};

#[derive(Debug, Parser)]
#[command(name = "binet", version, about = "Conjugate, polar and principal binets on Z^N")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Block side lengths, e.g. 2,2,2.
    #[arg(long, global = true, value_parser = parse_block)]
    pub block: Option<Block>,
    /// Relative singular value below which a direction is dropped [default: 1e-9]
    #[arg(long, global = true)]
    pub tol_rank: Option<f64>,
    /// Incidence residual bound [default: 1e-8]
    #[arg(long, global = true)]
    pub tol_incidence: Option<f64>,
    /// Distance at which two points are the same [default: 1e-9]
    #[arg(long, global = true)]
    pub tol_point: Option<f64>,
    /// Bound on |cos| for orthogonality [default: 1e-8]
    #[arg(long, global = true)]
    pub tol_orth: Option<f64>,
    /// Squared radius of the anchor sphere of a Möbius lift.
    #[arg(long, global = true, default_value_t = 0.1)]
    pub family_parameter: f64,
    /// Treat export warnings as errors.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Output file instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seeded test net.
    Generate {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Smooth system for smooth-sample and smooth-table.
        #[arg(long, default_value = "spherical")]
        system: String,
        /// Parameter step of smooth-sample.
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Grid step of smooth-table.
        #[arg(long, default_value_t = 2e-3)]
        step: f64,
    },
    /// Complete initial data on the coordinate planes of the block.
    Propagate { input: PathBuf },
    /// Möbius lift of a principal binet or a dOCS.
    Lift { input: PathBuf },
    /// Project a lift or a Möbius polar binet to R^n.
    Project { input: PathBuf },
    /// Convert between principal binets and dOCS.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: ConvertTarget,
    },
    /// Run a verification suite; exits 1 when a check fails.
    Verify {
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Built-in smooth system for the smooth suite.
        #[arg(long)]
        system: Option<String>,
        /// Parameter point for the smooth suite, e.g. 0.7,1.3,0.4.
        #[arg(long, value_delimiter = ',', num_args = 3)]
        point: Option<Vec<f64>>,
        /// Use finite differences with this step in the smooth suite.
        #[arg(long)]
        fd_step: Option<f64>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Write a document as canonical JSON or as OBJ.
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ExportFormat::Json)]
        format: ExportFormat,
        /// Draw face axes of a binet in R^3.
        #[arg(long)]
        axes: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Random conjugate vertex net on the coordinate planes.
    ConjugateInitial,
    /// Random conjugate vertex net on the whole block.
    Conjugate,
    /// Random Möbius polar binet on the coordinate planes, with planes.
    PolarInitial,
    /// Random Möbius polar binet on the whole block.
    Polar,
    /// Projection of polar-initial: principal data with vertex planes.
    PrincipalInitial,
    /// Random principal binet on the whole block.
    Principal,
    /// Seven vertices of the unit cube.
    AffineCube,
    /// Random affine image of the lattice.
    AffineNet,
    /// Integer grid with its translation face net.
    CartesianBinet,
    CartesianDocs,
    RandomDocs,
    /// Discrete samples of a smooth system.
    SmoothSample,
    /// Tabulated values of a smooth system around its default point.
    SmoothTable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvertTarget {
    Docs,
    Binet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Conjugate,
    Polar,
    Principal,
    Docs,
    Consistency4d,
    Smooth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Json,
    Obj,
}

pub fn parse_block(s: &str) -> Result<Block, String> {
    let sides: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
    let sides = sides.map_err(|e| format!("{s:?}: {e}"))?;
    if sides.len() < 2 || sides.iter().any(|&a| a < 0) {
        return Err(format!("{s:?}: need at least two nonnegative sides"));
    }
    Ok(Block::new(sides))
}

impl GlobalOpts {
    fn tolerances(&self) -> Result<ToleranceConfig, DocError> {
        let d = ToleranceConfig::default();
        let t = ToleranceConfig {
            tol_rank: self.tol_rank.unwrap_or(d.tol_rank),
            tol_incidence: self.tol_incidence.unwrap_or(d.tol_incidence),
            tol_point: self.tol_point.unwrap_or(d.tol_point),
            tol_orth: self.tol_orth.unwrap_or(d.tol_orth),
        };
        t.validate().map_err(|e| DocError::Usage(e.to_string()))?;
        Ok(t)
    }

    fn config(&self, fallback: Option<Block>) -> Result<RunConfig, DocError> {
        let block = self.block.clone().or(fallback).unwrap_or_else(|| Block::cube(3, 2));
        if !(self.family_parameter > 0.0) {
            return Err(DocError::Usage(format!("family parameter {} must be positive", self.family_parameter)));
        }
        Ok(RunConfig { seed: self.seed, tolerances: self.tolerances()?, block, family_parameter: self.family_parameter })
    }
}

/// Exit code of an error.
pub fn exit_code(e: &DocError) -> i32 {
    match e {
        DocError::Geom(_) => 1,
        DocError::Smooth(SmoothError::InvalidStep(_) | SmoothError::OutOfDomain(_)) => 2,
        DocError::Smooth(_) => 1,
        _ => 2,
    }
}

/// Parse `args` (program name first), execute and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter_or("BINET_LOG", "warn")).try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(opts: &GlobalOpts, text: &str) -> Result<(), DocError> {
    match &opts.output {
        Some(p) => std::fs::write(p, text).map_err(|e| DocError::Io { path: p.display().to_string(), source: e }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| DocError::Io { path: "<stdout>".into(), source: e })
        }
    }
}

fn read_doc(p: &PathBuf) -> Result<NetDocument, DocError> {
    NetDocument::read(&p.display().to_string())
}

fn bounding_block(cells: &[CellValue]) -> Option<Block> {
    let n = cells.first()?.cell.base().len();
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for cv in cells {
        let dirs = cv.cell.dirs();
        for k in 0..n {
            let b = cv.cell.base()[k];
            let top = b + i64::from(dirs.contains(&(k + 1)));
            lo[k] = lo[k].min(b);
            hi[k] = hi[k].max(top);
        }
    }
    let sides = lo.iter().zip(&hi).map(|(a, b)| b - a).collect();
    Some(Block::with_origin(lo, sides))
}

fn finish_doc(doc: NetDocument, config: &RunConfig, command: &str, checks: Vec<CheckReport>) -> NetDocument {
    let mut doc = doc.with_meta("config", config).with_meta("command", command);
    if !checks.is_empty() {
        let r = Report::new(command, config.clone(), checks);
        doc.report = Some(serde_json::to_value(&r).expect("reports serialize"));
    }
    doc
}

fn execute(cli: &Cli) -> Result<i32, DocError> {
    let o = &cli.opts;
    match &cli.command {
        Command::Generate { kind, system, eps, step } => generate(o, *kind, system, *eps, *step),
        Command::Propagate { input } => propagate(o, &read_doc(input)?),
        Command::Lift { input } => lift(o, &read_doc(input)?),
        Command::Project { input } => project(o, &read_doc(input)?),
        Command::Convert { input, to } => convert(o, &read_doc(input)?, *to),
        Command::Verify { input, suite, system, point, fd_step, format } => {
            verify(o, input.as_ref(), *suite, system.as_deref(), point.as_deref(), *fd_step, *format)
        }
        Command::Export { input, format, axes } => export(o, &read_doc(input)?, *format, *axes),
    }
}

fn smooth_system(name: &str) -> Result<SmoothSystem, DocError> {
    SmoothSystem::builtin(name).ok_or_else(|| DocError::Usage(format!("unknown smooth system {name:?}")))
}

fn generate(o: &GlobalOpts, kind: GenKind, system: &str, eps: f64, step: f64) -> Result<i32, DocError> {
    let config = o.config(None)?;
    let tol = config.tolerances;
    let block = &config.block;
    let mut r = rng(config.seed);
    let name = kind.to_possible_value().expect("named").get_name().to_string();
    let moebius = |n| QuadricKind::Moebius { n };
    let doc = match kind {
        GenKind::Conjugate | GenKind::ConjugateInitial => {
            let mut g = random_conjugate_net(&mut r, block, &tol)?;
            if kind == GenKind::ConjugateInitial {
                g = g.filtered(|v| block.on_coordinate_planes(&Cell::Vertex(v.clone())));
            }
            NetDocument::from_vertex_net(&g)
        }
        GenKind::Polar | GenKind::PolarInitial => {
            let mut pb = random_polar_binet(&mut r, block, moebius(3), PolarParams::default(), &tol)?;
            if kind == GenKind::PolarInitial {
                pb = coordinate_plane_data(&pb, block);
            }
            NetDocument::from_polar(&pb)
        }
        GenKind::PrincipalInitial => {
            let pb = random_polar_binet(&mut r, block, moebius(3), PolarParams::default(), &tol)?;
            let init = coordinate_plane_data(&pb, block);
            let cp = CentralProjection::moebius(3);
            let b = project_binet(&init.binet, &cp, &tol)?;
            NetDocument::from_binet(&b, DocKind::PrincipalBinet).with_planes(&project_planes(&init.planes, &cp, &tol))
        }
        GenKind::Principal => NetDocument::from_binet(&random_principal_binet(&mut r, block, &tol)?, DocKind::PrincipalBinet),
        GenKind::AffineCube => NetDocument::from_vertex_net(&affine_cube_seed()),
        GenKind::AffineNet => {
            let n = block.dim();
            let a = DMatrix::identity(3, n) + DMatrix::from_fn(3, n, |_, _| r.gen_range(-0.3..0.3));
            let t = DVector::from_fn(3, |_, _| r.gen_range(-1.0..1.0));
            NetDocument::from_vertex_net(&affine_vertex_net(block, &a, &t))
        }
        GenKind::CartesianBinet => NetDocument::from_binet(&cartesian_binet(block, &tol)?, DocKind::Binet),
        GenKind::CartesianDocs => NetDocument::from_docs(&cartesian_docs(block)),
        GenKind::RandomDocs => NetDocument::from_docs(&random_docs(&mut r, block, &tol)?),
        GenKind::SmoothSample => {
            let s = smooth_system(system)?;
            let sb = sample_discrete(&s, &s.default_point(), eps, block)?;
            let doc = NetDocument::from_binet(&sb.binet, DocKind::Binet).with_meta("system", system).with_meta("eps", eps);
            return emit(o, &finish_doc(doc, &config, "generate", vec![sb.report]).to_json()).map(|_| 0);
        }
        GenKind::SmoothTable => {
            let s = smooth_system(system)?;
            let u = s.default_point();
            let origin = [u[0] - 3.0 * step, u[1] - 3.0 * step, u[2] - 3.0 * step];
            let t = TabulatedSystem::sample(&s, origin, [step; 3], [7, 7, 7])?;
            let mut text = serde_json::to_string_pretty(&t).expect("tables serialize");
            text.push('\n');
            return emit(o, &text).map(|_| 0);
        }
    };
    info!("generated {name} with {} cells", doc.cells.len());
    let doc = finish_doc(doc.with_meta("generator", &name), &config, "generate", vec![]);
    emit(o, &doc.to_json())?;
    Ok(0)
}

fn discrepancy_report<T>(p: &Propagation<T>) -> CheckReport {
    let mut rep = CheckReport::new("propagation");
    for (c, d) in &p.discrepancies {
        rep.push("path independence", Some(c.clone()), *d, PATH_TOLERANCE);
    }
    rep
}

fn propagate(o: &GlobalOpts, doc: &NetDocument) -> Result<i32, DocError> {
    let config = o.config(bounding_block(&doc.cells))?;
    let (tol, block) = (&config.tolerances, &config.block);
    let out = match doc.kind {
        DocKind::VertexNet => {
            let p = propagate_vertex_net(&doc.vertex_net(), block, tol)?;
            let checks = vec![check_vertex_net(&p.net, tol), discrepancy_report(&p)];
            finish_doc(NetDocument::from_vertex_net(&p.net), &config, "propagate", checks)
        }
        DocKind::FaceNet => {
            let p = propagate_face_net(&doc.face_net(), &doc.plane_field(tol), block, tol)?;
            let checks = vec![check_face_net(&p.net.0, tol), discrepancy_report(&p)];
            finish_doc(NetDocument::from_face_net(&p.net.0, &p.net.1), &config, "propagate", checks)
        }
        DocKind::PolarBinet => {
            let p = propagate_polar_binet(&doc.polar_binet(tol)?, block, tol)?;
            let checks = vec![check_polarity(&p.net.binet, &p.net.quadric, tol), discrepancy_report(&p)];
            finish_doc(NetDocument::from_polar(&p.net), &config, "propagate", checks)
        }
        DocKind::PrincipalBinet => {
            let b = doc.binet()?;
            let built = build_principal(&b, &doc.plane_field(tol), block, config.family_parameter, tol)?;
            let mut disc = CheckReport::new("propagation");
            disc.push("path independence", None, built.max_discrepancy, PATH_TOLERANCE);
            let checks = vec![check_principal(&built.binet, tol)?, disc];
            finish_doc(NetDocument::from_binet(&built.binet, DocKind::PrincipalBinet), &config, "propagate", checks)
        }
        _ => {
            return Err(DocError::WrongKind {
                expected: "vertex_net, face_net, polar_binet or principal_binet".into(),
                found: doc.kind.name().into(),
            })
        }
    };
    emit(o, &out.to_json())?;
    Ok(0)
}

fn lift(o: &GlobalOpts, doc: &NetDocument) -> Result<i32, DocError> {
    let config = o.config(bounding_block(&doc.cells))?;
    let tol = &config.tolerances;
    let out = match doc.kind {
        DocKind::PrincipalBinet | DocKind::Binet => {
            let b = doc.binet()?;
            let anchor = b.vertices.keys().next().cloned().ok_or_else(|| DocError::Schema("no vertex to anchor the lift".into()))?;
            let l = moebius_lift(&b, config.family_parameter, &anchor, tol)?;
            let mut rep = CheckReport::new("lift");
            rep.push("lift closure", None, l.closure, tol.tol_point);
            finish_doc(NetDocument::from_lift(&l), &config, "lift", vec![rep])
        }
        DocKind::Docs => {
            let c = check_docs_consistency(&doc.docs()?, config.family_parameter, tol)?;
            let l = c.lift.ok_or_else(|| GeomError::InvalidDomain("the dOCS could not be lifted".into()))?;
            finish_doc(NetDocument::from_docs_lift(&l), &config, "lift", vec![c.report])
        }
        _ => {
            return Err(DocError::WrongKind { expected: "principal_binet or docs".into(), found: doc.kind.name().into() })
        }
    };
    emit(o, &out.to_json())?;
    Ok(0)
}

fn project(o: &GlobalOpts, doc: &NetDocument) -> Result<i32, DocError> {
    let config = o.config(bounding_block(&doc.cells))?;
    let tol = &config.tolerances;
    let out = match doc.kind {
        DocKind::Lift if doc.is_docs_lift() => NetDocument::from_docs(&doc.docs_lift()?.project(tol)?),
        DocKind::Lift => NetDocument::from_binet(&doc.moebius_lift(tol)?.project(tol)?, DocKind::PrincipalBinet),
        DocKind::PolarBinet => {
            let pb = doc.polar_binet(tol)?;
            let cp = CentralProjection::moebius(doc.ambient_n - 1);
            let b = project_binet(&pb.binet, &cp, tol)?;
            NetDocument::from_binet(&b, DocKind::PrincipalBinet).with_planes(&project_planes(&pb.planes, &cp, tol))
        }
        _ => return Err(DocError::WrongKind { expected: "lift or polar_binet".into(), found: doc.kind.name().into() }),
    };
    emit(o, &finish_doc(out, &config, "project", vec![]).to_json())?;
    Ok(0)
}

fn seed_values(b: &ConjugateBinet, x: &Docs) -> Vec<CellValue> {
    let Ok(inner) = docs_inner_block(x) else { return Vec::new() };
    docs_seed_faces(&inner)
        .into_iter()
        .filter_map(|f| {
            let p = b.faces.get(&f)?;
            Some(CellValue { cell: Cell::Face(f), hom: Some(p.hom().as_slice().to_vec()), affine: None })
        })
        .collect()
}

fn convert(o: &GlobalOpts, doc: &NetDocument, to: ConvertTarget) -> Result<i32, DocError> {
    let config = o.config(bounding_block(&doc.cells))?;
    let tol = &config.tolerances;
    let out = match (to, doc.kind) {
        (ConvertTarget::Docs, DocKind::PrincipalBinet | DocKind::Binet) => {
            let b = doc.binet()?;
            let built = binet_to_docs(&b, tol)?;
            let seeds = seed_values(&b, &built.docs);
            let d = NetDocument::from_docs(&built.docs).with_meta("seeds", seeds);
            finish_doc(d, &config, "convert", vec![built.report])
        }
        (ConvertTarget::Binet, DocKind::Docs) => {
            let x = doc.docs()?;
            let seeds: Vec<CellValue> = doc
                .metadata
                .get("seeds")
                .and_then(|v| serde_json::from_value(v.clone()).ok())
                .ok_or_else(|| DocError::Schema("converting a dOCS needs seed face points in metadata.seeds".into()))?;
            let mut h = FaceNet::new(x.ambient().unwrap_or(0));
            for s in seeds {
                let (Cell::Face(f), Some(hom)) = (s.cell, s.hom) else {
                    return Err(DocError::Schema("seeds must be faces with homogeneous coordinates".into()));
                };
                let p = ProjPoint::from_slice(&hom).map_err(|e| DocError::Schema(format!("seed: {e}")))?;
                h.insert(f, p);
            }
            let rec = docs_to_binet(&x, &h, tol)?;
            finish_doc(NetDocument::from_binet(&rec.binet, DocKind::PrincipalBinet), &config, "convert", vec![rec.report])
        }
        (_, k) => {
            let expected = if to == ConvertTarget::Docs { "principal_binet" } else { "docs" };
            return Err(DocError::WrongKind { expected: expected.into(), found: k.name().into() });
        }
    };
    emit(o, &out.to_json())?;
    Ok(0)
}

/// Propagate the cells of `input` on the coordinate planes of the block
/// and compare every recomputed cell with the input.
fn consistency_checks(doc: &NetDocument, config: &RunConfig) -> Result<Vec<CheckReport>, DocError> {
    let (tol, block) = (&config.tolerances, &config.block);
    let on = |c: Cell| block.on_coordinate_planes(&c);
    let agreement = |a: &ConjugateBinet, b: &ConjugateBinet| {
        let mut rep = CheckReport::new("input agreement");
        let (d, cell) = b.compare(a);
        rep.push("input agreement", cell, d, PATH_TOLERANCE);
        rep
    };
    Ok(match doc.kind {
        DocKind::Docs => {
            let x = doc.docs()?;
            let out = check_docs_consistency(&consistency_initial(&x, block), config.family_parameter, tol)?;
            let mut agree = CheckReport::new("input agreement");
            if let Some(y) = &out.docs {
                let (d, cell) = x.compare(y);
                agree.push("input agreement", cell, d, PATH_TOLERANCE);
            }
            vec![out.report, agree]
        }
        DocKind::VertexNet => {
            let g = doc.vertex_net();
            let init: VertexNet = g.filtered(|v| block.support(v) <= 3);
            let p = propagate_vertex_net(&init, block, tol)?;
            let full = ConjugateBinet { vertices: p.net.clone(), faces: FaceNet::new(g.ambient) };
            let given = ConjugateBinet { vertices: g, faces: FaceNet::new(full.ambient()) };
            vec![discrepancy_report(&p), check_vertex_net(&p.net, tol), agreement(&full, &given)]
        }
        DocKind::FaceNet => {
            let h = doc.face_net();
            let init = h.filtered(|f| on(Cell::Face(f.clone())));
            let p = propagate_face_net(&init, &doc.plane_field(tol), block, tol)?;
            let full = ConjugateBinet { vertices: VertexNet::new(h.ambient), faces: p.net.0.clone() };
            let given = ConjugateBinet { vertices: VertexNet::new(h.ambient), faces: h };
            vec![discrepancy_report(&p), check_face_net(&p.net.0, tol), agreement(&full, &given)]
        }
        DocKind::PolarBinet => {
            let pb = doc.polar_binet(tol)?;
            let p = propagate_polar_binet(&coordinate_plane_data(&pb, block), block, tol)?;
            let pol = check_polarity(&p.net.binet, &p.net.quadric, tol);
            vec![discrepancy_report(&p), pol, agreement(&p.net.binet, &pb.binet)]
        }
        k => return Err(DocError::WrongKind { expected: "vertex_net, face_net, polar_binet or docs".into(), found: k.name().into() }),
    })
}

fn verify(
    o: &GlobalOpts,
    input: Option<&PathBuf>,
    suite: Suite,
    system: Option<&str>,
    point: Option<&[f64]>,
    fd_step: Option<f64>,
    format: ReportFormat,
) -> Result<i32, DocError> {
    let suite_name = suite.to_possible_value().expect("named").get_name().to_string();
    let (config, checks) = if suite == Suite::Smooth {
        let config = o.config(None)?;
        let mut s = match (input, system) {
            (Some(p), _) => {
                let text = std::fs::read_to_string(p).map_err(|e| DocError::Io { path: p.display().to_string(), source: e })?;
                let t: TabulatedSystem = serde_json::from_str(&text).map_err(|e| DocError::Parse(e.to_string()))?;
                SmoothSystem::tabulated(t)
            }
            (None, name) => smooth_system(name.unwrap_or("spherical"))?,
        };
        if let Some(h) = fd_step {
            s = s.with_derivatives(Derivatives::FiniteDifference(FDConfig::new(h)?));
        }
        let u = match point {
            Some(p) => [p[0], p[1], p[2]],
            None => s.default_point(),
        };
        let t = theorem71_check(&s, &u, s.default_tol())?;
        (config, vec![t.report])
    } else {
        let p = input.ok_or_else(|| DocError::Usage(format!("suite {suite_name} needs an input document")))?;
        let doc = read_doc(p)?;
        let config = o.config(bounding_block(&doc.cells))?;
        let tol = &config.tolerances;
        let checks = match suite {
            Suite::Conjugate => {
                let b = doc.binet()?;
                let mut c = Vec::new();
                if !b.vertices.is_empty() {
                    c.push(check_vertex_net(&b.vertices, tol));
                }
                if !b.faces.is_empty() {
                    c.push(check_face_net(&b.faces, tol));
                }
                c
            }
            Suite::Polar => {
                let pb = doc.polar_binet(tol)?;
                vec![check_polarity(&pb.binet, &pb.quadric, tol), check_polar_inclusions(&pb, tol)?]
            }
            Suite::Principal => vec![check_principal(&doc.binet()?, tol)?],
            Suite::Docs => match doc.kind {
                DocKind::Docs => vec![check_docs(&doc.docs()?, tol)],
                _ => vec![binet_to_docs(&doc.binet()?, tol)?.report],
            },
            Suite::Consistency4d => {
                if config.block.dim() < 4 {
                    warn!("consistency4d on a {}-dimensional block", config.block.dim());
                }
                consistency_checks(&doc, &config)?
            }
            Suite::Smooth => unreachable!(),
        };
        (config, checks)
    };
    let report = Report::new(&suite_name, config, checks);
    let text = match format {
        ReportFormat::Text => report.render_text(),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    emit(o, &text)?;
    Ok(if report.pass { 0 } else { 1 })
}

fn export(o: &GlobalOpts, doc: &NetDocument, format: ExportFormat, axes: bool) -> Result<i32, DocError> {
    match format {
        ExportFormat::Json => emit(o, &doc.to_json())?,
        ExportFormat::Obj => {
            let tol = o.tolerances()?;
            let obj = to_obj(doc, axes, &tol);
            for w in &obj.warnings {
                eprintln!("warning: {w}");
            }
            if o.strict && !obj.warnings.is_empty() {
                return Err(DocError::Usage(format!("{} cells cannot be written to OBJ", obj.warnings.len())));
            }
            emit(o, &obj.text)?;
        }
    }
    Ok(0)
}
