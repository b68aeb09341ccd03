#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

pub fn binet(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binet")).current_dir(dir).args(args).output().expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// Generate a document into `dir` and return its path.
pub fn generate(dir: &Path, kind: &str, block: &str, seed: u64) -> PathBuf {
    let name = format!("{kind}-{}-{seed}.json", block.replace(',', "x"));
    let seed = seed.to_string();
    let out = binet(dir, &["generate", "--kind", kind, "--block", block, "--seed", &seed, "-o", &name]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    dir.join(name)
}

/// Move one cell of the document by `size` in a random direction and write
/// the result next to it. Returns the new path and the moved cell.
pub fn perturb(path: &Path, seed: u64, size: f64, keep: impl Fn(&Value) -> bool) -> (PathBuf, Value) {
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let cells = doc["cells"].as_array_mut().unwrap();
    let idx: Vec<usize> = (0..cells.len()).filter(|&i| keep(&cells[i]["cell"])).collect();
    let c = &mut cells[idx[r.gen_range(0..idx.len())]];
    let key = if c.get("hom").is_some() { "hom" } else { "affine" };
    let xs = c[key].as_array_mut().unwrap();
    let dir: Vec<f64> = (0..xs.len()).map(|_| r.gen_range(-1.0..1.0)).collect();
    let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
    for (x, d) in xs.iter_mut().zip(&dir) {
        *x = Value::from(x.as_f64().unwrap() + size * d / norm);
    }
    let cell = c["cell"].clone();
    let out = path.with_extension(format!("p{seed}.json"));
    std::fs::write(&out, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    (out, cell)
}

/// Cells named by failing records of a JSON report.
pub fn failing_cells(report: &str) -> Vec<Value> {
    let v: Value = serde_json::from_str(report).expect("json report");
    let mut out = Vec::new();
    for c in v["checks"].as_array().unwrap() {
        for r in c["records"].as_array().unwrap() {
            if r["pass"] == false && !r["cell"].is_null() {
                out.push(r["cell"].clone());
            }
        }
    }
    out
}

pub fn is_type(c: &Value, t: &str) -> bool {
    c["type"] == t
}

/// Corners of `[0,2]^3` meet a single cube and are not constrained by the
/// dOCS conditions.
fn off_corner(c: &Value) -> bool {
    !(is_type(c, "vertex") && c["base"].as_array().unwrap().iter().all(|x| x == 0 || x == 2))
}

/// A verifier with the document it is run on.
pub struct Control {
    pub name: &'static str,
    pub kind: &'static str,
    pub block: &'static str,
    pub suite: &'static str,
    pub keep: fn(&Value) -> bool,
}

pub const CONTROLS: &[Control] = &[
    Control { name: "conjugate vertex net", kind: "conjugate", block: "2,2,2", suite: "conjugate", keep: |_| true },
    Control { name: "conjugate face net", kind: "polar", block: "2,2,2", suite: "conjugate", keep: |c| is_type(c, "face") },
    Control { name: "polar binet", kind: "polar", block: "2,2,2", suite: "polar", keep: |_| true },
    Control { name: "principal binet", kind: "principal", block: "2,2,2", suite: "principal", keep: |_| true },
    Control { name: "dOCS", kind: "random-docs", block: "2,2,2", suite: "docs", keep: off_corner },
    Control { name: "4D consistency", kind: "conjugate", block: "1,1,1,1", suite: "consistency4d", keep: |_| true },
    Control { name: "4D polar consistency", kind: "polar", block: "1,1,1,1", suite: "consistency4d", keep: |_| true },
];

/// Run one verifier on its perturbed document. Returns an error message
/// unless it exits 1 and names a cell, either in a failing record or in
/// the error message.
pub fn negative_control(dir: &Path, c: &Control, seed: u64) -> Result<(), String> {
    let src = generate(dir, c.kind, c.block, seed);
    let (bad, cell) = perturb(&src, seed, 1e-2, c.keep);
    let out = binet(dir, &["verify", bad.to_str().unwrap(), "--suite", c.suite, "--format", "json"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let stderr = String::from_utf8_lossy(&out.stderr);
    if code(&out) != 1 {
        return Err(format!("{} seed {seed}: exit {} after moving {cell}", c.name, code(&out)));
    }
    let named = if stdout.trim().is_empty() {
        ["vertex(", "face(", "cube(", "edge("].iter().any(|k| stderr.contains(k))
    } else {
        !failing_cells(&stdout).is_empty()
    };
    if !named {
        return Err(format!("{} seed {seed}: no offending cell named ({stderr})", c.name));
    }
    Ok(())
}
