mod common;

use common::*;
use serde_json::Value;

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

fn read(p: &std::path::Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn generation_is_deterministic() {
    let d = tmp();
    let a = read(&generate(d.path(), "principal", "2,2,2", 5));
    let e = tmp();
    let b = read(&generate(e.path(), "principal", "2,2,2", 5));
    assert_eq!(a, b);
    let c = read(&generate(d.path(), "principal", "2,2,2", 6));
    assert_ne!(a, c);
}

#[test]
fn usage_and_schema_errors_exit_two() {
    let d = tmp();
    assert_eq!(code(&binet(d.path(), &["generate", "--kind", "bogus"])), 2);
    assert_eq!(code(&binet(d.path(), &["verify", "missing.json", "--suite", "conjugate"])), 2);
    assert_eq!(code(&binet(d.path(), &["verify", "--suite", "conjugate"])), 2);
    assert_eq!(code(&binet(d.path(), &["--tol-rank", "2", "generate", "--kind", "conjugate"])), 2);

    let p = generate(d.path(), "conjugate", "1,1,1", 0);
    let mut doc: Value = serde_json::from_str(&read(&p)).unwrap();
    doc["schema_version"] = "binet-doc/0".into();
    std::fs::write(d.path().join("old.json"), doc.to_string()).unwrap();
    let out = binet(d.path(), &["verify", "old.json", "--suite", "conjugate"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema"));

    std::fs::write(d.path().join("junk.json"), "{ not json").unwrap();
    assert_eq!(code(&binet(d.path(), &["export", "junk.json"])), 2);

    // a vertex net has no quadric
    assert_eq!(code(&binet(d.path(), &["verify", p.to_str().unwrap(), "--suite", "polar"])), 2);
}

#[test]
fn export_round_trips_json() {
    let d = tmp();
    for (kind, block) in [("polar", "2,2,2"), ("random-docs", "2,2,2"), ("principal", "1,1,1")] {
        let p = generate(d.path(), kind, block, 1);
        let out = binet(d.path(), &["export", p.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        assert_eq!(String::from_utf8(out.stdout).unwrap(), read(&p), "{kind}");
    }
}

#[test]
fn obj_export_counts_and_warnings() {
    let d = tmp();
    let p = generate(d.path(), "cartesian-binet", "1,1,1", 0);
    let out = binet(d.path(), &["export", p.to_str().unwrap(), "--format", "obj"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 10);
    assert!(text.lines().any(|l| l == "o edges"));

    let p = generate(d.path(), "cartesian-binet", "2,2,2", 0);
    let out = binet(d.path(), &["export", p.to_str().unwrap(), "--format", "obj"]);
    assert_eq!(code(&out), 0);
    let warnings = String::from_utf8(out.stderr).unwrap();
    assert_eq!(warnings.lines().filter(|l| l.contains("is at infinity")).count(), 8);
    assert_eq!(code(&binet(d.path(), &["--strict", "export", p.to_str().unwrap(), "--format", "obj"])), 2);

    let p = generate(d.path(), "principal", "1,1,1", 2);
    let out = binet(d.path(), &["export", p.to_str().unwrap(), "--format", "obj", "--axes"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "o axes"));
}

#[test]
fn principal_pipeline() {
    let d = tmp();
    let init = generate(d.path(), "principal-initial", "2,2,2", 3);
    let out = binet(d.path(), &["propagate", init.to_str().unwrap(), "-o", "full.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(code(&binet(d.path(), &["verify", "full.json", "--suite", "principal"])), 0);
    assert_eq!(code(&binet(d.path(), &["lift", "full.json", "-o", "lift.json"])), 0);
    assert_eq!(code(&binet(d.path(), &["project", "lift.json", "-o", "back.json"])), 0);
    assert_eq!(code(&binet(d.path(), &["verify", "back.json", "--suite", "principal"])), 0);
    assert_eq!(code(&binet(d.path(), &["convert", "full.json", "--to", "docs", "-o", "small.json"])), 0);
    assert_eq!(code(&binet(d.path(), &["verify", "small.json", "--suite", "docs"])), 0);
    // the dOCS of [0,2]^3 lives on too small a block to seed a binet again
    assert_eq!(code(&binet(d.path(), &["convert", "small.json", "--to", "binet"])), 1);

    let big = generate(d.path(), "principal", "4,4,4", 3);
    assert_eq!(code(&binet(d.path(), &["convert", big.to_str().unwrap(), "--to", "docs", "-o", "docs.json"])), 0);
    assert_eq!(code(&binet(d.path(), &["convert", "docs.json", "--to", "binet", "-o", "again.json"])), 0);
    let out = binet(d.path(), &["verify", "again.json", "--suite", "principal", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["suite"], "principal");
}

#[test]
fn passing_documents_exit_zero() {
    let d = tmp();
    for c in CONTROLS {
        let p = generate(d.path(), c.kind, c.block, 0);
        let out = binet(d.path(), &["verify", p.to_str().unwrap(), "--suite", c.suite]);
        assert_eq!(code(&out), 0, "{}: {}", c.name, String::from_utf8_lossy(&out.stdout));
        assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    }
}

#[test]
fn smooth_suite_exit_codes() {
    let d = tmp();
    let v = |args: &[&str]| code(&binet(d.path(), args));
    assert_eq!(v(&["verify", "--suite", "smooth", "--system", "spherical"]), 0);
    assert_eq!(v(&["verify", "--suite", "smooth", "--system", "parabolic", "--fd-step", "1e-4"]), 0);
    assert_eq!(v(&["verify", "--suite", "smooth", "--system", "cartesian"]), 0);
    assert_eq!(v(&["verify", "--suite", "smooth", "--system", "shear"]), 1);
    assert_eq!(v(&["verify", "--suite", "smooth", "--fd-step", "0.5"]), 2);
    assert_eq!(v(&["verify", "--suite", "smooth", "--system", "spherical", "--point", "0.5,-1,0"]), 2);
    assert_eq!(v(&["generate", "--kind", "smooth-table", "-o", "t.json"]), 0);
    assert_eq!(v(&["verify", "t.json", "--suite", "smooth"]), 0);
}

#[test]
fn perturbed_documents_are_rejected() {
    let d = tmp();
    let mut errors = Vec::new();
    for c in CONTROLS {
        for seed in 0..20 {
            if let Err(e) = negative_control(d.path(), c, seed) {
                errors.push(e);
            }
        }
    }
    assert!(errors.is_empty(), "{errors:#?}");
}
