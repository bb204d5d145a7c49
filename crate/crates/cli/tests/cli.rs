use std::path::Path;
use std::process::{Command, Output};

fn ccp(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccp"))
        .args(args)
        .current_dir(dir)
        .env_remove("CCP_TOLERANCE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn vertex_count(dir: &Path, file: &str) -> usize {
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join(file)).unwrap()).unwrap();
    doc["vertices"].as_array().unwrap().len()
}

#[test]
fn generate_examples() {
    let d = tempfile::tempdir().unwrap();
    let o = ccp(
        &[
            "generate", "--family", "minimal", "--genus", "7", "-o", "m.json",
        ],
        d.path(),
    );
    assert!(o.status.success());
    assert_eq!(vertex_count(d.path(), "m.json"), 18);
    let o = ccp(
        &[
            "generate",
            "--family",
            "nonorientable",
            "--genus",
            "4",
            "--prefer-fewest",
            "-o",
            "c.json",
        ],
        d.path(),
    );
    assert!(o.status.success());
    assert_eq!(vertex_count(d.path(), "c.json"), 12);
    let o = ccp(
        &["generate", "--family", "orientable", "--genus", "0"],
        d.path(),
    );
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(doc["metadata"]["genus"], 0);
}

#[test]
fn generate_rejects_bad_requests() {
    let d = tempfile::tempdir().unwrap();
    for args in [
        &["generate", "--family", "v8g", "--genus", "1"][..],
        &["generate", "--family", "nope", "--genus", "1"],
        &["generate", "--family", "p2-24", "--param", "b=5"],
        &["generate", "--family", "p2-24", "--param", "q=1"],
    ] {
        let o = ccp(args, d.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verify_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    ccp(&["generate", "--family", "q2-9", "-o", "q.json"], d.path());
    let o = ccp(&["verify", "q.json"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("defect = 0 (= 0·π)"));
    assert!(stdout(&o).contains("ccp_immersed"));

    let o = ccp(&["verify", "q.json", "--json"], d.path());
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["verdict"], "ccp_immersed");
    assert_eq!(r["topology"]["genus"], 2);

    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.path().join("q.json")).unwrap()).unwrap();
    let x = doc["vertices"][0][0].as_f64().unwrap();
    doc["vertices"][0][0] = (x + 0.01).into();
    std::fs::write(d.path().join("bent.json"), doc.to_string()).unwrap();
    assert_eq!(
        ccp(&["verify", "bent.json"], d.path()).status.code(),
        Some(1)
    );

    assert_eq!(
        ccp(&["verify", "missing.json"], d.path()).status.code(),
        Some(2)
    );
    std::fs::write(d.path().join("junk.json"), "{not json").unwrap();
    assert_eq!(
        ccp(&["verify", "junk.json"], d.path()).status.code(),
        Some(2)
    );
    std::fs::write(
        d.path().join("open.obj"),
        "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nf 1 2 3\nf 1 2 4\n",
    )
    .unwrap();
    let o = ccp(&["verify", "open.obj"], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("invalid_mesh"));
}

#[test]
fn tolerance_from_environment() {
    let d = tempfile::tempdir().unwrap();
    ccp(
        &["generate", "--family", "tetrahedron", "-o", "t.json"],
        d.path(),
    );
    let o = Command::new(env!("CARGO_BIN_EXE_ccp"))
        .args(["verify", "t.json", "--json"])
        .current_dir(d.path())
        .env("CCP_TOLERANCE", "1e-7")
        .output()
        .unwrap();
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["tolerances"]["defect"], 1e-7);
}

#[test]
fn drill_then_verify() {
    let d = tempfile::tempdir().unwrap();
    ccp(&["generate", "--family", "p2-24", "-o", "p.json"], d.path());
    let o = ccp(
        &[
            "drill", "p.json", "--face-a", "0", "--face-b", "1", "--n", "12", "-o", "p3.json",
        ],
        d.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = ccp(&["verify", "p3.json", "--json"], d.path());
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["topology"]["genus"], 3);
    assert_eq!(r["verdict"], "ccp_embedded");

    let o = ccp(
        &[
            "drill", "p.json", "--face-a", "0", "--face-b", "1", "--seed", "7", "-o", "s.json",
        ],
        d.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(ccp(&["verify", "s.json"], d.path()).status.code(), Some(0));

    let o = ccp(
        &[
            "drill", "p.json", "--face-a", "0", "--face-b", "2", "--n", "12", "-o", "x.json",
        ],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotParallel"));
}

#[test]
fn export_formats() {
    let d = tempfile::tempdir().unwrap();
    ccp(&["generate", "--family", "thh", "-o", "t.json"], d.path());
    assert!(ccp(&["export", "t.json", "-o", "t.obj"], d.path())
        .status
        .success());
    let obj = std::fs::read_to_string(d.path().join("t.obj")).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 6);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 7);

    assert!(ccp(&["export", "t.json", "-o", "t.stl"], d.path())
        .status
        .success());
    let stl = std::fs::read(d.path().join("t.stl")).unwrap();
    assert!(stl.starts_with(b"ccp-forge"));
    let n = u32::from_le_bytes(stl[80..84].try_into().unwrap());
    // four triangles and three squares
    assert_eq!(n, 4 + 3 * 2);

    assert!(ccp(&["verify", "t.obj"], d.path()).status.success());
    assert_eq!(
        ccp(&["export", "t.json", "-o", "t.ply"], d.path())
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn catalog_lists_families() {
    let d = tempfile::tempdir().unwrap();
    let o = ccp(&["catalog"], d.path());
    assert!(o.status.success());
    let s = stdout(&o);
    for id in [
        "flat-torus-9",
        "p2-24",
        "minimal",
        "cho",
        "v6g",
        "n5g",
        "nonorientable",
    ] {
        assert!(s.contains(id), "{id}");
    }
    assert!(s.contains("2g+4"));
}
