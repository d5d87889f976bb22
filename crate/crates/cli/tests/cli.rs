use std::process::{Command, Output};

use cellproj::gem::{canonical_code, import_gem, listing_cp2};

fn cellproj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellproj"))
        .args(args)
        .env_remove("CELLPROJ_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_fvector_of_rp2() {
    let o = cellproj(&[
        "build", "--target", "rpn", "--n", "2", "--format", "fvector",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3,6,4");
}

#[test]
fn build_beyond_capacity_exits_2() {
    let o = cellproj(&["build", "--target", "cpn", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("capacity"));
    let o = cellproj(&["verify", "--target", "sphere-product", "--n", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn built_cp2_encoding_matches_the_reference() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t2.gem");
    let o = cellproj(&[
        "build",
        "--target",
        "cpn",
        "--n",
        "2",
        "--format",
        "gem",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let g = import_gem(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(
        canonical_code(&g).unwrap(),
        canonical_code(&listing_cp2().unwrap()).unwrap()
    );
}

#[test]
fn verify_cp2_passes_everything() {
    let o = cellproj(&["verify", "--target", "cpn", "--n", "2", "--all"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.ends_with("result: PASS\n"));
    assert!(!text.contains("FAIL"));
    assert_eq!(text.matches("  PASS  ").count(), 10, "{text}");
}

#[test]
fn verify_selected_checks_on_cp3() {
    let o = cellproj(&[
        "verify",
        "--target",
        "cpn",
        "--n",
        "3",
        "--checks",
        "fvector,euler,good,homology",
    ]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().count(), 6);
    assert!(
        text.contains("fvector   PASS  (10,46,184,440,596,420,120)"),
        "{text}"
    );
    assert!(
        text.contains("Betti (1,0,1,0,1,0,1), torsion-free"),
        "{text}"
    );
}

#[test]
fn verify_rejects_a_corrupted_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x1.gcx");
    let o = cellproj(&[
        "build",
        "--target",
        "sphere-product",
        "--n",
        "1",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    // free one face of facet 1 while facet 0 still points at it
    let corrupted = text.replacen("facet 1: 0/0 1 2 |", "facet 1: - |", 1);
    assert_ne!(corrupted, text);
    std::fs::write(&path, corrupted).unwrap();
    let o = cellproj(&[
        "verify",
        "--input",
        path.to_str().unwrap(),
        "--checks",
        "involution,fvector",
    ]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}");
    assert!(out.contains("involution  FAIL"), "{out}");
    assert!(out.contains("not an involution"), "{out}");
    assert!(out.contains("result: FAIL (2 failed)"), "{out}");
}

#[test]
fn verify_loaded_files() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["gcx", "gem"] {
        let path = dir.path().join(format!("t2.{format}"));
        let o = cellproj(&[
            "build",
            "--target",
            "cpn",
            "--n",
            "2",
            "--format",
            format,
            "-o",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let o = cellproj(&["verify", "--input", path.to_str().unwrap()]);
        let out = stdout(&o);
        assert_eq!(o.status.code(), Some(0), "{out}");
        assert!(out.contains("involution      PASS"), "{out}");
        assert!(out.contains("SKIP"), "{out}");
    }
}

#[test]
fn report_tables() {
    let o = cellproj(&["report", "--table", "fvectors", "--n", "1..4"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 8);
    assert!(
        text.contains("f(X^4) = (81, 1215, 12130, 64860, 194280, 337680, 338400, 181440, 40320)")
    );
    assert!(text.contains("f(T_4) = (15, 111, 764, 3345, 8982, 14700, 14280, 7560, 1680)"));

    let text = stdout(&cellproj(&["report", "--table", "derived", "--n", "1..4"]));
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("f((T_3)') = (1816, 66396, 549864, 1816800, 2843520, 2116800, 604800)"));

    let text = stdout(&cellproj(&["report", "--table", "homology", "--n", "1..3"]));
    assert_eq!(
        text,
        "H(T_1) = (1, 0, 1)\nH(T_2) = (1, 0, 1, 0, 1)\nH(T_3) = (1, 0, 1, 0, 1, 0, 1)\n"
    );

    assert_eq!(
        cellproj(&["report", "--table", "fvectors", "--n", "2..9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let run = |threads: &str, args: &[&str]| {
        let mut all = vec!["--threads", threads];
        all.extend_from_slice(args);
        let o = cellproj(&all);
        assert!(o.status.success());
        o.stdout
    };
    for args in [
        &["build", "--target", "cpn", "--n", "3", "--format", "gem"][..],
        &[
            "build",
            "--target",
            "sphere-product",
            "--n",
            "2",
            "--format",
            "gcx",
        ][..],
        &["verify", "--target", "cpn", "--n", "2", "--all"][..],
    ] {
        assert_eq!(run("1", args), run("3", args), "{args:?}");
    }
    let via_env = Command::new(env!("CARGO_BIN_EXE_cellproj"))
        .args(["build", "--target", "cpn", "--n", "3", "--format", "gem"])
        .env("CELLPROJ_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(
        via_env.stdout,
        run(
            "1",
            &["build", "--target", "cpn", "--n", "3", "--format", "gem"]
        )
    );
}

#[test]
fn budget_skips_instead_of_failing() {
    let o = cellproj(&[
        "verify",
        "--target",
        "cpn",
        "--n",
        "2",
        "--budget-seconds",
        "0",
    ]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(text.matches("SKIP").count(), 10);
}
