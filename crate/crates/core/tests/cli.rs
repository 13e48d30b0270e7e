use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs")
}

fn gktorus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gktorus")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, text: &str) -> String {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn config(name: &str) -> String {
    configs().join(name).to_string_lossy().into_owned()
}

#[test]
fn identity_matrix_is_not_admissible() {
    let f = write("identity.json", "[[1,0,0],[0,1,0],[0,0,1]]");
    let out = gktorus(&["solve-inoue", &f]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stdout).contains("repeated eigenvalue 1"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let f = write("malformed.json", "[[1,0],[0");
    assert_eq!(code(&gktorus(&["solve-inoue", &f])), 64);
    assert_eq!(code(&gktorus(&["no-such-command"])), 64);
    assert_eq!(code(&gktorus(&["cohomology", "/nonexistent/config.json"])), 64);
}

#[test]
fn custom_frame_without_b3_is_a_usage_error() {
    let f = write(
        "no_b3.json",
        r#"{"frame": {"kind": "custom", "a1": "(exp t)", "b2": "1", "period": 1.0}, "fiber": {"dim": 4, "mode": "kahler"}}"#,
    );
    let out = gktorus(&["verify-gk", &f]);
    assert_eq!(code(&out), 64, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn degenerate_flag_requires_a_justification() {
    assert_eq!(code(&gktorus(&["borel", &config("borel_inoue_t4.json"), "--degenerate"])), 64);
}

#[test]
fn shipped_gk_configs_pass() {
    for name in ["example31.json", "example71.json", "rotation_fiber_gk.json"] {
        let out = gktorus(&["verify-gk", &config(name)]);
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stdout));
    }
    assert_eq!(code(&gktorus(&["solve-inoue", &config("example31_matrix.json")])), 0);
}

#[test]
fn json_reports_match_golden_files() {
    for (cmd, name) in [
        ("cohomology", "cohomology_rotation.json"),
        ("cohomology", "cohomology_identity_fiber.json"),
        ("formality", "formality_rotation_bfm.json"),
        ("formality", "formality_rotation_model.json"),
    ] {
        let out_path = scratch(&format!("golden_{name}"));
        let out = gktorus(&[cmd, &config(name), "--json", &out_path.to_string_lossy()]);
        assert!(matches!(code(&out), 0 | 1), "{name}");
        let got = std::fs::read(&out_path).unwrap();
        let want = std::fs::read(configs().join("golden").join(name)).unwrap();
        assert!(got == want, "{name} differs from its golden report");
    }
}

#[test]
fn json_is_deterministic_across_thread_counts() {
    let a = scratch("det_a.json");
    let b = scratch("det_b.json");
    let cfg = config("example71.json");
    let run = |path: &Path, threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_gktorus"))
            .env("GKTORUS_THREADS", threads)
            .args(["verify-gk", &cfg, "--json", &path.to_string_lossy()])
            .output()
            .unwrap()
    };
    assert_eq!(code(&run(&a, "1")), 0);
    assert_eq!(code(&run(&b, "4")), 0);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn model_with_wrong_high_degrees_is_a_check_failure() {
    let out = gktorus(&["formality", &config("formality_rotation_model.json")]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("quasi_iso"), "{text}");
}
