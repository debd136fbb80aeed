use std::path::PathBuf;
use std::process::{Command, Output};

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colorinv"))
        .args(args)
        .current_dir(configs())
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn validate_summarizes() {
    let out = run(&["validate", "--config", "klein.toml"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("order 4"), "{text}");
    assert!(text.contains("bicharacter: valid"), "{text}");
}

#[test]
fn list_enumerates_balanced_tuples() {
    let out = run(&["list", "--config", "super21.toml", "--max-degree", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("m=1,1 N=3"), "{text}");
    assert!(text.contains("(1 3 2)"), "{text}");
}

#[test]
fn picture_text_and_json_agree() {
    let base = [
        "picture",
        "--config",
        "super11.toml",
        "--multiplicities",
        "2",
        "--sigma",
        "(1 2)",
    ];
    let text = stdout(&run(&base));
    assert!(text.starts_with("# multiplicities 2 sigma (1 2)"), "{text}");
    assert_eq!(text.lines().count(), 5);

    let mut args = base.to_vec();
    args.extend(["--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&args))).unwrap();
    assert_eq!(json["sigma"], "(1 2)");
    assert_eq!(json["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn picture_check_passes() {
    let out = run(&[
        "picture",
        "--config",
        "super21.toml",
        "--multiplicities",
        "1,1",
        "--sigma",
        "(1 2 3)",
        "--check",
        "path-equality",
        "--seed",
        "5",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn trace_and_eval_agree() {
    let trace = run(&[
        "trace",
        "--config",
        "super11.toml",
        "--sigma",
        "(1 2)",
        "--assign",
        "1,1",
        "--point",
        "points/super11_single.txt",
    ]);
    assert!(trace.status.success());

    let poly = std::env::temp_dir().join(format!("colorinv-poly-{}.txt", std::process::id()));
    let picture = run(&[
        "picture",
        "--config",
        "super11.toml",
        "--multiplicities",
        "2",
        "--sigma",
        "(1 2)",
    ]);
    std::fs::write(&poly, &picture.stdout).unwrap();
    let eval = run(&[
        "eval",
        "--config",
        "super11.toml",
        "--poly",
        poly.to_str().unwrap(),
        "--point",
        "points/super11_single.txt",
    ]);
    std::fs::remove_file(&poly).ok();
    assert!(eval.status.success());
    assert_eq!(stdout(&trace), stdout(&eval));
    assert_eq!(stdout(&eval), "z = zeta(2)\n-5 + -2 * x1.x2\n");
}

#[test]
fn two_operator_trace() {
    let out = run(&[
        "trace",
        "--config",
        "super11.toml",
        "--sigma",
        "(1 2)",
        "--assign",
        "1,2",
        "--point",
        "points/super11_pair.txt",
    ]);
    assert_eq!(stdout(&out), "z = zeta(2)\n-13\n");
}

#[test]
fn verify_writes_report() {
    let report = std::env::temp_dir().join(format!("colorinv-report-{}.txt", std::process::id()));
    let out = run(&[
        "verify",
        "--suite",
        "bicharacter",
        "--config",
        "z4.toml",
        "--seed",
        "1",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let saved = std::fs::read_to_string(&report).unwrap();
    std::fs::remove_file(&report).ok();
    assert_eq!(saved, stdout(&out));
    assert!(saved.contains("# seed 1 rng ChaCha8Rng"));
}

#[test]
fn errors_exit_with_two() {
    let missing = run(&["validate", "--config", "absent.toml"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_sigma = run(&[
        "picture",
        "--config",
        "super11.toml",
        "--multiplicities",
        "1",
        "--sigma",
        "(1 2)",
    ]);
    assert_eq!(bad_sigma.status.code(), Some(2));
    let unknown = run(&["verify", "--suite", "nope", "--config", "super11.toml"]);
    assert_eq!(unknown.status.code(), Some(2));
}
