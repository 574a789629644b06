//! End-to-end checks of the CLI surface: exit codes, artifact layout and
//! byte-identical reproducibility.

use std::path::Path;
use std::process::Command;

fn nlms() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nlms"))
}

#[test]
fn delta_closed_form_value() {
    let out = nlms()
        .args(["delta", "--n", "2", "--alpha-bar", "0", "--s", "0.5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // (5/6)^2 = 25/36 = 0.69444...
    assert!(text.contains("0.694444444444"), "{text}");
}

#[test]
fn delta_rejects_supercritical_alpha() {
    let out = nlms()
        .args(["delta", "--n", "2", "--alpha-bar", "4.0", "--s", "0.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn alpha_csv_artifact_and_reproducibility() {
    let dir = std::env::temp_dir().join(format!("nlms-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("alpha.csv");

    let run = |path: &Path| {
        let out = nlms()
            .args([
                "alpha",
                "--set",
                "quadrant",
                "--q",
                "0.2,0.1",
                "--s-grid",
                "0.2:4:0.5",
                "--out",
                path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{:?}", out);
        std::fs::read(path).unwrap()
    };
    let first = run(&out_path);
    let text = String::from_utf8(first.clone()).unwrap();
    assert!(text.starts_with("s,alpha_s,s_times_alpha_s,closed_form_if_any"));
    assert!(text.contains("extrapolated_limit"));

    // Metadata sidecar embeds the resolved config and version.
    let sidecar = dir.join("alpha.csv.meta.json");
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&sidecar).unwrap()).unwrap();
    assert_eq!(meta["command"], "alpha");
    assert!(meta["version"].is_string());
    assert!(meta["quadrature"]["rel_tol"].is_number());
    assert!(meta["set"]["type"].is_string());

    // Byte-identical on identical config and seed.
    let second = run(&out_path);
    assert_eq!(first, second);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn curv_single_evaluation() {
    let out = nlms()
        .args([
            "curv", "--set", "ball:r=1", "--point", "1,0", "--s", "0.5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{:?}", out);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("I_s[E](p)"), "{text}");
}

#[test]
fn minimize_preset_writes_result_and_pgm() {
    let dir = std::env::temp_dir().join(format!("nlms-cli-min-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("result.json");
    let out = nlms()
        .args([
            "minimize",
            "--preset",
            "halfplane-in-disc",
            "--s",
            "0.3",
            "--res",
            "12",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{:?}", out);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["problem"]["resolution"], 12);
    assert!(doc["energy"].as_f64().unwrap() > 0.0);
    assert!(doc["state"].as_str().unwrap().len() > 10);
    let pgm = std::fs::read_to_string(dir.join("result.pgm")).unwrap();
    assert!(pgm.starts_with("P2\n"));

    // The result file embeds a complete problem description: re-running
    // from it reproduces the energy.
    let problem_path = dir.join("problem.json");
    std::fs::write(
        &problem_path,
        serde_json::to_string(&doc["problem"]).unwrap(),
    )
    .unwrap();
    let rerun = nlms()
        .args(["minimize", "--problem", problem_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(rerun.status.success(), "{:?}", rerun);
    let text = String::from_utf8(rerun.stdout).unwrap();
    let energy = doc["energy"].as_f64().unwrap();
    assert!(
        text.contains(&format!("{:.6e}", energy)),
        "{text} vs {energy}"
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bad_input_exits_2() {
    let out = nlms()
        .args(["alpha", "--set", "no-such-set"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
