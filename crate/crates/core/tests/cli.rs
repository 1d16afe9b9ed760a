use std::process::{Command, Output};

use serde_json::Value;

const Z: &str = "x3*x1^3 + x4*x2^3 + 3*(2*x3^2 - x3*x4 + x4^2)*x1*x2 \
                 + 4*(20*x3^4 + 5*x4^4 - 18*x3^3*x4 - 4*x3^2*x4^2 - 9*x3*x4^3)/3";

fn qline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qline"))
        .args(args)
        .output()
        .unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn analyze_z_instance() {
    let o = qline(&["analyze", "--quartic", Z, "--line", "x3;x4"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["smooth"], true);
    assert_eq!(r["fiber_types"], "6I3+6I1");
    assert_eq!(r["lines_meeting"]["count"], 18);
    assert_eq!(r["segre"]["detect"], false);
    assert_eq!(r["ramification"]["type"], "2^2");
    let per_fiber: u64 = r["fibers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["components"].as_array().unwrap().len() as u64)
        .sum();
    assert_eq!(per_fiber, 18);
    assert!(r.get("timings_us").is_none());
}

#[test]
fn reports_are_byte_identical() {
    let a = qline(&["analyze", "--quartic", Z, "--seed", "4"]);
    let b = qline(&["analyze", "--quartic", Z, "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn singular_input_gives_partial_report() {
    let o = qline(&["analyze", "--quartic", "x3*x1^3 + x4*x2^3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["smooth"], false);
    assert!(r["witness"].is_object());
    assert!(r["lines_meeting"].is_null());
}

#[test]
fn quartic_from_file_and_out_flag() {
    let dir = std::env::temp_dir().join(format!("qline-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("f.txt");
    let out = dir.join("report.json");
    std::fs::write(&input, "x1*x3^3 + x2*x4^3 + x1^4 + x2^4\n").unwrap();
    let o = qline(&[
        "analyze",
        "--quartic",
        input.to_str().unwrap(),
        "--line",
        "x1;x2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["fiber_types"], "6IV");
    assert_eq!(
        r["segre"]["decomposition"]["class"],
        "line-of-triple-points"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn compose_and_family() {
    let o = qline(&[
        "compose",
        "--ruled",
        "x3*x1^3 + x4*x2^3",
        "--planes",
        "x3+x4;x3-x4;x3+2*x4;x3-2*x4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["second_kind"], true);

    let o = qline(&[
        "family",
        "--name",
        "T",
        "--a",
        "0",
        "--b",
        "2",
        "--c",
        "3",
        "--g",
        "x3^4+5*x4^4+x3*x4^3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["segre"]["detect"], true);
    assert_eq!(r["lines_meeting"]["count"], 15);
    assert!(r["segre"]["decomposition"].is_object());

    let o = qline(&[
        "family",
        "--name",
        "Z",
        "--q",
        "3*x3*x4",
        "--g",
        "x3^4+x4^4",
    ]);
    assert_eq!(json(&o)["fiber_types"], "2IV+4I3+4I1");
}

#[test]
fn exit_codes() {
    assert_eq!(
        qline(&["analyze", "--quartic", "x1^^2"]).status.code(),
        Some(1)
    );
    assert_eq!(qline(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        qline(&["analyze", "--quartic", "x1/0"]).status.code(),
        Some(1)
    );
    assert_eq!(
        qline(&["analyze", "--quartic", "x1^4+x2^4+x3^4+x4^4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qline(&["family", "--name", "T", "--a", "1", "--b", "1", "--c", "0", "--g", "x3^4"])
            .status
            .code(),
        Some(2)
    );
    let planes = "x1;x3;x4;x3+x4";
    assert_eq!(
        qline(&[
            "compose",
            "--ruled",
            "x3*x1^3 + x4*x2^3",
            "--planes",
            planes
        ])
        .status
        .code(),
        Some(2)
    );
    let o = qline(&["verify-paper", "--prime", "13"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("above 24"));
}
