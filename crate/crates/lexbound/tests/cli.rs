//! End-to-end checks of the compiled binary: argument handling, the JSON
//! stream on stdout, the exit-code contract (0 ok, 1 domain, 2 resource),
//! and the `LEXBOUND_NODE_CAP` override, which is set per child process here
//! so runs cannot interfere with each other.

use std::path::PathBuf;
use std::process::{Command, Output};

use lexbound::instance::{Body, Monotonicity, SetInstance};
use lexbound::ratio::rat;
use lexbound::{IntBox, IntPoint};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lexbound"))
}

fn write_instance(name: &str, inst: &SetInstance) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lexbound-bin-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, inst.to_json()).unwrap();
    path
}

fn knapsack() -> SetInstance {
    SetInstance::new(
        IntBox::from_upper(IntPoint::new(vec![1, 5, 4, 1, 2])).unwrap(),
        Body::Knapsack { a: vec![2, 8, 40, 150, 310], b: 825 },
        Monotonicity::Down,
    )
    .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn help_lists_every_subcommand() {
    let out = bin().arg("--help").output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    for sub in ["lexopt", "bounds", "structure", "formulate", "oracle", "bench", "selftest"] {
        assert!(text.contains(sub), "missing {sub} in help:\n{text}");
    }
}

#[test]
fn lexopt_round_trips_through_files_and_stdout() {
    let path = write_instance("knap.json", &knapsack());
    let out = bin()
        .args(["lexopt", "--instance"])
        .arg(&path)
        .args(["--perm", "reverse"])
        .output()
        .unwrap();
    assert!(out.status.success());
    // Reversed significance makes coordinate 0 most significant; the greedy
    // fill packs the cheap coordinates to their caps (2 + 40 + 160 + 150 =
    // 352) and the leftover budget fits one unit of the heaviest item.
    assert_eq!(stdout(&out).trim(), r#"{"point":[1,5,4,1,1]}"#);
}

#[test]
fn domain_errors_exit_one_with_a_message_on_stderr() {
    let out = bin()
        .args(["lexopt", "--instance", "/nonexistent/instance.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("error:"), "{err}");
    assert!(err.contains("/nonexistent/instance.json"), "{err}");
}

#[test]
fn node_cap_override_maps_resource_exhaustion_to_exit_two() {
    // An even-sum row pinned to an odd total: infeasible, but the interval
    // propagation cannot see it without branching, so a tiny budget runs out.
    let parity = SetInstance::new(
        IntBox::from_upper(IntPoint::new(vec![9; 4])).unwrap(),
        Body::Linear {
            a: vec![vec![rat(2); 4], vec![rat(-2); 4]],
            b: vec![rat(9), rat(-9)],
        },
        Monotonicity::None,
    )
    .unwrap();
    let path = write_instance("parity.json", &parity);

    let out = bin()
        .args(["lexopt", "--instance"])
        .arg(&path)
        .env("LEXBOUND_NODE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));

    // With the default budget the search completes and correctly reports the
    // set as empty — a domain error, not a resource one.
    let out = bin().args(["lexopt", "--instance"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    // A malformed override is rejected up front.
    let out = bin()
        .args(["lexopt", "--instance"])
        .arg(&path)
        .env("LEXBOUND_NODE_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("LEXBOUND_NODE_CAP"));
}

#[test]
fn selftest_quick_passes_and_prints_every_check() {
    let out = bin().args(["selftest", "--level", "quick"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["all_pass"], serde_json::json!(true));
    for check in doc["checks"].as_array().unwrap() {
        assert_eq!(check["pass"], serde_json::json!(true), "{}", check["name"]);
    }
}

#[test]
fn pretty_flag_switches_to_indented_json() {
    let path = write_instance("knap-pretty.json", &knapsack());
    let out = bin()
        .args(["lexopt", "--instance"])
        .arg(&path)
        .arg("--pretty")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("{\n"), "{text}");
    assert!(text.contains("\"point\""));
}
