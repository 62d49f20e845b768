use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn ssc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture_arg(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn temp_document(text: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    file
}

#[test]
fn check_verdicts_and_exit_codes() {
    let out = ssc(&["check", &fixture_arg("fig1a.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("SSC: yes\n"));

    let out = ssc(&["check", &fixture_arg("fig2b.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("SSC: no, witness {2,4}\n"));
}

#[test]
fn check_json() {
    let out = ssc(&["check", "--json", &fixture_arg("fig1b.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ssc"], false);
    assert_eq!(v["witness"], serde_json::json!([1, 3]));
    assert_eq!(v["subsets_examined"], 7);

    let out = ssc(&["check", "--json", &fixture_arg("fig3.json")]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ssc"], true);
    assert_eq!(v["witness"], serde_json::Value::Null);
    assert_eq!(v["subsets_examined"], 65535);
    assert_eq!(v["pactus_shortcut"], "holds");
}

#[test]
fn malformed_documents() {
    let file = temp_document("{\n  \"version\": 1,\n  \"state_nodes\": [1,\n");
    let out = ssc(&["check", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4, column 0"), "{err}");

    let file = temp_document(r#"{"version":1,"state_nodes":[1],"state_edges":[[1,2]]}"#);
    assert_eq!(
        ssc(&["check", file.path().to_str().unwrap()]).status.code(),
        Some(2)
    );

    assert_eq!(
        ssc(&["check", "/nonexistent/net.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn exact_limit_is_a_hard_cap() {
    let out = ssc(&["check", "--exact-limit", "10", &fixture_arg("fig3.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = ssc(&["check", "--exact-limit", "64", &fixture_arg("fig1a.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn min_inputs_on_fig5() {
    let out = ssc(&["min-inputs", "--json", "--audit", &fixture_arg("fig5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 4);
    let targets: Vec<u64> = v["external_inputs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["target"].as_u64().unwrap())
        .collect();
    assert_eq!(targets, vec![1, 3, 5, 14]);
    assert_eq!(v["external_inputs"][0]["id"], "u1");
    assert_eq!(v["verified_ssc"], true);
    let stages: Vec<&str> = v["stages"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["graph_type"].as_str().unwrap())
        .collect();
    assert_eq!(
        stages,
        vec!["tree-type", "cycle-type", "cycle-type", "cycle-type"]
    );
}

#[test]
fn min_inputs_text_and_audit() {
    let out = ssc(&["min-inputs", "--audit", &fixture_arg("single-path.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("external inputs: 1 [u1->1]\n"), "{text}");
    assert!(text.contains("minimal: yes"));

    let out = ssc(&[
        "min-inputs",
        "--tie-break",
        "largest",
        &fixture_arg("single-path.json"),
    ]);
    assert!(stdout(&out).starts_with("external inputs: 1 [u1->4]\n"));

    let out = ssc(&[
        "min-inputs",
        "--order",
        "all-orders",
        "--json",
        &fixture_arg("fig3-state-only.json"),
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["count"].as_u64().unwrap() <= 7);
}

#[test]
fn min_inputs_rejects_networks_with_inputs() {
    let out = ssc(&["min-inputs", &fixture_arg("fig1a.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn min_inputs_rejects_non_pactus_seeds() {
    let file = temp_document(
        r#"{"version":1,"state_nodes":[1,2,3],"state_edges":[[1,2],[2,3],[1,3]],
            "decomposition":[{"nodes":[1,2,3],"kind":"path"}]}"#,
    );
    let out = ssc(&["min-inputs", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_reports() {
    let out = ssc(&[
        "oracle",
        "--trials",
        "200",
        "--seed",
        "7",
        &fixture_arg("fig1a.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("controllable fraction: 1.000"), "{text}");
    assert!(text.contains("consistent"));

    let out = ssc(&[
        "oracle",
        "--trials",
        "200",
        "--seed",
        "7",
        &fixture_arg("fig2b.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("non-SSC: sampling cannot certify"));

    let out = ssc(&["oracle", "--trials", "0", &fixture_arg("fig1a.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_is_seed_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_ssc"))
            .args([
                "oracle",
                "--trials",
                "50",
                "--seed",
                "3",
                &fixture_arg("fig2b.json"),
            ])
            .env("SSC_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn export_dot() {
    let out = ssc(&["export-dot", &fixture_arg("single-node.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().filter(|l| l.trim() == "1;").count(), 1);

    let args = [
        "export-dot",
        "--annotate",
        "components",
        &fixture_arg("fig5.json"),
    ];
    let first = stdout(&ssc(&args));
    assert_eq!(first, stdout(&ssc(&args)));
    assert_eq!(first.matches("subgraph cluster_").count(), 4);
    assert!(first.contains("[color=red, style=dashed]"));

    let out = stdout(&ssc(&[
        "export-dot",
        "--annotate",
        "ssc-nodes",
        &fixture_arg("fig1a.json"),
    ]));
    assert_eq!(out.matches("fillcolor=\"#2b6cb0\"").count(), 5);
}

#[test]
fn bad_thread_setting() {
    let out = Command::new(env!("CARGO_BIN_EXE_ssc"))
        .args(["check", &fixture_arg("fig1a.json")])
        .env("SSC_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
