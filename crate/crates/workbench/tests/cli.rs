//! End-to-end tests driving the compiled binary: exit codes, report
//! determinism, and the verify round trip.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_proximal")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("no signal"),
        stdout: String::from_utf8(out.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf8 stderr"),
    }
}

/// Runs a command expecting a report; checks the process exit and the
/// exit classification embedded in the report agree.
fn report(args: &[&str], want: i32) -> Value {
    let r = run(args);
    assert_eq!(
        r.code, want,
        "args {args:?}: got exit {} (stderr: {})",
        r.code, r.stderr
    );
    let value: Value = serde_json::from_str(&r.stdout).expect("report parses");
    assert_eq!(value["exit"], Value::from(want), "embedded exit matches");
    value
}

fn write_temp(dir: &tempfile::TempDir, name: &str, content: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, content).expect("write temp file");
    path.display().to_string()
}

#[test]
fn one_by_n_strips_have_complexity_one() {
    let dir = tempfile::tempdir().unwrap();
    for n in 2..=6 {
        let grid = write_temp(&dir, &format!("strip{n}.txt"), &format!("{}\n", ".".repeat(n)));
        let out = report(&["tc", "--grid", &grid], 0);
        assert_eq!(out["result"]["value"], "1", "strip of {n} cells");
        assert_eq!(out["result"]["exact"], true);
    }
}

#[test]
fn ring_fixture_boundary_complexity_is_two() {
    let out = report(
        &["tc", "--grid", &fixture("ring6.txt"), "--mode", "boundary-cycle"],
        0,
    );
    assert_eq!(out["result"]["value"], "2");
    assert_eq!(out["result"]["pieces"].as_array().unwrap().len(), 2);
}

#[test]
fn corridor_fails_the_fifth_axiom_with_a_witness() {
    let out = report(&["axioms", "--grid", &fixture("corridor.txt")], 1);
    assert_eq!(out["result"]["all_basic_hold"], true);
    assert_eq!(out["result"]["all_hold"], false);
    let ef = &out["result"]["axioms"]["ef_normality"];
    assert_eq!(ef["holds"], false);
    assert!(ef["witness"]["sets"].as_array().unwrap().len() >= 2);
}

#[test]
fn feature_probes_split_the_scene_and_a_constant_probe_rejoins_it() {
    let grid = fixture("two_blobs.txt");
    let split = report(&["connect", "--grid", &grid, "--features"], 1);
    assert_eq!(split["result"]["connectivity"]["connected"], false);
    let spatial = report(&["connect", "--grid", &grid], 0);
    assert_eq!(spatial["result"]["connectivity"]["connected"], true);
    let rejoined = report(&["connect", "--grid", &grid, "--features", "const"], 0);
    assert_eq!(rejoined["result"]["connectivity"]["connected"], true);
    report(&["tc", "--grid", &grid, "--features"], 1);
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    let args = ["tc", "--grid", &fixture("corridor.txt")];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.code, 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn every_subcommand_emits_a_verifiable_report() {
    let dir = tempfile::tempdir().unwrap();
    let corridor = fixture("corridor.txt");
    let ring6 = fixture("ring6.txt");
    let id3 = fixture("path3_id.json");
    let const3 = fixture("path3_const.json");
    let cyc5 = fixture("cyc5.json");
    let cyc5_id = fixture("cyc5_id.json");
    let cyc5_const = fixture("cyc5_const.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["axioms", "--grid", &corridor],
        vec!["connect", "--grid", &ring6, "--mode", "boundary-cycle"],
        vec!["near", "--grid", &corridor, "--set", "r0c0", "--set2", "r0c1"],
        vec!["closure", "--grid", &corridor, "--set", "r0c0"],
        vec!["pc", "--map", &id3],
        vec!["homotopic", "--map", &id3, "--map2", &const3],
        vec!["homotopic", "--map", &cyc5_id, "--map2", &cyc5_const],
        vec!["contract", "--grid", &corridor],
        vec!["contract", "--space", &cyc5],
        vec!["distance", "--map", &cyc5_id, "--map2", &cyc5_const],
        vec!["tc", "--grid", &corridor],
        vec!["tcn", "--grid", &corridor, "--n", "3"],
        vec!["tcmap", "--map", &id3],
        vec!["rtc", "--grid", &corridor, "--set", "r0c0,r0c2"],
        vec!["genus", "--map", &id3],
        vec!["fiber-equiv", "--map", &id3, "--map2", &id3],
        vec!["probe-fineness", "--grid", &corridor, "--eps2", "2"],
        vec!["oracle-compare", "--grid", &corridor],
        vec!["oracle-compare", "--map", &id3, "--map2", &const3],
    ];
    for (i, args) in commands.iter().enumerate() {
        let r = run(args);
        assert!(
            r.code == 0 || r.code == 1,
            "command {args:?} exited {} (stderr: {})",
            r.code,
            r.stderr
        );
        let path = write_temp(&dir, &format!("report{i}.json"), &r.stdout);
        let check = report(&["verify", &path], 0);
        assert_eq!(check["result"]["verified"], true, "command {args:?}");
    }
    // A verification report is itself verifiable.
    let nested = run(&["verify", &write_temp(&dir, "seed.json", &run(&["tc", "--grid", &corridor]).stdout)]);
    let nested_path = write_temp(&dir, "nested.json", &nested.stdout);
    let meta = report(&["verify", &nested_path], 0);
    assert_eq!(meta["result"]["verified"], true);
}

#[test]
fn verify_rejects_a_tampered_result() {
    let dir = tempfile::tempdir().unwrap();
    let honest = run(&["near", "--grid", &fixture("corridor.txt"), "--set", "r0c0", "--set2", "r0c2"]);
    assert_eq!(honest.code, 1);
    let forged = honest.stdout.replace("\"near\": false", "\"near\": true");
    assert_ne!(forged, honest.stdout);
    let path = write_temp(&dir, "forged.json", &forged);
    let out = report(&["verify", &path], 1);
    assert_eq!(out["result"]["verified"], false);
}

#[test]
fn verify_rejects_a_tampered_embedded_input() {
    let dir = tempfile::tempdir().unwrap();
    let honest = run(&["tc", "--grid", &fixture("corridor.txt")]);
    let forged = honest.stdout.replace("\"text\": \"...\\n\"", "\"text\": \"....\\n\"");
    assert_ne!(forged, honest.stdout);
    let path = write_temp(&dir, "forged.json", &forged);
    let out = report(&["verify", &path], 1);
    assert_eq!(out["result"]["verified"], false);
    assert!(out["result"]["reason"]
        .as_str()
        .unwrap()
        .contains("digest"));
}

#[test]
fn grid_parse_errors_name_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let ragged = write_temp(&dir, "ragged.txt", "ab\nabc\n");
    let r = run(&["connect", "--grid", &ragged]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "stderr: {}", r.stderr);

    let tabbed = write_temp(&dir, "tabbed.txt", ".\t.\n");
    let r = run(&["connect", "--grid", &tabbed]);
    assert_eq!(r.code, 2);
    assert!(
        r.stderr.contains("line 1, column 2"),
        "stderr: {}",
        r.stderr
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["tc", "--nope"]).code, 2);
    assert_eq!(run(&["tc"]).code, 2);
    assert_eq!(
        run(&["tc", "--grid", &fixture("corridor.txt"), "--space", &fixture("cyc5.json")]).code,
        2
    );
    assert_eq!(run(&["near", "--grid", &fixture("corridor.txt"), "--set", "r0c0"]).code, 2);
    assert_eq!(run(&["probe-fineness", "--grid", &fixture("corridor.txt")]).code, 2);
    assert_eq!(run(&["nonsense"]).code, 2);
}

#[test]
fn budget_exhaustion_exits_three_and_still_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = report(
        &[
            "homotopic",
            "--map",
            &fixture("band8_p1.json"),
            "--map2",
            &fixture("band8_p2.json"),
            "--budget-states",
            "2000",
        ],
        3,
    );
    assert_eq!(out["result"]["verdict"], "unknown");
    assert_eq!(out["budgets"]["max_states"], 2000);
    let text = serde_json::to_string_pretty(&out).unwrap() + "\n";
    let path = write_temp(&dir, "unknown.json", &text);
    assert_eq!(report(&["verify", &path], 0)["result"]["verified"], true);
}

#[test]
fn negative_verdicts_exit_one() {
    let winding = report(
        &["homotopic", "--map", &fixture("cyc5_id.json"), "--map2", &fixture("cyc5_const.json")],
        1,
    );
    assert_eq!(winding["result"]["verdict"], "not_good");
    assert_eq!(winding["result"]["proof"]["kind"], "winding_mismatch");

    let rigid = report(
        &["homotopic", "--map", &fixture("cyc4_id.json"), "--map2", &fixture("cyc4_const.json")],
        1,
    );
    assert_eq!(rigid["result"]["proof"]["kind"], "exhausted_component");
}

#[test]
fn out_flag_duplicates_stdout_and_self_verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path: PathBuf = dir.path().join("report.json");
    let shown = run(&[
        "tc",
        "--grid",
        &fixture("corridor.txt"),
        "--out",
        &path.display().to_string(),
        "--verify",
    ]);
    assert_eq!(shown.code, 0);
    assert_eq!(fs::read_to_string(&path).unwrap(), shown.stdout);
}
