//! End-to-end checks of the command line: exit codes, emitted files, and
//! output round trips.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_petrisynth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("petrisynth-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn synth_verifies_and_emits() {
    let dir = temp_dir("synth");
    let out = dir.join("ts21.pn");
    let output = run(&[
        "synth",
        &fixture("ts21.lts"),
        "--verify",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    let net = petrisynth::io::parse_pn(&text).unwrap();
    assert!(net.num_places() > 0);
}

#[test]
fn synth_exit_codes() {
    // Pre-synthesis rejection.
    let output = run(&["synth", &fixture("fig7left.lts")]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stdout).contains("backward-determinism"));

    // Unsolvable input with its witness printed.
    let output = run(&["synth", &fixture("unsolvable2.lts")]);
    assert_eq!(output.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("unsolvable"), "{stdout}");
    assert!(stdout.contains("ESSP"), "{stdout}");

    // Format error.
    let dir = temp_dir("badlts");
    let bad = dir.join("bad.lts");
    fs::write(&bad, "initial i\narc i __u0 i\n").unwrap();
    let output = run(&["synth", bad.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn synth_all_strategies_agree() {
    for strategy in ["mono", "factor", "artic", "mixed"] {
        let output = run(&[
            "synth",
            &fixture("grid6.lts"),
            "--verify",
            "--strategy",
            strategy,
        ]);
        assert_eq!(output.status.code(), Some(0), "strategy {strategy}");
    }
}

#[test]
fn decompose_prints_tree() {
    let output = run(&["decompose", &fixture("bigfix.lts")]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("artic("), "{stdout}");

    let output = run(&["decompose", &fixture("grid6.lts")]);
    assert!(String::from_utf8_lossy(&output.stdout).contains("product("));
}

#[test]
fn factorize_and_articulate_demand_decompositions() {
    let dir = temp_dir("factors");
    let output = run(&[
        "factorize",
        &fixture("grid6.lts"),
        "--emit-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let factor0 = fs::read_to_string(dir.join("factor0.lts")).unwrap();
    petrisynth::io::parse_lts(&factor0).unwrap();

    // The chain has a single label class: demanding factors fails.
    let output = run(&["factorize", &fixture("aabb.lts")]);
    assert_eq!(output.status.code(), Some(1));

    let output = run(&["articulate", &fixture("bigfix.lts")]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("<s1>"), "{stdout}");

    // The grid articulates only trivially.
    let output = run(&["articulate", &fixture("grid6.lts")]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn rg_round_trips_through_synthesis() {
    let dir = temp_dir("rg");
    let out = dir.join("rg.lts");
    let output = run(&[
        "rg",
        &fixture("net21.pn"),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    let rg = petrisynth::io::parse_lts(&text).unwrap();
    assert_eq!(rg.num_states(), 23);

    // Unbounded nets exit with the resource code.
    let bad = dir.join("unbounded.pn");
    fs::write(&bad, "place p 0\ntrans grow\narc grow p\n").unwrap();
    let output = run(&["rg", bad.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(3));

    // And a tiny cap trips the cap code.
    let output = run(&["rg", &fixture("net21.pn"), "--max-states", "4"]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn bench_writes_csv() {
    let dir = temp_dir("bench");
    let csv = dir.join("out.csv");
    let output = run(&[
        "bench",
        "--family",
        "caterpillar",
        "--component",
        &fixture("cycles4.lts"),
        "--max-n",
        "2",
        "--reps",
        "1",
        "--csv",
        csv.to_str().unwrap(),
        "--strategies",
        "mono,mixed",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("family,n,states,strategy,elapsed_ms,verified\n"));
    assert_eq!(text.lines().count(), 1 + 2 * 2);
    assert!(text.ends_with('\n'));
}
