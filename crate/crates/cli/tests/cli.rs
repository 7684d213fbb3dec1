use std::path::PathBuf;
use std::process::Command;

fn ppz(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ppz")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn scenario(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ppz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

/// Lines of the table between the header block and the result line.
fn table(stdout: &str) -> Vec<&str> {
    stdout.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn ziegler_closure_example() {
    let (code, out, _) = ppz(&["ziegler", "closure", "--n", "1", "--set", "F0 Prufer"]);
    assert_eq!(code, 0);
    assert_eq!(table(&out), ["set", "{F0 Prufer, F0 Q}"]);
}

#[test]
fn pp_dual_example_prints_left_divisibility_and_certificate() {
    let (code, out, _) = ppz(&["pp", "dual", "--formula", "x1*a = 0"]);
    assert_eq!(code, 0);
    let rows = table(&out);
    assert!(rows.contains(&"dual side\tleft"));
    assert!(rows.contains(&"equivalent to\ta | x1"));
    assert!(rows.iter().any(|r| r.starts_with("certificate\t")));
}

#[test]
fn classify_example_is_sorted_and_self_consistent() {
    let (code, out, _) = ppz(&["classify", "--N", "3", "--n", "1", "--dim-cap", "8"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = table(&out).iter().skip(1).map(|r| r.split('\t').collect()).collect();
    assert!(!rows.is_empty());
    for r in &rows {
        assert_eq!(r[0], r[3]);
        assert!(r[2] == "0" || r[2] == "1");
    }
    assert!(out.contains("# horizon: 3\n"));
}

#[test]
fn header_block_and_json() {
    let (_, out, _) = ppz(&["--seed", "9", "--field", "3", "tube", "m=1", "horizon=2"]);
    let head: Vec<&str> = out.lines().take(5).collect();
    assert!(head[0].starts_with("# tool: ppz "));
    assert_eq!(&head[1..], ["# field: F_3", "# horizon: 2", "# seed: 9", "# command: tube m=1 horizon=2"]);
    let (code, out, _) = ppz(&["--json", "ziegler", "is-closed", "--n", "1", "--set", "{F0 Prufer}"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"], "PASS");
    assert_eq!(v["reports"][0]["rows"][0][1], "false");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ppz(&["classify", "--N", "3"]).0, 2);
    assert_eq!(ppz(&["suite", "nope"]).0, 2);
    let (code, _, err) = ppz(&["pp", "dual", "--formula", "x1*q = 0"]);
    assert_eq!(code, 2);
    assert!(err.contains("column 4"), "{err}");
    assert_eq!(ppz(&["classify", "--N", "99", "--n", "1"]).0, 2);
}

#[test]
fn horizon_exceeded_is_surfaced_verbatim() {
    let (code, out, _) = ppz(&["realize", "--N", "3", "--n", "1", "m=1", "n=[0]", "horizon=3"]);
    assert_eq!(code, 1);
    assert!(out.contains("# error: HORIZON_EXCEEDED: needs Loewy length 3, horizon is 3"), "{out}");
    assert!(out.contains("# result: ERROR"));
}

#[test]
fn failing_assertion_exits_one() {
    // the pp-oracle suite enumerates elements, which is impossible over Q
    let (code, out, _) = ppz(&["--field", "rational", "suite", "pp-oracle"]);
    assert_eq!(code, 1);
    assert!(out.contains("# result: ERROR"));
}

const DEMO: &str = "# demo scenario
version 1
field 2
seed 11
classify --N 3 --n 1 --dim-cap 5
pp dual --formula \"x1*a = 0\"
pp implies --algebra dvr:3 --formula \"x1*x^2 = 0\" --other \"x1*x = 0\"
pp eval --algebra dvr:3 --formula \"E y1 . (x1 = y1*x)\" --module U3+U1 --module U2
ziegler closure --n 2 --set \"F0^1 F1^1 Prufer\"
tube m=2 n=[1,0] horizon=3 --hom S(0,0,1) S(0,0,3)
realize --N 5 --n 1 m=1 n=[0] horizon=3
suite ziegler
";

#[test]
fn scenario_runs_are_byte_identical_and_parallel_keeps_order() {
    let path = scenario("demo.ppz", DEMO);
    let p = path.to_str().unwrap();
    let (code, first, err) = ppz(&["run", p]);
    assert_eq!(code, 0, "{first}{err}");
    let (_, second, _) = ppz(&["run", p]);
    assert_eq!(first, second);
    let (_, parallel, _) = ppz(&["--parallel", "run", p]);
    assert_eq!(first, parallel);
    assert_eq!(first.matches("# result: PASS").count(), 8);
    assert!(first.contains("# seed: 11"));
    let commands: Vec<&str> = first.lines().filter_map(|l| l.strip_prefix("# command: ")).collect();
    assert_eq!(commands[0], "classify --N 3 --n 1 --dim-cap 5");
    assert_eq!(commands[7], "suite ziegler");
}

#[test]
fn flags_override_scenario_header() {
    let path = scenario("seeded.ppz", "version 1\nseed 11\ntube m=1 horizon=2\n");
    let (_, out, _) = ppz(&["--seed", "4", "run", path.to_str().unwrap()]);
    assert!(out.contains("# seed: 4"));
}

#[test]
fn scenario_errors_report_file_line_column() {
    let path = scenario("bad.ppz", "version 1\nclassify --N 3 --n 1\npp dual --formula \"x1*q = 0\"\n");
    let (code, out, err) = ppz(&["run", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty(), "nothing runs when a later line is malformed");
    assert!(err.starts_with(&format!("{}:3:23: unknown label", path.display())), "{err}");

    let path = scenario("version.ppz", "version 7\n");
    let (code, _, err) = ppz(&["run", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains(":1:9:"), "{err}");

    let path = scenario("flag.ppz", "version 1\ntube m=1 horizon=2 --frobnicate\n");
    let (code, _, err) = ppz(&["run", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains(":2:20:"), "{err}");

    let (code, _, _) = ppz(&["run", "/nonexistent/scenario.ppz"]);
    assert_eq!(code, 2);
}

#[test]
fn dot_export_is_a_digraph() {
    let (code, out, _) = ppz(&["tube", "m=2", "n=[1,0]", "horizon=3", "--dot"]);
    assert_eq!(code, 0);
    let body = table(&out).join("\n");
    assert!(body.starts_with("digraph tube {"));
    assert!(body.contains("\"S(0,0,1)\" -> \"S(0,0,2)\" [label=\"mu_0^0[1]\", style=solid];"), "{body}");
}
