use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_rootstack-gw");

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN).args(args).current_dir(dir).output().expect("run binary")
}

fn run(args: &[&str]) -> Output {
    run_in(Path::new("."), args)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn compute(delta: u32, d: u32, n: [u32; 3]) -> String {
    let args = [delta, d, n[0], n[1], n[2]].map(|x| x.to_string());
    let out = run(&[
        "compute", "--delta", &args[0], "--degree", &args[1], "--n2", &args[2], "--n3", &args[3], "--n4", &args[4],
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    stdout(&out).trim_end().to_string()
}

#[test]
fn compute_examples() {
    assert_eq!(compute(1, 4, [7, 0, 4]), "416");
    assert_eq!(compute(1, 1, [0, 1, 4]), "-1/4");
    assert_eq!(compute(2, 1, [0, 5, 0]), "0");
}

#[test]
fn compute_json_record() {
    let out = run(&["compute", "--delta", "1", "--degree", "1", "--n2", "0", "--n3", "1", "--n4", "4", "--json"]);
    assert_eq!(stdout(&out), "{\"delta\":1,\"d\":1,\"n\":[0,1,4],\"value\":\"-1/4\",\"admissible\":true}\n");
    let out = run(&["compute", "--delta", "2", "--degree", "1", "--n2", "0", "--n3", "5", "--n4", "0", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], "0");
    assert_eq!(v["admissible"], false);
}

#[test]
fn general_examples() {
    let g = |delta: &str, d: &str, n: &str| {
        let out = run(&["general", "--delta", delta, "--degree", d, "--n", n]);
        assert_eq!(code(&out), 0);
        stdout(&out).trim_end().to_string()
    };
    assert_eq!(g("3", "1", "0,1,2,3,0"), "6");
    assert_eq!(g("4", "0", "0,1,0,2,0"), "2");
    assert_eq!(g("2", "0", "0,0,0,3,1"), "-1/4");

    let out = run(&["general", "--delta", "2", "--degree", "0", "--n", "0,1,0,2,0", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"].as_array().unwrap().len(), 5);
    assert_eq!(v["admissible"], true);
}

#[test]
fn general_usage_errors() {
    assert_eq!(code(&run(&["general", "--delta", "2", "--degree", "0", "--n", "0,0,0,2,0"])), 2);
    assert_eq!(code(&run(&["general", "--delta", "2", "--degree", "1", "--n", "0,0,0,2"])), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["compute", "--delta", "0", "--degree", "1", "--n2", "0", "--n3", "0", "--n4", "3"])), 2);
    assert_eq!(code(&run(&["compute", "--delta", "1", "--degree", "0", "--n2", "0", "--n3", "0", "--n4", "3"])), 2);
    assert_eq!(code(&run(&["compute", "--delta", "x", "--degree", "1", "--n2", "0", "--n3", "0", "--n4", "3"])), 2);
    assert_eq!(code(&run(&["table", "--delta", "1", "--degree", "1"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "nonsense"])), 2);
}

#[test]
fn table_rows_sorted_and_valued() {
    let out = run(&["table", "--delta", "1", "--degree", "1", "--max-n3", "1"]);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "delta,d,n2,n3,n4,value");
    assert!(rows.contains(&"1,1,0,0,3,1/2"));
    assert!(rows.contains(&"1,1,0,1,4,-1/4"));
    let keys: Vec<(u32, u32)> = rows[1..]
        .iter()
        .map(|r| {
            let f: Vec<u32> = r.split(',').take(5).map(|x| x.parse().unwrap()).collect();
            (f[3], f[4])
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);

    let out = run(&["table", "--delta", "3", "--degree", "1", "--max-n3", "3"]);
    let text = stdout(&out);
    assert!(text.lines().any(|r| r == "3,1,2,3,0,6"));
    assert!(text.lines().any(|r| r == "3,1,1,2,1,2"));

    let out = run(&["table", "--delta", "6", "--degree", "1", "--max-n3", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // 2*n2 = 4 - 6 - n4 has no solution, so the family starts at n3 = 2
    assert_eq!(v, serde_json::json!([]));

    let out = run(&["table", "--delta", "4", "--degree", "1", "--max-n3", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert!(rows.iter().all(|r| r["n"][1] == 0 && r["admissible"] == true));
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--delta", "2", "--degree", "2", "--max-n3", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn verify_suites_pass() {
    for suite in ["pinned", "closed-forms", "bases", "cross"] {
        let out = run(&["verify", "--suite", suite]);
        assert_eq!(code(&out), 0, "{suite}: {}", stdout(&out));
        assert!(stdout(&out).contains("PASS"));
    }
    let out = run(&["verify", "--suite", "wdvv", "--delta", "1", "--q-max", "2", "--y-max", "5", "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["suite"], "wdvv");
    assert_eq!(v["passed"], true);
    assert_eq!(v["cases"].as_array().unwrap().len(), 125);
}

#[test]
fn cache_seed_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("seed.txt"), "#rootstack-gw-cache v1\n1\t4\t7\t0\t4\t416\n").unwrap();
    let out = run_in(
        dir.path(),
        &["--cache-in", "seed.txt", "--stats", "compute", "--delta", "1", "--degree", "4", "--n2", "7", "--n3", "0", "--n4", "4"],
    );
    assert_eq!(stdout(&out), "416\n");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("hits=1 misses=0"), "{err}");
}

#[test]
fn cache_malformed_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("unreduced.txt", "#rootstack-gw-cache v1\n1\t1\t0\t0\t3\t2/4\n"),
        ("header.txt", "#rootstack-gw-cache v2\n"),
        ("dup.txt", "#rootstack-gw-cache v1\n1\t1\t0\t0\t3\t1/2\n1\t1\t0\t0\t3\t1/2\n"),
    ] {
        std::fs::write(dir.path().join(name), body).unwrap();
        let out = run_in(dir.path(), &["cache", "import", "--file", name]);
        assert_eq!(code(&out), 2, "{name}");
    }
    assert_eq!(code(&run_in(dir.path(), &["cache", "import", "--file", "missing.txt"])), 2);
}

#[test]
fn cache_conflict_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.txt"), "#rootstack-gw-cache v1\n1\t4\t7\t0\t4\t416\n").unwrap();
    std::fs::write(dir.path().join("b.txt"), "#rootstack-gw-cache v1\n1\t4\t7\t0\t4\t417\n").unwrap();
    let out = run_in(dir.path(), &["--cache-in", "a.txt", "cache", "import", "--file", "b.txt"]);
    assert_eq!(code(&out), 3);
    // re-importing identical values is fine
    let out = run_in(dir.path(), &["--cache-in", "a.txt", "cache", "import", "--file", "a.txt"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn cache_export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let export = ["cache", "export", "--file", "c.txt", "--delta", "1,2", "--max-degree", "2", "--max-n3", "3"];
    assert_eq!(code(&run_in(dir.path(), &export)), 0);
    let first = std::fs::read_to_string(dir.path().join("c.txt")).unwrap();
    assert!(first.starts_with("#rootstack-gw-cache v1\n"));
    let mut again = vec!["--cache-in", "c.txt"];
    again.extend(["cache", "export", "--file", "d.txt", "--delta", "1,2", "--max-degree", "2", "--max-n3", "3"]);
    assert_eq!(code(&run_in(dir.path(), &again)), 0);
    assert_eq!(first, std::fs::read_to_string(dir.path().join("d.txt")).unwrap());
}
