//! End-to-end tests of the `ablgraph` binary: output shapes, exit codes,
//! certificate round trips, and CSV determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ablgraph"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ablgraph-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn k4_exact_pipeline_end_to_end() {
    let dir = tmpdir("k4");
    let out = run_in(&dir, &["gen", "complete", "4", "-o", "k4.graph"]);
    assert!(out.status.success());

    let out = run_in(&dir, &["girth", "k4.graph"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("girth 3"));

    let out = run_in(&dir, &["abl", "k4.graph", "--mode", "exact"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("abl 10"), "{text}");
    assert!(text.contains("certificate k4.cert"), "{text}");

    let out = run_in(&dir, &["verify", "k4.cert", "k4.graph"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verified abl <= 10"));

    let out = run_in(&dir, &["moore", "k4.graph"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("moore_h 3"), "{text}");
    assert!(text.contains("certificate k4.moore.cert"), "{text}");
    let out = run_in(&dir, &["verify", "k4.moore.cert", "k4.graph"]);
    assert!(out.status.success());
}

#[test]
fn tampered_certificate_exits_4() {
    let dir = tmpdir("tamper");
    run_in(&dir, &["gen", "theta", "1", "2", "2", "-o", "t.graph"]);
    let out = run_in(&dir, &["abl", "t.graph"]);
    assert!(out.status.success());
    let cert = std::fs::read_to_string(dir.join("t.cert")).unwrap();
    // Change one edge id in the witness.
    let lines: Vec<&str> = cert.lines().collect();
    let tampered = match lines[1] {
        l if l.starts_with("walk") => cert.replacen("+0", "+3", 1),
        _ => {
            // Subgraph witness: drop the first edge id, keep the rest.
            let mut out: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
            out[2] = out[2]
                .split_whitespace()
                .skip(1)
                .collect::<Vec<_>>()
                .join(" ");
            out.join("\n") + "\n"
        }
    };
    std::fs::write(dir.join("bad.cert"), tampered).unwrap();
    let out = run_in(&dir, &["verify", "bad.cert", "t.graph"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn exit_codes_for_usage_parse_budget() {
    let dir = tmpdir("codes");
    // Unknown subcommand: usage.
    let out = run_in(&dir, &["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    // Missing mandatory --seed for the random family: usage.
    let out = run_in(&dir, &["gen", "random-regular", "10", "3"]);
    assert_eq!(out.status.code(), Some(1));
    // Malformed graph file: parse.
    std::fs::write(dir.join("bad.graph"), "v 2\ne 0 7\n").unwrap();
    let out = run_in(&dir, &["girth", "bad.graph"]);
    assert_eq!(out.status.code(), Some(2));
    // Missing file: parse.
    let out = run_in(&dir, &["girth", "missing.graph"]);
    assert_eq!(out.status.code(), Some(2));
    // Oracle budget exhaustion on a cycle: budget.
    run_in(&dir, &["gen", "cycle", "6", "-o", "c6.graph"]);
    let out = run_in(
        &dir,
        &["abl", "c6.graph", "--mode", "oracle", "--max-len", "8"],
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn girth_of_forest_is_infinite() {
    let dir = tmpdir("forest");
    std::fs::write(dir.join("p3.graph"), "v 3\ne 0 1\ne 1 2\n").unwrap();
    let out = run_in(&dir, &["girth", "p3.graph"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("girth infinite"));
    let out = run_in(&dir, &["abl", "p3.graph"]);
    assert!(stdout(&out).contains("abl infinite"));
}

#[test]
fn experiment_sweep_is_deterministic_and_bounded() {
    let dir = tmpdir("exp");
    let args = [
        "experiment",
        "--family",
        "random-regular",
        "--d",
        "3",
        "--n",
        "10,20,50,100",
        "--seeds",
        "20",
        "--csv",
        "out.csv",
    ];
    assert!(run_in(&dir, &args).status.success());
    let csv = std::fs::read_to_string(dir.join("out.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "graph_id,family,n,d,girth,abl_lower,abl_upper,abl_exact,moore_bound,ratio_girth,ratio_abl,runtime_ms"
    );
    assert_eq!(lines.len(), 81); // header + 80 rows

    // moore_h(n, 3) for the swept sizes: 4, 5, 7, 8.
    let caps = [(10, 24), (20, 30), (50, 42), (100, 48)];
    for row in &lines[1..] {
        let fields: Vec<&str> = row.split(',').collect();
        let n: usize = fields[2].parse().unwrap();
        let moore: usize = fields[8].parse().unwrap();
        let cap = caps.iter().find(|(m, _)| *m == n).unwrap().1;
        assert!(moore <= cap, "row {row}");
        // abl_lower <= abl_exact <= abl_upper whenever all are present.
        let get = |i: usize| -> Option<usize> { fields[i].parse().ok() };
        if let (Some(lo), Some(hi)) = (get(5), get(6)) {
            assert!(lo <= hi, "row {row}");
            if let Some(exact) = get(7) {
                assert!(lo <= exact && exact <= hi, "row {row}");
            }
        }
        // Deterministic runtime column without --timings.
        assert_eq!(fields[11], "0");
    }

    // Byte-identical on a second run.
    let args2: Vec<&str> = args
        .iter()
        .map(|s| if *s == "out.csv" { "out2.csv" } else { *s })
        .collect();
    assert!(run_in(&dir, &args2).status.success());
    let csv2 = std::fs::read_to_string(dir.join("out2.csv")).unwrap();
    assert_eq!(csv, csv2);

    // Worker count pins through the environment without changing output.
    let out = bin()
        .current_dir(&dir)
        .env("ABLGRAPH_WORKERS", "2")
        .args([
            "experiment",
            "--family",
            "random-regular",
            "--d",
            "3",
            "--n",
            "10,20",
            "--seeds",
            "5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let a = stdout(&out);
    let out = run_in(
        &dir,
        &[
            "experiment",
            "--family",
            "random-regular",
            "--d",
            "3",
            "--n",
            "10,20",
            "--seeds",
            "5",
        ],
    );
    assert_eq!(a, stdout(&out));
}

#[test]
fn gen_lps_writes_graph_meta_and_certificate() {
    let dir = tmpdir("lps");
    let out = run_in(&dir, &["gen", "lps", "5", "13", "-o", "x513"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("n 2184"), "{text}");
    assert!(text.contains("d 6"), "{text}");
    assert!(text.contains("bipartite true"), "{text}");
    assert!(text.contains("r0 5"), "{text}");
    assert!(text.contains("q(q^2+1) = 2210"), "{text}");
    assert!(text.contains("abl_bound"), "{text}");

    let meta = std::fs::read_to_string(dir.join("x513.meta")).unwrap();
    assert!(meta.contains("p 5\nq 13\nn 2184\nd 6\nlegendre -1\nbipartite true\nr0 5\n"));
    assert!(meta.contains("certificate"));

    let out = run_in(&dir, &["verify", "x513.cert", "x513.graph"]);
    assert!(out.status.success(), "{}", stdout(&out));

    // The written graph parses and has the right shape.
    let out = run_in(&dir, &["girth", "x513.graph"]);
    assert!(stdout(&out).contains("girth 8"));
}

#[test]
fn random_regular_generation_is_seeded() {
    let dir = tmpdir("rr");
    let out1 = run_in(&dir, &["gen", "random-regular", "12", "3", "--seed", "7"]);
    let out2 = run_in(&dir, &["gen", "random-regular", "12", "3", "--seed", "7"]);
    assert!(out1.status.success());
    assert_eq!(stdout(&out1), stdout(&out2));
    let out3 = run_in(&dir, &["gen", "random-regular", "12", "3", "--seed", "8"]);
    assert_ne!(stdout(&out1), stdout(&out3));
}
