use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const P3: &str = "p edge 3 2\ne 1 2\ne 2 3\n";
const C5: &str = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";

fn mac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_reports_violation_at_p3_center() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p3.col", P3);
    let c = write(&dir, "ones.txt", "0 1\n1 1\n2 1\n");
    let out = mac(&["check", "-g", &g, "-c", &c]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("violation at vertex 1"));

    let out = mac(&["check", "-g", &g, "-c", &c, "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["outcome"]["verdict"], "invalid");
    assert_eq!(report["violations"][0]["vertex"], 1);
    assert_eq!(report["violations"][0]["sum"], "1");
    assert_eq!(report["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn check_accepts_valid_coloring() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c5.col", C5);
    let c = write(&dir, "c.txt", "0 1\n1 2\n2 1\n3 2\n4 3\n");
    let out = mac(&["check", "-g", &g, "-c", &c]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "valid");
}

#[test]
fn chi_of_c5_is_three() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c5.col", C5);
    let out = mac(&["chi", "-g", &g]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "3");

    let out = mac(&["exact", "-g", &g]);
    assert_eq!(stdout(&out).trim(), "3");
}

#[test]
fn exact_verdicts_map_to_exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c5.col", C5);
    assert_eq!(mac(&["exact", "-g", &g, "--k", "2"]).status.code(), Some(1));
    assert_eq!(mac(&["exact", "-g", &g, "--k", "3"]).status.code(), Some(0));
    let k4 = write(&dir, "k4.col", "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
    assert_eq!(mac(&["exact", "-g", &k4, "--k", "4", "--budget", "1"]).status.code(), Some(3));
}

#[test]
fn inadmissible_sts_order_is_usage_error() {
    let out = mac(&["gen", "sts", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("5"));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(mac(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn not_good_graph_is_negative() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p3.col", P3);
    assert_eq!(mac(&["good", "-g", &g]).status.code(), Some(1));
    assert_eq!(mac(&["chi", "-g", &g]).status.code(), Some(1));
    assert_eq!(mac(&["greedy", "-g", &g]).status.code(), Some(1));
}

#[test]
fn gen_sts_writes_expansion() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("sts7.col");
    let out = mac(&["gen", "sts", "--n", "7", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("p edge 35 42"));
    assert_eq!(mac(&["good", "-g", path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn json_generation_requires_out() {
    assert_eq!(mac(&["gen", "sts", "--n", "7", "--json"]).status.code(), Some(2));
}

#[test]
fn randomized_commands_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = mac(&["gen", "random", "--n", "20", "--p", "0.3", "--seed", "11"]);
    let b = mac(&["gen", "random", "--n", "20", "--p", "0.3", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let g = write(&dir, "g.col", &stdout(&a));
    let run = |tag: &str| {
        let out = dir.path().join(format!("c{tag}.txt"));
        let o = mac(&[
            "greedy", "-g", &g, "--order", "random", "--seed", "5", "-o", out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read_to_string(out).unwrap()
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn lll_runs_on_c7_in_parallel() {
    let dir = TempDir::new().unwrap();
    let c7 = write(
        &dir,
        "c7.txt",
        "0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 0\n",
    );
    let out_path = dir.path().join("col.txt");
    let args = |jobs: &'static str| {
        vec![
            "lll".to_owned(),
            "-g".into(),
            c7.clone(),
            "--seed".into(),
            "3".into(),
            "--trials".into(),
            "8".into(),
            "--jobs".into(),
            jobs.into(),
            "--json".into(),
            "-o".into(),
            out_path.to_str().unwrap().into(),
        ]
    };
    let run = |jobs| {
        let a: Vec<String> = args(jobs);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        let o = mac(&refs);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        (v["outcome"]["k"].clone(), v["outcome"]["resamples_per_trial"].clone(), v["outcome"]["coloring"].clone())
    };
    let one = run("1");
    assert_eq!(one.0, 1286);
    assert_eq!(one, run("4"));
    let check = mac(&["check", "-g", &c7, "-c", out_path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn nae_reduction_of_sample_formula() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.cnf", "p cnf 4 3\n1 2 3 0\n-1 3 -4 0\n1 -2 4 0\n");
    let g = dir.path().join("g.col");
    let map = dir.path().join("map.json");
    let out = mac(&[
        "reduce",
        "nae3sat",
        "-f",
        &f,
        "-o",
        g.to_str().unwrap(),
        "--map",
        map.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["outcome"]["vertices"], 104);
    let roles: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&map).unwrap()).unwrap();
    assert_eq!(roles.as_array().unwrap().len(), 104);
    assert!(Path::new(&g).exists());
}

#[test]
fn subdivide_and_onemac() {
    let dir = TempDir::new().unwrap();
    let k5: String = {
        let mut s = String::from("p edge 5 10\n");
        for u in 1..=5 {
            for v in u + 1..=5 {
                s.push_str(&format!("e {u} {v}\n"));
            }
        }
        s
    };
    let g = write(&dir, "k5.col", &k5);
    let out = mac(&["reduce", "subdivide", "-g", &g, "--format", "edges"]);
    assert_eq!(out.status.code(), Some(0));
    let h = write(&dir, "h.txt", &stdout(&out));
    let good = mac(&["good", "-g", &h]);
    assert_eq!(good.status.code(), Some(0));

    let p4 = write(&dir, "p4.col", "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    assert_eq!(mac(&["onemac", "-g", &p4]).status.code(), Some(0));
    let c5 = write(&dir, "c5.col", C5);
    assert_eq!(mac(&["onemac", "-g", &c5]).status.code(), Some(1));
}
