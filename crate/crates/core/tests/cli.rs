mod common;

use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use common::workspace_root;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_trunk-match"));
    c.current_dir(workspace_root());
    c.env_remove("TRUNK_MATCH_BUDGET_FACTOR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn piped(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn solve_fixtures() {
    let o = run(&["solve", "fixtures/fig8.dimacs", "--init", "fixture"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("matched=5 exposed=0 augmentations=1 steps=13"));
    let o = run(&["solve", "fixtures/petersen.dimacs", "--init", "empty"]);
    assert!(stdout(&o).starts_with("matched=5 exposed=0"));
    let o = run(&["solve", "fixtures/sylvester.dimacs"]);
    assert!(stdout(&o).starts_with("matched=7 exposed=2"));
}

#[test]
fn solve_errors() {
    assert_eq!(run(&["solve", "missing.dimacs"]).status.code(), Some(3));
    assert_eq!(run(&["solve", "fixtures/fig4.dimacs", "--bogus"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    let o = piped(&["solve", "-"], b"p edge 3 1\ne 1 2\n");
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("isolated"));
    let o = piped(&["solve", "-"], b"p edge 2 1\ne 1 1\n");
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = piped(&["solve", "-", "--init", "fixture"], b"p edge 2 1\ne 1 2\n");
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn solve_writes_matching() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.matching");
    let o = run(&["solve", "fixtures/fig4.dimacs", "--init", "fixture", "--matching-out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = run(&["verify", "fixtures/fig4.dimacs", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v), "size=5 nu=5 maximum=yes\n");
    let v = run(&["verify", "fixtures/fig4.dimacs", "fixtures/fig4.matching"]);
    assert_eq!(v.status.code(), Some(1));
    assert_eq!(stdout(&v), "size=4 nu=5 maximum=no\n");
}

#[test]
fn budget_factor_flag_beats_env() {
    // one event is not enough to get past the first odd cycle
    let tiny = bin()
        .args(["solve", "fixtures/fig4.dimacs", "--init", "fixture"])
        .env("TRUNK_MATCH_BUDGET_FACTOR", "0.0000001")
        .output()
        .unwrap();
    assert_eq!(tiny.status.code(), Some(2));
    assert!(stdout(&tiny).starts_with("matched=4 exposed=2"));
    let flag = bin()
        .args(["solve", "fixtures/fig4.dimacs", "--init", "fixture", "--budget-factor", "1"])
        .env("TRUNK_MATCH_BUDGET_FACTOR", "0.0000001")
        .output()
        .unwrap();
    assert_eq!(flag.status.code(), Some(0));
    assert_eq!(run(&["solve", "fixtures/fig4.dimacs", "--budget-factor", "0"]).status.code(), Some(3));
}

#[test]
fn trace_against_golden() {
    for (fx, golden) in [
        ("fig4", "table1"),
        ("fig4_alt", "table1_alt"),
        ("fig5", "table2"),
        ("fig5_alt", "table2_alt"),
        ("fig8", "fig8"),
    ] {
        let o = run(&[
            "trace",
            &format!("fixtures/{fx}.dimacs"),
            "--root",
            "v0",
            "--golden",
            &format!("golden/{golden}.tsv"),
        ]);
        assert_eq!(o.status.code(), Some(0), "{fx}");
    }
    let o = run(&["trace", "fixtures/fig4.dimacs", "--root", "v0", "--golden", "golden/table2.tsv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("golden mismatch at line 3"));
    let o = run(&["trace", "fixtures/fig4.dimacs", "--root", "v1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("v1 is matched"));
    let o = run(&["trace", "fixtures/fig4.dimacs", "--root", "nope"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn oracle_and_ge() {
    let o = run(&["oracle", "fixtures/petersen.dimacs"]);
    assert_eq!(stdout(&o), "nu=5\n");
    let o = run(&["ge", "fixtures/sylvester.dimacs"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("|A|=1\tva")));
    assert!(text.lines().any(|l| l == "structure=ok"));
}

#[test]
fn gen_pipes_into_solve() {
    let g = run(&["gen", "--regular", "100", "3", "--seed", "1"]);
    assert_eq!(g.status.code(), Some(0));
    assert_eq!(g.stdout, run(&["gen", "--regular", "100", "3", "--seed", "1"]).stdout);
    let o = piped(&["solve", "-"], &g.stdout);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("matched=50 exposed=0"));

    let g = run(&["gen", "--gnp", "10", "0.5", "--seed", "4"]);
    assert_eq!(g.status.code(), Some(0));
    assert!(stdout(&g).starts_with("p edge"));
    assert_eq!(run(&["gen", "--regular", "5", "3"]).status.code(), Some(3));
    assert_eq!(run(&["gen"]).status.code(), Some(3));
}

#[test]
fn gen_fixture_writes_both_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig5.dimacs");
    let o = run(&["gen", "--fixture", "fig5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let root = workspace_root();
    assert_eq!(fs::read(&out).unwrap(), fs::read(root.join("fixtures/fig5.dimacs")).unwrap());
    assert_eq!(
        fs::read(dir.path().join("fig5.matching")).unwrap(),
        fs::read(root.join("fixtures/fig5.matching")).unwrap()
    );
    assert_eq!(run(&["gen", "--fixture", "fig9"]).status.code(), Some(3));
}

#[test]
fn bench_small_plan() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("plot.svg");
    let o = run(&[
        "bench",
        "--deltas",
        "3",
        "--sizes",
        "20,40,60",
        "--trials",
        "2",
        "--seed",
        "9",
        "--plot",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("delta,n,trial,seed,wall_micros,matched,augmentations,steps,budget_exceeded")
    );
    assert_eq!(lines.count(), 6);
    assert!(fs::read_to_string(plot).unwrap().starts_with("<svg"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("delta=3 slope="));
}

#[test]
fn help_lists_flags() {
    let o = run(&["solve", "--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for flag in ["--init", "--prefer-free-tips", "--budget-factor", "--matching-out"] {
        assert!(text.contains(flag), "{flag}");
    }
}
