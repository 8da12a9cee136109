use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use plycover::format::{parse_instance, parse_solution, write_solution};

fn plycover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plycover")).args(args).output().expect("binary runs")
}

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/counterexample.jsonl")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_counterexample_to_stdout() {
    let out = plycover(&["solve", "--kind", "intervals", "--mode", "mmsc", "--in", s(&fixture())]);
    assert_eq!(out.status.code(), Some(0));
    let sol = parse_solution(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(sol.objective, "3");
    assert_eq!(sol.chosen, vec![0, 2, 3]);
    assert_eq!(sol.wallclock_ms, None);
}

#[test]
fn timing_flag_records_wallclock() {
    let out = plycover(&["solve", "--kind", "intervals", "--in", s(&fixture()), "--timing"]);
    let sol = parse_solution(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(sol.wallclock_ms.is_some());
}

#[test]
fn check_accepts_solve_and_oracle_output() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, gen_kind) in [("rects", "rects"), ("disks", "disks"), ("3color", "disks"), ("intervals", "intervals")] {
        let inst = dir.path().join(format!("{kind}.jsonl"));
        let gen = plycover(&["gen", "--kind", gen_kind, "--n", "10", "--m", "7", "--seed", "3", "--out", s(&inst)]);
        assert_eq!(gen.status.code(), Some(0));
        for cmd in ["solve", "oracle"] {
            let sol = dir.path().join(format!("{kind}-{cmd}.sol"));
            let run = plycover(&[cmd, "--kind", kind, "--in", s(&inst), "--out", s(&sol)]);
            assert_eq!(run.status.code(), Some(0), "{cmd} {kind}: {}", String::from_utf8_lossy(&run.stderr));
            let check = plycover(&["check", "--in", s(&inst), "--solution", s(&sol)]);
            assert_eq!(check.status.code(), Some(0), "{cmd} {kind}: {}", String::from_utf8_lossy(&check.stderr));
        }
    }
}

#[test]
fn tampered_solution_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let sol_path = dir.path().join("s.sol");
    let out = plycover(&["solve", "--kind", "intervals", "--mode", "mmsc", "--in", s(&fixture()), "--out", s(&sol_path)]);
    assert_eq!(out.status.code(), Some(0));
    let mut sol = parse_solution(&fs::read_to_string(&sol_path).unwrap()).unwrap();
    sol.chosen.remove(0);
    fs::write(&sol_path, write_solution(&sol)).unwrap();
    let check = plycover(&["check", "--in", s(&fixture()), "--solution", s(&sol_path)]);
    assert_eq!(check.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&check.stderr).contains("uncovered point"));
}

#[test]
fn uncoverable_instance_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("u.jsonl");
    fs::write(&inst, "{\"kind\":\"rects\"}\n{\"point\":[\"5\",\"5\"]}\n{\"object\":[\"0\",\"0\",\"1\"]}\n").unwrap();
    assert_eq!(plycover(&["solve", "--kind", "rects", "--in", s(&inst)]).status.code(), Some(2));
    assert_eq!(plycover(&["oracle", "--kind", "rects", "--in", s(&inst)]).status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("b.jsonl");
    // two overlapping squares, each with a private point, need ply 2
    fs::write(
        &inst,
        "{\"kind\":\"rects\"}\n{\"point\":[\"0\",\"1/2\"]}\n{\"point\":[\"5/4\",\"1/2\"]}\n\
         {\"object\":[\"0\",\"0\",\"1\"]}\n{\"object\":[\"1/4\",\"0\",\"1\"]}\n",
    )
    .unwrap();
    assert_eq!(plycover(&["solve", "--kind", "rects", "--in", s(&inst), "--ell-max", "1"]).status.code(), Some(3));
    assert_eq!(plycover(&["solve", "--kind", "rects", "--in", s(&inst), "--ell-max", "2"]).status.code(), Some(0));
}

#[test]
fn four_clique_is_infeasible_for_3color() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("k4.jsonl");
    fs::write(
        &inst,
        "{\"kind\":\"disks\"}\n{\"point\":[-0.33,-0.32]}\n{\"point\":[0.54,-0.31]}\n{\"point\":[-0.31,0.51]}\n{\"point\":[0.56,0.53]}\n\
         {\"object\":[0.0,0.0]}\n{\"object\":[0.21,0.01]}\n{\"object\":[0.02,0.19]}\n{\"object\":[0.23,0.22]}\n",
    )
    .unwrap();
    assert_eq!(plycover(&["solve", "--kind", "3color", "--in", s(&inst)]).status.code(), Some(2));
    assert_eq!(plycover(&["oracle", "--kind", "3color", "--in", s(&inst)]).status.code(), Some(2));
    assert_eq!(plycover(&["solve", "--kind", "disks", "--in", s(&inst)]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(plycover(&["solve", "--kind", "rects", "--mode", "mmsc", "--in", s(&fixture())]).status.code(), Some(1));
    assert_eq!(plycover(&["solve", "--kind", "rects", "--in", s(&fixture())]).status.code(), Some(1));
    assert_eq!(plycover(&["solve", "--kind", "rects", "--in", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(plycover(&["gen", "--kind", "rects", "--n", "1", "--m", "1", "--dist", "zipf"]).status.code(), Some(1));
    assert_eq!(plycover(&["launch"]).status.code(), Some(1));
    assert_eq!(plycover(&[]).status.code(), Some(1));
    assert_eq!(plycover(&["--help"]).status.code(), Some(0));
    assert_eq!(plycover(&["--version"]).status.code(), Some(0));
}

#[test]
fn gen_round_trips_and_is_deterministic() {
    let a = plycover(&["gen", "--kind", "rects", "--n", "5", "--m", "5", "--seed", "42"]);
    let b = plycover(&["gen", "--kind", "rects", "--n", "5", "--m", "5", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let file = parse_instance(&text).unwrap();
    assert_eq!(plycover::format::write_instance(&file), text);
}

#[test]
fn render_writes_svg() {
    let out = plycover(&["render", "--in", s(&fixture())]);
    assert_eq!(out.status.code(), Some(0));
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<rect").count(), 4);
}

#[test]
fn bench_emits_csv() {
    let out = plycover(&["bench", "--from", "3", "--to", "5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["kind", "n", "m", "M", "objective", "wallclock_ms", "seed"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(&rows[0][2], "8");
    assert_eq!(&rows[0][3], "7");
}
