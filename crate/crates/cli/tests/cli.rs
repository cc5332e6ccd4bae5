use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn lclmpc(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lclmpc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn generated_path_roots_once() {
    let tree = stdout(&lclmpc(&["gen", "--kind", "path", "--n", "8"], ""));
    assert!(tree.starts_with("TREE v1\nn 8\n"));
    let orient = stdout(&lclmpc(&["root"], &tree));
    assert!(orient.starts_with("ORIENT v1\n"));
    assert_eq!(orient.lines().filter(|l| l.starts_with("root ")).count(), 1);
    assert_eq!(orient.lines().filter(|l| l.starts_with("parent ")).count(), 7);
}

#[test]
fn solve_then_check() {
    let tree = stdout(&lclmpc(&["gen", "--kind", "random-tree", "--n", "100", "--seed", "5"], ""));
    let tree_path = scratch("solve_check.tree", &tree);
    let tree_arg = tree_path.to_str().unwrap();
    let trace = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("solve_check.csv");
    let solved = stdout(&lclmpc(
        &["solve", "--tree", tree_arg, "--lcl", "three-coloring", "--trace", trace.to_str().unwrap()],
        "",
    ));
    assert!(solved.starts_with("OUT v1\n"));
    assert!(fs::read_to_string(&trace).unwrap().starts_with("iteration,phase,phi_prime"));
    let again = stdout(&lclmpc(&["solve", "--tree", tree_arg, "--lcl", "three-coloring"], ""));
    assert_eq!(solved, again);

    let out_path = scratch("solve_check.out", &solved);
    let check = lclmpc(&["check", "--tree", tree_arg, "--lcl", "three-coloring", "--output", out_path.to_str().unwrap()], "");
    assert_eq!(check.status.code(), Some(0));

    // Recolor one half-edge; the edge and its node now violate the problem.
    let mut lines: Vec<String> = solved.lines().map(String::from).collect();
    let mut tokens: Vec<String> = lines[1].split(' ').map(String::from).collect();
    let color: u8 = tokens[3].parse().unwrap();
    tokens[3] = ((color + 1) % 3).to_string();
    lines[1] = tokens.join(" ");
    let bad_path = scratch("solve_check_bad.out", &(lines.join("\n") + "\n"));
    let bad = lclmpc(&["check", "--tree", tree_arg, "--lcl", "three-coloring", "--output", bad_path.to_str().unwrap()], "");
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stdout).unwrap().contains("violates condition"));
}

#[test]
fn unsolvable_instances_say_so() {
    let tree = stdout(&lclmpc(&["gen", "--kind", "path", "--n", "5"], ""));
    assert_eq!(stdout(&lclmpc(&["solve", "--lcl", "unsatisfiable-edge"], &tree)), "no solution\n");
    assert_eq!(stdout(&lclmpc(&["oracle", "--lcl", "unsatisfiable-edge"], &tree)), "no solution\n");
}

#[test]
fn oracle_matches_solver_on_free_problem() {
    let tree = stdout(&lclmpc(&["gen", "--kind", "caterpillar", "--n", "7"], ""));
    let solved = stdout(&lclmpc(&["solve", "--lcl", "free"], &tree));
    assert_eq!(solved, stdout(&lclmpc(&["oracle", "--lcl", "free"], &tree)));
}

#[test]
fn oracle_pairs() {
    let tree = "TREE v1\nn 3\nedge 1 2\nedge 2 3\n";
    let pairs = stdout(&lclmpc(&["oracle", "--lcl", "two-coloring", "--pairs", "1", "3"], tree));
    assert_eq!(pairs, "pairs 1 3 0,0 1,1\n");
    let reversed = lclmpc(&["oracle", "--lcl", "two-coloring", "--pairs", "3", "1"], tree);
    assert_eq!(reversed.status.code(), Some(1));
}

#[test]
fn decompose_writes_every_node() {
    let tree = stdout(&lclmpc(&["gen", "--kind", "balanced", "--n", "40"], ""));
    let layers = stdout(&lclmpc(&["decompose", "--l", "2"], &tree));
    assert!(layers.starts_with("DECOMP v1\n"));
    assert_eq!(layers.lines().filter(|l| l.starts_with("layer ")).count(), 40);
}

#[test]
fn bench_rounds_grow_logarithmically() {
    let csv = stdout(&lclmpc(&["bench", "--sizes", "64,256,1024,4096", "--lcl", "three-coloring"], ""));
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("n,m,delta,rounds,phase1_iters,phase2_iters,peak_local_words,global_words,wall_time_ms")
    );
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            (cells[0].parse().unwrap(), cells[3].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 4);
    let constant = rows[0].1 / rows[0].0.log2();
    for &(n, rounds) in &rows {
        assert!(rounds <= constant * n.log2() + 1e-9, "n = {n}: {rounds} rounds");
    }
}

#[test]
fn errors_map_to_exit_codes() {
    let bad_tree = lclmpc(&["root"], "TREE v1\nn 2\nedge 1 2\nedge 1 2\n");
    assert_eq!(bad_tree.status.code(), Some(1));
    let tree = stdout(&lclmpc(&["gen", "--kind", "path", "--n", "5"], ""));
    assert_eq!(lclmpc(&["root", "--delta", "1.5"], &tree).status.code(), Some(1));
    assert_eq!(lclmpc(&["solve", "--lcl", "no-such-problem"], &tree).status.code(), Some(1));
    assert_eq!(lclmpc(&["gen", "--kind", "star", "--n", "9"], "").status.code(), Some(1));

    let big = stdout(&lclmpc(&["gen", "--kind", "balanced", "--n", "2000"], ""));
    let squeezed = lclmpc(&["solve", "--lcl", "three-coloring", "--delta", "0.05"], &big);
    assert_eq!(squeezed.status.code(), Some(3));
    assert!(String::from_utf8(squeezed.stderr).unwrap().contains("local capacity"));
}
