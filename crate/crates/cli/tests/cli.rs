use std::path::Path;
use std::process::{Command, Output};

fn cpgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpgraph")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_fig3_lists_crossings() {
    let o = cpgraph(&["check", "fixtures/fig3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("RCG: yes"), "{s}");
    assert!(s.contains("plane: no"));
    assert!(s.contains("u-v crosses w-x"));
}

#[test]
fn check_fig8_weak_coexistence() {
    let o = cpgraph(&["check", "fixtures/fig8_counterexample", "--weak-coexistence"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = cpgraph(&["check", "fixtures/fig8_counterexample"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("RCG: no"));
}

#[test]
fn malformed_input_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": [").unwrap();
    assert_eq!(cpgraph(&["check", path(&bad)]).status.code(), Some(2));
    assert_eq!(cpgraph(&["planarize", path(&dir.path().join("missing.json"))]).status.code(), Some(2));
    assert_eq!(cpgraph(&["check", "fixtures/nope"]).status.code(), Some(2));
    assert_eq!(cpgraph(&["planarize", "fixtures/fig3", "--order", "shuffle"]).status.code(), Some(2));
}

#[test]
fn planarize_fig3_writes_graph_trace_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let (out, trace, svg) = (dir.path().join("f.json"), dir.path().join("t.txt"), dir.path().join("f.svg"));
    let o = cpgraph(&[
        "planarize",
        "fixtures/fig3",
        "--order",
        "lex",
        "-o",
        path(&out),
        "--trace",
        path(&trace),
        "--svg",
        path(&svg),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let f = cpgraph::graph::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(f.m(), 6);
    assert!(cpgraph::graph::is_plane(&f));
    let t = std::fs::read_to_string(&trace).unwrap();
    assert!(t.contains("w-x crossed by kept u-v"), "{t}");
    let s = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(s.matches("<line").count(), 8);
    assert_eq!(s.matches("stroke-dasharray").count(), 2);
}

#[test]
fn planarize_fig8_seed_isolates_z() {
    let o = cpgraph(&["planarize", "fixtures/fig8_counterexample", "--order", "seed:62"]);
    assert_eq!(o.status.code(), Some(0));
    let e = stderr(&o);
    assert!(e.contains("plane: yes"), "{e}");
    assert!(e.contains("isolated: z"), "{e}");
}

#[test]
fn planarize_empty_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("empty.json");
    std::fs::write(&g, "{\"vertices\": [], \"edges\": []}").unwrap();
    let o = cpgraph(&["planarize", path(&g)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let f = cpgraph::graph::from_json(&stdout(&o)).unwrap();
    assert_eq!((f.n(), f.m()), (0, 0));
}

#[test]
fn simulate_matches_global() {
    let o = cpgraph(&["simulate", "fixtures/fig3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equal to global run: yes"));
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("one.json");
    std::fs::write(&g, r#"{"vertices": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 5, "y": 0}], "edges": [[0, 1]]}"#)
        .unwrap();
    let o = cpgraph(&["simulate", path(&g), "--priority", "seed:4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("removed (0)"));
}

#[test]
fn simulate_random_rcgs() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..5 {
        let g = dir.path().join(format!("g{seed}.json"));
        let o = cpgraph(&["gen", "rcg", "n=18", "radius=40", "--seed", &seed.to_string(), "-o", path(&g)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let o = cpgraph(&["simulate", path(&g), "--priority", &format!("seed:{seed}")]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = cpgraph(&["gen", "unit_disk", "n=20,radius=30", "--seed", "9", "-o", path(p)]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    assert_eq!(cpgraph::graph::from_json(std::str::from_utf8(&ta).unwrap()).unwrap().n(), 20);

    let o = cpgraph(&["gen", "rcg", "n=15", "r_min=30", "r_max=45", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(cpgraph::graph::is_rcg(&cpgraph::graph::from_json(&stdout(&o)).unwrap()));

    assert_eq!(cpgraph(&["gen", "unit_disk", "n=5"]).status.code(), Some(2));
    assert_eq!(cpgraph(&["gen", "hexgrid", "n=5"]).status.code(), Some(2));
    assert_eq!(cpgraph(&["gen", "unit_disk", "n=5", "radius=3", "color=red"]).status.code(), Some(2));
}

#[test]
fn prove_without_solver_emits_and_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("smt");
    let o = cpgraph(&["prove", "--tasks", "all", "--solver", path(&dir.path().join("no-z3")), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(std::fs::read_dir(&out).unwrap().count(), cpgraph::smtgen::task_ids().len());
    assert_eq!(cpgraph(&["prove", "--tasks", "pasch,step99"]).status.code(), Some(2));
}

fn solver() -> Option<std::path::PathBuf> {
    match cpgraph::smtgen::resolve_solver(None) {
        Ok(p) => Some(p),
        Err(_) => {
            eprintln!("warning: no SMT solver found, skipping");
            None
        }
    }
}

#[test]
fn prove_small_tasks() {
    let Some(z3) = solver() else { return };
    let dir = tempfile::tempdir().unwrap();
    let z3 = z3.to_str().unwrap();
    let o = cpgraph(&["prove", "--tasks", "pasch,clique", "--solver", z3, "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("| unsat     | unsat ").count(), 2);

    let csv = dir.path().join("t.csv");
    let o = cpgraph(&[
        "prove",
        "--tasks",
        "3vertices_noC,7vertices_noC",
        "--solver",
        z3,
        "--out",
        path(dir.path()),
        "--csv",
        path(&csv),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let c = std::fs::read_to_string(&csv).unwrap();
    assert!(c.contains("3vertices_noC,") && c.contains(",unsat,unsat,"));
    assert!(c.contains(",sat,sat,"));
}

#[test]
fn prove_reports_mismatch_as_exit_5() {
    let Some(z3) = solver() else { return };
    let dir = tempfile::tempdir().unwrap();
    // a one-second budget cannot settle convexhull
    let o = cpgraph(&[
        "prove",
        "--tasks",
        "convexhull",
        "--timeout",
        "1",
        "--solver",
        z3.to_str().unwrap(),
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(5), "{}", stdout(&o));
}
