use std::path::PathBuf;
use std::process::{Command, Output};

use cubik::cube::{Axis, CubeDiagram};
use cubik::grid::GridDiagram;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/grids")
        .join(name)
}

fn cubik(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubik"))
        .args(args)
        .env("CUBIK_THREADS", "2")
        .output()
        .expect("run cubik")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn grid_file(name: &str) -> GridDiagram {
    std::fs::read_to_string(data(name)).unwrap().parse().unwrap()
}

#[test]
fn lift_prints_a_valid_cube() {
    let path = data("left_trefoil.grid");
    let o = cubik(&["lift", path.to_str().unwrap(), "--expect-lift"]);
    assert!(o.status.success());
    let cube = CubeDiagram::from_json(&stdout(&o)).unwrap();
    assert_eq!(cube.project(Axis::Z).0, grid_file("left_trefoil.grid"));
}

#[test]
fn expect_lift_fails_on_right_trefoil() {
    let path = data("right_trefoil.grid");
    let o = cubik(&["lift", path.to_str().unwrap(), "--expect-lift"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not liftable"));
    let o = cubik(&["lift", path.to_str().unwrap()]);
    assert!(o.status.success());
}

#[test]
fn invariants_of_standard_diagrams() {
    let o = cubik(&["invariants", "--standard", "5,1,4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("tb=-10 r=3\n"), "{out}");
    assert!(out.contains("knot=5_1L "), "{out}");
    let o = cubik(&["invariants", data("right_trefoil.grid").to_str().unwrap()]);
    assert!(stdout(&o).contains("knot=3_1R "));
}

#[test]
fn obstruct_reports_kmin() {
    let o = cubik(&["obstruct", data("kmin_t5_2.grid").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("Type1Found"));
}

#[test]
fn bad_input_exit_codes() {
    assert_eq!(cubik(&["lift", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(cubik(&[]).status.code(), Some(2));
    let o = cubik(&["validate", "/nonexistent/grid"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    assert_eq!(cubik(&["invariants", "--standard", "4,1,3"]).status.code(), Some(1));
}

#[test]
fn render_formats() {
    let path = data("unknot.grid");
    let o = cubik(&["render", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "O-X\nX-O\n");
    let o = cubik(&[
        "render",
        "--kind",
        "cube",
        "--format",
        "svg",
        data("left_trefoil.grid").to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("<svg"));
    let o = cubik(&["render", "--kind", "cube", data("right_trefoil.grid").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn random_moves_are_seeded() {
    let path = data("kmax_t5_2.grid");
    let args = ["--seed", "11", "moves", path.to_str().unwrap(), "--random", "20"];
    let (a, b) = (cubik(&args), cubik(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let other = cubik(&["--seed", "12", "moves", path.to_str().unwrap(), "--random", "20"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn survey_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let ck = dir.path().join("ck");
    let plain = cubik(&["survey", "--max-n", "5", "--threads", "1"]);
    assert!(plain.status.success());
    // A tiny budget stops early with exit 1; reruns pick up the checkpoints.
    let args = [
        "--checkpoint-dir",
        ck.to_str().unwrap(),
        "survey",
        "--max-n",
        "5",
        "--shard-len",
        "1",
        "--budget",
        "50",
        "--out",
        out.to_str().unwrap(),
    ];
    let mut last = cubik(&args);
    let mut runs = 1;
    while !last.status.success() {
        assert_eq!(last.status.code(), Some(1));
        last = cubik(&args);
        runs += 1;
        assert!(runs < 10);
    }
    assert!(runs > 1);
    assert_eq!(last.stdout, plain.stdout);
    let csv = std::fs::read_to_string(out.join("results.csv")).unwrap();
    assert_eq!(csv, stdout(&plain));
    assert!(csv.starts_with("knot,fingerprint_id,min_cube_size,witness_file\n"));
    let json = std::fs::read_to_string(out.join("witnesses/3_1L.json")).unwrap();
    let cube = CubeDiagram::from_json(&json).unwrap();
    assert_eq!(cube.size(), 5);
}

#[test]
fn census_csv() {
    let o = cubik(&["census", "-p", "3", "--classes"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("fingerprint_id,tb,r,count,num_classes,lifts_found\n"));
    assert!(out.contains(",-6,-1,5,1,"), "{out}");
    assert!(out.contains(",-6,1,5,1,"), "{out}");
}

#[test]
fn enumerate_counts() {
    let o = cubik(&["enumerate", "-n", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("n=4 visited=216 knots=144 lifted=141\n"));
}
