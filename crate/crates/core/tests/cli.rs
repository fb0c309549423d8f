use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use moore_learn::formats::{machine_from_json, parse_traces};
use moore_learn::learners::learn_mooremi;

fn bin(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moore-learn"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const FIG3: &str = "# three traces\nb | 0 0\na a | 0 0 1\na b | 0 0 2\n";

#[test]
fn learn_writes_machine_and_checks_consistency() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.txt"), FIG3).unwrap();
    let o = bin(
        &[
            "learn", "t.txt", "--algo", "mooremi", "--out", "m.json", "--dot", "m.dot",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("consistent with all traces"));
    let m = machine_from_json(&fs::read_to_string(dir.path().join("m.json")).unwrap()).unwrap();
    let ts = parse_traces(FIG3).unwrap();
    for t in &ts {
        assert_eq!(m.run(t.input()).unwrap(), t.output());
    }
    assert!(fs::read_to_string(dir.path().join("m.dot"))
        .unwrap()
        .contains("digraph"));
}

#[test]
fn learn_reports_data_errors() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.txt"), "a | 0 1\na b | 0 1\n").unwrap();
    let o = bin(&["learn", "bad.txt"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    fs::write(dir.path().join("c.txt"), "a | 0 1\na | 0 2\n").unwrap();
    let o = bin(&["learn", "c.txt"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("labelled with both"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        bin(&["learn", "x.txt", "--algo", "nope"], dir.path()).status.code(),
        Some(1)
    );
    assert_eq!(bin(&["frobnicate"], dir.path()).status.code(), Some(1));
    let o = bin(
        &["generate", "--states", "2", "--inputs", "2", "--outputs", "3"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    fs::write(
        dir.path().join("b.toml"),
        "states = 3\ninputs = 2\noutputs = 2\nalgorithms = \"rpni\"\n",
    )
    .unwrap();
    assert_eq!(bin(&["benchmark", "b.toml"], dir.path()).status.code(), Some(1));
    assert_eq!(bin(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn generate_then_relearn_is_isomorphic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "generate",
        "--seed",
        "1",
        "--states",
        "2",
        "--inputs",
        "2",
        "--outputs",
        "2",
        "--machine-out",
        "m.json",
        "--sample-out",
        "s.txt",
    ];
    let o = bin(&args, dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let m = machine_from_json(&fs::read_to_string(dir.path().join("m.json")).unwrap()).unwrap();
    let sample = fs::read_to_string(dir.path().join("s.txt")).unwrap();
    let h = learn_mooremi(&parse_traces(&sample).unwrap()).unwrap().machine;
    assert!(h.isomorphic(&m));
    let again = bin(&args, dir.path());
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(fs::read_to_string(dir.path().join("s.txt")).unwrap(), sample);
}

#[test]
fn evaluate_prints_percentages() {
    let dir = tempfile::tempdir().unwrap();
    let machine = r#"{"inputs": ["a"], "outputs": ["0", "1", "2"], "initial": 0,
        "delta": [[1], [2], [3], [3]], "lambda": ["0", "0", "2", "2"]}"#;
    fs::write(dir.path().join("m.json"), machine).unwrap();
    fs::write(dir.path().join("t.txt"), "a a a | 0 0 1 2\n").unwrap();
    let o = bin(&["evaluate", "m.json", "t.txt"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "strong: 0.00%\nmedium: 50.00%\nweak: 75.00%\n");
    fs::write(dir.path().join("empty.txt"), "# nothing\n").unwrap();
    let o = bin(&["evaluate", "m.json", "empty.txt"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("test set is empty"));
}

#[test]
fn export_dot_and_benchmark() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(
        &[
            "generate",
            "--states",
            "3",
            "--inputs",
            "2",
            "--outputs",
            "2",
            "--machine-out",
            "m.json",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&["export-dot", "m.json"], dir.path());
    assert!(stdout(&o).contains("q0 [label=\"q0/"));
    fs::write(
        dir.path().join("b.toml"),
        "states = 10\ninputs = 3\noutputs = 3\nseeds = 2\ntimeout_s = 5\n",
    )
    .unwrap();
    let o = bin(&["benchmark", "b.toml", "--csv", "r.csv"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("r.csv")).unwrap();
    assert!(csv.starts_with("seed,algo,states_target,states_learned,time_s,strong,medium,weak,timeout\n"));
    assert_eq!(csv.lines().count(), 7);
    assert!(stdout(&o).contains("MOOREMI"));
    let untimed = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f.remove(4);
                f.join(",")
            })
            .collect()
    };
    let o = bin(&["benchmark", "b.toml", "--csv", "r2.csv"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let csv2 = fs::read_to_string(dir.path().join("r2.csv")).unwrap();
    assert_eq!(untimed(&csv), untimed(&csv2));
}
