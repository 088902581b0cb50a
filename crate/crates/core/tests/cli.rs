use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_causal-bootstrap"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn graph(file: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/graphs")
        .join(file)
        .display()
        .to_string()
}

fn generate(dir: &Path, experiment: &str) -> PathBuf {
    let out = run(&[
        "generate",
        experiment,
        "--n",
        "400",
        "--seed",
        "3",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    dir.join("e1.csv")
}

#[test]
fn generate_writes_three_environments_deterministically() {
    let t = tempfile::tempdir().unwrap();
    let (a, b) = (t.path().join("a"), t.path().join("b"));
    generate(&a, "gauss-backdoor");
    generate(&b, "gauss-backdoor");
    for e in ["e1.csv", "e2.csv", "e3.csv"] {
        let first = std::fs::read(a.join(e)).unwrap();
        assert_eq!(first, std::fs::read(b.join(e)).unwrap());
        assert_eq!(String::from_utf8(first).unwrap().lines().count(), 401);
        assert!(a.join(format!("{e}.meta")).exists());
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["generate", "gauss-backdoor"])), 2);
    assert_eq!(
        code(&run(&["generate", "no-such-experiment", "--out", "x"])),
        2
    );
    assert_eq!(
        code(&run(&["experiment", "mnist-backdoor", "--replicates", "1"])),
        2
    );
    let t = tempfile::tempdir().unwrap();
    let data = generate(t.path(), "gauss-backdoor");
    let out = run(&[
        "ate",
        "--data",
        data.to_str().unwrap(),
        "--graph",
        &graph("gauss-backdoor.graph"),
        "--method",
        "sideways",
        "--y1",
        "1",
        "--y0",
        "2",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn bootstrap_emits_provenance_and_folds() {
    let t = tempfile::tempdir().unwrap();
    let data = generate(t.path(), "gauss-backdoor");
    let out_path = t.path().join("boot.csv");
    let out = run(&[
        "bootstrap",
        "--data",
        data.to_str().unwrap(),
        "--graph",
        &graph("gauss-backdoor.graph"),
        "--method",
        "backdoor",
        "--seed",
        "9",
        "--split-sample",
        "2",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, "x_1,x_2,y,__src_row,__fold");
    assert_eq!(text.lines().count(), 401);
    let meta = std::fs::read_to_string(t.path().join("boot.csv.meta")).unwrap();
    for key in ["seed = 9", "rng = ", "floor_hits = ", "method = backdoor"] {
        assert!(meta.contains(key), "{meta}");
    }
}

#[test]
fn criterion_violation_exits_3_unless_forced() {
    let t = tempfile::tempdir().unwrap();
    let data = generate(t.path(), "gauss-frontdoor");
    let out_path = t.path().join("f.csv");
    let args = |force: bool| {
        let mut a = vec![
            "bootstrap".to_string(),
            "--data".into(),
            data.display().to_string(),
            "--graph".into(),
            graph("bad-frontdoor.graph"),
            "--method".into(),
            "frontdoor".into(),
            "--out".into(),
            out_path.display().to_string(),
        ];
        if force {
            a.push("--force".into());
        }
        a
    };
    let out = bin().args(args(false)).output().unwrap();
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not intercept"));
    assert_eq!(code(&bin().args(args(true)).output().unwrap()), 0);

    assert_eq!(
        code(&run(&["check", "--graph", &graph("bad-frontdoor.graph")])),
        3
    );
    assert_eq!(
        code(&run(&["check", "--graph", &graph("gauss-frontdoor.graph")])),
        0
    );
}

#[test]
fn smoothing_discrete_effect_is_rejected() {
    let t = tempfile::tempdir().unwrap();
    let data = generate(t.path(), "gauss-backdoor");
    let g = t.path().join("discrete.graph");
    std::fs::write(&g, "var u discrete 2\nvar y discrete 2\nvar z discrete 2\nedge u -> y\nedge u -> z\nedge y -> z\nrole target y\nrole effect z\nrole adjust u\n").unwrap();
    let out = run(&[
        "bootstrap",
        "--data",
        data.to_str().unwrap(),
        "--graph",
        g.to_str().unwrap(),
        "--method",
        "backdoor",
        "--mode",
        "smoothed",
        "--out",
        t.path().join("s.csv").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("smoothing is undefined"));
}

#[test]
fn missing_data_file_exits_4() {
    let t = tempfile::tempdir().unwrap();
    let out = run(&[
        "bootstrap",
        "--data",
        t.path().join("absent.csv").to_str().unwrap(),
        "--graph",
        &graph("gauss-backdoor.graph"),
        "--method",
        "backdoor",
        "--out",
        t.path().join("o.csv").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 4);
}

#[test]
fn ate_prints_contrast_and_zero_for_equal_interventions() {
    let t = tempfile::tempdir().unwrap();
    let data = t.path().join("toy.csv");
    std::fs::write(&data, "y,u,x\n1,1,1\n1,1,3\n1,2,2\n2,1,0\n2,2,5\n2,2,1\n").unwrap();
    let g = t.path().join("toy.graph");
    std::fs::write(&g, "var u discrete 2\nvar y discrete 2\nvar x continuous 1\nedge u -> y\nedge u -> x\nedge y -> x\nrole target y\nrole effect x\nrole adjust u\n").unwrap();
    let csv = t.path().join("ate.csv");
    let ate = |y1: &str, y0: &str| {
        run(&[
            "ate",
            "--data",
            data.to_str().unwrap(),
            "--graph",
            g.to_str().unwrap(),
            "--method",
            "backdoor",
            "--y1",
            y1,
            "--y0",
            y0,
            "--csv",
            csv.to_str().unwrap(),
        ])
    };
    assert_eq!(code(&ate("1", "2")), 0);
    let table = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(table.lines().nth(1).unwrap(), "x,2,1.5,0.5");
    assert_eq!(code(&ate("1", "1")), 0);
    let table = std::fs::read_to_string(&csv).unwrap();
    assert!(table.lines().nth(1).unwrap().ends_with(",0"));
}

#[test]
fn config_file_supplies_flags_and_flags_win() {
    let t = tempfile::tempdir().unwrap();
    let cfg = t.path().join("run.cfg");
    let report = t.path().join("report.csv");
    std::fs::write(
        &cfg,
        format!("n = 200\nreplicates = 3\nout = {}\n", report.display()),
    )
    .unwrap();
    let out = run(&[
        "experiment",
        "gauss-backdoor",
        "--config",
        cfg.to_str().unwrap(),
        "--replicates",
        "2",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 + 2);
    assert!(std::fs::read_to_string(t.path().join("report.csv.meta"))
        .unwrap()
        .contains("n = 200"));
}

#[test]
fn plan_and_truncated_methods() {
    let t = tempfile::tempdir().unwrap();
    let data = generate(t.path(), "custom");
    let plan = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/plans/tikka.plan");
    let out = run(&[
        "bootstrap",
        "--data",
        data.to_str().unwrap(),
        "--graph",
        &graph("tikka.graph"),
        "--method",
        "plan",
        "--plan",
        plan.to_str().unwrap(),
        "--out",
        t.path().join("p.csv").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&[
        "bootstrap",
        "--data",
        data.to_str().unwrap(),
        "--graph",
        &graph("tikka.graph"),
        "--method",
        "truncated",
        "--out",
        t.path().join("t.csv").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
}
