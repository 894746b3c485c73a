use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use gama::problems::QuadraticInstance;
use gama::solver::ResultsFile;

fn gama(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gama"))
        .args(args)
        .env_remove("GAMA_SEEDS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn graver_reports_predicted_and_actual_counts() {
    for (args, count) in [
        (vec!["--kind", "cardinality", "--n", "50"], "1225"),
        (vec!["--kind", "assignment", "--n", "3", "--k", "3"], "15"),
        (vec!["--kind", "assignment", "--n", "2", "--k", "2"], "1"),
    ] {
        let out = gama(&[&["graver"], args.as_slice()].concat());
        assert!(out.status.success());
        let text = stdout(&out);
        assert!(text.contains(&format!("predicted: {count}\n")), "{text}");
        assert!(text.contains(&format!("actual: {count}\n")), "{text}");
    }
}

#[test]
fn graver_over_cap_advises_truncation() {
    let out = gama(&["graver", "--kind", "assignment", "--n", "9", "--k", "9"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--max-cycle-len"));
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("basis.txt");
    let out = gama(&[
        "graver",
        "--kind",
        "assignment",
        "--n",
        "9",
        "--k",
        "9",
        "--max-cycle-len",
        "2",
        "--out",
        p(&file),
    ]);
    assert!(out.status.success());
    // (P(9,2)/2)·P(9,2)/2 liftings of 2-cycles
    assert!(stdout(&out).contains("actual: 1296\n"));
    let (dim, elements) =
        gama::graver::io::read_basis(std::io::BufReader::new(fs::File::open(&file).unwrap())).unwrap();
    assert_eq!((dim, elements.len()), (81, 1296));
}

#[test]
fn generate_writes_count_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = gama(&[
        "generate",
        "--class",
        "QSAP1",
        "--k",
        "3",
        "--n",
        "12",
        "--count",
        "3",
        "--out",
        p(dir.path()),
    ]);
    assert!(out.status.success());
    let inst = QuadraticInstance::read(&dir.path().join("QSAP1_3x12_2.json")).unwrap();
    assert_eq!(inst.dim(), 36);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 3);

    let empty = dir.path().join("none");
    assert!(gama(&[
        "generate",
        "--class",
        "CBQP",
        "--n",
        "50",
        "--b",
        "10",
        "--count",
        "0",
        "--out",
        p(&empty)
    ])
    .status
    .success());
    assert!(!empty.exists());
    assert!(!gama(&["generate", "--class", "QAP", "--n", "0", "--k", "2"])
        .status
        .success());
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for run in ["a", "b"] {
        let out = dir.path().join(run);
        assert!(gama(&[
            "generate",
            "--class",
            "QAP",
            "--n",
            "4",
            "--k",
            "4",
            "--rng-seed",
            "9",
            "--out",
            p(&out)
        ])
        .status
        .success());
    }
    let read = |run: &str| fs::read(dir.path().join(run).join("QAP_4x4_0.json")).unwrap();
    assert_eq!(read("a"), read("b"));
}

#[test]
fn solve_writes_results_and_aggregate() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst");
    gama(&[
        "generate",
        "--class",
        "CBQP",
        "--n",
        "50",
        "--b",
        "10",
        "--count",
        "2",
        "--out",
        p(&inst),
    ]);
    gama(&[
        "generate",
        "--class",
        "QSAP2",
        "--n",
        "5",
        "--k",
        "3",
        "--out",
        p(&inst),
    ]);
    let res = dir.path().join("res");
    let terms = dir.path().join("terminals.csv");
    let out = gama(&["solve", p(&inst), "--out", p(&res), "--terminals-csv", p(&terms)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let cbqp: ResultsFile =
        serde_json::from_str(&fs::read_to_string(res.join("CBQP_50_0.result.json")).unwrap()).unwrap();
    assert_eq!(cbqp.seed_count, 50);
    let qsap: ResultsFile =
        serde_json::from_str(&fs::read_to_string(res.join("QSAP2_3x5_0.result.json")).unwrap()).unwrap();
    assert_eq!(qsap.seed_count, 15);

    let aggregate = fs::read_to_string(res.join("aggregate.csv")).unwrap();
    let lines: Vec<&str> = aggregate.lines().collect();
    assert_eq!(lines[0], gama::cli::AGGREGATE_HEADER);
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.ends_with(",ok")));
    assert_eq!(fs::read_to_string(res.join("timing.csv")).unwrap().lines().count(), 4);
    assert_eq!(fs::read_to_string(terms).unwrap().lines().count(), 1 + 50 + 50 + 15);
}

#[test]
fn seed_count_flag_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst");
    gama(&["generate", "--class", "QAP", "--n", "3", "--k", "3", "--out", p(&inst)]);
    let res = dir.path().join("res");
    let out = Command::new(env!("CARGO_BIN_EXE_gama"))
        .args(["solve", p(&inst), "--out", p(&res), "--dump-seeds"])
        .env("GAMA_SEEDS", "7")
        .output()
        .unwrap();
    assert!(out.status.success());
    let r: ResultsFile = serde_json::from_str(&fs::read_to_string(res.join("QAP_3x3_0.result.json")).unwrap()).unwrap();
    assert_eq!((r.seed_count, r.seeds.map(|s| s.len())), (7, Some(7)));
    assert!(gama(&[
        "solve",
        p(&inst),
        "--out",
        p(&res),
        "--seeds",
        "4",
        "--policy",
        "best",
        "--mode",
        "exact"
    ])
    .status
    .success());
    let r: ResultsFile = serde_json::from_str(&fs::read_to_string(res.join("QAP_3x3_0.result.json")).unwrap()).unwrap();
    assert_eq!(r.seed_count, 4);
}

#[test]
fn infeasible_instance_gives_error_row_and_failure() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"name":"bad","class":"QAP","n":2,"k":2,"c":[0,0,0,0],"Q":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]],"b":[2,0,2,0],"l":[0,0,0,0],"u":[1,1,1,1]}"#).unwrap();
    let res = dir.path().join("res");
    let out = gama(&["solve", p(&bad), "--out", p(&res)]);
    assert!(!out.status.success());
    let aggregate = fs::read_to_string(res.join("aggregate.csv")).unwrap();
    let row = aggregate.lines().nth(1).unwrap();
    assert!(row.starts_with("bad,,,,,") && row.contains("error"), "{row}");
}

#[test]
fn verify_small_dimension_passes() {
    let out = gama(&["verify", "--max-dim", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("oracle:") && text.contains("exhaustive:"));
    assert!(!text.contains("FAIL"));
}
