//! End-to-end tests against the built binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn sortnet() -> &'static str {
    env!("CARGO_BIN_EXE_sortnet")
}

fn run(args: &[&str]) -> Output {
    Command::new(sortnet())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("sortnet-cli-test-{}-{name}", std::process::id()))
}

#[test]
fn verify_catalog_network() {
    let out = run(&["verify", "catalog://s20d11"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "sorting network: 20 channels, depth 11\n");
}

#[test]
fn verify_json_and_expect_mismatch() {
    let out = run(&["verify", "catalog://s4d3", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["verdict"], "sorting");
    assert_eq!(doc["depth"], 3);

    // a green filter is not a sorting network
    let out = run(&["verify", "catalog://green8", "--expect", "sorting"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["verify", "catalog://green8", "--expect", "counterexample"]);
    assert!(out.status.success());
}

#[test]
fn unknown_catalog_id_is_a_usage_error() {
    let out = run(&["verify", "catalog://nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["catalog"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("s17d10-left"));
}

#[test]
fn window_sum_table_entry() {
    let out = run(&["window-sum", "--style", "bz", "-n", "17"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "171612\n");
    let out = run(&["window-sum", "--style", "pb", "-n", "17"]);
    assert_eq!(stdout(&out), "186992\n");
    let out = run(&["window-sum", "catalog://s4d3"]);
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn synthesize_reports_unsat_with_exit_zero() {
    let out = run(&["synthesize", "-n", "4", "-d", "2"]);
    assert!(out.status.success(), "a computed verdict is success");
    assert!(stdout(&out).starts_with("UNSAT"));
    let out = run(&["synthesize", "-n", "4", "-d", "2", "--expect", "found"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn synthesize_writes_a_verifiable_network() {
    let path = temp_path("net.json");
    let out = run(&[
        "synthesize",
        "-n",
        "5",
        "-d",
        "5",
        "--prefix",
        "bz",
        "-o",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["verdict"], "found");
    let check = run(&["verify", path.to_str().unwrap(), "--expect", "sorting"]);
    assert!(check.status.success());
    std::fs::remove_file(&path).ok();
}

#[test]
fn render_formats() {
    let out = run(&["render", "catalog://s4d3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 4);
    let out = run(&["render", "catalog://s4d3", "--format", "svg"]);
    assert!(stdout(&out).starts_with("<svg"));
}

#[test]
fn encode_solve_round_trip() {
    let cnf = temp_path("problem.cnf");
    let out = run(&[
        "encode",
        "-n",
        "4",
        "-d",
        "3",
        "--inputs",
        "all",
        "-o",
        cnf.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let sidecar = PathBuf::from(format!("{}.varmap.json", cnf.display()));
    let varmap: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&sidecar).unwrap()).unwrap();
    assert_eq!(varmap["n"], 4);
    assert_eq!(varmap["d"], 3);
    assert!(varmap["g"].as_array().unwrap().len() == 18);

    let out = run(&["solve", cnf.to_str().unwrap(), "--expect", "sat"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("s SATISFIABLE"));
    assert!(text.lines().any(|l| l.starts_with("v ")));

    // depth 2 is impossible
    let cnf2 = temp_path("problem2.cnf");
    run(&[
        "encode",
        "-n",
        "4",
        "-d",
        "2",
        "--inputs",
        "all",
        "-o",
        cnf2.to_str().unwrap(),
    ]);
    let out = run(&["solve", cnf2.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "s UNSATISFIABLE\n");

    for p in [&cnf, &cnf2] {
        std::fs::remove_file(p).ok();
        std::fs::remove_file(format!("{}.varmap.json", p.display())).ok();
    }
}

#[test]
fn solve_rejects_missing_and_malformed_files() {
    let out = run(&["solve", "/definitely/not/here.cnf"]);
    assert_eq!(out.status.code(), Some(2));
    let bad = temp_path("bad.cnf");
    std::fs::write(&bad, "this is not dimacs\n").unwrap();
    let out = run(&["solve", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&bad).ok();
}

#[test]
fn external_solver_cross_check() {
    // the binary itself speaks the SAT-competition output conventions, so it
    // serves as the external solver for its own adapter
    let command = vec![sortnet().to_string(), "solve".to_string()];
    let mut rng_state = 0x3cf5_1e2a_u64;
    let mut rng = move || {
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        rng_state
    };
    let mut sat_seen = 0;
    let mut unsat_seen = 0;
    for round in 0..200 {
        let num_vars = 5 + (rng() % 8) as u32;
        // near the 3-CNF phase transition at ratio ~4.26
        let n_clauses = (num_vars as f64 * 4.26).round() as usize;
        let clauses: Vec<Vec<i32>> = (0..n_clauses)
            .map(|_| {
                (0..3)
                    .map(|_| {
                        let v = 1 + (rng() % num_vars as u64) as i32;
                        if rng() % 2 == 0 {
                            v
                        } else {
                            -v
                        }
                    })
                    .collect()
            })
            .collect();
        let internal = sortnet::solver::solve_clauses(
            num_vars,
            &clauses,
            &sortnet::solver::SolverConfig::default(),
        )
        .unwrap();
        let external =
            sortnet::solver::solve_external_raw(num_vars, &clauses, &command).unwrap();
        assert_eq!(internal.status, external.status, "round {round}");
        match internal.status {
            sortnet::solver::Status::Sat => sat_seen += 1,
            sortnet::solver::Status::Unsat => unsat_seen += 1,
            sortnet::solver::Status::Unknown => panic!("no budget was set"),
        }
    }
    assert!(sat_seen > 10 && unsat_seen > 10, "family should straddle the transition");
}

#[test]
fn prove_sweep_table() {
    let out = run(&["prove", "-n", "4", "-d", "2", "--prefix", "bz"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("unsat"));
    assert!(text.contains("overall: no sorting network of depth 2 extends any given prefix"));

    let out = run(&["prove", "-n", "5", "-d", "4", "--enumerate", "--json", "--parallelism", "2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["overall"], "no_network");
}

#[test]
fn green_filter_and_enumerate() {
    let out = run(&["green-filter", "-n", "8"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["label"], "green");
    assert_eq!(doc["layers"].as_array().unwrap().len(), 3);
    let out = run(&["green-filter", "-n", "6"]);
    assert_eq!(out.status.code(), Some(2), "6 is not a power of two");

    let out = run(&["enumerate-prefixes", "-n", "4", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc.as_array().unwrap().len(), 6);
}

#[test]
fn optimizer_is_deterministic_under_seed() {
    let args = [
        "optimize-prefix",
        "pb",
        "-n",
        "6",
        "--generations",
        "30",
        "--population",
        "8",
        "--seed",
        "11",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert!(doc["fitness_after"].as_u64().unwrap() <= doc["fitness_before"].as_u64().unwrap());
}

#[test]
fn optimizer_accepts_a_config_file() {
    let cfg_path = temp_path("ea.json");
    std::fs::write(
        &cfg_path,
        r#"{"sample_size":64,"population":6,"generations":20,"mutation_rate":0.4,"seed":3}"#,
    )
    .unwrap();
    let out = run(&[
        "optimize-prefix",
        "pb",
        "-n",
        "6",
        "--ea-config",
        cfg_path.to_str().unwrap(),
        "--json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["prefix"]["label"], "optimized");
    std::fs::remove_file(&cfg_path).ok();
}

#[test]
fn encode_with_prefix_reference() {
    let cnf = temp_path("prefixed.cnf");
    let out = run(&[
        "encode",
        "-n",
        "8",
        "-d",
        "6",
        "--prefix",
        "green",
        "--inputs",
        "50",
        "-o",
        cnf.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let sidecar = format!("{}.varmap.json", cnf.display());
    let varmap: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&sidecar).unwrap()).unwrap();
    assert_eq!(varmap["prefix_depth"], 3);
    std::fs::remove_file(&cnf).ok();
    std::fs::remove_file(&sidecar).ok();
}

#[test]
fn resume_flow() {
    let state_path = temp_path("resume.json");
    let out = run(&[
        "synthesize",
        "-n",
        "5",
        "-d",
        "3",
        "--max-conflicts",
        "0",
        "--resume-out",
        state_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("UNKNOWN"));
    assert!(Path::new(&state_path).exists());
    let out = run(&[
        "synthesize",
        "-n",
        "5",
        "-d",
        "3",
        "--resume-in",
        state_path.to_str().unwrap(),
        "--expect",
        "no-network",
    ]);
    assert!(out.status.success(), "depth 3 on 5 channels must be refuted");
    std::fs::remove_file(&state_path).ok();
}

#[test]
fn external_solver_configuration_errors() {
    let cnf = temp_path("tiny.cnf");
    std::fs::write(&cnf, "p cnf 1 1\n1 0\n").unwrap();
    let out = Command::new(sortnet())
        .args(["solve", cnf.to_str().unwrap(), "--solver", "external"])
        .env_remove("SORTNET_EXTERNAL_SOLVER")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "solve",
        cnf.to_str().unwrap(),
        "--solver",
        "external",
        "--solver-cmd",
        "definitely-not-a-solver",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // the environment variable supplies the default command
    let out = Command::new(sortnet())
        .args(["solve", cnf.to_str().unwrap(), "--solver", "external"])
        .env(
            "SORTNET_EXTERNAL_SOLVER",
            format!("{} solve", sortnet()),
        )
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("s SATISFIABLE"));
    std::fs::remove_file(&cnf).ok();
}
