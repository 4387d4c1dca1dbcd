use std::fs;
use std::path::Path;

use levy_em::cli::*;
use levy_em::Error;
use serde_json::Value;

const SMALL: &str = r#"
seed = 12

[model]
alpha = 1.5
dim = 1
flavor = "isotropic"

[drift]
kind = "holder"
beta = 0.8

[convergence]
p = [2.0]
n_list = [8, 16, 32]
n_ref = 2048
n_paths = 200
bootstrap_resamples = 200
"#;

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("run.toml");
    fs::write(&path, text).unwrap();
    path
}

fn opts(config: std::path::PathBuf, out: &Path) -> RunOptions {
    RunOptions {
        config,
        out: Some(out.to_path_buf()),
        ..RunOptions::default()
    }
}

fn without_timestamp(path: &Path) -> Value {
    let mut v: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timestamp").expect("timestamp field");
    v
}

fn config_field(err: &Error) -> &str {
    match err {
        Error::Config { field, .. } => field,
        other => panic!("expected a config error, got {other}"),
    }
}

#[test]
fn default_convergence_reports_unit_theory_slope() {
    let dir = tempfile::tempdir().unwrap();
    let text = "seed = 1\n[model]\nalpha = 1.5\ndim = 1\nflavor = \"isotropic\"\n\
                [drift]\nkind = \"holder\"\nbeta = 0.8\n[convergence]\nn_paths = 100\n";
    let out = dir.path().join("out");
    let outcome = run(Command::Convergence, &opts(write_config(dir.path(), text), &out)).unwrap();
    let v = without_timestamp(&outcome.report);
    assert_eq!(v["result"][0]["theory_slope"], 1.0);
    assert_eq!(v["result"][0]["p"], 2.0);
    assert_eq!(v["config"]["convergence"]["n_ref"], 32768);
    assert_eq!(v["result"][0]["per_n"].as_array().unwrap().len(), 7);
}

#[test]
fn hypothesis_violation_is_rejected_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let text = SMALL.replace("beta = 0.8", "beta = 0.2");
    let cfg = write_config(dir.path(), &text);
    let out = dir.path().join("out");
    let result = run(Command::Convergence, &opts(cfg.clone(), &out));
    assert_eq!(exit_code(&result), 1);
    let err = result.unwrap_err();
    assert_eq!(config_field(&err), "drift.beta");
    assert!(err.to_string().contains("0.25"), "{err}");
    assert!(!out.exists(), "rejected configs must not produce output");

    let mut o = opts(cfg, &out);
    o.allow_hypothesis_violation = true;
    let outcome = run(Command::Convergence, &o).unwrap();
    let v = without_timestamp(&outcome.report);
    assert!(v["waived_hypothesis"].as_str().unwrap().contains("β ∈ (1 - α/2, 1)"));
}

#[test]
fn schema_errors_carry_the_field_path() {
    let cases = [
        (SMALL.replace("n_paths = 200", "n_pahts = 200"), "convergence"),
        (SMALL.replace("alpha = 1.5", "alpha = 2.5"), "model"),
        (SMALL.replace("kind = \"holder\"", "kind = \"wavy\""), "drift"),
        (SMALL.replace("flavor = \"isotropic\"", "flavor = \"gaussian\""), "model"),
        (SMALL.replace("n_ref = 2048", "n_ref = 1024"), "convergence"),
        (SMALL.replace("seed = 12", "seed = \"twelve\""), "seed"),
    ];
    for (text, field) in cases {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("out");
        let err = run(Command::Convergence, &opts(write_config(dir.path(), &text), &out)).unwrap_err();
        assert!(config_field(&err).starts_with(field), "{field}: {err}");
        assert!(!out.exists());
    }
    let dir = tempfile::tempdir().unwrap();
    let err = run(Command::Moments, &opts(write_config(dir.path(), SMALL), dir.path())).unwrap_err();
    assert_eq!(config_field(&err), "moments");
}

#[test]
fn reruns_are_identical_except_for_the_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let a = run(Command::Convergence, &opts(cfg.clone(), &dir.path().join("a"))).unwrap();
    let mut o = opts(cfg, &dir.path().join("b"));
    o.threads = Some(3);
    let b = run(Command::Convergence, &o).unwrap();
    assert_eq!(without_timestamp(&a.report), without_timestamp(&b.report));
    for name in ["convergence_p2.csv", "convergence_p2.dat"] {
        assert_eq!(
            fs::read(dir.path().join("a").join(name)).unwrap(),
            fs::read(dir.path().join("b").join(name)).unwrap()
        );
    }
    let text = fs::read_to_string(&a.report).unwrap();
    let stamp_lines: Vec<&str> = text.lines().filter(|l| l.contains("timestamp")).collect();
    assert_eq!(stamp_lines.len(), 1);
}

#[test]
fn embedded_config_reproduces_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let mut o = opts(write_config(dir.path(), SMALL), &dir.path().join("first"));
    o.seed = Some(99);
    let first = run(Command::Convergence, &o).unwrap();
    let v = without_timestamp(&first.report);
    assert_eq!(v["seed"], 99);

    let embedded: ExperimentConfig = serde_json::from_value(v["config"].clone()).unwrap();
    assert_eq!(embedded.hash().unwrap(), v["config_hash"].as_str().unwrap());
    let replay_cfg = dir.path().join("replay.toml");
    fs::write(&replay_cfg, embedded.to_toml().unwrap()).unwrap();
    let second = run(Command::Convergence, &opts(replay_cfg, &dir.path().join("second"))).unwrap();
    assert_eq!(v, without_timestamp(&second.report));
}

#[test]
fn config_hash_tracks_content() {
    let a = ExperimentConfig::from_toml(SMALL).unwrap();
    let b = ExperimentConfig::from_toml(&SMALL.replace("seed = 12", "seed = 13")).unwrap();
    let c = ExperimentConfig::from_toml(&format!("out = \"elsewhere\"\n{SMALL}")).unwrap();
    assert_ne!(a.hash().unwrap(), b.hash().unwrap());
    assert_eq!(a.hash().unwrap(), c.hash().unwrap());
    assert_eq!(a.hash().unwrap().len(), 64);
}

#[test]
fn every_subcommand_writes_its_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!(
        "{SMALL}\n[simulate]\nn_fine = 256\nn_scheme = [4, 32]\npaths = 2\n\
         [moments]\np = [0.5, 3.0]\nn_list = [16, 64, 256, 1024]\nsamples = 20000\n\
         [nondegeneracy]\neta_samples = 8\nxi_probes = 3\n\
         [besov]\nfunctions = 2\ngrid_size = 4096\nperiod_scale = 4.0\nband = 60.0\nj_min = 2\nj_max = 5\n"
    );
    let cfg = write_config(dir.path(), &text);
    let out = dir.path().join("out");
    let expected = [
        (Command::Simulate, vec!["trajectory_path1_n32.csv", "trajectory_path0_reference.csv"]),
        (Command::Moments, vec!["moments_p0.5.csv", "moments_p3.dat"]),
        (Command::Nondegeneracy, vec!["nondegeneracy_probes.csv"]),
        (Command::BesovCheck, vec!["besov_ratios.csv", "besov_norms.csv"]),
    ];
    for (cmd, files) in expected {
        let outcome = run(cmd, &opts(cfg.clone(), &out)).unwrap();
        assert_eq!(outcome.status, Status::Pass, "{}", cmd.name());
        assert_eq!(outcome.report, out.join(format!("{}.json", cmd.name())));
        for f in files {
            assert!(out.join(f).exists(), "{f}");
        }
        let v = without_timestamp(&outcome.report);
        assert_eq!(v["command"], cmd.name());
        assert_eq!(v["seed"], 12);
        assert_eq!(v["status"], "pass");
    }
    let traj = fs::read_to_string(out.join("trajectory_path0_n4.csv")).unwrap();
    assert_eq!(traj.lines().next().unwrap(), "t,x_1");
    assert_eq!(traj.lines().count(), 258);
    let ratios = fs::read_to_string(out.join("besov_ratios.csv")).unwrap();
    assert_eq!(
        ratios.lines().next().unwrap(),
        "function,p,alpha,j,bernstein_ratio,dissipativity_integral,dissipativity_ratio"
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let degenerate = "[nondegeneracy]\nmeasure = { kind = \"axis\", alpha = 1.5, dim = 2 }\neta_samples = 8\n";
    let cfg = write_config(dir.path(), degenerate);
    let out = dir.path().join("out");
    let args = |cmd: &str| {
        vec![
            "levy-em".to_string(),
            cmd.to_string(),
            "--config".into(),
            cfg.display().to_string(),
            "--out".into(),
            out.display().to_string(),
        ]
    };
    assert_eq!(main_with_args(args("nondegeneracy")), 2);
    let v = without_timestamp(&out.join("nondegeneracy.json"));
    assert_eq!(v["status"], "violation");
    assert_eq!(v["result"]["valid"], false);
    assert_eq!(main_with_args(args("convergence")), 1);
    assert_eq!(main_with_args(["levy-em", "simulate"]), 1);
    assert_eq!(main_with_args(["levy-em", "frobnicate"]), 1);
    let mut threads = args("nondegeneracy");
    threads.extend(["--threads".into(), "0".into()]);
    assert_eq!(main_with_args(threads), 1);

    let ok = write_config(dir.path(), "[nondegeneracy]\nmeasure = { kind = \"isotropic\", alpha = 1.0, dim = 2 }\neta_samples = 8\n");
    let mut a = args("nondegeneracy");
    a[3] = ok.display().to_string();
    assert_eq!(main_with_args(a), 0);
}

#[test]
fn sample_configs_parse() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut seen = 0;
    for entry in fs::read_dir(root).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            ExperimentConfig::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            seen += 1;
        }
    }
    assert!(seen >= 5);
}
