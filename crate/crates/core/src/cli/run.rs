use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use super::config::ExperimentConfig;
use super::Command;
use crate::errorlab::{rate_report, simulate_sup_distances, truncated_moment_study, RateReport};
use crate::noise::{check_nondegeneracy, sample_increments, ProbeKind};
use crate::sde::{euler_maruyama, reference_solution};
use crate::spectral::inequality_suite;
use crate::{Error, Result};

/// Command-line options shared by every subcommand.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub config: PathBuf,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub allow_hypothesis_violation: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// The run completed but a checked property did not hold.
    Violation,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub status: Status,
    /// Main JSON report.
    pub report: PathBuf,
    pub artifacts: Vec<PathBuf>,
}

/// Process exit code: 0 on pass, 2 on a property violation, 1 on error.
pub fn exit_code(result: &Result<RunOutcome>) -> i32 {
    match result {
        Ok(RunOutcome { status: Status::Pass, .. }) => 0,
        Ok(_) => 2,
        Err(_) => 1,
    }
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    command: &'a str,
    status: Status,
    seed: u64,
    config_hash: String,
    config: &'a ExperimentConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    waived_hypothesis: Option<String>,
    result: T,
    /// Seconds since the Unix epoch; the only field that differs between reruns.
    timestamp: u64,
}

struct Sink {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Sink {
    fn create(&mut self, name: &str) -> Result<BufWriter<File>> {
        let path = self.dir.join(name);
        let file = File::create(&path)?;
        self.written.push(path);
        Ok(BufWriter::new(file))
    }
}

/// Loads the config, applies the flag overrides and runs `command`.
pub fn run(command: Command, opts: &RunOptions) -> Result<RunOutcome> {
    let mut config = ExperimentConfig::load(&opts.config)?;
    if let Some(seed) = opts.seed {
        config.seed = seed;
    }
    let out = opts
        .out
        .clone()
        .or_else(|| config.out.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    match opts.threads {
        Some(0) => Err(Error::Argument("--threads must be positive".into())),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Argument(format!("cannot build a pool of {k} threads: {e}")))?
            .install(|| run_config(command, &config, &out, opts.allow_hypothesis_violation)),
        None => run_config(command, &config, &out, opts.allow_hypothesis_violation),
    }
}

/// Runs `command` on an already loaded config, writing artifacts under `out`.
pub fn run_config(command: Command, config: &ExperimentConfig, out: &Path, allow_violation: bool) -> Result<RunOutcome> {
    let mut sink = Sink {
        dir: out.to_path_buf(),
        written: Vec::new(),
    };
    // validate everything the command needs before touching the file system
    let (status, result, waived) = match command {
        Command::Simulate => {
            config.simulate_section()?;
            let (_, waived) = config.drift(allow_violation)?;
            fs::create_dir_all(out)?;
            let (status, result) = simulate(config, &mut sink, allow_violation)?;
            (status, result, waived)
        }
        Command::Convergence => {
            let (plans, waived) = config.convergence_plans(allow_violation)?;
            fs::create_dir_all(out)?;
            let distances = simulate_sup_distances(&plans[0])?;
            let reports = plans
                .iter()
                .map(|plan| rate_report(plan, &distances, plan.p))
                .collect::<Result<Vec<RateReport>>>()?;
            for r in &reports {
                r.write_csv(sink.create(&format!("convergence_p{}.csv", r.p))?)?;
                r.write_plot_data(sink.create(&format!("convergence_p{}.dat", r.p))?)?;
            }
            let ok = reports.iter().all(|r| r.meets_theory() && r.is_monotone_within_ci());
            (status_of(ok), serde_json::to_value(&reports)?, waived)
        }
        Command::Moments => {
            let model = *config.model()?;
            let section = config.moments_section()?;
            fs::create_dir_all(out)?;
            let studies = section
                .p
                .iter()
                .map(|&p| truncated_moment_study(&model, p, &section.n_list, section.samples, config.seed))
                .collect::<Result<Vec<_>>>()?;
            for s in &studies {
                crate::errorlab::write_points_csv(&s.points, sink.create(&format!("moments_p{}.csv", s.p))?)?;
                let mut w = sink.create(&format!("moments_p{}.dat", s.p))?;
                for (pt, c) in s.points.iter().zip(&s.compensated) {
                    writeln!(w, "{} {:e} {:e}", pt.n, pt.estimate, c)?;
                }
            }
            let ok = studies.iter().all(|s| s.passes());
            (status_of(ok), serde_json::to_value(&studies)?, None)
        }
        Command::Nondegeneracy => {
            let (measure, alpha, probes) = config.nondegeneracy_section()?;
            fs::create_dir_all(out)?;
            let cert = check_nondegeneracy(&measure, alpha, &probes)?;
            let mut w = sink.create("nondegeneracy_probes.csv")?;
            writeln!(w, "kind,radius,value,direction")?;
            for s in &cert.probe_report {
                let kind = match s.kind {
                    ProbeKind::SmallBall => "small_ball",
                    ProbeKind::Symbol => "symbol",
                };
                let dir: Vec<String> = s.direction.iter().map(|x| format!("{x:e}")).collect();
                writeln!(w, "{kind},{:e},{:e},{}", s.radius, s.value, dir.join(" "))?;
            }
            (status_of(cert.valid), serde_json::to_value(&cert)?, None)
        }
        Command::BesovCheck => {
            let suite = config.besov_section()?;
            fs::create_dir_all(out)?;
            let report = inequality_suite(suite, config.seed)?;
            let mut w = sink.create("besov_ratios.csv")?;
            writeln!(w, "function,p,alpha,j,bernstein_ratio,dissipativity_integral,dissipativity_ratio")?;
            for case in &report.cases {
                for row in &case.dissipativity.rows {
                    let bern = case.bernstein.rows.iter().find(|b| b.j == row.j).map(|b| format!("{:e}", b.ratio));
                    let diss = row.ratio.filter(|_| row.in_range).map(|r| format!("{r:e}"));
                    writeln!(
                        w,
                        "{},{},{},{},{},{:e},{}",
                        case.function,
                        case.p,
                        case.alpha,
                        row.j,
                        bern.unwrap_or_default(),
                        row.integral,
                        diss.unwrap_or_default()
                    )?;
                }
            }
            let mut w = sink.create("besov_norms.csv")?;
            writeln!(w, "function,p,s,j,weighted_norm")?;
            for case in report.cases.iter().filter(|c| c.alpha == suite.alpha[0]) {
                for t in &case.besov_terms {
                    writeln!(w, "{},{},{},{},{:e}", case.function, case.p, suite.smoothness, t.j, t.weighted_norm)?;
                }
            }
            (status_of(report.passed), serde_json::to_value(&report)?, None)
        }
    };

    if let Some(msg) = &waived {
        eprintln!("warning: {msg}");
    }
    let envelope = Envelope {
        command: command.name(),
        status,
        seed: config.seed,
        config_hash: config.hash()?,
        config,
        waived_hypothesis: waived,
        result,
        timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
    };
    let report = out.join(format!("{}.json", command.name()));
    let mut w = BufWriter::new(File::create(&report)?);
    serde_json::to_writer_pretty(&mut w, &envelope)?;
    writeln!(w)?;
    w.flush()?;
    Ok(RunOutcome {
        status,
        report,
        artifacts: sink.written,
    })
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Violation
    }
}

#[derive(Serialize)]
struct PathSummary {
    path_index: u64,
    n_scheme: usize,
    endpoint: Vec<f64>,
    sup_distance_to_reference: f64,
}

fn simulate(config: &ExperimentConfig, sink: &mut Sink, allow_violation: bool) -> Result<(Status, serde_json::Value)> {
    let model = *config.model()?;
    let (sim, x0) = config.simulate_section()?;
    let (drift, _) = config.drift(allow_violation)?;
    let mut summary = Vec::new();
    for path in 0..sim.paths as u64 {
        let grid = sample_increments(&model, sim.n_fine, config.seed, path)?;
        let reference = reference_solution(&x0, &drift, &grid)?;
        reference.write_csv(sink.create(&format!("trajectory_path{path}_reference.csv"))?)?;
        for &n in &sim.n_scheme {
            let traj = euler_maruyama(&x0, &drift, &grid, n)?;
            traj.write_csv(sink.create(&format!("trajectory_path{path}_n{n}.csv"))?)?;
            summary.push(PathSummary {
                path_index: path,
                n_scheme: n,
                endpoint: traj.endpoint().to_vec(),
                sup_distance_to_reference: crate::sde::sup_distance(&traj, &reference)?,
            });
        }
    }
    Ok((Status::Pass, serde_json::to_value(&summary)?))
}
