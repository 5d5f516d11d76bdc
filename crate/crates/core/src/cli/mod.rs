//! Experiment runner: named suites of checks, CSV tables and summaries on disk.
//!
//! ```text
//! harmonic run --suite <kernels|summability|inversion|hardy|growth|all> [--config FILE] [--out DIR]
//! ```
//!
//! The output directory defaults to `harmonic-out`; `HARMONIC_OUT_DIR` overrides the
//! configured one and `--out` overrides both. Exit status is 0 when every check
//! passes, 1 when any fails and 2 for an invalid configuration.

pub mod config;
pub mod report;
pub mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use config::{ExperimentConfig, SuiteName};
pub use report::{dump_field, format_number, Check, Table};
pub use suites::{run_suite, SuiteOutput};

pub const OUT_DIR_ENV: &str = "HARMONIC_OUT_DIR";

/// Wall-clock budget for `--suite all`, in seconds.
pub const RUNTIME_BUDGET: f64 = 300.0;

/// Every acceptance criterion, with the suite that evaluates it.
pub const CRITERIA: [(u8, &str, SuiteName); 15] = [
    (1, "poisson_normalization", SuiteName::Kernels),
    (2, "abel_transform_identity", SuiteName::Kernels),
    (3, "half_line_transforms", SuiteName::Kernels),
    (4, "gaussian_subordination", SuiteName::Kernels),
    (5, "poisson_semigroup", SuiteName::Kernels),
    (6, "abel_summation", SuiteName::Summability),
    (7, "poisson_convolution_inverse", SuiteName::Inversion),
    (8, "hardy_split_partition", SuiteName::Hardy),
    (9, "representation_agreement", SuiteName::Hardy),
    (10, "boundary_continuity", SuiteName::Hardy),
    (11, "cauchy_riemann", SuiteName::Hardy),
    (12, "growth_theorem", SuiteName::Growth),
    (13, "envelope_bound", SuiteName::Growth),
    (14, "type_estimation", SuiteName::Growth),
    (15, "determinism", SuiteName::All),
];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot write reports: {0}")]
    Io(#[from] std::io::Error),
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionSummary {
    pub criterion: u8,
    pub name: &'static str,
    pub suite: &'static str,
    pub verdict: &'static str,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone)]
pub struct ReportBundle {
    pub config: ExperimentConfig,
    pub outputs: Vec<SuiteOutput>,
    pub criteria: Vec<CriterionSummary>,
    pub timings: Vec<(String, f64)>,
    pub output_dir: PathBuf,
}

impl ReportBundle {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.criteria.iter().flat_map(|c| c.checks.iter())
    }

    pub fn failed(&self) -> usize {
        self.checks().filter(|c| !c.pass).count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() == 0 {
            0
        } else {
            1
        }
    }

    pub fn summary_text(&self) -> String {
        let mut s = format!("harmonic run: suite {}\n", self.config.suite.label());
        for c in &self.criteria {
            s.push_str(&format!(
                "criterion {} {} [{}]: {}\n",
                c.criterion, c.name, c.suite, c.verdict
            ));
            for check in &c.checks {
                s.push_str(&format!("  {check}\n"));
            }
        }
        let total = self.checks().count();
        s.push_str(&format!(
            "checks: {} passed, {} failed\n",
            total - self.failed(),
            self.failed()
        ));
        s
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.config.suite.label(),
            "criteria": self.criteria,
            "passed": self.checks().count() - self.failed(),
            "failed": self.failed(),
        })
    }

    pub fn manifest_json(&self) -> serde_json::Value {
        let files: Vec<String> = self
            .outputs
            .iter()
            .flat_map(|o| o.tables.iter().map(move |t| format!("{}/{}.csv", o.suite.label(), t.name)))
            .collect();
        serde_json::json!({
            "package": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "config": self.config,
            "timings_seconds": self.timings.iter().map(|(k, v)| (k.clone(), serde_json::json!(*v))).collect::<serde_json::Map<_, _>>(),
            "files": files,
        })
    }

    pub fn write(&self) -> std::io::Result<()> {
        let root = &self.output_dir;
        fs::create_dir_all(root)?;
        for out in &self.outputs {
            let dir = root.join(out.suite.label());
            fs::create_dir_all(&dir)?;
            for t in &out.tables {
                fs::write(dir.join(format!("{}.csv", t.name)), t.to_csv())?;
            }
        }
        fs::write(root.join("summary.txt"), self.summary_text())?;
        let pretty = |v: serde_json::Value| serde_json::to_string_pretty(&v).expect("json") + "\n";
        fs::write(root.join("summary.json"), pretty(self.summary_json()))?;
        fs::write(root.join("manifest.json"), pretty(self.manifest_json()))?;
        Ok(())
    }
}

fn run_all(suites: &[SuiteName], config: &ExperimentConfig) -> (Vec<SuiteOutput>, Vec<(String, f64)>) {
    let mut outputs = Vec::new();
    let mut timings = Vec::new();
    for &suite in suites {
        let start = Instant::now();
        outputs.push(run_suite(suite, config));
        timings.push((suite.label().to_string(), start.elapsed().as_secs_f64()));
    }
    (outputs, timings)
}

fn csv_images(outputs: &[SuiteOutput]) -> Vec<(String, String)> {
    outputs
        .iter()
        .flat_map(|o| {
            o.tables
                .iter()
                .map(move |t| (format!("{}/{}", o.suite.label(), t.name), t.to_csv()))
        })
        .collect()
}

/// Runs the configured suites in memory. With `all`, the suites run a second time
/// and their tables are compared byte for byte.
pub fn execute(config: &ExperimentConfig, output_dir: PathBuf) -> Result<ReportBundle, CliError> {
    config.validate()?;
    let suites = config.suite.expand();
    let start = Instant::now();
    let (outputs, mut timings) = run_all(&suites, config);
    let elapsed = start.elapsed().as_secs_f64();
    let mut checks: Vec<Check> = outputs.iter().flat_map(|o| o.checks.clone()).collect();
    if config.suite == SuiteName::All {
        let (again, _) = run_all(&suites, config);
        let first = csv_images(&outputs);
        let second = csv_images(&again);
        let differing = if first.len() == second.len() {
            first.iter().zip(&second).filter(|(a, b)| a != b).count()
        } else {
            first.len().max(second.len())
        };
        checks.push(Check::at_most(15, "determinism csv tables differing", differing as f64, 0.0));
        checks.push(Check::at_most(15, "determinism runtime seconds", elapsed, RUNTIME_BUDGET));
        timings.push(("all".into(), elapsed));
    }
    let criteria = CRITERIA
        .iter()
        .map(|&(criterion, name, suite)| {
            let own: Vec<Check> = checks.iter().filter(|c| c.criterion == criterion).cloned().collect();
            let selected = config.suite == SuiteName::All || config.suite == suite;
            let verdict = if !selected {
                "skipped"
            } else if !own.is_empty() && own.iter().all(|c| c.pass) {
                "pass"
            } else {
                "FAIL"
            };
            CriterionSummary {
                criterion,
                name,
                suite: suite.label(),
                verdict,
                checks: own,
            }
        })
        .collect();
    Ok(ReportBundle {
        config: config.clone(),
        outputs,
        criteria,
        timings,
        output_dir,
    })
}

/// Runs the suites and writes every report under the bundle's output directory.
pub fn run(config: &ExperimentConfig, output_dir: PathBuf) -> Result<ReportBundle, CliError> {
    let bundle = execute(config, output_dir)?;
    bundle.write()?;
    Ok(bundle)
}

#[derive(Debug, Parser)]
#[command(name = "harmonic", version, about = "Summability and half-plane extension experiments")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a suite of checks and write CSV tables and summaries.
    Run {
        #[arg(long, value_enum)]
        suite: Option<SuiteName>,
        /// JSON configuration; missing keys take their defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory (overrides the configuration and HARMONIC_OUT_DIR).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_config(path: Option<&Path>) -> Result<ExperimentConfig, CliError> {
    match path {
        None => Ok(ExperimentConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            ExperimentConfig::from_json(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))
        }
    }
}

/// Parses `args` (program name first), runs, and returns the exit status.
pub fn main_with<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let Command::Run { suite, config, out } = args.command;
    let result = load_config(config.as_deref()).and_then(|mut cfg| {
        if let Some(s) = suite {
            cfg.suite = s;
        }
        let dir = out
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| cfg.output_dir.clone());
        run(&cfg, dir)
    });
    match result {
        Ok(bundle) => {
            print!("{}", bundle.summary_text());
            bundle.exit_code()
        }
        Err(e) => {
            eprintln!("harmonic: {e}");
            match e {
                CliError::Config(_) => 2,
                CliError::Io(_) => 1,
            }
        }
    }
}
