//! Batch experiment runner behind the `hpek` command-line tool.
//!
//! A [`RunConfig`] selects experiments, algorithms, and scale; [`run`]
//! executes them and writes per-algorithm raw CSV files, a JSON summary, and
//! an SVG box plot per experiment under the configured output directory.
//! Seeded heterogeneity and proof-of-work runs are byte-reproducible for any
//! worker count; timing output is machine- and run-dependent by nature.

pub mod host;
pub mod report;
pub mod svg;

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use hpek::blockmodel::{export_chain, verify_chain, Chain};
use hpek::heterogeneity::{
    adjacent_entropy_series, generate_chain, min_pairwise_entropy, EntropySeries,
};
use hpek::pow::{pow_distribution, PowConfig};
use hpek::stats::quartile_summary;
use hpek::timing::time_digest_batch;
use hpek::{Error as HpekError, HashAlgorithmId};

use host::HostInfo;
use report::{ConfigEcho, SummaryDoc, SummaryRow};
use svg::BoxplotSeries;

/// Failures of a batch run, ordered by their process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag value, unknown algorithm/experiment token, empty selection.
    Usage(String),
    /// The output directory or one of its files could not be written.
    Io { path: PathBuf, source: std::io::Error },
    /// A proof-of-work search exhausted its iteration bound.
    Exhausted(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } => 2,
            CliError::Exhausted(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Exhausted(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<HpekError> for CliError {
    fn from(e: HpekError) -> Self {
        match e {
            HpekError::PowExhausted { .. } | HpekError::TrialExhausted { .. } => {
                CliError::Exhausted(e.to_string())
            }
            HpekError::Io(source) => CliError::Io { path: PathBuf::new(), source },
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// The experiments the runner knows how to execute, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Experiment {
    HeterogeneityAdjacent,
    HeterogeneityMin,
    Pow,
    Timing,
    ChainDemo,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::HeterogeneityAdjacent,
        Experiment::HeterogeneityMin,
        Experiment::Pow,
        Experiment::Timing,
        Experiment::ChainDemo,
    ];

    /// Name used for the output subdirectory and the JSON `experiment` field.
    pub fn name(self) -> &'static str {
        match self {
            Experiment::HeterogeneityAdjacent => "heterogeneity-adjacent",
            Experiment::HeterogeneityMin => "heterogeneity-min",
            Experiment::Pow => "pow",
            Experiment::Timing => "timing",
            Experiment::ChainDemo => "chain-demo",
        }
    }
}

/// Output artifact kinds a run may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

/// Full configuration of one batch run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub experiments: BTreeSet<Experiment>,
    pub algorithms: Vec<HashAlgorithmId>,
    /// Chain length for the heterogeneity experiments.
    pub m: usize,
    /// Difficulty (leading zero bits) for proof-of-work and the chain demo.
    pub k: u32,
    pub trials: u64,
    pub reps: usize,
    /// Message size for the timing experiment.
    pub message_bytes: usize,
    /// Seed string; used as chain seed and proof-of-work content seed.
    pub seed: String,
    pub output_dir: PathBuf,
    pub formats: BTreeSet<OutputFormat>,
    /// Worker-thread cap; 0 picks the machine default.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            experiments: BTreeSet::new(),
            algorithms: HashAlgorithmId::ALL.to_vec(),
            m: 32_768,
            k: 8,
            trials: 32_768,
            reps: 10_000,
            message_bytes: 32,
            seed: "block-0".to_string(),
            output_dir: PathBuf::from("hpek-out"),
            formats: BTreeSet::from([OutputFormat::Csv, OutputFormat::Json, OutputFormat::Svg]),
            threads: 0,
        }
    }
}

/// Parses an algorithm selection: `all`, `mainstream`, or a comma-separated
/// list of canonical names.
pub fn parse_algorithm_spec(spec: &str) -> Result<Vec<HashAlgorithmId>> {
    match spec.trim().to_ascii_lowercase().as_str() {
        "all" => return Ok(HashAlgorithmId::ALL.to_vec()),
        "mainstream" => return Ok(HashAlgorithmId::MAINSTREAM.to_vec()),
        _ => {}
    }
    let mut algorithms = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        if token.is_empty() {
            return Err(CliError::Usage(format!(
                "empty algorithm token in '{spec}'"
            )));
        }
        let alg: HashAlgorithmId = token
            .parse()
            .map_err(|_| CliError::Usage(format!("unknown algorithm '{token}'")))?;
        if !algorithms.contains(&alg) {
            algorithms.push(alg);
        }
    }
    Ok(algorithms)
}

/// Parses a format selection: comma-separated subset of `csv,json,svg`.
pub fn parse_format_spec(spec: &str) -> Result<BTreeSet<OutputFormat>> {
    let mut formats = BTreeSet::new();
    for token in spec.split(',') {
        match token.trim().to_ascii_lowercase().as_str() {
            "csv" => formats.insert(OutputFormat::Csv),
            "json" => formats.insert(OutputFormat::Json),
            "svg" => formats.insert(OutputFormat::Svg),
            other => {
                return Err(CliError::Usage(format!("unknown output format '{other}'")))
            }
        };
    }
    if formats.is_empty() {
        return Err(CliError::Usage("no output formats selected".into()));
    }
    Ok(formats)
}

/// Outcome of one experiment within a run.
#[derive(Debug)]
pub struct ExperimentOutcome {
    pub experiment: Experiment,
    pub rows: Vec<SummaryRow>,
    pub raw_files: Vec<PathBuf>,
    pub summary_file: Option<PathBuf>,
    pub figure_file: Option<PathBuf>,
    pub warnings: Vec<String>,
}

/// Everything a finished run reports back.
#[derive(Debug)]
pub struct ExperimentReport {
    pub config: RunConfig,
    pub outcomes: Vec<ExperimentOutcome>,
    pub host: HostInfo,
    pub toolkit_version: String,
    pub runtime: Duration,
}

/// Executes every selected experiment for every selected algorithm and
/// persists the requested artifacts.
pub fn run(config: &RunConfig) -> Result<ExperimentReport> {
    if config.experiments.is_empty() {
        return Err(CliError::Usage("no experiments selected".into()));
    }
    if config.algorithms.is_empty() {
        return Err(CliError::Usage("no algorithms selected".into()));
    }
    let started = Instant::now();
    let host = HostInfo::collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot build worker pool: {e}")))?;

    let mut outcomes = Vec::new();
    for &experiment in &config.experiments {
        let dir = config.output_dir.join(experiment.name());
        fs::create_dir_all(&dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
        let outcome = match experiment {
            Experiment::HeterogeneityAdjacent | Experiment::HeterogeneityMin => {
                pool.install(|| run_heterogeneity(config, experiment, &dir, &host))?
            }
            Experiment::Pow => pool.install(|| run_pow(config, &dir, &host))?,
            // Timing keeps the measurement loop alone on the main thread;
            // experiments execute strictly one after another in this loop.
            Experiment::Timing => run_timing(config, &dir, &host)?,
            Experiment::ChainDemo => run_chain_demo(config, &dir, &host)?,
        };
        outcomes.push(outcome);
    }

    Ok(ExperimentReport {
        config: config.clone(),
        outcomes,
        host,
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        runtime: started.elapsed(),
    })
}

fn algorithm_names(config: &RunConfig) -> Vec<String> {
    config.algorithms.iter().map(|a| a.name().to_string()).collect()
}

/// What an experiment produced before the summary and figure are written.
struct Artifacts {
    rows: Vec<SummaryRow>,
    raw_files: Vec<PathBuf>,
    plot: Vec<BoxplotSeries>,
    plot_title: &'static str,
    warnings: Vec<String>,
}

fn finish_experiment(
    config: &RunConfig,
    experiment: Experiment,
    dir: &Path,
    host: &HostInfo,
    echo: &ConfigEcho,
    artifacts: Artifacts,
) -> Result<ExperimentOutcome> {
    let mut summary_file = None;
    if config.formats.contains(&OutputFormat::Json) {
        let path = dir.join("summary.json");
        let doc = SummaryDoc {
            experiment: experiment.name(),
            config: echo,
            host,
            rows: &artifacts.rows,
            warnings: artifacts.warnings.clone(),
        };
        report::write_summary_json(&path, &doc)?;
        summary_file = Some(path);
    }
    let mut figure_file = None;
    if config.formats.contains(&OutputFormat::Svg) {
        let path = dir.join("boxplot.svg");
        svg::emit_boxplot(&artifacts.plot, artifacts.plot_title, &path)?;
        figure_file = Some(path);
    }
    Ok(ExperimentOutcome {
        experiment,
        rows: artifacts.rows,
        raw_files: artifacts.raw_files,
        summary_file,
        figure_file,
        warnings: artifacts.warnings,
    })
}

fn run_heterogeneity(
    config: &RunConfig,
    experiment: Experiment,
    dir: &Path,
    host: &HostInfo,
) -> Result<ExperimentOutcome> {
    if config.m < 2 {
        return Err(CliError::Usage(
            "heterogeneity experiments need a chain of at least 2 digests (-m)".into(),
        ));
    }
    let seed = config.seed.as_bytes();
    let series: Vec<EntropySeries> = config
        .algorithms
        .par_iter()
        .map(|&alg| {
            let chain = generate_chain(alg, seed, config.m)?;
            match experiment {
                Experiment::HeterogeneityAdjacent => adjacent_entropy_series(&chain),
                _ => min_pairwise_entropy(&chain),
            }
        })
        .collect::<hpek::Result<_>>()
        .map_err(CliError::from)?;

    let mut rows = Vec::new();
    let mut raw_files = Vec::new();
    let mut plot = Vec::new();
    for s in &series {
        let summary = quartile_summary(s.values()).map_err(CliError::from)?;
        rows.push(SummaryRow::new(s.alg().name(), &summary));
        if config.formats.contains(&OutputFormat::Csv) {
            let path = report::algorithm_file(dir, s.alg().name(), "csv");
            report::write_entropy_csv(&path, s.values())?;
            raw_files.push(path);
        }
        plot.push(BoxplotSeries {
            label: s.alg().name().to_string(),
            values: s.values().to_vec(),
        });
    }

    let echo = ConfigEcho {
        algorithms: algorithm_names(config),
        seed: config.seed.clone(),
        unit: "nats",
        m: Some(config.m),
        ..ConfigEcho::default()
    };
    let plot_title = match experiment {
        Experiment::HeterogeneityAdjacent => "Entropy vs. previous digest",
        _ => "Minimum pairwise entropy",
    };
    finish_experiment(
        config,
        experiment,
        dir,
        host,
        &echo,
        Artifacts { rows, raw_files, plot, plot_title, warnings: Vec::new() },
    )
}

fn run_pow(config: &RunConfig, dir: &Path, host: &HostInfo) -> Result<ExperimentOutcome> {
    let runs: Vec<(HashAlgorithmId, hpek::pow::PowRun)> = config
        .algorithms
        .par_iter()
        .map(|&alg| {
            let pow_config = PowConfig::new(
                alg,
                config.k,
                config.trials,
                config.seed.as_bytes().to_vec(),
            );
            pow_distribution(&pow_config).map(|run| (alg, run))
        })
        .collect::<hpek::Result<_>>()
        .map_err(CliError::from)?;

    let mut rows = Vec::new();
    let mut raw_files = Vec::new();
    let mut plot = Vec::new();
    for (alg, run) in &runs {
        rows.push(SummaryRow::new(alg.name(), &run.summary));
        if config.formats.contains(&OutputFormat::Csv) {
            let path = report::algorithm_file(dir, alg.name(), "csv");
            report::write_pow_csv(&path, &run.samples)?;
            raw_files.push(path);
        }
        plot.push(BoxplotSeries {
            label: alg.name().to_string(),
            values: run.samples.iter().map(|s| s.nonce as f64).collect(),
        });
    }

    let echo = ConfigEcho {
        algorithms: algorithm_names(config),
        seed: config.seed.clone(),
        unit: "iterations",
        k: Some(config.k),
        trials: Some(config.trials),
        ..ConfigEcho::default()
    };
    finish_experiment(
        config,
        Experiment::Pow,
        dir,
        host,
        &echo,
        Artifacts {
            rows,
            raw_files,
            plot,
            plot_title: "Proof-of-work iterations",
            warnings: Vec::new(),
        },
    )
}

fn run_timing(config: &RunConfig, dir: &Path, host: &HostInfo) -> Result<ExperimentOutcome> {
    let message = vec![0xA5u8; config.message_bytes];
    let mut rows = Vec::new();
    let mut raw_files = Vec::new();
    let mut plot = Vec::new();
    let mut warnings = Vec::new();
    let mut resolution = None;

    for &alg in &config.algorithms {
        let batch =
            time_digest_batch(alg, &message, config.reps, 1_000).map_err(CliError::from)?;
        if resolution.is_none() {
            resolution = Some(batch.timer_resolution_ns);
        }
        if let Some(warning) = &batch.resolution_warning {
            let message = format!("{}: {warning}", alg.name());
            if !warnings.contains(&message) {
                warnings.push(message);
            }
        }
        let nanos: Vec<f64> = batch.samples.iter().map(|s| s.nanos as f64).collect();
        let summary = quartile_summary(&nanos).map_err(CliError::from)?;
        rows.push(SummaryRow::new(alg.name(), &summary));
        if config.formats.contains(&OutputFormat::Csv) {
            let path = report::algorithm_file(dir, alg.name(), "csv");
            report::write_timing_csv(&path, &batch.samples)?;
            raw_files.push(path);
        }
        plot.push(BoxplotSeries {
            label: alg.name().to_string(),
            values: nanos,
        });
    }

    let echo = ConfigEcho {
        algorithms: algorithm_names(config),
        seed: config.seed.clone(),
        unit: "nanoseconds",
        reps: Some(config.reps),
        message_bytes: Some(config.message_bytes),
        ..ConfigEcho::default()
    };
    let timing_host = host.with_timer_resolution(resolution.unwrap_or(0));
    finish_experiment(
        config,
        Experiment::Timing,
        dir,
        &timing_host,
        &echo,
        Artifacts {
            rows,
            raw_files,
            plot,
            plot_title: "Per-digest computation time (ns)",
            warnings,
        },
    )
}

const DEMO_BLOCKS: usize = 3;

fn run_chain_demo(config: &RunConfig, dir: &Path, host: &HostInfo) -> Result<ExperimentOutcome> {
    let mut rows = Vec::new();
    let mut raw_files = Vec::new();
    let mut plot = Vec::new();

    for &alg in &config.algorithms {
        let mut chain = Chain::new(alg, config.k).map_err(CliError::from)?;
        for i in 0..DEMO_BLOCKS {
            let transactions = vec![
                format!("{}/block-{i}/tx-0", config.seed).into_bytes(),
                format!("{}/block-{i}/tx-1", config.seed).into_bytes(),
            ];
            // Fixed epoch base keeps demo chains reproducible across runs.
            chain
                .mine_block(transactions, 1_700_000_000 + i as u64)
                .map_err(CliError::from)?;
        }
        let report = verify_chain(&chain);
        if !report.valid {
            return Err(CliError::Usage(format!(
                "freshly mined {} chain failed verification: {:?}",
                alg.name(),
                report
            )));
        }
        let nonces: Vec<f64> = chain.blocks.iter().map(|b| b.nonce as f64).collect();
        let summary = quartile_summary(&nonces).map_err(CliError::from)?;
        rows.push(SummaryRow::new(alg.name(), &summary));

        let path = report::algorithm_file(dir, alg.name(), "chain");
        let mut bytes = Vec::new();
        export_chain(&chain, &mut bytes).map_err(CliError::from)?;
        fs::write(&path, &bytes).map_err(|source| CliError::Io { path: path.clone(), source })?;
        raw_files.push(path);

        plot.push(BoxplotSeries {
            label: alg.name().to_string(),
            values: nonces,
        });
    }

    let echo = ConfigEcho {
        algorithms: algorithm_names(config),
        seed: config.seed.clone(),
        unit: "iterations",
        k: Some(config.k),
        blocks: Some(DEMO_BLOCKS),
        ..ConfigEcho::default()
    };
    finish_experiment(
        config,
        Experiment::ChainDemo,
        dir,
        host,
        &echo,
        Artifacts {
            rows,
            raw_files,
            plot,
            plot_title: "Block nonces",
            warnings: Vec::new(),
        },
    )
}
