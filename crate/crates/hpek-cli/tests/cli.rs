//! End-to-end behavior of the experiment runner and its file outputs.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;

use hpek::stats::quartile_summary;
use hpek_cli::svg::{emit_boxplot, BoxplotSeries};
use hpek_cli::{
    parse_algorithm_spec, parse_format_spec, report, run, CliError, Experiment, OutputFormat,
    RunConfig,
};

fn small_config(out: &Path, experiments: &[Experiment]) -> RunConfig {
    RunConfig {
        experiments: BTreeSet::from_iter(experiments.iter().copied()),
        algorithms: parse_algorithm_spec("mainstream").unwrap(),
        m: 128,
        k: 4,
        trials: 48,
        reps: 16,
        message_bytes: 32,
        seed: "cli-test".to_string(),
        output_dir: out.to_path_buf(),
        formats: BTreeSet::from([OutputFormat::Csv, OutputFormat::Json, OutputFormat::Svg]),
        threads: 1,
    }
}

#[test]
fn algorithm_spec_parsing() {
    assert_eq!(parse_algorithm_spec("all").unwrap().len(), 12);
    let mainstream = parse_algorithm_spec("mainstream").unwrap();
    assert_eq!(
        mainstream.iter().map(|a| a.name()).collect::<Vec<_>>(),
        ["SHA-256", "SHA3-256", "BLAKE2-256"]
    );
    let listed = parse_algorithm_spec("sha-512, blake2-384").unwrap();
    assert_eq!(
        listed.iter().map(|a| a.name()).collect::<Vec<_>>(),
        ["SHA-512", "BLAKE2-384"]
    );

    let err = parse_algorithm_spec("SHA-256,MD5").unwrap_err();
    assert!(matches!(&err, CliError::Usage(msg) if msg.contains("MD5")));
    assert!(parse_algorithm_spec("SHA-256,,SHA-1").is_err());
}

#[test]
fn format_spec_parsing() {
    assert_eq!(parse_format_spec("csv,json,svg").unwrap().len(), 3);
    assert_eq!(
        parse_format_spec("json").unwrap(),
        BTreeSet::from([OutputFormat::Json])
    );
    assert!(parse_format_spec("csv,png").is_err());
}

#[test]
fn empty_experiment_selection_is_usage_error_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    let config = small_config(&out, &[]);
    let err = run(&config).unwrap_err();
    assert!(matches!(err, CliError::Usage(_)));
    assert_eq!(err.exit_code(), 1);
    assert!(!out.exists());
}

#[test]
fn empty_algorithm_selection_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = small_config(dir.path(), &[Experiment::Pow]);
    config.algorithms.clear();
    assert!(matches!(run(&config).unwrap_err(), CliError::Usage(_)));
}

#[test]
fn full_small_run_writes_coherent_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let config = small_config(
        dir.path(),
        &[
            Experiment::HeterogeneityAdjacent,
            Experiment::HeterogeneityMin,
            Experiment::Pow,
            Experiment::Timing,
            Experiment::ChainDemo,
        ],
    );
    let report = run(&config).unwrap();
    assert_eq!(report.outcomes.len(), 5);

    for outcome in &report.outcomes {
        assert_eq!(outcome.rows.len(), 3, "{:?}", outcome.experiment);
        let summary_path = outcome.summary_file.as_ref().unwrap();
        let json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(summary_path).unwrap()).unwrap();
        assert_eq!(json["experiment"], outcome.experiment.name());
        assert_eq!(json["rows"].as_array().unwrap().len(), 3);
        assert_eq!(json["config"]["seed"], "cli-test");
        assert!(json["host"]["cpu_model"].is_string());
        assert!(outcome.figure_file.as_ref().unwrap().exists());
        assert_eq!(outcome.raw_files.len(), 3);

        // Every summary row must be recomputable from its raw file.
        if outcome.experiment != Experiment::ChainDemo {
            for (row, raw) in outcome.rows.iter().zip(&outcome.raw_files) {
                let values = report::read_csv_values(raw).unwrap();
                let recomputed = quartile_summary(&values).unwrap();
                assert_eq!(recomputed.q1, row.q1, "{}", raw.display());
                assert_eq!(recomputed.median, row.median);
                assert_eq!(recomputed.q3, row.q3);
                assert_eq!(recomputed.n, row.n);
            }
        }
    }

    // Chain demo artifacts are verifiable chain files.
    let demo = report
        .outcomes
        .iter()
        .find(|o| o.experiment == Experiment::ChainDemo)
        .unwrap();
    for path in &demo.raw_files {
        let bytes = std::fs::read(path).unwrap();
        let chain = hpek::blockmodel::import_chain(&mut bytes.as_slice()).unwrap();
        assert_eq!(chain.blocks.len(), 3);
        assert_eq!(chain.k, 4);
    }

    // Timing CSVs have one row per rep.
    let timing = report
        .outcomes
        .iter()
        .find(|o| o.experiment == Experiment::Timing)
        .unwrap();
    let values = report::read_csv_values(&timing.raw_files[0]).unwrap();
    assert_eq!(values.len(), 16);
}

#[test]
fn json_only_run_skips_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = small_config(dir.path(), &[Experiment::Pow]);
    config.formats = BTreeSet::from([OutputFormat::Json]);
    let report = run(&config).unwrap();
    let outcome = &report.outcomes[0];
    assert!(outcome.summary_file.is_some());
    assert!(outcome.figure_file.is_none());
    assert!(outcome.raw_files.is_empty());
    let entries: Vec<_> = std::fs::read_dir(dir.path().join("pow"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert_eq!(entries, ["summary.json"]);
}

#[test]
fn unwritable_output_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, b"not a directory").unwrap();
    let config = small_config(&blocker.join("sub"), &[Experiment::Pow]);
    let err = run(&config).unwrap_err();
    assert!(matches!(err, CliError::Io { .. }));
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn boxplot_svg_is_well_formed_xml_with_one_box_per_series() {
    let dir = tempfile::tempdir().unwrap();
    let series: Vec<BoxplotSeries> = (0..12)
        .map(|i| BoxplotSeries {
            label: format!("ALG-{i}"),
            values: (0..50).map(|v| f64::from(v + i)).collect(),
        })
        .collect();
    let path = dir.path().join("plot.svg");
    emit_boxplot(&series, "twelve & <boxes>", &path).unwrap();

    let text = std::fs::read_to_string(&path).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let boxes = doc
        .descendants()
        .filter(|n| n.has_tag_name("rect") && n.attribute("fill") == Some("#9ecae1"))
        .count();
    assert_eq!(boxes, 12);
    assert!(text.contains("twelve &amp; &lt;boxes&gt;"));
}

#[test]
fn degenerate_boxplot_renders() {
    let dir = tempfile::tempdir().unwrap();
    let series = vec![BoxplotSeries {
        label: "CONST".into(),
        values: vec![5.0; 20],
    }];
    let path = dir.path().join("flat.svg");
    emit_boxplot(&series, "flat", &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    roxmltree::Document::parse(&text).unwrap();

    let empty: Vec<BoxplotSeries> = Vec::new();
    assert!(emit_boxplot(&empty, "none", &dir.path().join("x.svg")).is_err());
}

#[test]
fn seeded_runs_are_byte_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let experiments = [
        Experiment::HeterogeneityAdjacent,
        Experiment::HeterogeneityMin,
        Experiment::Pow,
    ];
    let mut first = small_config(&dir.path().join("a"), &experiments);
    first.m = 512;
    first.trials = 256;
    first.threads = 1;
    let mut second = first.clone();
    second.output_dir = dir.path().join("b");
    second.threads = 4;

    run(&first).unwrap();
    run(&second).unwrap();

    for experiment in &experiments {
        let sub = experiment.name();
        let mut names: Vec<String> = std::fs::read_dir(dir.path().join("a").join(sub))
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        names.sort();
        assert!(!names.is_empty());
        for name in names {
            let a = std::fs::read(dir.path().join("a").join(sub).join(&name)).unwrap();
            let b = std::fs::read(dir.path().join("b").join(sub).join(&name)).unwrap();
            assert_eq!(a, b, "{sub}/{name} differs between worker counts");
        }
    }
}

#[test]
fn binary_exit_codes_and_usage_messages() {
    let bin = env!("CARGO_BIN_EXE_hpek");

    let out = Command::new(bin)
        .args(["pow", "--alg", "NOT-AN-ALG", "--out"])
        .arg(tempfile::tempdir().unwrap().path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NOT-AN-ALG"));

    let out = Command::new(bin).args(["--help"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let help = String::from_utf8_lossy(&out.stdout);
    for sub in ["heterogeneity", "min-entropy", "pow", "bench", "chain-demo", "all"] {
        assert!(help.contains(sub), "help is missing subcommand {sub}");
    }

    let out = Command::new(bin).args(["nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, b"x").unwrap();
    let out = Command::new(bin)
        .args(["pow", "--alg", "SHA-256", "--trials", "4", "--k", "2", "--out"])
        .arg(blocker.join("sub"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(bin)
        .env("HPEK_THREADS", "banana")
        .args(["pow", "--alg", "SHA-256", "--trials", "4", "--k", "2", "--out"])
        .arg(tempfile::tempdir().unwrap().path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("HPEK_THREADS"));
}
