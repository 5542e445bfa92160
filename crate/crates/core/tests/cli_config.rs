use std::path::Path;
use std::process::{Command, Output};

use swipt_secrecy::config::{parse_config, ConfigError, RegionConfig, RunSettings, SweepConfig, SweepParameter};
use swipt_secrecy::experiment::{run_region, run_sweep, RowStatus};
use swipt_secrecy::output::{read_rows_csv, read_rows_json};
use swipt_secrecy::{Engine, Scenario};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swipt-secrecy"))
        .args(args)
        .output()
        .expect("spawn cli")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn config_errors_exit_1_and_name_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.toml", "[scenario]\nrho_s = 1.5\n");
    let out = cli(&["eval", "--config", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("scenario.rho_s"));

    let out = cli(&["sweep"]);
    assert_eq!(out.status.code(), Some(1), "no [sweep] block");
    let out = cli(&["eval", "--config", "/nonexistent/x.toml"]);
    assert_eq!(out.status.code(), Some(1));
    let out = cli(&["eval", "--output", "xml"]);
    assert_eq!(out.status.code(), Some(1));
    let out = cli(&["eval", "--engine", "magic"]);
    assert_eq!(out.status.code(), Some(1));
    let out = cli(&["eval", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(cli(&["--help"]).status.code(), Some(0));
}

#[test]
fn eval_json_round_trips() {
    let out = cli(&["eval", "--engine", "quadrature,closed_form", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = read_rows_json(&out.stdout[..]).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0].engine, Engine::Quadrature);
    assert!(rows[0].capacity_bits.unwrap() > 1.0);
    assert_eq!(rows[1].engine, Engine::ClosedForm);
}

#[test]
fn sweep_writes_csv_file_in_config_order() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.toml",
        "[scenario]\nfamily = \"rician\"\n[sweep]\nparameter = \"main_snr_db\"\n\
         values = [50, 40, 30, 20, 10]\nengines = [\"quadrature\", \"closed_form\"]\n",
    );
    let out_path = dir.path().join("out.csv");
    let out = cli(&["sweep", "--config", &cfg, "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = read_rows_csv(std::fs::File::open(&out_path).unwrap()).unwrap();
    let values: Vec<f64> = rows.iter().step_by(2).map(|r| r.sweep_value.unwrap()).collect();
    assert_eq!(values, [50.0, 40.0, 30.0, 20.0, 10.0]);
    let caps: Vec<f64> = rows
        .iter()
        .filter(|r| r.engine == Engine::Quadrature)
        .map(|r| r.capacity_bits.unwrap())
        .collect();
    assert!(caps.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn validate_exit_codes() {
    let out = cli(&["validate", "--trials", "20000"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("engine,capacity_bits,uncertainty,status,reason"));
    assert!(text.contains("concordance"));
    let out = cli(&["validate", "--output", "json", "--trials", "20000", "--seed", "4"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["concordance"]["passed"], true);
}

#[test]
fn region_cli_defaults_to_twenty_points() {
    let out = cli(&["region"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 21);
    assert!(text.starts_with("rho,energy_linear,capacity_bits,uncertainty,status,reason"));
}

#[test]
fn empty_document_gives_defaults() {
    let cfg = parse_config("").unwrap();
    assert_eq!(cfg.scenario, Scenario::default_nakagami());
    assert_eq!(cfg.settings, RunSettings::default());
    assert!(matches!(parse_config("[scenario]\nn_eves = 0").unwrap_err(), ConfigError::OutOfRange { .. }));
    assert!(matches!(parse_config("[scenario\n").unwrap_err(), ConfigError::Syntax(_)));
    assert!(matches!(
        parse_config("[scenario]\nrho_s = \"high\"").unwrap_err(),
        ConfigError::WrongType { .. }
    ));
}

#[test]
fn eavesdropper_sweep_is_non_increasing() {
    let cfg = SweepConfig {
        scenario: Scenario::default_nakagami(),
        parameter: SweepParameter::NEves,
        values: (1..=10).map(f64::from).collect(),
        engines: vec![Engine::Quadrature],
        settings: RunSettings::default(),
    };
    let rows = run_sweep(&cfg).unwrap();
    let caps: Vec<f64> = rows.iter().map(|r| r.capacity_bits.unwrap()).collect();
    assert!(caps.windows(2).all(|w| w[1] < w[0]), "{caps:?}");
    let empty = SweepConfig { engines: vec![], ..cfg };
    assert!(run_sweep(&empty).is_err());
}

#[test]
fn region_endpoints() {
    for base in [Scenario::default_rician(), Scenario::default_nakagami()] {
        let cfg = RegionConfig {
            scenario: base,
            rho_grid: vec![1e-7, 0.05, 0.5, 1.0 - 1e-7],
            zeta: 0.9,
            engine: Engine::Quadrature,
            settings: RunSettings::default(),
        };
        let pts = run_region(&cfg).unwrap();
        assert!(pts.iter().all(|p| p.status == RowStatus::Ok));
        let cap = |i: usize| pts[i].capacity_bits.unwrap();
        // ρ → 0⁺: nothing reaches the decoder, everything the harvester
        assert!(cap(0) < 1e-3);
        assert!((pts[0].energy_linear - 900.0).abs() < 1e-3);
        // ρ → 1⁻: nothing reaches the harvester
        assert!(pts[3].energy_linear < 1e-3);
        // the capacity peak is interior: the eavesdropper loses SNR faster than the main link
        assert!(cap(1) > cap(3));
    }
}

mod round_trip {
    use proptest::prelude::*;
    use swipt_secrecy::experiment::{ResultRow, RowStatus};
    use swipt_secrecy::output::{read_rows_csv, read_rows_json, write_rows, OutputFormat};
    use swipt_secrecy::Engine;

    fn row() -> impl Strategy<Value = ResultRow> {
        (
            prop::option::of(prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO),
            prop::option::of(prop::num::f64::POSITIVE),
            prop::option::of(prop::num::f64::POSITIVE),
            0usize..3,
            0usize..3,
            "[a-z_]{0,12}",
        )
            .prop_map(|(value, cap, unc, e, st, reason)| ResultRow {
                sweep_param: "delta_s".into(),
                sweep_value: value,
                engine: Engine::ALL[e],
                capacity_bits: cap,
                uncertainty: unc,
                status: [RowStatus::Ok, RowStatus::Flagged, RowStatus::Skipped][st],
                reason,
            })
    }

    proptest! {
        #[test]
        fn tables_round_trip_exactly(rows in prop::collection::vec(row(), 1..8)) {
            let mut json = Vec::new();
            write_rows(&rows, OutputFormat::Json, &mut json).unwrap();
            prop_assert_eq!(&read_rows_json(&json[..]).unwrap(), &rows);
            let mut csv = Vec::new();
            write_rows(&rows, OutputFormat::Csv, &mut csv).unwrap();
            prop_assert_eq!(&read_rows_csv(&csv[..]).unwrap(), &rows);
        }
    }
}
