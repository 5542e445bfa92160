//! Secrecy capacity against main-link SNR for several estimation accuracies.
//! Any δ > 0 produces a ceiling; perfect estimation keeps growing.

use swipt_secrecy::config::{RunSettings, SweepConfig, SweepParameter};
use swipt_secrecy::experiment::run_sweep;
use swipt_secrecy::{Engine, Scenario};

fn main() {
    let values: Vec<f64> = (0..=12).map(|i| 5.0 * i as f64).collect();
    let mut table = Vec::new();
    for delta in [0.0, 0.1, 0.2, 0.4] {
        let mut scenario = Scenario::default_rician();
        scenario.main.delta = delta;
        let sweep = SweepConfig {
            scenario,
            parameter: SweepParameter::MainSnrDb,
            values: values.clone(),
            engines: vec![Engine::Quadrature],
            settings: RunSettings::default(),
        };
        let rows = run_sweep(&sweep).expect("valid sweep");
        table.push((delta, rows));
    }

    print!("{:>8}", "Ω_s dB");
    for (delta, _) in &table {
        print!(" {:>10}", format!("δ_s={delta}"));
    }
    println!();
    for (i, v) in values.iter().enumerate() {
        print!("{v:>8}");
        for (_, rows) in &table {
            print!(" {:>10.4}", rows[i].capacity_bits.unwrap_or(f64::NAN));
        }
        println!();
    }
}
