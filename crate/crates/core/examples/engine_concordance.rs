//! The three capacity engines side by side on the reference scenarios.

use swipt_secrecy::config::RunSettings;
use swipt_secrecy::experiment::run_validate;
use swipt_secrecy::{ReceiverArchitecture, Scenario};

fn main() {
    let settings = RunSettings {
        trials: 400_000,
        ..RunSettings::default()
    };
    let scenarios = [
        ("Rician, separated eavesdroppers", Scenario::default_rician()),
        (
            "Rician, integrated eavesdroppers",
            Scenario::default_rician().with_eve_arch(ReceiverArchitecture::Integrated),
        ),
        ("Nakagami, separated eavesdroppers", Scenario::default_nakagami()),
        (
            "Nakagami, integrated eavesdroppers",
            Scenario::default_nakagami().with_eve_arch(ReceiverArchitecture::Integrated),
        ),
    ];
    for (name, scenario) in scenarios {
        let report = run_validate(&scenario, &settings);
        println!("{name}");
        for e in &report.engines {
            let value = e.capacity_bits.map_or("-".to_owned(), |v| format!("{v:.6}"));
            let unc = e.uncertainty.map_or("-".to_owned(), |v| format!("{v:.1e}"));
            println!("  {:<12} {value:>10} ± {unc:<8} {} {}", e.engine.name(), e.status.name(), e.reason);
        }
        println!(
            "  quadrature vs Monte Carlo: Δ = {:.2e}, allowance {:.2e}, {}\n",
            report.concordance.abs_delta.unwrap_or(f64::NAN),
            report.concordance.allowance.unwrap_or(f64::NAN),
            if report.passed() { "agree" } else { "DISAGREE" }
        );
    }
}
