//! Parse a TOML experiment, run its sweep on two engines and print the CSV
//! table, exactly as the `sweep` subcommand would.

use swipt_secrecy::experiment::run_sweep;
use swipt_secrecy::output::{write_rows, OutputFormat};

const EXPERIMENT: &str = r#"
[scenario]
family = "nakagami"
m_s = 2
m_e = 2
trials = 200000
seed = 7

[sweep]
parameter = "n_eves"
values = [1, 2, 4, 8, 16]
engines = ["quadrature", "montecarlo"]
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = swipt_secrecy::parse_config(EXPERIMENT)?;
    let sweep = config.sweep_config()?;
    let rows = run_sweep(&sweep)?;
    write_rows(&rows, OutputFormat::Csv, std::io::stdout().lock())?;
    Ok(())
}
