//! Secrecy-energy tradeoff traced by the power-splitting ratio, for perfect
//! and imperfect channel estimates.

use swipt_secrecy::config::{RegionConfig, RunSettings};
use swipt_secrecy::experiment::run_region;
use swipt_secrecy::{Engine, Scenario};

fn main() {
    let grid = RegionConfig::uniform_rho_grid(20);
    let curves: Vec<_> = [0.0, 0.1, 0.2]
        .iter()
        .map(|&delta| {
            let mut scenario = Scenario::default_nakagami();
            scenario.main.delta = delta;
            scenario.eve.delta = delta;
            let cfg = RegionConfig {
                scenario,
                rho_grid: grid.clone(),
                zeta: scenario.zeta,
                engine: Engine::Quadrature,
                settings: RunSettings::default(),
            };
            (delta, run_region(&cfg).expect("valid region"))
        })
        .collect();

    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "ρ", "energy", "δ=0", "δ=0.1", "δ=0.2");
    for i in 0..grid.len() {
        print!("{:>6.3} {:>10.2}", grid[i], curves[0].1[i].energy_linear);
        for (_, pts) in &curves {
            print!(" {:>10.4}", pts[i].capacity_bits.unwrap_or(f64::NAN));
        }
        println!();
    }
}
