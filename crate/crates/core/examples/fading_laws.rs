//! SNR distributions under Rician and Nakagami-m fading, the best-of-N law
//! of the eavesdroppers, and a quick sampling check.

use swipt_secrecy::fading::{max_of_n_cdf, sample_channel_power};
use swipt_secrecy::{FadingSpec, SnrLaw};

fn main() -> swipt_secrecy::Result<()> {
    let mean_snr = 10.0;
    let laws = [
        ("Rayleigh", SnrLaw::from_coefficient(FadingSpec::rician(0.0), mean_snr)?),
        ("Rician K=5", SnrLaw::from_coefficient(FadingSpec::rician(5.0), mean_snr)?),
        ("Nakagami m=2", SnrLaw::from_coefficient(FadingSpec::nakagami(2.0), mean_snr)?),
    ];

    println!("{:>6} {:>14} {:>14} {:>14}", "γ", laws[0].0, laws[1].0, laws[2].0);
    for g in [1.0, 5.0, 10.0, 20.0, 40.0] {
        let row: Vec<String> = laws.iter().map(|(_, l)| format!("{:14.6}", l.cdf(g))).collect();
        println!("{g:>6} {}", row.join(" "));
    }

    let (_, nak) = laws[2];
    println!("\nP(best of N eavesdroppers < 10):");
    for n in [1, 2, 5, 10] {
        println!("  N = {n:2}: {:.4}", max_of_n_cdf(&nak, n, 10.0));
    }

    let draws = sample_channel_power(&FadingSpec::rician(5.0), 200_000, 1)?;
    let below = draws.iter().filter(|&&h| mean_snr * h < 5.0).count() as f64 / draws.len() as f64;
    println!("\nRician K=5: sampled P(γ < 5) = {below:.4}, law gives {:.4}", laws[1].1.cdf(5.0));
    Ok(())
}
