use std::f64::consts::LN_2;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fading::PowerSampler;
use crate::linkmodel::{ReceiverArchitecture, Scenario};

use super::quadrature::require_separated_main;
use super::{Engine, SecrecyEstimate};

/// Trials per independently seeded chunk. Chunk `i` draws from the ChaCha8
/// stream `i` under the caller's seed, so the estimate does not depend on how
/// chunks are scheduled across threads.
pub const MC_CHUNK_TRIALS: usize = 1 << 14;

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let d = x - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if other.n == 0.0 {
            return self;
        }
        if self.n == 0.0 {
            return other;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * other.n / n,
            m2: self.m2 + other.m2 + d * d * self.n * other.n / n,
        }
    }
}

/// Monte Carlo estimate from `trials` joint channel draws.
///
/// Each trial draws `|h_s|²` and `n_eves` eavesdropper powers, keeps the
/// strongest eavesdropper, and averages the clipped rate gap:
/// `[log₂(1+γ_s) − log₂(1+γ_e)]⁺` for a separated eavesdropper and
/// `[log₂ γ_s − log₂ γ_e]⁺ / C` for an integrated one (the pathwise form of
/// the `1/(C·v)` kernel). The result is bit-identical for fixed
/// `(trials, seed)` regardless of the thread count.
pub fn secrecy_montecarlo(scenario: &Scenario, trials: usize, seed: u64) -> Result<SecrecyEstimate> {
    scenario.validate()?;
    require_separated_main(scenario)?;
    if trials < 1000 {
        return Err(Error::invalid("trials", format!("need at least 1000, got {trials}")));
    }
    let a_s = scenario.main_coefficient()?;
    let a_e = scenario.eve_coefficient()?;
    let integrated = scenario.eve_arch == ReceiverArchitecture::Integrated;
    if integrated && a_e == 0.0 && a_s > 0.0 {
        return Err(Error::DegenerateBudget(
            "integrated eavesdropper with zero SNR gives an unbounded rate gap".into(),
        ));
    }
    let main_sampler = PowerSampler::new(&scenario.main_fading)?;
    let eve_sampler = PowerSampler::new(&scenario.eve_fading)?;
    let n_eves = scenario.n_eves;
    let inv_c = 1.0 / scenario.integrated_const;

    let chunks = trials.div_ceil(MC_CHUNK_TRIALS);
    let per_chunk: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64);
            let count = MC_CHUNK_TRIALS.min(trials - chunk * MC_CHUNK_TRIALS);
            let mut m = Moments::default();
            for _ in 0..count {
                let gamma_s = a_s * main_sampler.draw(&mut rng);
                let mut h_e: f64 = 0.0;
                for _ in 0..n_eves {
                    h_e = h_e.max(eve_sampler.draw(&mut rng));
                }
                let gamma_e = a_e * h_e;
                let gap = if integrated {
                    if gamma_s > gamma_e {
                        (gamma_s / gamma_e).ln() * inv_c
                    } else {
                        0.0
                    }
                } else {
                    gamma_s.ln_1p() - gamma_e.ln_1p()
                };
                m.push(gap.max(0.0) / LN_2);
            }
            m
        })
        .collect();

    let total = per_chunk.into_iter().fold(Moments::default(), Moments::merge);
    let variance = if total.n > 1.0 { total.m2 / (total.n - 1.0) } else { 0.0 };
    let std_error = (variance / total.n).sqrt();
    Ok(SecrecyEstimate::new(Engine::MonteCarlo, total.mean, std_error)
        .note("trials", trials)
        .note("seed", seed)
        .note("chunks", chunks))
}
