use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::fading::{max_of_n_cdf, SnrLaw};
use crate::linkmodel::{eve_snr_law, ReceiverArchitecture, Scenario};
use crate::quad::{integrate_semi_infinite, QuadOptions};

use super::{Engine, SecrecyEstimate};

pub(super) fn require_separated_main(scenario: &Scenario) -> Result<()> {
    if scenario.main_arch != ReceiverArchitecture::Separated {
        return Err(Error::unsupported(
            "main_integrated",
            "capacity kernels are defined for a separated legitimate receiver only",
        ));
    }
    Ok(())
}

/// Integrand of the secrecy integral at `v`, without the `1/ln 2` factor:
/// `F_e(v)^N · [1 − F_s(v)] · k(v)`.
pub fn secrecy_integrand(scenario: &Scenario, main: &SnrLaw, eve: &SnrLaw, v: f64) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    let survival = main.sf(v);
    if survival == 0.0 {
        return 0.0;
    }
    let eve_cdf = max_of_n_cdf(eve, scenario.n_eves, v);
    if eve_cdf == 0.0 {
        return 0.0;
    }
    let kernel = match scenario.eve_arch {
        ReceiverArchitecture::Separated => 1.0 / (1.0 + v),
        ReceiverArchitecture::Integrated => 1.0 / (scenario.integrated_const * v),
    };
    eve_cdf * survival * kernel
}

/// Reference engine with the default tolerance (relative `1e−7`).
pub fn secrecy_quadrature(scenario: &Scenario) -> Result<SecrecyEstimate> {
    secrecy_quadrature_with(scenario, &QuadOptions::default())
}

pub fn secrecy_quadrature_with(scenario: &Scenario, opts: &QuadOptions) -> Result<SecrecyEstimate> {
    scenario.validate()?;
    require_separated_main(scenario)?;
    let main = scenario.main_snr_law()?;
    let eve = eve_snr_law(scenario)?;

    if main.is_degenerate() {
        return Ok(SecrecyEstimate::new(Engine::Quadrature, 0.0, 0.0).note("degenerate", "main_snr_zero"));
    }
    if eve.is_degenerate() && scenario.eve_arch == ReceiverArchitecture::Integrated {
        return Err(Error::DegenerateBudget(
            "integrated eavesdropper with zero SNR makes the 1/(C·v) kernel non-integrable at 0".into(),
        ));
    }

    // Scale changes: kernel knee at 1, eavesdropper CDF rise, main-link tail.
    let breakpoints = [1.0, eve.mean(), main.mean(), 8.0 * main.mean()];
    let r = integrate_semi_infinite(|v| secrecy_integrand(scenario, &main, &eve, v), &breakpoints, opts);

    let mut est = SecrecyEstimate::new(Engine::Quadrature, r.value / LN_2, r.abs_error / LN_2)
        .note("panels", r.intervals)
        .note("evaluations", r.evaluations)
        .note("rel_tol", opts.rel_tol);
    if !r.converged {
        est = est.flagged(
            "not_converged",
            format!("achieved error {:e} after {} panels", r.abs_error / LN_2, r.intervals),
        );
    }
    Ok(est)
}
