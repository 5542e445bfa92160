//! Closed-form and semi-closed-form capacity expressions, evaluated term by
//! term exactly as written.
//!
//! Known properties of these forms, which the validation report makes
//! visible instead of hiding:
//!
//! * The Rician forms contain `B(μ/2, −μ/2)`, which sits on a pole of
//!   `Γ(p+q)`. [`BetaInterpretation::ComplementPair`] substitutes
//!   `B(μ/2, 1 − μ/2)`, the value the `1/(1+v)` Mellin integral produces.
//! * Their binomial sums `Σ_z C(N,z)(−1)^z` and `Σ_z z·C(N,z)(−1)^z` vanish for
//!   `N ≥ 2`, so the Rician forms are identically zero there.
//! * In the Nakagami forms the `(a!)^z` factor turns the `z` sum into
//!   `(1 − 1/a!)^N`, which is zero for `a ∈ {0, 1}`; with `m_e ≤ 2` every term
//!   vanishes.
//!
//! Alternating sums that cancel to within rounding are reported as exactly 0,
//! with the cancellation scale recorded in `meta`.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fading::FadingFamily;
use crate::linkmodel::{eve_snr_law, ReceiverArchitecture, Scenario};
use crate::quad::{integrate_semi_infinite, QuadOptions};
use crate::specfun::{beta_fn, binomial, factorial, gamma_fn, marcum_fit_cached, MarcumFit};

use super::quadrature::require_separated_main;
use super::{Engine, SecrecyEstimate};

/// How to read the `B(μ/2, −μ/2)` factor of the Rician forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BetaInterpretation {
    /// `B(μ/2, −μ/2)`: a pole, reported as a flagged non-finite value.
    AsPrinted,
    /// `B(μ/2, 1 − μ/2) = π / sin(πμ/2)`.
    #[default]
    ComplementPair,
}

impl BetaInterpretation {
    pub fn name(&self) -> &'static str {
        match self {
            BetaInterpretation::AsPrinted => "as_printed",
            BetaInterpretation::ComplementPair => "complement_pair",
        }
    }

    fn beta(&self, mu: f64) -> Result<f64> {
        match self {
            BetaInterpretation::AsPrinted => beta_fn(0.5 * mu, -0.5 * mu),
            BetaInterpretation::ComplementPair => beta_fn(0.5 * mu, 1.0 - 0.5 * mu),
        }
    }
}

/// Treatment of the integrated-eavesdropper Nakagami closed form, whose
/// printed denominator still carries the integration variable `γ_e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum NakagamiIntegratedVariant {
    /// Drop the `γ_e` factors from the bracket.
    #[default]
    Corrected,
    /// Keep them, evaluated at the given `γ_e`.
    AsPrinted { gamma_e: f64 },
}

/// Scalars entering the Rician closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicianClosedFormInputs {
    /// Number of eavesdroppers; 0 is accepted as the single-term formal edge.
    pub n: u32,
    pub k_s: f64,
    pub k_e: f64,
    /// `(K+1)/γ̄` of each link.
    pub rate_s: f64,
    pub rate_e: f64,
    /// `Some(C)` for an integrated eavesdropper.
    pub integrated_const: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RicianClosedFormTerms {
    pub main_fit: MarcumFit,
    pub eve_fit: MarcumFit,
    pub beta_main: Result<f64>,
    pub beta_eve: Result<f64>,
    /// `e^{ν} · (2·rate)^{μ/2}` per link.
    pub main_scale: f64,
    pub eve_scale: f64,
    /// `Σ_z C(N,z)(−1)^z B_e (1 − z·eve_scale)`.
    pub eve_sum: f64,
    /// `Σ_z C(N,z)(−1)^z B_s · main_scale`.
    pub main_sum: f64,
    /// Sum of absolute values of all terms, the rounding scale of `value`.
    pub magnitude: f64,
    /// Capacity in bits/s/Hz before flagging; NaN when a beta factor is a pole.
    pub value: f64,
}

/// Term-level evaluation of the Rician closed forms.
pub fn rician_closed_form_terms(inputs: &RicianClosedFormInputs, beta: BetaInterpretation) -> Result<RicianClosedFormTerms> {
    let main_fit = marcum_fit_cached((2.0 * inputs.k_s).sqrt())?;
    let eve_fit = marcum_fit_cached((2.0 * inputs.k_e).sqrt())?;
    let beta_main = beta.beta(main_fit.mu);
    let beta_eve = beta.beta(eve_fit.mu);
    let main_scale = main_fit.scale() * (2.0 * inputs.rate_s).powf(0.5 * main_fit.mu);
    let eve_scale = eve_fit.scale() * (2.0 * inputs.rate_e).powf(0.5 * eve_fit.mu);

    let b_e = *beta_eve.as_ref().unwrap_or(&f64::NAN);
    let b_s = *beta_main.as_ref().unwrap_or(&f64::NAN);
    let (mut eve_sum, mut main_sum, mut magnitude) = (0.0, 0.0, 0.0);
    for z in 0..=inputs.n {
        let weight = binomial(inputs.n, z) * if z % 2 == 0 { 1.0 } else { -1.0 };
        let eve_term = weight * b_e * (1.0 - z as f64 * eve_scale);
        let main_term = weight * b_s * main_scale;
        eve_sum += eve_term;
        main_sum += main_term;
        magnitude += eve_term.abs() + main_term.abs();
    }
    let divisor = inputs.integrated_const.unwrap_or(1.0) * LN_2;
    Ok(RicianClosedFormTerms {
        main_fit,
        eve_fit,
        beta_main,
        beta_eve,
        main_scale,
        eve_scale,
        eve_sum,
        main_sum,
        magnitude: magnitude / divisor,
        value: (eve_sum - main_sum) / divisor,
    })
}

fn family_mismatch(expected: &str) -> Error {
    Error::unsupported(
        "family_mismatch",
        format!("closed form requires {expected} fading on both links"),
    )
}

/// Snap alternating-sum results that cancel to within rounding to exactly 0.
fn settle(value: f64, magnitude: f64) -> f64 {
    if value.is_finite() && value.abs() <= 64.0 * f64::EPSILON * magnitude {
        0.0
    } else {
        value
    }
}

fn finish(mut est: SecrecyEstimate, magnitude: f64) -> SecrecyEstimate {
    est = est.note("cancellation_scale", format!("{magnitude:e}"));
    if !est.value.is_finite() {
        let detail = format!("closed form evaluated to {}", est.value);
        est.flagged("non_finite", detail)
    } else if est.value < 0.0 {
        let detail = format!("closed form evaluated to {} bits/s/Hz", est.value);
        est.flagged("negative_value", detail)
    } else {
        est
    }
}

/// Rician closed form: separated eavesdropper uses the `1/(1+v)` form,
/// integrated the `1/(C·v)` form (the same sums divided by `C`).
///
/// A pole in the beta factor yields a flagged NaN estimate rather than an error.
pub fn secrecy_closedform_rician(scenario: &Scenario, beta: BetaInterpretation) -> Result<SecrecyEstimate> {
    scenario.validate()?;
    require_separated_main(scenario)?;
    let (k_s, k_e) = match (scenario.main_fading.family, scenario.eve_fading.family) {
        (FadingFamily::Rician { k_factor: ks }, FadingFamily::Rician { k_factor: ke }) => (ks, ke),
        _ => return Err(family_mismatch("Rician")),
    };
    let main = scenario.main_snr_law()?;
    let eve = eve_snr_law(scenario)?;
    let inputs = RicianClosedFormInputs {
        n: scenario.n_eves,
        k_s,
        k_e,
        rate_s: main.rate_scale,
        rate_e: eve.rate_scale,
        integrated_const: (scenario.eve_arch == ReceiverArchitecture::Integrated).then_some(scenario.integrated_const),
    };
    let terms = rician_closed_form_terms(&inputs, beta)?;
    let value = settle(terms.value, terms.magnitude);
    let mut est = SecrecyEstimate::new(Engine::ClosedForm, value, 0.0)
        .note("form", "rician")
        .note("beta_interpretation", beta.name())
        .note("mu_main", terms.main_fit.mu)
        .note("nu_main", terms.main_fit.nu)
        .note("fit_max_abs_error_main", terms.main_fit.max_abs_error)
        .note("mu_eve", terms.eve_fit.mu)
        .note("nu_eve", terms.eve_fit.nu)
        .note("fit_max_abs_error_eve", terms.eve_fit.max_abs_error);
    if let Err(e) = terms.beta_eve.as_ref().and(terms.beta_main.as_ref()) {
        est.value = f64::NAN;
        return Ok(est.flagged("non_finite", format!("beta factor: {e}")));
    }
    Ok(finish(est, terms.magnitude))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NakagamiClosedFormTerms {
    /// Remaining 1-D integral per index `a` (separated eavesdropper only).
    pub integrals: Vec<f64>,
    pub integral_error: f64,
    pub magnitude: f64,
    pub value: f64,
}

/// Term-level evaluation of the Nakagami forms.
///
/// `eve_unit_rate = 1/γ̄_e` and `main_rate = m_s/γ̄_s` are the groupings that
/// appear in the printed exponents.
#[allow(clippy::too_many_arguments)]
pub fn nakagami_closed_form_terms(
    n: u32,
    m_s: u32,
    m_e: u32,
    main_rate: f64,
    eve_unit_rate: f64,
    eve_arch: ReceiverArchitecture,
    integrated_const: f64,
    variant: NakagamiIntegratedVariant,
) -> Result<NakagamiClosedFormTerms> {
    let gamma_s = gamma_fn(m_s as f64)?;
    let gamma_e = gamma_fn(m_e as f64)?;
    let lead = factorial(m_e - 1) * factorial(m_s - 1) / (gamma_s * gamma_e);

    let mut integrals = Vec::with_capacity(m_e as usize);
    let mut integral_error = 0.0;
    if eve_arch == ReceiverArchitecture::Separated {
        let opts = QuadOptions {
            rel_tol: 1e-10,
            ..QuadOptions::default()
        };
        for a in 0..m_e {
            let decay = a as f64 * eve_unit_rate + main_rate;
            let r = integrate_semi_infinite(
                |g| g * g / (1.0 + g) * (-decay * g).exp(),
                &[1.0, 1.0 / decay],
                &opts,
            );
            let scale = eve_unit_rate * main_rate;
            integrals.push(scale * r.value);
            integral_error += scale * r.abs_error;
        }
    }

    let (mut value, mut magnitude) = (0.0, 0.0);
    for z in 0..=n {
        let weight = binomial(n, z) * if z % 2 == 0 { 1.0 } else { -1.0 } * lead;
        for a in 0..m_e {
            let a_pow = factorial(a).powi(z as i32);
            for b in 0..m_s {
                let coef = weight / (a_pow * factorial(b));
                let term = match eve_arch {
                    ReceiverArchitecture::Separated => coef * integrals[a as usize],
                    ReceiverArchitecture::Integrated => {
                        let bracket = a as f64 * eve_unit_rate - main_rate;
                        let bracket = match variant {
                            NakagamiIntegratedVariant::Corrected => bracket,
                            NakagamiIntegratedVariant::AsPrinted { gamma_e } => bracket * gamma_e,
                        };
                        coef / (bracket * integrated_const)
                    }
                };
                value += term;
                magnitude += term.abs();
            }
        }
    }
    Ok(NakagamiClosedFormTerms {
        integrals,
        integral_error: integral_error / LN_2,
        magnitude: magnitude / LN_2,
        value: value / LN_2,
    })
}

fn integer_shape(m: f64) -> Result<u32> {
    if m.fract() == 0.0 && (1.0..=170.0).contains(&m) {
        Ok(m as u32)
    } else {
        Err(Error::unsupported(
            "non_integer_shape",
            format!("closed form needs integer m, got {m}; use the quadrature engine"),
        ))
    }
}

/// Nakagami forms: semi-closed with one residual integral for a separated
/// eavesdropper, fully closed for an integrated one.
pub fn secrecy_closedform_nakagami(scenario: &Scenario, variant: NakagamiIntegratedVariant) -> Result<SecrecyEstimate> {
    scenario.validate()?;
    require_separated_main(scenario)?;
    let (m_s, m_e) = match (scenario.main_fading.family, scenario.eve_fading.family) {
        (FadingFamily::NakagamiM { m_shape: ms }, FadingFamily::NakagamiM { m_shape: me }) => {
            (integer_shape(ms)?, integer_shape(me)?)
        }
        _ => return Err(family_mismatch("Nakagami-m")),
    };
    let main = scenario.main_snr_law()?;
    let eve = eve_snr_law(scenario)?;
    let mut est = SecrecyEstimate::new(Engine::ClosedForm, f64::NAN, 0.0).note("form", "nakagami");
    if scenario.eve_arch == ReceiverArchitecture::Integrated {
        let name = match variant {
            NakagamiIntegratedVariant::Corrected => "corrected".to_owned(),
            NakagamiIntegratedVariant::AsPrinted { gamma_e } => format!("as_printed(gamma_e={gamma_e})"),
        };
        est = est.note("variant", name);
    }
    if main.is_degenerate() || eve.is_degenerate() {
        return Ok(est.flagged("non_finite", "zero SNR coefficient makes the rate groupings infinite"));
    }
    let eve_unit_rate = 1.0 / eve.mean() * eve.fading.mean_power;
    let terms = nakagami_closed_form_terms(
        scenario.n_eves,
        m_s,
        m_e,
        main.rate_scale,
        eve_unit_rate,
        scenario.eve_arch,
        scenario.integrated_const,
        variant,
    )?;
    est.value = settle(terms.value, terms.magnitude);
    est.uncertainty = terms.integral_error;
    Ok(finish(est, terms.magnitude))
}
