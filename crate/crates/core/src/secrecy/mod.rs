//! Ergodic secrecy capacity `E{[C_s − C_e]⁺}` by three independent routes:
//!
//! * [`secrecy_quadrature`]: the single integral
//!   `(1/ln 2) ∫₀^∞ F_e(v)^N · [1 − F_s(v)] · k(v) dv` with kernel
//!   `k(v) = 1/(1+v)` for a separated eavesdropper and `1/(C·v)` for an
//!   integrated one. This is the reference engine.
//! * [`secrecy_montecarlo`]: direct averaging over channel draws.
//! * [`secrecy_closedform_rician`] / [`secrecy_closedform_nakagami`]: the
//!   closed and semi-closed forms, kept as fidelity modes whose
//!   deviation from the reference is measured rather than assumed small.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

mod closed_form;
mod montecarlo;
mod quadrature;

pub use closed_form::{
    nakagami_closed_form_terms, rician_closed_form_terms, secrecy_closedform_nakagami, secrecy_closedform_rician,
    BetaInterpretation, NakagamiClosedFormTerms, NakagamiIntegratedVariant, RicianClosedFormInputs,
    RicianClosedFormTerms,
};
pub use montecarlo::{secrecy_montecarlo, MC_CHUNK_TRIALS};
pub use quadrature::{secrecy_integrand, secrecy_quadrature, secrecy_quadrature_with};

/// Which engine produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Quadrature,
    ClosedForm,
    #[serde(rename = "montecarlo")]
    MonteCarlo,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Quadrature, Engine::MonteCarlo, Engine::ClosedForm];

    pub fn name(&self) -> &'static str {
        match self {
            Engine::Quadrature => "quadrature",
            Engine::ClosedForm => "closed_form",
            Engine::MonteCarlo => "montecarlo",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "quadrature" | "quad" => Ok(Engine::Quadrature),
            "closed_form" | "closed-form" | "closedform" => Ok(Engine::ClosedForm),
            "montecarlo" | "monte_carlo" | "monte-carlo" | "mc" => Ok(Engine::MonteCarlo),
            other => Err(format!(
                "unknown engine `{other}` (expected quadrature, montecarlo or closed_form)"
            )),
        }
    }
}

/// A capacity value in bits/s/Hz with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecrecyEstimate {
    pub value: f64,
    pub engine: Engine,
    /// Monte Carlo: standard error. Quadrature: summed Gauss–Kronrod error
    /// estimate. Closed form: 0.
    pub uncertainty: f64,
    /// Free-form annotations (trial count, panel count, fit quality, ...).
    pub meta: BTreeMap<String, String>,
    /// Set when the value must not be read as a plain capacity: non-finite
    /// closed forms, unconverged quadrature, negative fidelity-mode values.
    pub flag: Option<EstimateFlag>,
}

/// Why an estimate is flagged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateFlag {
    /// Stable reason code, e.g. `non_finite`, `not_converged`, `negative_value`.
    pub code: String,
    pub detail: String,
}

impl SecrecyEstimate {
    pub(crate) fn new(engine: Engine, value: f64, uncertainty: f64) -> Self {
        Self {
            value,
            engine,
            uncertainty,
            meta: BTreeMap::new(),
            flag: None,
        }
    }

    pub(crate) fn note(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.to_owned(), value.to_string());
        self
    }

    pub(crate) fn flagged(mut self, code: &str, detail: impl Into<String>) -> Self {
        self.flag = Some(EstimateFlag {
            code: code.to_owned(),
            detail: detail.into(),
        });
        self
    }

    pub fn is_flagged(&self) -> bool {
        self.flag.is_some()
    }
}
