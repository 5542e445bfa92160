//! Engine dispatch, parameter sweeps, secrecy-energy regions and
//! cross-engine validation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ConfigError, RegionConfig, RunSettings, SweepConfig};
use crate::error::{Error, Result};
use crate::fading::FadingFamily;
use crate::linkmodel::Scenario;
use crate::secrecy::{
    secrecy_closedform_nakagami, secrecy_closedform_rician, secrecy_montecarlo, secrecy_quadrature, Engine,
    SecrecyEstimate,
};
use crate::specfun::{marcum_fit_cached, MarcumFit};

/// Runs one engine on one scenario.
///
/// The closed-form engine follows the fading family; a scenario that mixes
/// Rician and Nakagami links has no closed form.
pub fn evaluate(engine: Engine, scenario: &Scenario, settings: &RunSettings) -> Result<SecrecyEstimate> {
    match engine {
        Engine::Quadrature => secrecy_quadrature(scenario),
        Engine::MonteCarlo => secrecy_montecarlo(scenario, settings.trials, settings.seed),
        Engine::ClosedForm => match (scenario.main_fading.family, scenario.eve_fading.family) {
            (FadingFamily::Rician { .. }, FadingFamily::Rician { .. }) => {
                secrecy_closedform_rician(scenario, settings.beta_interpretation)
            }
            (FadingFamily::NakagamiM { .. }, FadingFamily::NakagamiM { .. }) => {
                secrecy_closedform_nakagami(scenario, settings.nakagami_variant)
            }
            _ => Err(Error::unsupported(
                "family_mismatch",
                "closed forms need both links in the same fading family",
            )),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    Flagged,
    Skipped,
}

impl RowStatus {
    pub fn name(&self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Flagged => "flagged",
            RowStatus::Skipped => "skipped",
        }
    }
}

/// One line of a result table.
///
/// `capacity_bits` and `uncertainty` are empty for skipped rows and for
/// flagged rows whose value is not finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub sweep_param: String,
    pub sweep_value: Option<f64>,
    pub engine: Engine,
    pub capacity_bits: Option<f64>,
    pub uncertainty: Option<f64>,
    pub status: RowStatus,
    pub reason: String,
}

impl ResultRow {
    pub fn from_outcome(sweep_param: &str, sweep_value: Option<f64>, engine: Engine, outcome: &Result<SecrecyEstimate>) -> Self {
        let finite = |x: f64| x.is_finite().then_some(x);
        let (capacity_bits, uncertainty, status, reason) = match outcome {
            Ok(est) => match &est.flag {
                None => (finite(est.value), finite(est.uncertainty), RowStatus::Ok, String::new()),
                Some(flag) => (
                    finite(est.value),
                    finite(est.uncertainty),
                    RowStatus::Flagged,
                    flag.code.clone(),
                ),
            },
            Err(e) => (None, None, RowStatus::Skipped, e.reason_code().to_owned()),
        };
        Self {
            sweep_param: sweep_param.to_owned(),
            sweep_value,
            engine,
            capacity_bits,
            uncertainty,
            status,
            reason,
        }
    }

    /// An unflagged row whose value could not be represented.
    pub fn is_unflagged_non_finite(&self) -> bool {
        self.status == RowStatus::Ok && self.capacity_bits.is_none()
    }
}

/// Every requested engine on a single scenario, in request order.
pub fn run_eval(scenario: &Scenario, engines: &[Engine], settings: &RunSettings) -> Vec<ResultRow> {
    engines
        .iter()
        .map(|&engine| ResultRow::from_outcome("none", None, engine, &evaluate(engine, scenario, settings)))
        .collect()
}

/// Evaluates every `(value, engine)` pair of the sweep.
///
/// The configuration is validated before any computation. Rows come back in
/// value-major, engine-minor order as written in the configuration.
/// Engines that cannot handle a point produce skipped rows with a reason code.
pub fn run_sweep(config: &SweepConfig) -> std::result::Result<Vec<ResultRow>, ConfigError> {
    config.validate()?;
    let name = config.parameter.name();
    let jobs: Vec<(f64, Engine)> = config
        .values
        .iter()
        .flat_map(|&v| config.engines.iter().map(move |&e| (v, e)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(value, engine)| {
            let outcome = config
                .parameter
                .apply(&config.scenario, value)
                .map_err(|d| Error::invalid("sweep_value", d))
                .and_then(|s| evaluate(engine, &s, &config.settings));
            ResultRow::from_outcome(name, Some(value), engine, &outcome)
        })
        .collect();
    Ok(rows)
}

/// One point of the secrecy-energy tradeoff.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionPoint {
    pub rho: f64,
    /// Energy harvested at the legitimate receiver, linear units.
    pub energy_linear: f64,
    pub capacity_bits: Option<f64>,
    pub uncertainty: Option<f64>,
    pub status: RowStatus,
    pub reason: String,
}

/// Sweeps the common power-splitting ratio `ρ_s = ρ_e = ρ` and pairs the
/// harvested energy `ζ(1−ρ)Ω_s` with the secrecy capacity.
pub fn run_region(config: &RegionConfig) -> std::result::Result<Vec<RegionPoint>, ConfigError> {
    config.validate()?;
    let points = config
        .rho_grid
        .par_iter()
        .map(|&rho| {
            let mut s = config.scenario;
            s.main.rho = rho;
            s.eve.rho = rho;
            s.zeta = config.zeta;
            let energy_linear = s.harvested_energy().unwrap_or(f64::NAN);
            let row = ResultRow::from_outcome("rho", Some(rho), config.engine, &evaluate(config.engine, &s, &config.settings));
            RegionPoint {
                rho,
                energy_linear,
                capacity_bits: row.capacity_bits,
                uncertainty: row.uncertainty,
                status: row.status,
                reason: row.reason,
            }
        })
        .collect();
    Ok(points)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineReport {
    pub engine: Engine,
    pub capacity_bits: Option<f64>,
    /// Standard error (Monte Carlo) or integration error estimate (quadrature).
    pub uncertainty: Option<f64>,
    pub status: RowStatus,
    pub reason: String,
    pub meta: std::collections::BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDelta {
    pub a: Engine,
    pub b: Engine,
    pub abs_delta: f64,
    /// `|a − b| / |a|`; absent when `a` is zero.
    pub rel_delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkFitReport {
    pub link: String,
    pub fit: MarcumFit,
}

/// Quadrature against Monte Carlo within `4σ` of the Monte Carlo standard
/// error, with the quadrature error estimate added to the allowance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Concordance {
    pub abs_delta: Option<f64>,
    pub allowance: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub engines: Vec<EngineReport>,
    pub deltas: Vec<PairDelta>,
    pub marcum_fits: Vec<LinkFitReport>,
    pub concordance: Concordance,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.concordance.passed
    }

    pub fn engine(&self, engine: Engine) -> Option<&EngineReport> {
        self.engines.iter().find(|r| r.engine == engine)
    }
}

/// Runs all three engines on `scenario` and compares them.
pub fn run_validate(scenario: &Scenario, settings: &RunSettings) -> ValidationReport {
    let outcomes: Vec<(Engine, Result<SecrecyEstimate>)> = Engine::ALL
        .par_iter()
        .map(|&e| (e, evaluate(e, scenario, settings)))
        .collect();

    let engines: Vec<EngineReport> = outcomes
        .iter()
        .map(|(engine, outcome)| {
            let row = ResultRow::from_outcome("none", None, *engine, outcome);
            EngineReport {
                engine: *engine,
                capacity_bits: row.capacity_bits,
                uncertainty: row.uncertainty,
                status: row.status,
                reason: row.reason,
                meta: outcome.as_ref().map(|e| e.meta.clone()).unwrap_or_default(),
            }
        })
        .collect();

    let mut deltas = Vec::new();
    for (i, a) in engines.iter().enumerate() {
        for b in &engines[i + 1..] {
            if let (Some(x), Some(y)) = (a.capacity_bits, b.capacity_bits) {
                let abs_delta = (x - y).abs();
                deltas.push(PairDelta {
                    a: a.engine,
                    b: b.engine,
                    abs_delta,
                    rel_delta: (x != 0.0).then(|| abs_delta / x.abs()),
                });
            }
        }
    }

    let mut marcum_fits = Vec::new();
    for (link, fading) in [("main", scenario.main_fading), ("eve", scenario.eve_fading)] {
        if let FadingFamily::Rician { k_factor } = fading.family {
            if let Ok(fit) = marcum_fit_cached((2.0 * k_factor).sqrt()) {
                marcum_fits.push(LinkFitReport {
                    link: link.to_owned(),
                    fit,
                });
            }
        }
    }

    let usable = |e: Engine| {
        engines
            .iter()
            .find(|r| r.engine == e && r.status == RowStatus::Ok)
            .and_then(|r| Some((r.capacity_bits?, r.uncertainty?)))
    };
    let concordance = match (usable(Engine::Quadrature), usable(Engine::MonteCarlo)) {
        (Some((q, q_err)), Some((mc, se))) => {
            let abs_delta = (q - mc).abs();
            let allowance = 4.0 * se + q_err;
            Concordance {
                abs_delta: Some(abs_delta),
                allowance: Some(allowance),
                passed: abs_delta <= allowance,
            }
        }
        _ => Concordance {
            abs_delta: None,
            allowance: None,
            passed: false,
        },
    };

    ValidationReport {
        engines,
        deltas,
        marcum_fits,
        concordance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{parse_config, SweepParameter};
    use crate::linkmodel::ReceiverArchitecture;

    fn small() -> RunSettings {
        RunSettings {
            trials: 20_000,
            ..RunSettings::default()
        }
    }

    #[test]
    fn mixed_families_have_no_closed_form() {
        let mut s = Scenario::default_rician();
        s.eve_fading = crate::fading::FadingSpec::nakagami(2.0);
        let err = evaluate(Engine::ClosedForm, &s, &small()).unwrap_err();
        assert_eq!(err.reason_code(), "family_mismatch");
        assert!(evaluate(Engine::Quadrature, &s, &small()).unwrap().value > 0.0);
    }

    #[test]
    fn sweep_rows_keep_config_order_and_skip_unsupported() {
        let cfg = SweepConfig {
            scenario: Scenario::default_nakagami().with_eve_arch(ReceiverArchitecture::Integrated),
            parameter: SweepParameter::NEves,
            values: vec![3.0, 2.0, 1.0],
            engines: vec![Engine::ClosedForm, Engine::Quadrature],
            settings: small(),
        };
        let rows = run_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 6);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.sweep_value, Some(cfg.values[i / 2]));
            assert_eq!(row.engine, cfg.engines[i % 2]);
            assert_eq!(row.sweep_param, "n_eves");
        }
        assert!(rows.iter().all(|r| r.status != RowStatus::Skipped || !r.reason.is_empty()));
    }

    #[test]
    fn empty_engines_fail_before_work() {
        let cfg = parse_config("[sweep]\nparameter = \"main_snr_db\"\nvalues = [10]\nengines = []").unwrap();
        assert!(cfg.sweep_config().is_err());
    }

    #[test]
    fn region_energy_falls_with_rho() {
        let cfg = parse_config("[region]\nrho_points = 5").unwrap().region_config().unwrap();
        let pts = run_region(&cfg).unwrap();
        assert_eq!(pts.len(), 5);
        assert!(pts.windows(2).all(|w| w[1].energy_linear < w[0].energy_linear));
        assert!(pts.iter().all(|p| p.status == RowStatus::Ok));
    }

    #[test]
    fn validation_report_at_defaults() {
        let report = run_validate(&Scenario::default_rician(), &small());
        assert!(report.passed(), "{:?}", report.concordance);
        assert_eq!(report.engines.len(), 3);
        assert_eq!(report.deltas.len(), 3);
        assert_eq!(report.marcum_fits.len(), 2);
    }

    #[test]
    fn non_finite_values_are_caught() {
        let raw = SecrecyEstimate::new(Engine::ClosedForm, f64::NAN, 0.0);
        let row = ResultRow::from_outcome("none", None, Engine::ClosedForm, &Ok(raw.clone()));
        assert!(row.is_unflagged_non_finite());
        let flagged = raw.flagged("non_finite", "test");
        let row = ResultRow::from_outcome("none", None, Engine::ClosedForm, &Ok(flagged));
        assert_eq!(row.status, RowStatus::Flagged);
        assert!(!row.is_unflagged_non_finite());
    }
}
