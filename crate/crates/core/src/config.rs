//! TOML experiment files.
//!
//! ```toml
//! [scenario]            # every key optional; defaults are the reference parameter set
//! family = "nakagami"   # or "rician"; main_family / eve_family override per link
//! omega_s_db = 30.0
//! omega_e_db = 10.0
//! rho_s = 0.8
//! rho_e = 0.8
//! delta_s = 0.2
//! delta_e = 0.2
//! n0_db = 0.1
//! sigma_db = 0.0
//! k_s = 5.0
//! k_e = 5.0
//! m_s = 2.0
//! m_e = 2.0
//! n_eves = 5
//! zeta = 0.9
//! integrated_const = 1.0
//! eve_arch = "separated"              # or "integrated"
//! eve_denominator = "as_printed"      # or "own_rho"
//! beta_interpretation = "complement_pair"   # or "as_printed"
//! nakagami_variant = "corrected"      # or "as_printed" (+ nakagami_printed_gamma_e)
//! trials = 100000
//! seed = 1
//!
//! [sweep]
//! parameter = "main_snr_db"
//! values = [10, 20, 30, 40, 50]
//! engines = ["quadrature", "montecarlo"]
//!
//! [region]
//! rho_points = 20       # or rho_grid = [0.1, 0.2, ...]
//! engine = "quadrature"
//! ```
//!
//! Every error names the offending key path, e.g. `scenario.rho_s`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use toml::{Table, Value};

use crate::fading::{FadingFamily, FadingSpec};
use crate::linkmodel::{EveDenominator, ReceiverArchitecture, Scenario};
use crate::secrecy::{BetaInterpretation, Engine, NakagamiIntegratedVariant};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {detail}")]
    Io { path: String, detail: String },
    #[error("malformed config: {0}")]
    Syntax(String),
    #[error("{path}: unknown key")]
    UnknownKey { path: String },
    #[error("{path}: expected {expected}")]
    WrongType { path: String, expected: &'static str },
    #[error("{path}: {detail}")]
    OutOfRange { path: String, detail: String },
    #[error("missing required block [{0}]")]
    MissingBlock(&'static str),
}

fn out_of_range(path: impl Into<String>, detail: impl Into<String>) -> ConfigError {
    ConfigError::OutOfRange {
        path: path.into(),
        detail: detail.into(),
    }
}

/// Engine knobs that are not part of the physical scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    pub trials: usize,
    pub seed: u64,
    pub beta_interpretation: BetaInterpretation,
    pub nakagami_variant: NakagamiIntegratedVariant,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            trials: 100_000,
            seed: 1,
            beta_interpretation: BetaInterpretation::ComplementPair,
            nakagami_variant: NakagamiIntegratedVariant::Corrected,
        }
    }
}

/// Scenario quantity varied along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    MainSnrDb,
    EveSnrDb,
    NEves,
    DeltaS,
    DeltaE,
    RhoS,
    /// Rician `K` on every Rician link.
    KFactor,
    /// Nakagami `m` on every Nakagami link.
    MShape,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 8] = [
        SweepParameter::MainSnrDb,
        SweepParameter::EveSnrDb,
        SweepParameter::NEves,
        SweepParameter::DeltaS,
        SweepParameter::DeltaE,
        SweepParameter::RhoS,
        SweepParameter::KFactor,
        SweepParameter::MShape,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::MainSnrDb => "main_snr_db",
            SweepParameter::EveSnrDb => "eve_snr_db",
            SweepParameter::NEves => "n_eves",
            SweepParameter::DeltaS => "delta_s",
            SweepParameter::DeltaE => "delta_e",
            SweepParameter::RhoS => "rho_s",
            SweepParameter::KFactor => "k_factor",
            SweepParameter::MShape => "m_shape",
        }
    }

    /// `scenario` with this parameter set to `value`, validated.
    pub fn apply(&self, scenario: &Scenario, value: f64) -> Result<Scenario, String> {
        let mut s = *scenario;
        match self {
            SweepParameter::MainSnrDb => s.main.omega_db = value,
            SweepParameter::EveSnrDb => s.eve.omega_db = value,
            SweepParameter::NEves => {
                if !(value >= 1.0 && value.fract() == 0.0 && value <= u32::MAX as f64) {
                    return Err(format!("n_eves must be a positive integer, got {value}"));
                }
                s.n_eves = value as u32;
            }
            SweepParameter::DeltaS => s.main.delta = value,
            SweepParameter::DeltaE => s.eve.delta = value,
            SweepParameter::RhoS => s.main.rho = value,
            SweepParameter::KFactor | SweepParameter::MShape => {
                let mut touched = false;
                for fading in [&mut s.main_fading, &mut s.eve_fading] {
                    match (&mut fading.family, self) {
                        (FadingFamily::Rician { k_factor }, SweepParameter::KFactor) => {
                            *k_factor = value;
                            touched = true;
                        }
                        (FadingFamily::NakagamiM { m_shape }, SweepParameter::MShape) => {
                            *m_shape = value;
                            touched = true;
                        }
                        _ => {}
                    }
                }
                if !touched {
                    return Err(format!("no link uses the fading family that `{}` controls", self.name()));
                }
            }
        }
        s.validate().map_err(|e| e.to_string())?;
        Ok(s)
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|p| p.name()).collect();
                format!("unknown sweep parameter `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub scenario: Scenario,
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    pub engines: Vec<Engine>,
    pub settings: RunSettings,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.engines.is_empty() {
            return Err(out_of_range("sweep.engines", "at least one engine is required"));
        }
        if self.values.is_empty() {
            return Err(out_of_range("sweep.values", "at least one value is required"));
        }
        check_strictly_monotone("sweep.values", &self.values)?;
        for (i, v) in self.values.iter().enumerate() {
            self.parameter
                .apply(&self.scenario, *v)
                .map_err(|detail| out_of_range(format!("sweep.values[{i}]"), detail))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionConfig {
    pub scenario: Scenario,
    /// Power-splitting grid applied to both receivers, strictly inside (0, 1).
    pub rho_grid: Vec<f64>,
    pub zeta: f64,
    pub engine: Engine,
    pub settings: RunSettings,
}

impl RegionConfig {
    /// `n` evenly spaced interior points `i/(n+1)`.
    pub fn uniform_rho_grid(n: usize) -> Vec<f64> {
        (1..=n).map(|i| i as f64 / (n + 1) as f64).collect()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.rho_grid.is_empty() {
            return Err(out_of_range("region.rho_grid", "at least one point is required"));
        }
        for (i, r) in self.rho_grid.iter().enumerate() {
            if !(*r > 0.0 && *r < 1.0) {
                return Err(out_of_range(format!("region.rho_grid[{i}]"), format!("must lie in (0, 1), got {r}")));
            }
        }
        if self.rho_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(out_of_range("region.rho_grid", "must be strictly increasing"));
        }
        if !(0.0..=1.0).contains(&self.zeta) {
            return Err(out_of_range("scenario.zeta", format!("must lie in [0, 1], got {}", self.zeta)));
        }
        Ok(())
    }
}

fn check_strictly_monotone(path: &str, values: &[f64]) -> Result<(), ConfigError> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(out_of_range(path, "values must be finite"));
    }
    let up = values.windows(2).all(|w| w[1] > w[0]);
    let down = values.windows(2).all(|w| w[1] < w[0]);
    if up || down {
        Ok(())
    } else {
        Err(out_of_range(path, "values must be strictly monotone"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct SweepBlock {
    parameter: SweepParameter,
    values: Vec<f64>,
    engines: Vec<Engine>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct RegionBlock {
    rho_grid: Vec<f64>,
    engine: Engine,
}

/// A parsed experiment file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub settings: RunSettings,
    sweep: Option<SweepBlock>,
    region: Option<RegionBlock>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        parse_config("").expect("empty document parses")
    }
}

impl ExperimentConfig {
    pub fn sweep_config(&self) -> Result<SweepConfig, ConfigError> {
        let block = self.sweep.as_ref().ok_or(ConfigError::MissingBlock("sweep"))?;
        let config = SweepConfig {
            scenario: self.scenario,
            parameter: block.parameter,
            values: block.values.clone(),
            engines: block.engines.clone(),
            settings: self.settings,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn region_config(&self) -> Result<RegionConfig, ConfigError> {
        let block = self.region.as_ref().ok_or(ConfigError::MissingBlock("region"))?;
        let config = RegionConfig {
            scenario: self.scenario,
            rho_grid: block.rho_grid.clone(),
            zeta: self.scenario.zeta,
            engine: block.engine,
            settings: self.settings,
        };
        config.validate()?;
        Ok(config)
    }

    /// Like [`Self::region_config`], but a missing `[region]` block means
    /// the default 20-point grid with the quadrature engine.
    pub fn region_config_or_default(&self) -> Result<RegionConfig, ConfigError> {
        if self.region.is_some() {
            return self.region_config();
        }
        let config = RegionConfig {
            scenario: self.scenario,
            rho_grid: RegionConfig::uniform_rho_grid(20),
            zeta: self.scenario.zeta,
            engine: Engine::Quadrature,
            settings: self.settings,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn has_sweep(&self) -> bool {
        self.sweep.is_some()
    }

    pub fn has_region(&self) -> bool {
        self.region.is_some()
    }
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    parse_config(&text)
}

const SCENARIO_KEYS: &[&str] = &[
    "family",
    "main_family",
    "eve_family",
    "omega_s_db",
    "omega_e_db",
    "rho_s",
    "rho_e",
    "delta_s",
    "delta_e",
    "n0_db",
    "sigma_db",
    "k_s",
    "k_e",
    "m_s",
    "m_e",
    "n_eves",
    "zeta",
    "trials",
    "seed",
    "integrated_const",
    "eve_arch",
    "main_arch",
    "eve_denominator",
    "beta_interpretation",
    "nakagami_variant",
    "nakagami_printed_gamma_e",
];
const SWEEP_KEYS: &[&str] = &["parameter", "values", "engines"];
const REGION_KEYS: &[&str] = &["rho_grid", "rho_points", "engine"];

/// Typed access to one `[section]` with key-path error messages.
struct Section<'a> {
    name: &'static str,
    table: Option<&'a Table>,
}

impl<'a> Section<'a> {
    fn path(&self, key: &str) -> String {
        format!("{}.{key}", self.name)
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), ConfigError> {
        if let Some(t) = self.table {
            if let Some(k) = t.keys().find(|k| !allowed.contains(&k.as_str())) {
                return Err(ConfigError::UnknownKey { path: self.path(k) });
            }
        }
        Ok(())
    }

    fn raw(&self, key: &str) -> Option<&'a Value> {
        self.table.and_then(|t| t.get(key))
    }

    fn f64(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => as_f64(v).ok_or_else(|| ConfigError::WrongType {
                path: self.path(key),
                expected: "a number",
            }),
        }
    }

    fn u64(&self, key: &str, default: u64) -> Result<u64, ConfigError> {
        match self.raw(key) {
            None => Ok(default),
            Some(Value::Integer(i)) if *i >= 0 => Ok(*i as u64),
            Some(Value::Integer(i)) => Err(out_of_range(self.path(key), format!("must be ≥ 0, got {i}"))),
            Some(Value::Float(f)) if f.fract() == 0.0 && *f >= 0.0 && *f < 2f64.powi(63) => Ok(*f as u64),
            Some(_) => Err(ConfigError::WrongType {
                path: self.path(key),
                expected: "a non-negative integer",
            }),
        }
    }

    fn str(&self, key: &str) -> Result<Option<&'a str>, ConfigError> {
        match self.raw(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.as_str())),
            Some(_) => Err(ConfigError::WrongType {
                path: self.path(key),
                expected: "a string",
            }),
        }
    }

    fn choice<T>(&self, key: &str, default: T, options: &[(&str, T)]) -> Result<T, ConfigError>
    where
        T: Copy,
    {
        let Some(s) = self.str(key)? else {
            return Ok(default);
        };
        options
            .iter()
            .find(|(name, _)| *name == s)
            .map(|(_, v)| *v)
            .ok_or_else(|| {
                let names: Vec<_> = options.iter().map(|(n, _)| *n).collect();
                out_of_range(self.path(key), format!("`{s}` is not one of {}", names.join(", ")))
            })
    }

    fn f64_array(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        match self.raw(key) {
            None => Ok(None),
            Some(Value::Array(items)) => items
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    as_f64(v).ok_or_else(|| ConfigError::WrongType {
                        path: format!("{}[{i}]", self.path(key)),
                        expected: "a number",
                    })
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(_) => Err(ConfigError::WrongType {
                path: self.path(key),
                expected: "an array of numbers",
            }),
        }
    }
}

fn as_f64(v: &Value) -> Option<f64> {
    match v {
        Value::Float(f) => Some(*f),
        Value::Integer(i) => Some(*i as f64),
        _ => None,
    }
}

fn unit_interval(section: &Section<'_>, key: &str, default: f64) -> Result<f64, ConfigError> {
    let v = section.f64(key, default)?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(out_of_range(section.path(key), format!("must lie in [0, 1], got {v}")))
    }
}

fn finite(section: &Section<'_>, key: &str, default: f64) -> Result<f64, ConfigError> {
    let v = section.f64(key, default)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(out_of_range(section.path(key), format!("must be finite, got {v}")))
    }
}

#[derive(Clone, Copy)]
enum Family {
    Rician,
    Nakagami,
}

const FAMILIES: &[(&str, Family)] = &[("rician", Family::Rician), ("nakagami", Family::Nakagami)];

/// Parses an experiment document. Unspecified keys take the reference defaults.
pub fn parse_config(source: &str) -> Result<ExperimentConfig, ConfigError> {
    let root: Table = source.parse().map_err(|e: toml::de::Error| ConfigError::Syntax(e.to_string()))?;
    for (key, value) in &root {
        match key.as_str() {
            "scenario" | "sweep" | "region" => {
                if !value.is_table() {
                    return Err(ConfigError::WrongType {
                        path: key.clone(),
                        expected: "a table",
                    });
                }
            }
            other => return Err(ConfigError::UnknownKey { path: other.to_owned() }),
        }
    }
    let section = |name: &'static str| Section {
        name,
        table: root.get(name).and_then(Value::as_table),
    };

    let sc = section("scenario");
    sc.check_keys(SCENARIO_KEYS)?;
    let (scenario, settings) = parse_scenario(&sc)?;

    let sw = section("sweep");
    sw.check_keys(SWEEP_KEYS)?;
    let sweep = match sw.table {
        None => None,
        Some(_) => {
            let parameter = sw
                .str("parameter")?
                .ok_or_else(|| out_of_range(sw.path("parameter"), "required"))?;
            let parameter = parameter
                .parse::<SweepParameter>()
                .map_err(|d| out_of_range(sw.path("parameter"), d))?;
            let values = sw
                .f64_array("values")?
                .ok_or_else(|| out_of_range(sw.path("values"), "required"))?;
            let engines = parse_engines(&sw, "engines")?.unwrap_or_else(|| vec![Engine::Quadrature]);
            Some(SweepBlock {
                parameter,
                values,
                engines,
            })
        }
    };

    let rg = section("region");
    rg.check_keys(REGION_KEYS)?;
    let region = match rg.table {
        None => None,
        Some(_) => {
            let rho_grid = match (rg.f64_array("rho_grid")?, rg.raw("rho_points")) {
                (Some(_), Some(_)) => {
                    return Err(out_of_range(rg.path("rho_points"), "give either rho_grid or rho_points, not both"))
                }
                (Some(grid), None) => grid,
                (None, _) => {
                    let n = rg.u64("rho_points", 20)?;
                    if n == 0 {
                        return Err(out_of_range(rg.path("rho_points"), "must be ≥ 1"));
                    }
                    RegionConfig::uniform_rho_grid(n as usize)
                }
            };
            let engine = match rg.str("engine")? {
                None => Engine::Quadrature,
                Some(s) => s.parse().map_err(|d: String| out_of_range(rg.path("engine"), d))?,
            };
            Some(RegionBlock { rho_grid, engine })
        }
    };

    Ok(ExperimentConfig {
        scenario,
        settings,
        sweep,
        region,
    })
}

fn parse_engines(section: &Section<'_>, key: &str) -> Result<Option<Vec<Engine>>, ConfigError> {
    match section.raw(key) {
        None => Ok(None),
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let path = format!("{}[{i}]", section.path(key));
                let s = v.as_str().ok_or(ConfigError::WrongType {
                    path: path.clone(),
                    expected: "an engine name",
                })?;
                s.parse::<Engine>().map_err(|d| out_of_range(path, d))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some),
        Some(_) => Err(ConfigError::WrongType {
            path: section.path(key),
            expected: "an array of engine names",
        }),
    }
}

fn parse_scenario(sc: &Section<'_>) -> Result<(Scenario, RunSettings), ConfigError> {
    let mut s = Scenario::default_nakagami();
    let defaults = RunSettings::default();

    s.main.omega_db = finite(sc, "omega_s_db", s.main.omega_db)?;
    s.eve.omega_db = finite(sc, "omega_e_db", s.eve.omega_db)?;
    s.main.rho = unit_interval(sc, "rho_s", s.main.rho)?;
    s.eve.rho = unit_interval(sc, "rho_e", s.eve.rho)?;
    s.main.delta = unit_interval(sc, "delta_s", s.main.delta)?;
    s.eve.delta = unit_interval(sc, "delta_e", s.eve.delta)?;
    let n0 = finite(sc, "n0_db", s.main.n0_db)?;
    let sigma = finite(sc, "sigma_db", s.main.sigma_db)?;
    for link in [&mut s.main, &mut s.eve] {
        link.n0_db = n0;
        link.sigma_db = sigma;
    }

    let shape = |key: &str, min: f64, default: f64| -> Result<f64, ConfigError> {
        let v = sc.f64(key, default)?;
        if v.is_finite() && v >= min {
            Ok(v)
        } else {
            Err(out_of_range(sc.path(key), format!("must be finite and ≥ {min}, got {v}")))
        }
    };
    let k_s = shape("k_s", 0.0, 5.0)?;
    let k_e = shape("k_e", 0.0, 5.0)?;
    let m_s = shape("m_s", 0.5, 2.0)?;
    let m_e = shape("m_e", 0.5, 2.0)?;
    let family = sc.choice("family", Family::Nakagami, FAMILIES)?;
    let main_family = sc.choice("main_family", family, FAMILIES)?;
    let eve_family = sc.choice("eve_family", family, FAMILIES)?;
    let build = |f: Family, k: f64, m: f64| match f {
        Family::Rician => FadingSpec::rician(k),
        Family::Nakagami => FadingSpec::nakagami(m),
    };
    s.main_fading = build(main_family, k_s, m_s);
    s.eve_fading = build(eve_family, k_e, m_e);

    let n_eves = sc.u64("n_eves", s.n_eves as u64)?;
    if n_eves < 1 || n_eves > u32::MAX as u64 {
        return Err(out_of_range(sc.path("n_eves"), format!("need at least one eavesdropper, got {n_eves}")));
    }
    s.n_eves = n_eves as u32;
    s.zeta = unit_interval(sc, "zeta", s.zeta)?;
    s.integrated_const = sc.f64("integrated_const", s.integrated_const)?;
    if !(s.integrated_const.is_finite() && s.integrated_const > 0.0) {
        return Err(out_of_range(
            sc.path("integrated_const"),
            format!("must be > 0, got {}", s.integrated_const),
        ));
    }
    let archs = [
        ("separated", ReceiverArchitecture::Separated),
        ("integrated", ReceiverArchitecture::Integrated),
    ];
    s.eve_arch = sc.choice("eve_arch", s.eve_arch, &archs)?;
    s.main_arch = sc.choice("main_arch", s.main_arch, &archs)?;
    s.eve_denominator = sc.choice(
        "eve_denominator",
        s.eve_denominator,
        &[("as_printed", EveDenominator::AsPrinted), ("own_rho", EveDenominator::OwnRho)],
    )?;

    let trials = sc.u64("trials", defaults.trials as u64)?;
    if trials < 1000 {
        return Err(out_of_range(sc.path("trials"), format!("need at least 1000, got {trials}")));
    }
    let seed = sc.u64("seed", defaults.seed)?;
    let beta_interpretation = sc.choice(
        "beta_interpretation",
        defaults.beta_interpretation,
        &[
            ("complement_pair", BetaInterpretation::ComplementPair),
            ("as_printed", BetaInterpretation::AsPrinted),
        ],
    )?;
    let printed = sc.choice("nakagami_variant", false, &[("corrected", false), ("as_printed", true)])?;
    let nakagami_variant = match (printed, sc.raw("nakagami_printed_gamma_e")) {
        (false, None) => NakagamiIntegratedVariant::Corrected,
        (false, Some(_)) => {
            return Err(out_of_range(
                sc.path("nakagami_printed_gamma_e"),
                "only meaningful with nakagami_variant = \"as_printed\"",
            ))
        }
        (true, _) => {
            let gamma_e = sc.f64("nakagami_printed_gamma_e", 1.0)?;
            if !(gamma_e.is_finite() && gamma_e > 0.0) {
                return Err(out_of_range(sc.path("nakagami_printed_gamma_e"), format!("must be > 0, got {gamma_e}")));
            }
            NakagamiIntegratedVariant::AsPrinted { gamma_e }
        }
    };

    let settings = RunSettings {
        trials: trials as usize,
        seed,
        beta_interpretation,
        nakagami_variant,
    };
    Ok((s, settings))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_reference_defaults() {
        let cfg = parse_config("").unwrap();
        let s = cfg.scenario;
        assert_eq!(s, Scenario::default_nakagami());
        assert_eq!(s.main.omega_db, 30.0);
        assert_eq!(s.eve.omega_db, 10.0);
        assert_eq!((s.main.rho, s.eve.rho), (0.8, 0.8));
        assert_eq!((s.main.delta, s.eve.delta), (0.2, 0.2));
        assert_eq!(s.main.n0_db, 0.1);
        assert_eq!(s.main.sigma_db, 0.0);
        assert_eq!(s.n_eves, 5);
        assert_eq!(cfg.settings.trials, 100_000);
        assert!(!cfg.has_sweep() && !cfg.has_region());

        let ric = parse_config("[scenario]\nfamily = \"rician\"").unwrap().scenario;
        assert_eq!(ric, Scenario::default_rician());
    }

    #[test]
    fn range_errors_name_the_key() {
        let err = parse_config("[scenario]\nrho_s = 1.5").unwrap_err();
        assert!(err.to_string().contains("scenario.rho_s"), "{err}");
        let err = parse_config("[scenario]\nn_eves = 0").unwrap_err();
        assert!(err.to_string().contains("scenario.n_eves"), "{err}");
        let err = parse_config("[scenario]\nrho_x = 0.5").unwrap_err();
        assert_eq!(err, ConfigError::UnknownKey { path: "scenario.rho_x".into() });
        let err = parse_config("[sweep]\nparameter = \"delta_s\"\nvalues = [0.1, \"a\"]").unwrap_err();
        assert!(err.to_string().contains("sweep.values[1]"), "{err}");
        let err = parse_config("[other]\nx = 1").unwrap_err();
        assert!(matches!(err, ConfigError::UnknownKey { .. }));
    }

    #[test]
    fn missing_blocks_are_reported() {
        let cfg = parse_config("").unwrap();
        assert_eq!(cfg.sweep_config().unwrap_err(), ConfigError::MissingBlock("sweep"));
        assert_eq!(cfg.region_config().unwrap_err(), ConfigError::MissingBlock("region"));
    }

    #[test]
    fn sweep_validation() {
        let cfg = parse_config("[sweep]\nparameter = \"main_snr_db\"\nvalues = [10, 20]\nengines = []").unwrap();
        let err = cfg.sweep_config().unwrap_err();
        assert!(err.to_string().contains("sweep.engines"));
        let cfg = parse_config("[sweep]\nparameter = \"main_snr_db\"\nvalues = [10, 30, 20]").unwrap();
        assert!(cfg.sweep_config().is_err());
        let cfg = parse_config("[sweep]\nparameter = \"delta_s\"\nvalues = [0.5, 1.5]").unwrap();
        let err = cfg.sweep_config().unwrap_err();
        assert!(err.to_string().contains("sweep.values[1]"), "{err}");
        let cfg = parse_config("[sweep]\nparameter = \"k_factor\"\nvalues = [1, 2]").unwrap();
        assert!(cfg.sweep_config().is_err(), "K sweep on Nakagami links");
    }

    #[test]
    fn region_defaults() {
        let cfg = parse_config("[region]").unwrap();
        let region = cfg.region_config().unwrap();
        assert_eq!(region.rho_grid.len(), 20);
        assert_eq!(region.zeta, 0.9);
        assert_eq!(region.engine, Engine::Quadrature);
        assert!(parse_config("[region]\nrho_grid = [0.5, 0.2]").unwrap().region_config().is_err());
    }

    #[test]
    fn enumerated_keys() {
        let cfg = parse_config(
            "[scenario]\nfamily = \"rician\"\neve_family = \"nakagami\"\neve_arch = \"integrated\"\n\
             eve_denominator = \"own_rho\"\nbeta_interpretation = \"as_printed\"\n\
             nakagami_variant = \"as_printed\"\nnakagami_printed_gamma_e = 2.5\nseed = 9",
        )
        .unwrap();
        assert!(cfg.scenario.main_fading.is_rician());
        assert!(!cfg.scenario.eve_fading.is_rician());
        assert_eq!(cfg.scenario.eve_arch, ReceiverArchitecture::Integrated);
        assert_eq!(cfg.scenario.eve_denominator, EveDenominator::OwnRho);
        assert_eq!(cfg.settings.beta_interpretation, BetaInterpretation::AsPrinted);
        assert_eq!(cfg.settings.nakagami_variant, NakagamiIntegratedVariant::AsPrinted { gamma_e: 2.5 });
        assert_eq!(cfg.settings.seed, 9);
        assert!(parse_config("[scenario]\neve_arch = \"hybrid\"").is_err());
    }
}
