//! Power-splitting SWIPT link budget with imperfect channel estimation.
//!
//! A receiver keeps the fraction `ρ` of the incoming power for decoding and
//! sends `1 − ρ` to the harvester. The channel estimate is
//! `ĥ = √(1−δ²)·h + δ·v` with `v ~ N(0, 1)`, so the estimation error appears
//! as self-interference whose power grows with the transmit power. That is
//! what caps the SNR at high transmit power:
//!
//! ```text
//!        ρ Ω (1 − δ²)
//! A = ───────────────────── ,   γ = A |h|²
//!     Ω c δ² + ρ N₀ + σ²
//! ```
//!
//! where `c` is the splitting factor that multiplies the estimation-error
//! term. For the legitimate receiver `c = ρ_s`. For the eavesdropper the
//! default puts the legitimate receiver's `ρ_s` in that slot;
//! [`EveDenominator`] switches it to the eavesdropper's own `ρ_e`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fading::{FadingSpec, SnrLaw};

/// `10^(dB/10)`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Per-link physical parameters. Powers are in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget {
    /// Transmit power over path loss, `Ω = P / P_loss`.
    pub omega_db: f64,
    /// Power-splitting factor routed to information decoding.
    pub rho: f64,
    /// Channel accuracy factor; 0 is perfect CSI.
    pub delta: f64,
    /// Antenna noise `N₀`.
    pub n0_db: f64,
    /// Signal-processing noise `σ²`.
    pub sigma_db: f64,
}

impl LinkBudget {
    /// Default legitimate link: Ω = 30 dB, ρ = 0.8, δ = 0.2, N₀ = 0.1 dB, σ² = 0 dB.
    pub const fn default_main() -> Self {
        Self {
            omega_db: 30.0,
            rho: 0.8,
            delta: 0.2,
            n0_db: 0.1,
            sigma_db: 0.0,
        }
    }

    /// Default wiretap link: as the main link but Ω = 10 dB.
    pub const fn default_eve() -> Self {
        Self {
            omega_db: 10.0,
            ..Self::default_main()
        }
    }

    pub fn omega(&self) -> f64 {
        db_to_linear(self.omega_db)
    }

    pub fn n0(&self) -> f64 {
        db_to_linear(self.n0_db)
    }

    pub fn sigma2(&self) -> f64 {
        db_to_linear(self.sigma_db)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("omega_db", self.omega_db), ("n0_db", self.n0_db), ("sigma_db", self.sigma_db)] {
            if !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {v}")));
            }
        }
        check_unit("rho", self.rho)?;
        check_unit("delta", self.delta)
    }
}

pub(crate) fn check_unit(name: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must lie in [0, 1], got {v}")))
    }
}

/// SNR coefficient `A` with `coupling_rho` multiplying the estimation-error term.
pub fn effective_snr_coefficient(link: &LinkBudget, coupling_rho: f64) -> Result<f64> {
    link.validate()?;
    check_unit("coupling_rho", coupling_rho)?;
    let omega = link.omega();
    let d2 = link.delta * link.delta;
    let denominator = omega * coupling_rho * d2 + link.rho * link.n0() + link.sigma2();
    if denominator.is_nan() || denominator <= 0.0 {
        return Err(Error::DegenerateBudget(format!(
            "interference-plus-noise power is {denominator} for {link:?}"
        )));
    }
    Ok(link.rho * omega * (1.0 - d2) / denominator)
}

/// Mean power delivered to the harvester, `ζ (1 − ρ) Ω` (unit mean channel power).
pub fn harvested_energy(link: &LinkBudget, zeta: f64) -> Result<f64> {
    link.validate()?;
    check_unit("zeta", zeta)?;
    Ok(zeta * (1.0 - link.rho) * link.omega())
}

/// Instantaneous SINR at the decoder when the estimation-error term is drawn
/// explicitly: its power is `Ω ρ δ² · v_power` for `|v|² = v_power`, treated
/// as interference. At `v_power = 1` this equals `effective_snr_coefficient(link, ρ) · h`.
pub fn simulate_estimation_model(link: &LinkBudget, h: f64, v_power: f64) -> Result<f64> {
    link.validate()?;
    if !(h >= 0.0 && v_power >= 0.0) {
        return Err(Error::invalid("h/v_power", format!("must be ≥ 0, got ({h}, {v_power})")));
    }
    let omega = link.omega();
    let d2 = link.delta * link.delta;
    let signal = link.rho * omega * (1.0 - d2) * h;
    let interference = omega * link.rho * d2 * v_power + link.rho * link.n0() + link.sigma2();
    if interference.is_nan() || interference <= 0.0 {
        return Err(Error::DegenerateBudget(format!("zero interference-plus-noise for {link:?}")));
    }
    Ok(signal / interference)
}

/// SWIPT receiver design. The eavesdropper's choice switches the capacity
/// kernel from `1/(1+v)` (separated) to `1/(C·v)` (integrated).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReceiverArchitecture {
    Separated,
    Integrated,
}

/// Which splitting factor multiplies the eavesdropper's estimation-error term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EveDenominator {
    /// The legitimate receiver's `ρ_s`.
    AsPrinted,
    /// The eavesdropper's own `ρ_e`.
    OwnRho,
}

/// One legitimate link and `n_eves` statistically identical wiretap links.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub main: LinkBudget,
    pub eve: LinkBudget,
    pub main_fading: FadingSpec,
    pub eve_fading: FadingSpec,
    pub n_eves: u32,
    pub main_arch: ReceiverArchitecture,
    pub eve_arch: ReceiverArchitecture,
    /// Constant `C` of the integrated-receiver kernel `1/(C·v)`.
    pub integrated_const: f64,
    /// Energy conversion efficiency of the harvester.
    pub zeta: f64,
    pub eve_denominator: EveDenominator,
}

impl Scenario {
    /// Default parameter set with the given fading on both sides: K = 5 or
    /// m = 2, N = 5 eavesdroppers, separated receivers, C = 1, ζ = 0.9.
    pub fn defaults(main_fading: FadingSpec, eve_fading: FadingSpec) -> Self {
        Self {
            main: LinkBudget::default_main(),
            eve: LinkBudget::default_eve(),
            main_fading,
            eve_fading,
            n_eves: 5,
            main_arch: ReceiverArchitecture::Separated,
            eve_arch: ReceiverArchitecture::Separated,
            integrated_const: 1.0,
            zeta: 0.9,
            eve_denominator: EveDenominator::AsPrinted,
        }
    }

    pub fn default_rician() -> Self {
        Self::defaults(FadingSpec::rician(5.0), FadingSpec::rician(5.0))
    }

    pub fn default_nakagami() -> Self {
        Self::defaults(FadingSpec::nakagami(2.0), FadingSpec::nakagami(2.0))
    }

    pub fn with_eve_arch(mut self, arch: ReceiverArchitecture) -> Self {
        self.eve_arch = arch;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.main.validate()?;
        self.eve.validate()?;
        self.main_fading.validate()?;
        self.eve_fading.validate()?;
        if self.n_eves < 1 {
            return Err(Error::invalid("n_eves", "need at least one eavesdropper"));
        }
        if !(self.integrated_const.is_finite() && self.integrated_const > 0.0) {
            return Err(Error::invalid(
                "integrated_const",
                format!("must be > 0, got {}", self.integrated_const),
            ));
        }
        check_unit("zeta", self.zeta)
    }

    pub fn main_coefficient(&self) -> Result<f64> {
        effective_snr_coefficient(&self.main, self.main.rho)
    }

    pub fn eve_coefficient(&self) -> Result<f64> {
        let coupling = match self.eve_denominator {
            EveDenominator::AsPrinted => self.main.rho,
            EveDenominator::OwnRho => self.eve.rho,
        };
        effective_snr_coefficient(&self.eve, coupling)
    }

    pub fn main_snr_law(&self) -> Result<SnrLaw> {
        self.validate()?;
        SnrLaw::from_coefficient(self.main_fading, self.main_coefficient()?)
    }

    /// Harvested power at the legitimate receiver.
    pub fn harvested_energy(&self) -> Result<f64> {
        Ok(harvested_energy(&self.main, self.zeta)? * self.main_fading.mean_power)
    }
}

/// Law of a single eavesdropper's SNR; the best of `n_eves` follows from
/// [`crate::fading::max_of_n_cdf`].
pub fn eve_snr_law(scenario: &Scenario) -> Result<SnrLaw> {
    scenario.validate()?;
    SnrLaw::from_coefficient(scenario.eve_fading, scenario.eve_coefficient()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_main_coefficient_by_hand() {
        // 0.8·1000·0.96 / (1000·0.8·0.04 + 0.8·10^0.01 + 1)
        let n0 = 10f64.powf(0.01);
        let expected = 768.0 / (32.0 + 0.8 * n0 + 1.0);
        let a = effective_snr_coefficient(&LinkBudget::default_main(), 0.8).unwrap();
        assert!((a - expected).abs() < 1e-12);
        assert!((a - 22.709).abs() < 1e-3);
    }

    #[test]
    fn coefficient_zero_cases() {
        let mut link = LinkBudget::default_main();
        link.delta = 1.0;
        assert_eq!(effective_snr_coefficient(&link, link.rho).unwrap(), 0.0);
        let mut link = LinkBudget::default_main();
        link.rho = 0.0;
        assert_eq!(effective_snr_coefficient(&link, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn out_of_range_inputs() {
        let mut link = LinkBudget::default_main();
        link.rho = 1.5;
        assert!(matches!(
            effective_snr_coefficient(&link, 0.8),
            Err(Error::InvalidArgument { name: "rho", .. })
        ));
        assert!(harvested_energy(&LinkBudget::default_main(), 1.2).is_err());
        let mut s = Scenario::default_rician();
        s.n_eves = 0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn vanishing_noise_is_degenerate() {
        let link = LinkBudget {
            omega_db: 10.0,
            rho: 0.0,
            delta: 0.0,
            n0_db: 0.0,
            sigma_db: -4000.0,
        };
        assert!(matches!(
            effective_snr_coefficient(&link, 0.0),
            Err(Error::DegenerateBudget(_))
        ));
    }

    #[test]
    fn harvested_energy_examples() {
        let link = LinkBudget::default_main();
        assert!((harvested_energy(&link, 0.9).unwrap() - 180.0).abs() < 1e-9);
        assert_eq!(harvested_energy(&link, 0.0).unwrap(), 0.0);
        let mut full = link;
        full.rho = 1.0;
        assert_eq!(harvested_energy(&full, 0.9).unwrap(), 0.0);
    }

    #[test]
    fn estimation_model_identities() {
        let link = LinkBudget::default_main();
        let direct = simulate_estimation_model(&link, 1.0, 1.0).unwrap();
        let coef = effective_snr_coefficient(&link, link.rho).unwrap();
        assert!((direct - coef).abs() < 1e-12 * coef);

        let perfect = LinkBudget { delta: 0.0, ..link };
        let h = 0.37;
        let expected = perfect.rho * perfect.omega() * h / (perfect.rho * perfect.n0() + perfect.sigma2());
        for v in [0.0, 1.0, 9.0] {
            assert!((simulate_estimation_model(&perfect, h, v).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn eve_law_choices() {
        let s = Scenario::default_rician();
        let law = eve_snr_law(&s).unwrap();
        let a_e = effective_snr_coefficient(&s.eve, s.main.rho).unwrap();
        assert!((law.rate_scale - 6.0 / a_e).abs() < 1e-12);

        let mut own = s;
        own.eve_denominator = EveDenominator::OwnRho;
        own.main.rho = 0.5;
        let printed = Scenario { eve_denominator: EveDenominator::AsPrinted, ..own };
        assert!(own.eve_coefficient().unwrap() != printed.eve_coefficient().unwrap());

        let mut blind = s;
        blind.eve.delta = 1.0;
        assert!(eve_snr_law(&blind).unwrap().is_degenerate());
    }
}
