//! Ergodic secrecy capacity of power-splitting SWIPT links under Rician and
//! Nakagami-m fading with imperfect channel estimation.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: gamma, beta, incomplete gamma, `I₀`, Marcum-Q and its
//!   fitted exponential approximation.
//! * [`quad`]: adaptive Gauss–Kronrod quadrature on finite and half-infinite ranges.
//! * [`fading`]: SNR laws (PDF, CDF, max-of-N) and channel-power sampling.
//! * [`linkmodel`]: the power-splitting link budget and [`Scenario`].
//! * [`secrecy`]: quadrature, Monte Carlo and closed-form capacity engines.
//! * [`config`], [`experiment`], [`output`], [`cli`]: TOML scenarios, sweeps,
//!   secrecy-energy regions, cross-engine validation and CSV/JSON tables.
//!
//! ```
//! use swipt_secrecy::{secrecy_quadrature, Scenario};
//!
//! let scenario = Scenario::default_nakagami();
//! let c = secrecy_quadrature(&scenario).unwrap();
//! assert!(c.value > 0.0);
//! ```

pub mod cli;
pub mod config;
pub mod error;
pub mod experiment;
pub mod fading;
pub mod linkmodel;
pub mod output;
pub mod quad;
pub mod secrecy;
pub mod specfun;

pub use config::{parse_config, ConfigError, ExperimentConfig, RegionConfig, RunSettings, SweepConfig, SweepParameter};
pub use error::{Error, Result};
pub use experiment::{evaluate, run_region, run_sweep, run_validate, ResultRow, RowStatus, ValidationReport};
pub use fading::{FadingFamily, FadingSpec, SnrLaw};
pub use linkmodel::{EveDenominator, LinkBudget, ReceiverArchitecture, Scenario};
pub use secrecy::{
    secrecy_closedform_nakagami, secrecy_closedform_rician, secrecy_montecarlo, secrecy_quadrature,
    BetaInterpretation, Engine, NakagamiIntegratedVariant, SecrecyEstimate,
};
pub use specfun::MarcumFit;
