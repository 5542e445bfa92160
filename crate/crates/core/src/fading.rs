//! Distribution of the effective received SNR `γ = A·|h|²` under Rician and
//! Nakagami-m fading, plus the largest of `N` i.i.d. eavesdropper SNRs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{bessel_i0_scaled, gamma_p, gamma_q, ln_gamma, marcum_q1_pair};

/// Fading family with its shape parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FadingFamily {
    /// Line-of-sight to scattered power ratio `K ≥ 0`.
    Rician { k_factor: f64 },
    /// Shape `m ≥ ½`.
    NakagamiM { m_shape: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FadingSpec {
    pub family: FadingFamily,
    /// `E{|h|²}`; 1 unless a test needs otherwise, the link budget owns the power scale.
    pub mean_power: f64,
}

impl FadingSpec {
    pub fn rician(k_factor: f64) -> Self {
        Self {
            family: FadingFamily::Rician { k_factor },
            mean_power: 1.0,
        }
    }

    pub fn nakagami(m_shape: f64) -> Self {
        Self {
            family: FadingFamily::NakagamiM { m_shape },
            mean_power: 1.0,
        }
    }

    pub fn with_mean_power(mut self, mean_power: f64) -> Self {
        self.mean_power = mean_power;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mean_power.is_finite() && self.mean_power > 0.0) {
            return Err(Error::invalid("mean_power", format!("must be > 0, got {}", self.mean_power)));
        }
        match self.family {
            FadingFamily::Rician { k_factor } if !(k_factor.is_finite() && k_factor >= 0.0) => {
                Err(Error::invalid("k_factor", format!("must be finite and ≥ 0, got {k_factor}")))
            }
            FadingFamily::NakagamiM { m_shape } if !(m_shape.is_finite() && m_shape >= 0.5) => {
                Err(Error::invalid("m_shape", format!("must be finite and ≥ 0.5, got {m_shape}")))
            }
            _ => Ok(()),
        }
    }

    pub fn is_rician(&self) -> bool {
        matches!(self.family, FadingFamily::Rician { .. })
    }

    /// The coefficient `c` in `rate_scale = c / (A · mean_power)`: `K + 1` or `m`.
    fn shape_numerator(&self) -> f64 {
        match self.family {
            FadingFamily::Rician { k_factor } => k_factor + 1.0,
            FadingFamily::NakagamiM { m_shape } => m_shape,
        }
    }
}

/// Law of the SNR `γ` on one link.
///
/// `rate_scale` is the factor multiplying `γ` in the exponentials of the
/// density: `(K+1)/γ̄` for Rician, `m/γ̄` for Nakagami, with `γ̄ = A · E{|h|²}`.
/// An infinite `rate_scale` (zero coefficient `A`) is the point mass at 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnrLaw {
    pub fading: FadingSpec,
    pub rate_scale: f64,
}

impl SnrLaw {
    pub fn new(fading: FadingSpec, rate_scale: f64) -> Result<Self> {
        fading.validate()?;
        if rate_scale.is_nan() || rate_scale <= 0.0 {
            return Err(Error::invalid("rate_scale", format!("must be > 0, got {rate_scale}")));
        }
        Ok(Self { fading, rate_scale })
    }

    /// Law of `γ = coefficient · |h|²`.
    pub fn from_coefficient(fading: FadingSpec, coefficient: f64) -> Result<Self> {
        if !(coefficient.is_finite() && coefficient >= 0.0) {
            return Err(Error::invalid("coefficient", format!("must be finite and ≥ 0, got {coefficient}")));
        }
        let rate = if coefficient == 0.0 {
            f64::INFINITY
        } else {
            fading.shape_numerator() / (coefficient * fading.mean_power)
        };
        Self::new(fading, rate)
    }

    /// All probability at `γ = 0`.
    pub fn is_degenerate(&self) -> bool {
        self.rate_scale.is_infinite()
    }

    /// Mean SNR `γ̄`, 0 for the degenerate law.
    pub fn mean(&self) -> f64 {
        if self.is_degenerate() {
            0.0
        } else {
            self.fading.shape_numerator() / self.rate_scale
        }
    }

    /// Integer Nakagami shape, if that is what this law is.
    fn integer_shape(&self) -> Option<u32> {
        match self.fading.family {
            FadingFamily::NakagamiM { m_shape } if m_shape.fract() == 0.0 && m_shape <= 1e4 => {
                Some(m_shape as u32)
            }
            _ => None,
        }
    }

    pub fn pdf(&self, gamma: f64) -> f64 {
        snr_pdf(self, gamma)
    }

    pub fn cdf(&self, gamma: f64) -> f64 {
        snr_cdf(self, gamma)
    }

    /// `1 − F(γ)` without cancellation in the upper tail.
    pub fn sf(&self, gamma: f64) -> f64 {
        if gamma <= 0.0 {
            return if self.is_degenerate() && gamma == 0.0 { 0.0 } else { 1.0 };
        }
        if self.is_degenerate() {
            return 0.0;
        }
        let y = self.rate_scale * gamma;
        match self.fading.family {
            FadingFamily::Rician { k_factor } => rician_pair(k_factor, y).0,
            FadingFamily::NakagamiM { m_shape } => match self.integer_shape() {
                Some(m) => nakagami_finite_sf(m, y),
                None => gamma_q(m_shape, y).unwrap_or(f64::NAN),
            },
        }
    }
}

/// `(Q₁(√(2K), √(2y)), 1 − Q₁(...))`.
fn rician_pair(k: f64, y: f64) -> (f64, f64) {
    marcum_q1_pair((2.0 * k).sqrt(), (2.0 * y).sqrt()).unwrap_or((f64::NAN, f64::NAN))
}

/// `e^{−y} Σ_{r<m} y^r / r!`, the integer-shape survival function.
fn nakagami_finite_sf(m: u32, y: f64) -> f64 {
    let ln_y = y.ln();
    let mut ln_rfact = 0.0;
    let mut sum = 0.0;
    for r in 0..m {
        if r > 0 {
            ln_rfact += (r as f64).ln();
        }
        sum += (-y + r as f64 * ln_y - ln_rfact).exp();
    }
    sum.min(1.0)
}

/// Density of the SNR. The degenerate law has no density and returns 0.
pub fn snr_pdf(law: &SnrLaw, gamma: f64) -> f64 {
    if gamma < 0.0 || law.is_degenerate() {
        return 0.0;
    }
    let rate = law.rate_scale;
    let y = rate * gamma;
    match law.fading.family {
        FadingFamily::Rician { k_factor } => {
            let z = 2.0 * (k_factor * y).sqrt();
            let scaled = bessel_i0_scaled(z).unwrap_or(f64::NAN);
            rate * (-k_factor - y + z).exp() * scaled
        }
        FadingFamily::NakagamiM { m_shape } => {
            if gamma == 0.0 {
                return match m_shape {
                    1.0 => rate,
                    m if m > 1.0 => 0.0,
                    _ => f64::INFINITY,
                };
            }
            (m_shape * rate.ln() + (m_shape - 1.0) * gamma.ln() - y - ln_gamma(m_shape)).exp()
        }
    }
}

/// Distribution function of the SNR.
///
/// The Rician branch is `1 − Q₁(√(2K), √(2·rate·γ))` using the exact Marcum
/// function; integer-m Nakagami uses the finite Poisson sum, with the lower
/// tail taken from the incomplete-gamma series so small values keep their
/// relative accuracy.
pub fn snr_cdf(law: &SnrLaw, gamma: f64) -> f64 {
    if gamma < 0.0 {
        return 0.0;
    }
    if law.is_degenerate() {
        return 1.0;
    }
    if gamma == 0.0 {
        return 0.0;
    }
    let y = law.rate_scale * gamma;
    match law.fading.family {
        FadingFamily::Rician { k_factor } => rician_pair(k_factor, y).1,
        FadingFamily::NakagamiM { m_shape } => {
            if let Some(m) = law.integer_shape() {
                let sf = nakagami_finite_sf(m, y);
                if sf < 0.5 {
                    return 1.0 - sf;
                }
            }
            gamma_p(m_shape, y).unwrap_or(f64::NAN)
        }
    }
}

/// Distribution of the largest of `n` i.i.d. SNRs, `F(γ)^n`, formed in the log domain.
pub fn max_of_n_cdf(law: &SnrLaw, n: u32, gamma: f64) -> f64 {
    assert!(n >= 1, "max_of_n_cdf needs n ≥ 1");
    let f = snr_cdf(law, gamma);
    if n == 1 || f == 0.0 || f == 1.0 {
        return f;
    }
    let ln_f = if f > 0.5 { (-law.sf(gamma)).ln_1p() } else { f.ln() };
    (n as f64 * ln_f).exp()
}

/// Draws `|h|²` for one fading family.
#[derive(Debug, Clone, Copy)]
pub enum PowerSampler {
    /// `|s + σ(x + iy)|²·Ω̄` with `s² = K/(K+1)`, `σ² = 1/(2(K+1))`.
    Rician { los: f64, scatter_sd: f64, mean_power: f64 },
    Nakagami(Gamma<f64>),
}

impl PowerSampler {
    pub fn new(fading: &FadingSpec) -> Result<Self> {
        fading.validate()?;
        Ok(match fading.family {
            FadingFamily::Rician { k_factor } => PowerSampler::Rician {
                los: (k_factor / (k_factor + 1.0)).sqrt(),
                scatter_sd: (0.5 / (k_factor + 1.0)).sqrt(),
                mean_power: fading.mean_power,
            },
            FadingFamily::NakagamiM { m_shape } => PowerSampler::Nakagami(
                Gamma::new(m_shape, fading.mean_power / m_shape)
                    .map_err(|e| Error::invalid("m_shape", e.to_string()))?,
            ),
        })
    }

    #[inline]
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            PowerSampler::Rician {
                los,
                scatter_sd,
                mean_power,
            } => {
                let x: f64 = rng.sample(StandardNormal);
                let y: f64 = rng.sample(StandardNormal);
                let re = los + scatter_sd * x;
                let im = scatter_sd * y;
                (re * re + im * im) * mean_power
            }
            PowerSampler::Nakagami(gamma) => gamma.sample(rng),
        }
    }
}

/// `count` i.i.d. channel power draws, reproducible from `seed`.
pub fn sample_channel_power(fading: &FadingSpec, count: usize, seed: u64) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::invalid("count", "must be ≥ 1"));
    }
    let sampler = PowerSampler::new(fading)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| sampler.draw(&mut rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rayleigh_reductions_at_origin() {
        let nak = SnrLaw::new(FadingSpec::nakagami(1.0), 1.0).unwrap();
        assert!((nak.pdf(0.0) - 1.0).abs() < 1e-15);
        let ric = SnrLaw::new(FadingSpec::rician(0.0), 1.0).unwrap();
        assert!((ric.pdf(0.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exponential_cdf_value() {
        let rate = 0.37;
        let law = SnrLaw::new(FadingSpec::nakagami(1.0), rate).unwrap();
        assert!((law.cdf(1.0 / rate) - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn cdf_limits() {
        for fading in [FadingSpec::rician(5.0), FadingSpec::nakagami(2.0), FadingSpec::nakagami(2.7)] {
            let law = SnrLaw::from_coefficient(fading, 22.7).unwrap();
            assert_eq!(law.cdf(0.0), 0.0);
            assert!((law.cdf(1e4) - 1.0).abs() < 1e-9);
            assert!(law.sf(1e4) < 1e-9);
        }
    }

    #[test]
    fn max_of_n_examples() {
        let law = SnrLaw::new(FadingSpec::nakagami(1.0), 1.0).unwrap();
        let median = std::f64::consts::LN_2;
        assert_eq!(max_of_n_cdf(&law, 1, 0.8), law.cdf(0.8));
        assert!((max_of_n_cdf(&law, 5, median) - 0.03125).abs() < 1e-15);
        // tiny argument, large n: underflows gracefully instead of producing NaN
        assert_eq!(max_of_n_cdf(&law, 400, 1e-6), 0.0);
    }

    #[test]
    fn degenerate_law_is_point_mass() {
        let law = SnrLaw::from_coefficient(FadingSpec::rician(5.0), 0.0).unwrap();
        assert!(law.is_degenerate());
        assert_eq!(law.cdf(0.0), 1.0);
        assert_eq!(law.cdf(3.0), 1.0);
        assert_eq!(law.sf(3.0), 0.0);
        assert_eq!(max_of_n_cdf(&law, 5, 0.1), 1.0);
        assert_eq!(law.mean(), 0.0);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(FadingSpec::nakagami(0.3).validate().is_err());
        assert!(FadingSpec::rician(-1.0).validate().is_err());
        assert!(FadingSpec::rician(1.0).with_mean_power(0.0).validate().is_err());
        assert!(SnrLaw::new(FadingSpec::rician(1.0), 0.0).is_err());
        assert!(sample_channel_power(&FadingSpec::rician(1.0), 0, 1).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let fading = FadingSpec::rician(5.0);
        let a = sample_channel_power(&fading, 1000, 42).unwrap();
        let b = sample_channel_power(&fading, 1000, 42).unwrap();
        let c = sample_channel_power(&fading, 1000, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
