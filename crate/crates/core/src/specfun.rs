//! Real-valued special functions needed by the fading laws and the closed-form
//! capacity expressions: gamma, beta, incomplete gamma, modified Bessel `I₀`
//! and the first-order Marcum-Q function together with its two-parameter
//! exponential approximation `Q₁(a, b) ≈ exp(−e^ν · b^μ)`.
//!
//! Everything here is pure; the only shared state is the memo table behind
//! [`marcum_fit_cached`].

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument for which `Γ(x)` is finite in `f64`.
const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// Argument above which `I₀(x)` overflows `f64`.
const I0_MAX_ARG: f64 = 713.987_463_582_897_5;

/// Lanczos sum for `x ≥ 0.5`: returns `(t, A(x−1))` with `Γ(x) = √(2π) t^{x−½} e^{−t} A`.
fn lanczos(x: f64) -> (f64, f64) {
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    (x + LANCZOS_G + 0.5, acc)
}

/// `sin(πx)` with exact argument reduction, accurate near the integers.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Natural log of `|Γ(x)|` and the sign of `Γ(x)`.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::domain("ln_gamma", format!("non-finite argument {x}")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::domain("ln_gamma", format!("pole at x = {x}")));
    }
    if x < 0.5 {
        // Γ(x) Γ(1−x) = π / sin(πx)
        let s = sin_pi(x);
        let (lg, _) = ln_gamma_signed(1.0 - x)?;
        return Ok((PI.ln() - s.abs().ln() - lg, s.signum()));
    }
    let (t, a) = lanczos(x);
    let lg = 0.5 * (2.0 * PI).ln() + (x - 0.5) * t.ln() - t + a.ln();
    Ok((lg, 1.0))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    ln_gamma_signed(x).map(|(v, _)| v).unwrap_or(f64::NAN)
}

/// Gamma function over the real line, with the reflection formula below ½.
///
/// Positive integers return the exactly accumulated factorial.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("gamma_fn", format!("non-finite argument {x}")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::domain("gamma_fn", format!("pole at x = {x}")));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Range {
            function: "gamma_fn",
            argument: x,
        });
    }
    if x.fract() == 0.0 {
        let n = x as u32;
        return Ok((2..n).fold(1.0, |acc, k| acc * k as f64));
    }
    if x < 0.5 {
        let g = gamma_fn(1.0 - x)?;
        let v = PI / (sin_pi(x) * g);
        return if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Range {
                function: "gamma_fn",
                argument: x,
            })
        };
    }
    let (t, a) = lanczos(x);
    // split the power so that t^(x−½) does not overflow before e^{−t} is applied
    let half = t.powf(0.5 * (x - 0.5));
    Ok((2.0 * PI).sqrt() * half * (half * (-t).exp()) * a)
}

/// `n!` as `f64` (exact through 22!, correctly accumulated beyond).
pub fn factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Binomial coefficient `C(n, k)` as `f64`.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Beta function `B(p, q) = Γ(p)Γ(q)/Γ(p+q)`, defined for negative
/// non-integer arguments through the gamma reflection formula.
///
/// The complement pair `B(p, 1−p)` is evaluated as `π / sin(πp)`.
pub fn beta_fn(p: f64, q: f64) -> Result<f64> {
    if !p.is_finite() || !q.is_finite() {
        return Err(Error::domain("beta_fn", format!("non-finite argument ({p}, {q})")));
    }
    if is_nonpositive_integer(p) {
        return Err(Error::domain("beta_fn", format!("Γ(p) pole at p = {p}")));
    }
    if is_nonpositive_integer(q) {
        return Err(Error::domain("beta_fn", format!("Γ(q) pole at q = {q}")));
    }
    let s = p + q;
    if is_nonpositive_integer(s) {
        return Err(Error::domain(
            "beta_fn",
            format!("Γ(p+q) pole at p+q = {s} (p = {p}, q = {q})"),
        ));
    }
    if s == 1.0 {
        return Ok(PI / sin_pi(p));
    }
    if p.abs() < 100.0 && q.abs() < 100.0 && s.abs() < 100.0 {
        return Ok(gamma_fn(p)? * gamma_fn(q)? / gamma_fn(s)?);
    }
    let (lp, sp) = ln_gamma_signed(p)?;
    let (lq, sq) = ln_gamma_signed(q)?;
    let (ls, ss) = ln_gamma_signed(s)?;
    Ok(sp * sq * ss * (lp + lq - ls).exp())
}

/// Regularized lower incomplete gamma `P(s, x)`.
pub fn gamma_p(s: f64, x: f64) -> Result<f64> {
    check_incgamma_args("gamma_p", s, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x < s + 1.0 {
        Ok(lower_series(s, x))
    } else {
        Ok(1.0 - upper_fraction(s, x))
    }
}

/// Regularized upper incomplete gamma `Q(s, x) = Γ(s, x)/Γ(s)`.
pub fn gamma_q(s: f64, x: f64) -> Result<f64> {
    check_incgamma_args("gamma_q", s, x)?;
    if x == 0.0 {
        return Ok(1.0);
    }
    if x < s + 1.0 {
        Ok(1.0 - lower_series(s, x))
    } else {
        Ok(upper_fraction(s, x))
    }
}

/// Upper incomplete gamma `Γ(s, x)` (not regularized).
///
/// Integer orders use the finite sum `Γ(m, x) = (m−1)! e^{−x} Σ_{r<m} x^r/r!`.
pub fn upper_incomplete_gamma(s: f64, x: f64) -> Result<f64> {
    check_incgamma_args("upper_incomplete_gamma", s, x)?;
    if x == 0.0 {
        return gamma_fn(s);
    }
    if s.fract() == 0.0 && s <= GAMMA_MAX_ARG {
        let lg = ln_gamma(s);
        let lx = x.ln();
        let mut ln_rfact = 0.0;
        let mut sum = 0.0;
        for r in 0..s as u32 {
            if r > 0 {
                ln_rfact += (r as f64).ln();
            }
            sum += (lg - x + r as f64 * lx - ln_rfact).exp();
        }
        return Ok(sum);
    }
    Ok(gamma_q(s, x)? * gamma_fn(s)?)
}

fn check_incgamma_args(function: &'static str, s: f64, x: f64) -> Result<()> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::domain(function, format!("order s = {s} must be positive")));
    }
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::domain(function, format!("argument x = {x} must be non-negative")));
    }
    Ok(())
}

/// `P(s, x)` by its power series; converges quickly for `x < s + 1`.
fn lower_series(s: f64, x: f64) -> f64 {
    let prefactor = (-x + s * x.ln() - ln_gamma(s + 1.0)).exp();
    if prefactor == 0.0 {
        return 0.0;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 1.0;
    loop {
        term *= x / (s + n);
        sum += term;
        if term < sum * 1e-17 || n > 10_000.0 {
            break;
        }
        n += 1.0;
    }
    (prefactor * sum).min(1.0)
}

/// `Q(s, x)` by the Legendre continued fraction (modified Lentz), `x ≥ s + 1`.
fn upper_fraction(s: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let prefactor = (-x + s * x.ln() - ln_gamma(s)).exp();
    if prefactor == 0.0 {
        return 0.0;
    }
    let mut b = x + 1.0 - s;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (prefactor * h).clamp(0.0, 1.0)
}

/// Exponentially scaled Bessel function `e^{−x} I₀(x)`, `x ≥ 0`.
pub fn bessel_i0_scaled(x: f64) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::domain("bessel_i0", format!("argument {x} must be finite and ≥ 0")));
    }
    if x <= 30.0 {
        Ok(i0_series(x) * (-x).exp())
    } else {
        Ok(i0_asymptotic_sum(x) / (2.0 * PI * x).sqrt())
    }
}

/// Modified Bessel function of the first kind, order zero.
pub fn bessel_i0(x: f64) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::domain("bessel_i0", format!("argument {x} must be finite and ≥ 0")));
    }
    if x > I0_MAX_ARG {
        return Err(Error::Range {
            function: "bessel_i0",
            argument: x,
        });
    }
    if x <= 30.0 {
        return Ok(i0_series(x));
    }
    let v = (x - 0.5 * (2.0 * PI * x).ln()).exp() * i0_asymptotic_sum(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range {
            function: "bessel_i0",
            argument: x,
        })
    }
}

/// `Σ (x²/4)^k / (k!)²`, all terms positive.
fn i0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    while term > sum * 1e-17 {
        term *= q / (k * k);
        sum += term;
        k += 1.0;
    }
    sum
}

/// Hankel asymptotic sum `Σ ((2k−1)!!)² / (k! (8x)^k)`; for `x > 30` the
/// smallest term is far below machine precision.
fn i0_asymptotic_sum(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        let next = term * (2.0 * kf - 1.0).powi(2) / (8.0 * x * kf);
        if next > term {
            break;
        }
        term = next;
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    sum
}

/// First-order Marcum-Q function `Q₁(a, b)`.
pub fn marcum_q1(a: f64, b: f64) -> Result<f64> {
    marcum_q1_pair(a, b).map(|(q, _)| q)
}

/// Complementary Marcum function `1 − Q₁(a, b)`, computed without cancellation.
pub fn marcum_p1(a: f64, b: f64) -> Result<f64> {
    marcum_q1_pair(a, b).map(|(_, p)| p)
}

/// Returns `(Q₁(a, b), 1 − Q₁(a, b))`, each accurate relative to itself.
///
/// Both come from the Poisson mixture `Q₁ = Σ_k Pois(k; a²/2) Q(k+1, b²/2)`.
/// `Q` accumulates upward through the finite incomplete-gamma sums; the
/// complement sums `P(k+1, b²/2)` downward from a series start, so every
/// addition is of non-negative terms. The Poisson index is truncated where
/// the Chernoff bound on the neglected mass falls below `1e−17`.
pub fn marcum_q1_pair(a: f64, b: f64) -> Result<(f64, f64)> {
    if !(a.is_finite() && b.is_finite() && a >= 0.0 && b >= 0.0) {
        return Err(Error::domain(
            "marcum_q1",
            format!("arguments must be finite and non-negative, got ({a}, {b})"),
        ));
    }
    let x = 0.5 * b * b;
    if b == 0.0 {
        return Ok((1.0, 0.0));
    }
    if a == 0.0 {
        return Ok(((-x).exp(), -(-x).exp_m1()));
    }
    let lambda = 0.5 * a * a;
    let k_max = poisson_truncation(lambda);
    let ln_lambda = lambda.ln();
    let ln_x = x.ln();

    let mut poisson = Vec::with_capacity(k_max + 1);
    let mut gamma_terms = Vec::with_capacity(k_max + 1);
    let mut ln_kfact = 0.0;
    let mut cum_q = 0.0;
    let mut q = 0.0;
    for k in 0..=k_max {
        if k > 0 {
            ln_kfact += (k as f64).ln();
        }
        let kf = k as f64;
        let p_k = (-lambda + kf * ln_lambda - ln_kfact).exp();
        let t_k = (-x + kf * ln_x - ln_kfact).exp();
        cum_q += t_k;
        q += p_k * cum_q;
        poisson.push(p_k);
        gamma_terms.push(t_k);
    }

    // P(k+1, x) for k = k_max, then downward: P(k+1) = P(k+2) + x^{k+1} e^{−x} / (k+1)!
    let top = (k_max + 1) as f64;
    let mut p_reg = if x < top + 1.0 {
        lower_series(top, x)
    } else {
        (1.0 - cum_q).max(0.0)
    };
    let mut p = poisson[k_max] * p_reg;
    for k in (0..k_max).rev() {
        p_reg += gamma_terms[k + 1];
        p += poisson[k] * p_reg;
    }
    Ok((q.clamp(0.0, 1.0), p.clamp(0.0, 1.0)))
}

/// Smallest `K ≥ λ` with Chernoff tail `P(Pois(λ) > K) ≤ e^{−λ} (eλ/K)^K < 1e−17`.
fn poisson_truncation(lambda: f64) -> usize {
    let target = (1e-17f64).ln();
    let mut k = lambda.ceil().max(1.0) + 1.0;
    loop {
        let bound = -lambda + k - k * (k / lambda).ln();
        if bound < target {
            return k as usize;
        }
        k += 1.0;
    }
}

/// Fitted exponent pair of the approximation `Q₁(a, b) ≈ exp(−e^ν · b^μ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarcumFit {
    pub a: f64,
    pub mu: f64,
    pub nu: f64,
    /// Maximum of `|Q₁ − approximation|` on a grid four times as dense as the
    /// fitting grid over `b_range`.
    pub max_abs_error: f64,
    pub b_range: (f64, f64),
}

impl MarcumFit {
    /// Default fitting domain and density.
    pub const DEFAULT_B_RANGE: (f64, f64) = (0.05, 8.0);
    pub const DEFAULT_GRID_POINTS: usize = 256;

    /// `exp(−e^ν · b^μ)`.
    pub fn approx(&self, b: f64) -> f64 {
        (-self.nu.exp() * b.powf(self.mu)).exp()
    }

    /// `e^ν`, the scale in front of `b^μ`.
    pub fn scale(&self) -> f64 {
        self.nu.exp()
    }
}

/// `n` uniformly spaced points covering `[lo, hi]` inclusive.
pub(crate) fn uniform_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let span = hi - lo;
    let last = (n - 1) as f64;
    (0..n).map(move |i| lo + span * (i as f64 / last))
}

/// Fits `μ(a), ν(a)` so that `exp(−e^ν b^μ)` tracks `Q₁(a, b)` over `b_range`.
///
/// The fit is linear least squares on `ln(−ln Q₁) = ν + μ ln b`. Each residual
/// is weighted by `Q₁ · (−ln Q₁)`, the derivative of `Q₁` with respect to
/// `ln(−ln Q₁)`, so the weighted residuals are first-order absolute errors in
/// `Q₁`. For `a = 0` the form is exact and the fit returns `μ = 2`, `e^ν = ½`.
pub fn fit_marcum_exponential(a: f64, b_range: (f64, f64), grid_points: usize) -> Result<MarcumFit> {
    let (lo, hi) = b_range;
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::invalid("a", format!("must be finite and ≥ 0, got {a}")));
    }
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
        return Err(Error::invalid("b_range", format!("need 0 < lo < hi < ∞, got ({lo}, {hi})")));
    }
    if grid_points < 32 {
        return Err(Error::invalid("grid_points", format!("need at least 32, got {grid_points}")));
    }

    let (mut sw, mut swx, mut swy, mut swxx, mut swxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let mut used = 0usize;
    for b in uniform_grid(lo, hi, grid_points) {
        let (q, p) = marcum_q1_pair(a, b)?;
        if q <= 0.0 || p <= 0.0 {
            continue;
        }
        let neg_ln_q = if q < 0.5 { -q.ln() } else { -(-p).ln_1p() };
        if !(neg_ln_q > 0.0 && neg_ln_q.is_finite()) {
            continue;
        }
        let x = b.ln();
        let y = neg_ln_q.ln();
        let w = q * neg_ln_q;
        let w2 = w * w;
        sw += w2;
        swx += w2 * x;
        swy += w2 * y;
        swxx += w2 * x * x;
        swxy += w2 * x * y;
        used += 1;
    }
    if used < 2 {
        return Err(Error::FitFailure {
            a,
            detail: format!("only {used} usable grid points in b ∈ ({lo}, {hi})"),
        });
    }
    let det = sw * swxx - swx * swx;
    if !(det.is_finite() && det > 1e-14 * sw * swxx) {
        return Err(Error::FitFailure {
            a,
            detail: format!("singular normal equations (det = {det:e}, {used} points)"),
        });
    }
    let mu = (sw * swxy - swx * swy) / det;
    let nu = (swxx * swy - swx * swxy) / det;
    if !(mu.is_finite() && mu > 0.0 && nu.is_finite()) {
        return Err(Error::FitFailure {
            a,
            detail: format!("non-physical exponents mu = {mu}, nu = {nu}"),
        });
    }

    let mut fit = MarcumFit {
        a,
        mu,
        nu,
        max_abs_error: 0.0,
        b_range,
    };
    let verify_points = 4 * (grid_points - 1) + 1;
    for b in uniform_grid(lo, hi, verify_points) {
        let exact = marcum_q1(a, b)?;
        fit.max_abs_error = fit.max_abs_error.max((exact - fit.approx(b)).abs());
    }
    Ok(fit)
}

/// Memoized [`fit_marcum_exponential`] on the default domain.
pub fn marcum_fit_cached(a: f64) -> Result<MarcumFit> {
    static CACHE: OnceLock<Mutex<HashMap<u64, MarcumFit>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(fit) = cache.lock().unwrap().get(&a.to_bits()) {
        return Ok(*fit);
    }
    let fit = fit_marcum_exponential(a, MarcumFit::DEFAULT_B_RANGE, MarcumFit::DEFAULT_GRID_POINTS)?;
    cache.lock().unwrap().insert(a.to_bits(), fit);
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_identities() {
        assert_eq!(gamma_fn(5.0).unwrap(), 24.0);
        assert!(rel(gamma_fn(0.5).unwrap(), PI.sqrt()) < 1e-14);
        assert!(rel(gamma_fn(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-14);
        assert!(rel(gamma_fn(1.5).unwrap(), 0.5 * PI.sqrt()) < 1e-14);
    }

    #[test]
    fn gamma_poles_are_domain_errors() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma_fn(x), Err(Error::Domain { .. })));
        }
        assert!(matches!(gamma_fn(172.0), Err(Error::Range { .. })));
    }

    #[test]
    fn gamma_half_integers_match_closed_form() {
        // Γ(n + ½) = (2n)! √π / (4^n n!)
        for n in 0..40u32 {
            let expected = (1..=n).fold(PI.sqrt(), |acc, k| acc * (2 * k - 1) as f64 / 2.0);
            let x = n as f64 + 0.5;
            assert!(rel(gamma_fn(x).unwrap(), expected) < 1e-12, "x = {x}");
        }
        // negative half-integers by the downward recurrence Γ(x) = Γ(x+1)/x
        let mut g = PI.sqrt();
        let mut x = 0.5;
        while x > -30.0 {
            g /= x - 1.0;
            x -= 1.0;
            assert!(rel(gamma_fn(x).unwrap(), g) < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn gamma_recurrence_holds_over_range() {
        let mut x = -29.77;
        while x < 169.0 {
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert!(rel(lhs, rhs) < 1e-12, "x = {x}");
            x += 0.731;
        }
    }

    #[test]
    fn beta_identities() {
        assert!(rel(beta_fn(1.0, 1.0).unwrap(), 1.0) < 1e-14);
        assert!(rel(beta_fn(0.5, 0.5).unwrap(), PI) < 1e-14);
        assert!(rel(beta_fn(2.0, 3.0).unwrap(), 1.0 / 12.0) < 1e-14);
        // complement pair with a negative second argument
        let p = 1.3;
        assert!(rel(beta_fn(p, 1.0 - p).unwrap(), PI / (PI * p).sin()) < 1e-13);
    }

    #[test]
    fn beta_as_printed_pair_is_a_pole() {
        let err = beta_fn(1.1, -1.1).unwrap_err();
        match err {
            Error::Domain { detail, .. } => assert!(detail.contains("p+q")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(beta_fn(-2.0, 0.5).is_err());
    }

    #[test]
    fn incomplete_gamma_examples() {
        assert!(rel(upper_incomplete_gamma(3.0, 0.0).unwrap(), 2.0) < 1e-15);
        assert!(rel(upper_incomplete_gamma(2.5, 0.0).unwrap(), gamma_fn(2.5).unwrap()) < 1e-15);
        for x in [0.1, 1.0, 7.5, 40.0] {
            assert!(rel(upper_incomplete_gamma(1.0, x).unwrap(), (-x).exp()) < 1e-13);
        }
        assert!(rel(upper_incomplete_gamma(2.0, 1.0).unwrap(), 2.0 * (-1.0f64).exp()) < 1e-14);
    }

    #[test]
    fn integer_and_general_branches_agree() {
        for s in [1.0, 2.0, 3.0, 5.0, 12.0] {
            for x in [0.01, 0.5, 2.0, 6.0, 30.0] {
                let finite = upper_incomplete_gamma(s, x).unwrap();
                let general = gamma_q(s, x).unwrap() * gamma_fn(s).unwrap();
                assert!(rel(finite, general) < 1e-10, "s={s} x={x}");
            }
        }
    }

    #[test]
    fn bessel_examples() {
        assert_eq!(bessel_i0(0.0).unwrap(), 1.0);
        assert!(rel(bessel_i0(1.0).unwrap(), 1.266_065_877_752_008_4) < 1e-14);
        assert!(rel(bessel_i0(10.0).unwrap(), 2_815.716_628_466_254_5) < 1e-13);
        assert!(bessel_i0(700.0).unwrap().is_finite());
        assert!(matches!(bessel_i0(720.0), Err(Error::Range { .. })));
        assert!(bessel_i0(-1.0).is_err());
    }

    #[test]
    fn bessel_branches_meet_continuously() {
        let below = bessel_i0_scaled(30.0).unwrap();
        let above = i0_asymptotic_sum(30.0) / (2.0 * PI * 30.0).sqrt();
        assert!(rel(below, above) < 1e-13);
    }

    #[test]
    fn marcum_boundary_values() {
        for a in [0.0, 0.3, 2.0, 9.0] {
            assert_eq!(marcum_q1(a, 0.0).unwrap(), 1.0);
        }
        for b in [0.1, 1.0, 3.0] {
            assert!((marcum_q1(0.0, b).unwrap() - (-0.5 * b * b).exp()).abs() < 1e-16);
        }
    }

    #[test]
    fn marcum_pair_sums_to_one() {
        for a in [0.2, 1.0, 3.3, 12.0] {
            for b in [0.05, 0.9, 2.5, 6.0, 20.0] {
                let (q, p) = marcum_q1_pair(a, b).unwrap();
                assert!((q + p - 1.0).abs() < 1e-13, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn fit_rejects_bad_inputs() {
        assert!(fit_marcum_exponential(1.0, (0.0, 6.0), 64).is_err());
        assert!(fit_marcum_exponential(1.0, (2.0, 1.0), 64).is_err());
        assert!(fit_marcum_exponential(1.0, (0.1, 6.0), 16).is_err());
    }

    #[test]
    fn fit_exact_for_rayleigh() {
        let fit = fit_marcum_exponential(0.0, (0.1, 6.0), 128).unwrap();
        assert!((fit.mu - 2.0).abs() < 1e-10);
        assert!((fit.scale() - 0.5).abs() < 1e-10);
        assert!(fit.max_abs_error < 1e-12);
    }

    #[test]
    fn cached_fit_is_stable() {
        let a = 10f64.sqrt();
        let first = marcum_fit_cached(a).unwrap();
        let second = marcum_fit_cached(a).unwrap();
        assert_eq!(first, second);
        assert_eq!(first.b_range, MarcumFit::DEFAULT_B_RANGE);
    }
}
