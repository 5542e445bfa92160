//! Marcum-Q, its exponential fit, and the incomplete gamma / Bessel helpers.
//!
//! Run with `cargo run --example special_functions`.

use swipt_secrecy::specfun::{bessel_i0, fit_marcum_exponential, gamma_q, marcum_q1};

fn main() -> swipt_secrecy::Result<()> {
    println!("I0(1)      = {:.15}", bessel_i0(1.0)?);
    println!("Q(2.5, 3)  = {:.15}", gamma_q(2.5, 3.0)?);
    println!("Q1(1, 2)   = {:.15}", marcum_q1(1.0, 2.0)?);

    for k in [0.0, 1.0, 5.0] {
        let a = (2.0f64 * k).sqrt();
        let fit = fit_marcum_exponential(a, (0.1, 6.0), 256)?;
        println!(
            "K = {k}: Q1(√2K, b) ≈ exp(-{:.4}·b^{:.4}), max error {:.2e}",
            fit.scale(),
            fit.mu,
            fit.max_abs_error
        );
        for b in [0.5, 1.5, 3.0, 4.5] {
            println!("    b = {b}: exact {:.5}  fit {:.5}", marcum_q1(a, b)?, fit.approx(b));
        }
    }
    Ok(())
}
