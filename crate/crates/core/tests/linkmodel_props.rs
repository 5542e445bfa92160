use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swipt_secrecy::linkmodel::{
    db_to_linear, effective_snr_coefficient, eve_snr_law, harvested_energy, simulate_estimation_model,
};
use swipt_secrecy::{EveDenominator, LinkBudget, Scenario};

fn budget(omega_db: f64, rho: f64, delta: f64) -> LinkBudget {
    LinkBudget {
        omega_db,
        rho,
        delta,
        ..LinkBudget::default_main()
    }
}

#[test]
fn reference_values() {
    assert!((db_to_linear(0.1) - 1.023_292_992_280_754).abs() < 1e-14);
    let a = effective_snr_coefficient(&LinkBudget::default_main(), 0.8).unwrap();
    let by_hand = 768.0 / (32.0 + 0.8 * 1.023_292_992_280_754 + 1.0);
    assert!((a - by_hand).abs() < 1e-12);
    assert!((a - 22.709).abs() < 1e-3);
    assert!((harvested_energy(&LinkBudget::default_main(), 0.9).unwrap() - 180.0).abs() < 1e-12);
    assert_eq!(harvested_energy(&budget(30.0, 1.0, 0.2), 0.9).unwrap(), 0.0);
    assert_eq!(harvested_energy(&LinkBudget::default_main(), 0.0).unwrap(), 0.0);
    assert_eq!(effective_snr_coefficient(&budget(30.0, 0.8, 1.0), 0.8).unwrap(), 0.0);
    assert_eq!(effective_snr_coefficient(&budget(30.0, 0.0, 0.2), 0.0).unwrap(), 0.0);
    let sim = simulate_estimation_model(&LinkBudget::default_main(), 1.0, 1.0).unwrap();
    assert!((sim - by_hand).abs() < 1e-12);
}

#[test]
fn saturation_limit() {
    for (rho, delta) in [(0.8, 0.2), (0.5, 0.1), (0.3, 0.6)] {
        let a = effective_snr_coefficient(&budget(90.0, rho, delta), rho).unwrap();
        let limit = rho * (1.0 - delta * delta) / (rho * delta * delta);
        assert!((a / limit - 1.0).abs() < 0.01, "{a} vs {limit}");
    }
}

#[test]
fn estimation_model_matches_coefficient_for_random_budgets() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let link = LinkBudget {
            omega_db: rng.random_range(-20.0..60.0),
            rho: rng.random_range(0.0..=1.0),
            delta: rng.random_range(0.0..=1.0),
            n0_db: rng.random_range(-10.0..10.0),
            sigma_db: rng.random_range(-10.0..10.0),
        };
        let h = rng.random_range(0.0..10.0);
        let a = effective_snr_coefficient(&link, link.rho).unwrap();
        let sim = simulate_estimation_model(&link, h, 1.0).unwrap();
        assert!((sim - a * h).abs() <= 1e-12 * (a * h).max(1e-300), "{link:?}");
        let perfect = LinkBudget { delta: 0.0, ..link };
        let v = rng.random_range(0.0..5.0);
        let expected = link.rho * perfect.omega() * h / (link.rho * link.n0() + link.sigma2());
        let got = simulate_estimation_model(&perfect, h, v).unwrap();
        assert!((got - expected).abs() <= 1e-12 * expected.max(1e-300));
    }
}

#[test]
fn eve_law_variants() {
    let s = Scenario::default_rician();
    let eve = eve_snr_law(&s).unwrap();
    let a_e = s.eve_coefficient().unwrap();
    assert!((eve.rate_scale - 6.0 / a_e).abs() < 1e-12);
    assert!((eve.mean() - a_e).abs() < 1e-12);

    let mut own = s;
    own.eve_denominator = EveDenominator::OwnRho;
    own.eve.rho = 0.5;
    let mut printed = own;
    printed.eve_denominator = EveDenominator::AsPrinted;
    assert_ne!(own.eve_coefficient().unwrap(), printed.eve_coefficient().unwrap());
    assert_eq!(
        printed.eve_coefficient().unwrap(),
        effective_snr_coefficient(&printed.eve, printed.main.rho).unwrap()
    );

    let mut blind = s;
    blind.eve.delta = 1.0;
    assert!(eve_snr_law(&blind).unwrap().is_degenerate());
}

#[test]
fn out_of_range_inputs_are_rejected() {
    assert!(effective_snr_coefficient(&budget(30.0, 1.2, 0.2), 0.8).is_err());
    assert!(effective_snr_coefficient(&budget(30.0, 0.8, -0.1), 0.8).is_err());
    assert!(effective_snr_coefficient(&budget(f64::NAN, 0.8, 0.2), 0.8).is_err());
    assert!(harvested_energy(&LinkBudget::default_main(), 1.5).is_err());
    assert!(simulate_estimation_model(&LinkBudget::default_main(), -1.0, 1.0).is_err());
}

proptest! {
    #[test]
    fn coefficient_monotone_in_omega_and_delta(
        omega_db in -20.0f64..80.0,
        step in 0.1f64..20.0,
        rho in 0.01f64..1.0,
        delta in 0.0f64..0.95,
        dd in 0.001f64..0.05,
    ) {
        let a = effective_snr_coefficient(&budget(omega_db, rho, delta), rho).unwrap();
        let louder = effective_snr_coefficient(&budget(omega_db + step, rho, delta), rho).unwrap();
        prop_assert!(louder > a);
        let worse = effective_snr_coefficient(&budget(omega_db, rho, delta + dd), rho).unwrap();
        prop_assert!(worse < a);
        if delta > 0.0 {
            let ceiling = (1.0 - delta * delta) / (delta * delta);
            prop_assert!(a < ceiling);
        }
    }

    #[test]
    fn harvested_energy_linear_in_split(rho in 0.0f64..=1.0, zeta in 0.0f64..=1.0, omega_db in -10.0f64..50.0) {
        let e = harvested_energy(&budget(omega_db, rho, 0.2), zeta).unwrap();
        let expected = zeta * (1.0 - rho) * db_to_linear(omega_db);
        prop_assert!((e - expected).abs() <= 1e-12 * expected.max(1e-300));
    }
}
