use casimir_core::constants::{casimir_pressure, ev_to_rad_per_s};
use casimir_core::lifshitz::{pressure, pressure_check};
use casimir_core::{DielectricModel, PlateConfig, ZeroModePolicy};
use proptest::prelude::*;

fn gold() -> DielectricModel {
    DielectricModel::drude(ev_to_rad_per_s(9.03), ev_to_rad_per_s(0.0345)).unwrap()
}

fn plasma() -> DielectricModel {
    DielectricModel::plasma(ev_to_rad_per_s(9.03)).unwrap()
}

fn ideal(a: f64, t: f64) -> PlateConfig {
    PlateConfig::symmetric(DielectricModel::Ideal, a, t)
        .unwrap()
        .with_policy(ZeroModePolicy::ForceIdealBoth)
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn free_energy_derivative_matches_pressure(
        which in 0usize..3,
        a_um in 0.2f64..5.0,
        hot in any::<bool>(),
    ) {
        let model = [gold(), plasma(), DielectricModel::Ideal][which].clone();
        let cfg = PlateConfig::symmetric(model, a_um * 1e-6, if hot { 300.0 } else { 0.0 }).unwrap();
        let p = pressure(&cfg).unwrap();
        let d = pressure_check(&cfg).unwrap();
        let tol = (1e-3 * p.total.abs()).max(p.est_error + d.error);
        prop_assert!((d.value - p.total).abs() <= tol, "{cfg:?}: {} vs {}", d.value, p.total);
    }

    #[test]
    fn plasma_attracts_at_least_as_strongly_as_drude(a_um in 0.2f64..8.0, t in 1.0f64..400.0) {
        let a = a_um * 1e-6;
        let pp = pressure(&PlateConfig::symmetric(plasma(), a, t).unwrap()).unwrap().total;
        let pd = pressure(&PlateConfig::symmetric(gold(), a, t).unwrap()).unwrap().total;
        prop_assert!(pp.abs() >= pd.abs(), "a = {a}, T = {t}: {pp} vs {pd}");
    }

    #[test]
    fn ideal_polarisations_are_equal(a_um in 0.1f64..20.0, t in 0.0f64..500.0) {
        let p = pressure(&ideal(a_um * 1e-6, t)).unwrap();
        prop_assert!((p.te_part / p.tm_part - 1.0).abs() < 1e-10);
    }
}

#[test]
fn plasma_to_drude_ratio_tends_to_two() {
    let ratio = |a: f64| {
        let pp = pressure(&PlateConfig::symmetric(plasma(), a, 300.0).unwrap()).unwrap().total;
        let pd = pressure(&PlateConfig::symmetric(gold(), a, 300.0).unwrap()).unwrap().total;
        pp / pd
    };
    let (r1, r5, r20) = (ratio(1e-6), ratio(5e-6), ratio(20e-6));
    assert!(r1 < r5 && r5 < r20, "{r1} {r5} {r20}");
    assert!((r20 - 2.0).abs() < 0.01, "{r20}");
}

#[test]
fn one_kelvin_matches_zero_temperature() {
    // Holds for models with a TE zero mode; Drude shifts by its (physical) missing TE term.
    for model in [DielectricModel::Ideal, plasma()] {
        let cold = PlateConfig::symmetric(model.clone(), 1e-6, 0.0).unwrap();
        let p0 = pressure(&cold).unwrap().total;
        let p1 = pressure(&cold.with_temperature(1.0).unwrap()).unwrap().total;
        assert!((p1 / p0 - 1.0).abs() < 1e-4, "{model:?}: {p1} vs {p0}");
    }
}

#[test]
fn pressure_magnitude_decreases_with_gap() {
    for model in [gold(), plasma(), DielectricModel::Ideal] {
        for t in [0.0, 300.0] {
            let mut prev = f64::INFINITY;
            for i in 0..12 {
                let a = 0.1e-6 * 10f64.powf(i as f64 / 6.0);
                let p = pressure(&PlateConfig::symmetric(model.clone(), a, t).unwrap()).unwrap().total;
                assert!(p.abs() < prev, "{model:?}, T = {t}, a = {a}");
                prev = p.abs();
            }
        }
    }
}

#[test]
fn drude_te_share_fades_at_large_gaps() {
    let share = |a: f64| {
        let p = pressure(&PlateConfig::symmetric(gold(), a, 300.0).unwrap()).unwrap();
        p.te_part / p.total
    };
    let shares: Vec<f64> = [0.5e-6, 1e-6, 2e-6, 5e-6, 10e-6].iter().map(|&a| share(a)).collect();
    assert!(shares.windows(2).all(|w| w[1] < w[0]), "{shares:?}");
    assert!(shares[4] < 1e-3);
}

#[test]
fn ideal_zero_temperature_is_casimir() {
    for a in [1e-7, 1e-6, 1e-5] {
        let p = pressure(&ideal(a, 0.0)).unwrap().total;
        assert!((p / casimir_pressure(a) - 1.0).abs() < 1e-5);
    }
}
