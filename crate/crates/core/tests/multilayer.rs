use casimir_core::constants::ev_to_rad_per_s;
use casimir_core::lifshitz::pressure;
use casimir_core::multilayer::{five_layer_pressure, ideal_reference};
use casimir_core::{DielectricModel, FiveLayerConfig, PlateConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gold() -> DielectricModel {
    DielectricModel::drude(ev_to_rad_per_s(9.03), ev_to_rad_per_s(0.0345)).unwrap()
}

fn cavity(c: f64, b: f64, d: f64, model: DielectricModel, t: f64) -> FiveLayerConfig {
    FiveLayerConfig::new(c, b, d, model.clone(), model, t).unwrap()
}

#[test]
fn random_configurations_are_antisymmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let c = rng.gen_range(1e-6..6e-6);
        let b = rng.gen_range(0.05..0.5) * c;
        let d = rng.gen_range(0.02..0.9) * 0.5 * (c - b);
        let t = if rng.gen_bool(0.5) { 300.0 } else { 0.0 };
        let model = if rng.gen_bool(0.5) { gold() } else { DielectricModel::Ideal };
        let cfg = cavity(c, b, d, model, t);
        let p = five_layer_pressure(&cfg).unwrap().total;
        let m = five_layer_pressure(&cfg.with_delta(-d).unwrap()).unwrap().total;
        assert!((p + m).abs() <= 1e-12 * p.abs(), "{cfg:?}: {p} {m}");
    }
}

#[test]
fn ideal_cavity_gaps_decouple() {
    for (c, b, d) in [(3e-6, 0.5e-6, 0.4e-6), (10e-6, 8e-6, 0.3e-6), (2e-6, 1e-6, 0.2e-6)] {
        let p = five_layer_pressure(&cavity(c, b, d, DielectricModel::Ideal, 0.0)).unwrap().total;
        let r = ideal_reference(c - b, d).unwrap();
        assert!((p / r - 1.0).abs() < 1e-3, "{p} vs {r}");
    }
}

#[test]
fn real_metal_ratio_stays_within_unity() {
    let base = cavity(3e-6, 0.5e-6, 0.0, gold(), 300.0);
    for i in 1..=20 {
        let d = 1.2e-6 * i as f64 / 20.0;
        let p = five_layer_pressure(&base.with_delta(d).unwrap()).unwrap().total;
        let ratio = p / ideal_reference(base.gap_h(), d).unwrap();
        assert!(ratio > 0.0 && ratio <= 1.0, "delta = {d}: {ratio}");
    }
}

#[test]
fn near_wall_limit_is_the_two_plate_pressure() {
    let (c, b) = (3e-6, 0.5e-6);
    for near in [0.05e-6, 0.1e-6, 0.2e-6] {
        let d = 0.5 * (c - b) - near;
        let far = c - b - near;
        assert!(far >= 5.0 * near);
        let slab = five_layer_pressure(&cavity(c, b, d, gold(), 300.0)).unwrap().total;
        let pair = pressure(&PlateConfig::symmetric(gold(), near, 300.0).unwrap()).unwrap().total;
        // Slab pressure is positive (pulled toward the near wall); the pair pressure is attractive.
        assert!((slab / -pair - 1.0).abs() < 0.05, "near = {near}: {slab} vs {pair}");
    }
}
