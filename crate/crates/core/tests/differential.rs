//! Differential testing: the primary operators must agree bit-exactly with
//! the definition-literal oracles, exhaustively on every small model and on
//! a seeded random stream of larger ones.

use idyn_core::dynamics::TransitivityKind;
use idyn_core::falsify::{
    differential_compare, enumerate_ideals, enumerate_selfmaps, enumerate_topologies,
    random_models,
};
use idyn_core::genopen::OpenKind;
use idyn_core::model::Model;

pub const RANDOM_SEED: u64 = 20260810;

fn all_combos() -> Vec<TransitivityKind> {
    let mut out = Vec::new();
    for base in OpenKind::ALL {
        out.push(TransitivityKind::plain(base));
        out.push(TransitivityKind::ideal(base));
    }
    out
}

/// A rotating generalized-kind combo so random models exercise every kind
/// without paying for all ten on each model.
fn rotating_combo(index: usize) -> TransitivityKind {
    let base = OpenKind::GENERALIZED[index % 4];
    if (index / 4) % 2 == 0 {
        TransitivityKind::plain(base)
    } else {
        TransitivityKind::ideal(base)
    }
}

#[test]
fn oracle_agrees_on_every_small_model() {
    let combos = all_combos();
    for n in 1..=3 {
        let topologies = enumerate_topologies(n).unwrap();
        let ideals = enumerate_ideals(n).unwrap();
        let maps = enumerate_selfmaps(n, None, false).unwrap();
        for t in &topologies {
            let continuous: Vec<_> =
                maps.iter().filter(|f| t.is_continuous(f).holds).collect();
            for i in &ideals {
                for f in &continuous {
                    let model = Model::new(t.clone(), i.clone(), (*f).clone());
                    if let Err(e) = differential_compare(&model, &combos) {
                        panic!("{}: {e}", model.to_compact());
                    }
                }
            }
        }
    }
}

#[test]
fn oracle_agrees_on_seeded_random_models() {
    let mut index = 0usize;
    for n in [4usize, 5] {
        for model in random_models(n, 5_000, RANDOM_SEED + n as u64) {
            let combos = [
                TransitivityKind::plain(OpenKind::Open),
                TransitivityKind::ideal(OpenKind::Open),
                rotating_combo(index),
            ];
            if let Err(e) = differential_compare(&model, &combos) {
                panic!("{}: {e}", model.to_compact());
            }
            index += 1;
        }
    }
}
