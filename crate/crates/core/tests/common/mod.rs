#![allow(dead_code)]

use std::collections::BTreeSet;

use ordsup_core::audit::{eppo_catalog, epo_catalog, nilpotent_catalog};
use ordsup_core::graph::SimpleGraph;
use ordsup_core::group::{Group, Limits};
use ordsup_core::groupspec::parse_and_build;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every catalog and family group of order at most `max_order`, by spec.
pub fn catalog_groups(max_order: usize) -> Vec<(String, Group)> {
    let mut specs: BTreeSet<String> = BTreeSet::new();
    specs.extend(eppo_catalog());
    specs.extend(epo_catalog());
    specs.extend(nilpotent_catalog());
    specs.extend((3..=64).map(|n| format!("dihedral:{n}")));
    specs.extend((2..=32).map(|n| format!("dicyclic:{n}")));
    specs.extend((3..=6).map(|n| format!("sym:{n}")));
    specs.extend((3..=6).map(|n| format!("alt:{n}")));
    let limits = Limits::default();
    specs
        .into_iter()
        .filter_map(|spec| {
            let (_, g) = parse_and_build(&spec, &limits).unwrap();
            let g = g.group().expect("small groups are concrete").clone();
            (g.order() <= max_order).then_some((spec, g))
        })
        .collect()
}

/// Seeded G(n, p) graphs with 6..=10 vertices and p in {0.2, 0.4, 0.6}.
pub fn random_graphs(count: usize, seed: u64) -> Vec<SimpleGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probabilities = [0.2, 0.4, 0.6];
    (0..count)
        .map(|i| {
            let n = rng.gen_range(6..=10);
            let p = probabilities[i % 3];
            SimpleGraph::from_fn(n, |_, _| rng.gen_bool(p))
        })
        .collect()
}
