#![allow(dead_code)]

pub mod equivalence;
pub mod oracle;

use graphsize::experiment::walker_seeds;
use graphsize::graph::largest_connected_component;
use graphsize::{generate, sample_rw, sample_rw_multi, sample_uis, sample_wis, Graph, Sample, WeightRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Positive weight derived from the node id, spread over two decades.
pub fn node_weight(node: u64) -> f64 {
    let h = node.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 40;
    10f64.powf((h % 2001) as f64 / 1000.0 - 1.0)
}

/// A connected random graph with 20 to 120 nodes.
pub fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.random_range(20..120);
    let p = rng.random_range(0.03..0.25);
    largest_connected_component(&generate::erdos_renyi(n, p, rng.random()).unwrap())
}

/// Sample number `case` of the randomized suite: uniform, weighted with
/// degree or id-derived weights, single walks with degree or id-derived
/// weights, and multi-walker walks, with `n <= 300`.
pub fn random_sample(case: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE + case);
    let mut g = random_graph(&mut rng);
    while g.edge_count() == 0 {
        g = random_graph(&mut rng);
    }
    let n = rng.random_range(2..=300);
    let seed = rng.random();
    match case % 6 {
        0 => sample_uis(&g, n, seed).unwrap(),
        1 => sample_wis(&g, &WeightRule::Degree, n, seed).unwrap(),
        2 => {
            let table: Vec<f64> = g.ids().iter().map(|&id| node_weight(id)).collect();
            sample_wis(&g, &WeightRule::Table(table.into()), n, seed).unwrap()
        }
        3 => sample_rw(&g, n, seed, None).unwrap(),
        4 => sample_rw(&g, n, seed, None).unwrap().map_weights(|r| node_weight(r.node)),
        _ => {
            let k = rng.random_range(2..=6);
            sample_rw_multi(&g, k, n.div_ceil(k), &walker_seeds(seed, k)).unwrap()
        }
    }
}
