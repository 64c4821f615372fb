//! Quadratic-time reference implementations. Every function walks all
//! position pairs directly and shares no code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use graphsize::graph::NodeId;
use graphsize::Sample;

fn nodes(s: &Sample) -> Vec<NodeId> {
    s.records().iter().map(|r| r.node).collect()
}

fn weights(s: &Sample) -> Vec<f64> {
    s.records().iter().map(|r| r.weight).collect()
}

fn adjacent(s: &Sample, i: usize, j: usize) -> bool {
    let r = s.records();
    s.record_neighbors(&r[i]).contains(&r[j].node)
}

/// Unordered pairs `i < j` with equal nodes.
pub fn collisions(s: &Sample) -> u64 {
    let v = nodes(s);
    let mut c = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            c += (v[i] == v[j]) as u64;
        }
    }
    c
}

/// Unordered pairs `i < j` whose nodes are adjacent.
pub fn induced_edges(s: &Sample) -> u64 {
    let mut c = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            c += adjacent(s, i, j) as u64;
        }
    }
    c
}

/// `(sum w)(sum 1/w) / (2 n^col)` as (numerator, denominator).
pub fn node_wis(s: &Sample) -> (f64, f64) {
    let w = weights(s);
    let mut a = 0.0;
    let mut b = 0.0;
    for x in &w {
        a += x;
        b += 1.0 / x;
    }
    (a * b, 2.0 * collisions(s) as f64)
}

pub fn node_uis(s: &Sample) -> (f64, f64) {
    let n = s.len() as f64;
    (n * n, 2.0 * collisions(s) as f64)
}

/// `sum_{i<j} 1{edge}/(w_i w_j)` and `sum_{i<j} 1/(w_i w_j)`.
pub fn weighted_pairs(s: &Sample) -> (f64, f64) {
    let w = weights(s);
    let (mut edges, mut all) = (0.0, 0.0);
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let t = 1.0 / (w[i] * w[j]);
            all += t;
            if adjacent(s, i, j) {
                edges += t;
            }
        }
    }
    (edges, all)
}

pub fn density_wis(s: &Sample) -> f64 {
    let (e, a) = weighted_pairs(s);
    e / a
}

pub fn inda_uis(s: &Sample) -> Option<f64> {
    let n = s.len() as f64;
    let deg: f64 = s.records().iter().map(|r| r.degree as f64).sum();
    let ind = induced_edges(s) as f64;
    (ind > 0.0).then(|| (n - 1.0) * deg / (2.0 * ind) + 1.0)
}

pub fn inda_wis(s: &Sample) -> Option<f64> {
    let (mut num, mut den) = (0.0, 0.0);
    for r in s.records() {
        num += r.degree as f64 / r.weight;
        den += 1.0 / r.weight;
    }
    let density = density_wis(s);
    (density > 0.0).then(|| num / den / density + 1.0)
}

/// Neighbor occurrences of all sampled positions, optionally deduplicated.
pub fn auxiliary(s: &Sample, set: bool) -> Vec<NodeId> {
    let mut a: Vec<NodeId> = s.records().iter().flat_map(|r| s.record_neighbors(r).to_vec()).collect();
    if set {
        a = a.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    }
    a
}

/// `|A| sum(1/w) / sum_s sum_{a in A} 1{a = s}/w(s)`.
pub fn indb_wis(s: &Sample, a: &[NodeId]) -> (f64, f64) {
    let (mut inv, mut hits) = (0.0, 0.0);
    for r in s.records() {
        inv += 1.0 / r.weight;
        for &x in a {
            if x == r.node {
                hits += 1.0 / r.weight;
            }
        }
    }
    (a.len() as f64 * inv, hits)
}

pub fn indb_uis(s: &Sample, a: &[NodeId]) -> (f64, f64) {
    let mut hits = 0.0;
    for r in s.records() {
        hits += a.iter().filter(|&&x| x == r.node).count() as f64;
    }
    (a.len() as f64 * s.len() as f64, hits)
}

/// Pair filter used by the margin oracles.
#[derive(Clone, Copy, Debug)]
pub enum Keep {
    FartherThan(usize),
    OtherWalker,
}

fn kept(s: &Sample, keep: Keep, i: usize, j: usize) -> bool {
    i != j
        && match keep {
            Keep::FartherThan(m) => i.abs_diff(j) > m,
            Keep::OtherWalker => s.records()[i].walker != s.records()[j].walker,
        }
}

/// `sum w_i/w_j` and `sum 1{s_i = s_j}` over kept ordered pairs.
pub fn node_margin(s: &Sample, keep: Keep) -> (f64, f64) {
    let r = s.records();
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..r.len() {
        for j in 0..r.len() {
            if kept(s, keep, i, j) {
                num += r[i].weight / r[j].weight;
                if r[i].node == r[j].node {
                    den += 1.0;
                }
            }
        }
    }
    (num, den)
}

/// `sum deg(s_i)/w(s_j)` and `sum 1{s_i in N(s_j)}/w(s_i)` over kept
/// ordered pairs.
pub fn ind_margin_multiset(s: &Sample, keep: Keep) -> (f64, f64) {
    let r = s.records();
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..r.len() {
        for j in 0..r.len() {
            if kept(s, keep, i, j) {
                num += r[i].degree as f64 / r[j].weight;
                if adjacent(s, j, i) {
                    den += 1.0 / r[i].weight;
                }
            }
        }
    }
    (num, den)
}

/// Per position `x`: `A_x` is the set of neighbors of kept partners;
/// `sum |A_x|/w_x` and `sum 1{s_x in A_x}/w_x`.
pub fn ind_margin_set(s: &Sample, keep: Keep) -> (f64, f64) {
    let r = s.records();
    let (mut num, mut den) = (0.0, 0.0);
    for x in 0..r.len() {
        let mut a = BTreeSet::new();
        for (y, ry) in r.iter().enumerate() {
            if kept(s, keep, x, y) {
                a.extend(s.record_neighbors(ry).iter().copied());
            }
        }
        num += a.len() as f64 / r[x].weight;
        if a.contains(&r[x].node) {
            den += 1.0 / r[x].weight;
        }
    }
    (num, den)
}

/// Star aggregates under uniform sampling: (L, psi1, psi_-1, ncol).
pub fn star_uis(s: &Sample) -> (u64, f64, f64, f64) {
    let flat: Vec<NodeId> = s.records().iter().flat_map(|r| s.record_neighbors(r).to_vec()).collect();
    let l = flat.len() as f64;
    let deg: f64 = s.records().iter().map(|r| r.degree as f64).sum();
    let sq: f64 = s.records().iter().map(|r| (r.degree * r.degree) as f64).sum();
    let mut ncol = 0.0;
    for i in 0..flat.len() {
        for j in i + 1..flat.len() {
            if flat[i] == flat[j] {
                ncol += 1.0;
            }
        }
    }
    (flat.len() as u64, l * sq / deg, l * s.len() as f64 / deg, ncol)
}

/// Star aggregates under weighted sampling; neighbor occurrences carry the
/// parent's weight.
pub fn star_wis(s: &Sample) -> (u64, f64, f64, f64) {
    let flat: Vec<(NodeId, f64)> =
        s.records().iter().flat_map(|r| s.record_neighbors(r).iter().map(|&u| (u, r.weight)).collect::<Vec<_>>()).collect();
    let l = flat.len() as f64;
    let (mut deg, mut sq, mut inv) = (0.0, 0.0, 0.0);
    for r in s.records() {
        deg += r.degree as f64 / r.weight;
        sq += (r.degree * r.degree) as f64 / r.weight;
        inv += 1.0 / r.weight;
    }
    (flat.len() as u64, l * sq / deg, l * inv / deg, star_ncol(&flat))
}

pub fn star_ncol(flat: &[(NodeId, f64)]) -> f64 {
    let l = flat.len() as f64;
    let (mut same, mut all) = (0.0, 0.0);
    for i in 0..flat.len() {
        for j in 0..flat.len() {
            if i != j {
                let t = 1.0 / (flat[i].1 * flat[j].1);
                all += t;
                if flat[i].0 == flat[j].0 {
                    same += t;
                }
            }
        }
    }
    if same == 0.0 {
        0.0
    } else {
        l * (l - 1.0) / 2.0 * same / all
    }
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

pub fn pair_close(got: (f64, f64), want: (f64, f64), tol: f64) -> bool {
    rel_close(got.0, want.0, tol) && rel_close(got.1, want.1, tol)
}
