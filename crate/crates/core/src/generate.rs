//! Seeded synthetic graph generators.
//!
//! Node ids are `0..N`. All generators use ChaCha8 seeded from `seed`, so the
//! same arguments always produce the same graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Erdős–Rényi `G(n, p)`, using geometric skips over the pair sequence so
/// the cost is `O(n + |E|)` rather than `O(n^2)`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("G(n, p) needs n >= 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("edge probability {p} outside [0, 1]")));
    }
    let mut b = GraphBuilder::new();
    for v in 0..n as u64 {
        b.add_node(v);
    }
    if p > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let log_q = (1.0 - p).ln();
        // Walk the strictly-lower-triangular pairs (v, w), w < v.
        let (mut v, mut w): (i64, i64) = (1, -1);
        let n = n as i64;
        while v < n {
            let skip = if p >= 1.0 {
                0
            } else {
                let r: f64 = rng.random();
                ((1.0 - r).ln() / log_q).floor() as i64
            };
            w += 1 + skip;
            while w >= v && v < n {
                w -= v;
                v += 1;
            }
            if v < n {
                b.add_edge(v as u64, w as u64);
            }
        }
    }
    b.build()
}

/// Preferential attachment: starts from a clique on `m + 1` nodes, then each
/// new node links to `m` distinct existing nodes chosen proportionally to
/// degree.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m == 0 || n <= m {
        return Err(Error::param(format!("preferential attachment needs 1 <= m < n (m={m}, n={n})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new();
    // Each edge endpoint appears once here, so a uniform pick is degree-biased.
    let mut endpoints: Vec<u64> = Vec::with_capacity(2 * n * m);
    for a in 0..=m as u64 {
        for c in a + 1..=m as u64 {
            b.add_edge(a, c);
            endpoints.extend([a, c]);
        }
    }
    let mut chosen = Vec::with_capacity(m);
    for v in (m as u64 + 1)..n as u64 {
        chosen.clear();
        while chosen.len() < m {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            b.add_edge(v, t);
            endpoints.extend([v, t]);
        }
    }
    b.build()
}

/// `count` cliques of `size` nodes, consecutive cliques joined by one edge
/// into a ring.
pub fn ring_of_cliques(count: usize, size: usize) -> Result<Graph> {
    if count == 0 || size == 0 {
        return Err(Error::param("ring of cliques needs count >= 1 and size >= 1"));
    }
    let mut b = GraphBuilder::new();
    for c in 0..count as u64 {
        let base = c * size as u64;
        for i in 0..size as u64 {
            b.add_node(base + i);
            for j in i + 1..size as u64 {
                b.add_edge(base + i, base + j);
            }
        }
        if count > 1 {
            let next = ((c + 1) % count as u64) * size as u64;
            b.add_edge(base + size as u64 - 1, next);
        }
    }
    b.build()
}

/// `rows x cols` 4-neighbor lattice.
pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::param("grid needs rows >= 1 and cols >= 1"));
    }
    let id = |r: usize, c: usize| (r * cols + c) as u64;
    let mut b = GraphBuilder::new();
    for r in 0..rows {
        for c in 0..cols {
            b.add_node(id(r, c));
            if c + 1 < cols {
                b.add_edge(id(r, c), id(r, c + 1));
            }
            if r + 1 < rows {
                b.add_edge(id(r, c), id(r + 1, c));
            }
        }
    }
    b.build()
}

/// Hub-and-spoke graph with `leaves` leaves around hub 0.
pub fn star(leaves: usize) -> Result<Graph> {
    if leaves == 0 {
        return Err(Error::param("star needs at least one leaf"));
    }
    Graph::from_edges((1..=leaves as u64).map(|l| (0, l)))
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    for a in 0..n as u64 {
        b.add_node(a);
        for c in a + 1..n as u64 {
            b.add_edge(a, c);
        }
    }
    b.build()
}

/// Cliques of varying sizes hanging off a central hub: a small graph with a
/// very skewed degree distribution.
pub fn star_of_cliques(sizes: &[usize]) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    b.add_node(0);
    let mut next = 1u64;
    for &s in sizes {
        let members: Vec<u64> = (next..next + s as u64).collect();
        next += s as u64;
        for (i, &a) in members.iter().enumerate() {
            b.add_edge(0, a);
            for &c in &members[i + 1..] {
                b.add_edge(a, c);
            }
        }
    }
    b.build()
}
