//! Node samples and the samplers that produce them.
//!
//! A [`Sample`] is self-contained: every record knows its node's degree,
//! sampling weight and neighbor list, so estimators never consult the graph.
//! This mirrors a crawl, where only visited nodes' adjacency is known.
//! Neighbor lists are snapshotted once per distinct node.
//!
//! All samplers draw from ChaCha8 seeded with the caller's seed.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Name of the generator recorded in sample metadata.
pub const RNG_NAME: &str = "chacha8";

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Uniform independence sample.
    Uis,
    /// Weighted independence sample.
    Wis,
    /// Single simple random walk.
    Rw,
    /// Several independent random walks, concatenated.
    RwMulti,
}

impl Method {
    pub fn is_walk(self) -> bool {
        matches!(self, Method::Rw | Method::RwMulti)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Uis => "uis",
            Method::Wis => "wis",
            Method::Rw => "rw",
            Method::RwMulti => "rw-multi",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "uis" => Method::Uis,
            "wis" => Method::Wis,
            "rw" => Method::Rw,
            "rw-multi" | "rw_multi" => Method::RwMulti,
            other => return Err(Error::param(format!("unknown sampling method {other:?}"))),
        })
    }
}

/// How sampling weights `w(v)` were assigned.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightRule {
    Unit,
    Degree,
    /// Explicit weight per dense node index.
    Table(Arc<[f64]>),
}

impl WeightRule {
    pub fn weight(&self, g: &Graph, v: usize) -> f64 {
        match self {
            WeightRule::Unit => 1.0,
            WeightRule::Degree => g.degree(v) as f64,
            WeightRule::Table(t) => t[v],
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            WeightRule::Unit => "unit",
            WeightRule::Degree => "degree",
            WeightRule::Table(_) => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRecord {
    pub position: usize,
    pub node: NodeId,
    pub degree: usize,
    pub weight: f64,
    pub walker: usize,
}

/// Which subsample of a parent sample this is, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thinning {
    pub theta: usize,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleMeta {
    pub method: Method,
    pub seed: u64,
    pub weight_rule: String,
    pub graph_digest: String,
    pub rng: String,
    pub thinning: Option<Thinning>,
}

impl SampleMeta {
    pub fn new(method: Method, seed: u64, weight_rule: &str, graph_digest: &str) -> Self {
        Self {
            method,
            seed,
            weight_rule: weight_rule.to_string(),
            graph_digest: graph_digest.to_string(),
            rng: RNG_NAME.to_string(),
            thinning: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sample {
    meta: SampleMeta,
    records: Vec<SampleRecord>,
    neighbors: FxHashMap<NodeId, Arc<[NodeId]>>,
}

impl Sample {
    pub fn meta(&self) -> &SampleMeta {
        &self.meta
    }

    pub fn method(&self) -> Method {
        self.meta.method
    }

    pub fn records(&self) -> &[SampleRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.records.iter().map(|r| r.node)
    }

    /// Neighbor snapshot of a sampled node (sorted by id).
    pub fn neighbors_of(&self, node: NodeId) -> &[NodeId] {
        self.neighbors.get(&node).map(|n| &n[..]).unwrap_or(&[])
    }

    pub fn record_neighbors(&self, record: &SampleRecord) -> &[NodeId] {
        self.neighbors_of(record.node)
    }

    /// Number of distinct walker ids.
    pub fn walker_count(&self) -> usize {
        let mut ids: Vec<usize> = self.records.iter().map(|r| r.walker).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }

    /// Fails on the first non-positive (or non-finite) weight.
    pub fn check_weights(&self) -> Result<()> {
        match self.records.iter().find(|r| !(r.weight > 0.0 && r.weight.is_finite())) {
            Some(r) => Err(Error::InvalidWeight { position: r.position, weight: r.weight }),
            None => Ok(()),
        }
    }

    /// New sample made of the records at `positions` (in that order),
    /// renumbered from zero.
    pub fn subsample(&self, positions: &[usize], thinning: Option<Thinning>) -> Sample {
        let mut meta = self.meta.clone();
        meta.thinning = thinning;
        let records: Vec<SampleRecord> = positions
            .iter()
            .enumerate()
            .map(|(i, &p)| SampleRecord { position: i, ..self.records[p] })
            .collect();
        let mut neighbors = FxHashMap::default();
        for r in &records {
            neighbors.entry(r.node).or_insert_with(|| self.neighbors[&r.node].clone());
        }
        Sample { meta, records, neighbors }
    }

    /// Same records with weights replaced by `f(record)`.
    pub fn map_weights(&self, f: impl Fn(&SampleRecord) -> f64) -> Sample {
        let mut s = self.clone();
        for r in &mut s.records {
            r.weight = f(r);
        }
        s
    }

    /// Same records and weights, different method tag.
    pub fn with_method(&self, method: Method) -> Sample {
        let mut s = self.clone();
        s.meta.method = method;
        s
    }
}

/// Incrementally assembles a [`Sample`].
#[derive(Debug)]
pub struct SampleBuilder {
    meta: SampleMeta,
    records: Vec<SampleRecord>,
    neighbors: FxHashMap<NodeId, Arc<[NodeId]>>,
}

impl SampleBuilder {
    pub fn new(meta: SampleMeta) -> Self {
        Self { meta, records: Vec::new(), neighbors: FxHashMap::default() }
    }

    pub fn with_capacity(meta: SampleMeta, n: usize) -> Self {
        Self { meta, records: Vec::with_capacity(n), neighbors: FxHashMap::default() }
    }

    /// Appends a record. The neighbor list must be the same every time a
    /// node is pushed; it is sorted and deduplicated on first sight.
    pub fn push(&mut self, node: NodeId, weight: f64, walker: usize, neighbors: &[NodeId]) -> Result<&mut Self> {
        let degree = match self.neighbors.get(&node) {
            Some(known) => {
                if known.len() != neighbors.len() {
                    return Err(Error::param(format!("node {node} pushed with inconsistent neighbor lists")));
                }
                known.len()
            }
            None => {
                let mut list = neighbors.to_vec();
                list.sort_unstable();
                list.dedup();
                if list.len() != neighbors.len() || list.binary_search(&node).is_ok() {
                    return Err(Error::param(format!("node {node} has duplicate neighbors or a self-loop")));
                }
                let d = list.len();
                self.neighbors.insert(node, list.into());
                d
            }
        };
        let position = self.records.len();
        self.records.push(SampleRecord { position, node, degree, weight, walker });
        Ok(self)
    }

    /// Appends a graph node, snapshotting its adjacency.
    fn push_graph_node(&mut self, g: &Graph, v: usize, weight: f64, walker: usize) {
        let node = g.id(v);
        let degree = g.degree(v);
        self.neighbors
            .entry(node)
            .or_insert_with(|| g.neighbors(v).iter().map(|&u| g.id(u)).collect());
        let position = self.records.len();
        self.records.push(SampleRecord { position, node, degree, weight, walker });
    }

    pub fn build(self) -> Sample {
        Sample { meta: self.meta, records: self.records, neighbors: self.neighbors }
    }
}

/// `n` i.i.d. uniform draws with replacement.
pub fn sample_uis(g: &Graph, n: usize, seed: u64) -> Result<Sample> {
    if n == 0 {
        return Err(Error::param("sample size must be at least 1"));
    }
    let mut rng = rng_from_seed(seed);
    let mut b = SampleBuilder::with_capacity(SampleMeta::new(Method::Uis, seed, "unit", g.digest()), n);
    for _ in 0..n {
        let v = rng.random_range(0..g.node_count());
        b.push_graph_node(g, v, 1.0, 0);
    }
    Ok(b.build())
}

/// `n` i.i.d. draws with `P(v) = w(v) / sum_u w(u)`, via binary search over
/// the cumulative weight table.
pub fn sample_wis(g: &Graph, rule: &WeightRule, n: usize, seed: u64) -> Result<Sample> {
    if n == 0 {
        return Err(Error::param("sample size must be at least 1"));
    }
    if let WeightRule::Table(t) = rule {
        if t.len() != g.node_count() {
            return Err(Error::param(format!(
                "weight table has {} entries for {} nodes",
                t.len(),
                g.node_count()
            )));
        }
    }
    let mut cumulative = Vec::with_capacity(g.node_count());
    let mut total = 0.0;
    for v in 0..g.node_count() {
        let w = rule.weight(g, v);
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::InvalidWeight { position: v, weight: w });
        }
        total += w;
        cumulative.push(total);
    }
    let mut rng = rng_from_seed(seed);
    let mut b = SampleBuilder::with_capacity(SampleMeta::new(Method::Wis, seed, rule.label(), g.digest()), n);
    for _ in 0..n {
        let x = rng.random::<f64>() * total;
        let v = cumulative.partition_point(|&c| c <= x).min(g.node_count() - 1);
        b.push_graph_node(g, v, rule.weight(g, v), 0);
    }
    Ok(b.build())
}

fn check_walkable(g: &Graph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected { components: g.component_count() });
    }
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    Ok(())
}

fn walk_into(g: &Graph, b: &mut SampleBuilder, n: usize, rng: &mut ChaCha8Rng, start: Option<usize>, walker: usize) {
    let mut v = start.unwrap_or_else(|| rng.random_range(0..g.node_count()));
    for step in 0..n {
        if step > 0 {
            v = *g.neighbors(v).choose(rng).expect("connected graph with edges has no isolated nodes");
        }
        b.push_graph_node(g, v, g.degree(v) as f64, walker);
    }
}

/// Simple random walk of `n` visited nodes; weights are degrees. The start
/// node is drawn uniformly from the seed stream unless given.
pub fn sample_rw(g: &Graph, n: usize, seed: u64, start: Option<NodeId>) -> Result<Sample> {
    if n == 0 {
        return Err(Error::param("sample size must be at least 1"));
    }
    check_walkable(g)?;
    let start = start.map(|id| g.index_of(id).ok_or(Error::UnknownNode(id))).transpose()?;
    let mut rng = rng_from_seed(seed);
    let mut b = SampleBuilder::with_capacity(SampleMeta::new(Method::Rw, seed, "degree", g.digest()), n);
    walk_into(g, &mut b, n, &mut rng, start, 0);
    Ok(b.build())
}

/// `seeds.len()` independent walks of `per_walk` steps each, concatenated
/// with walker tags `0..k`. Walk `k` is exactly `sample_rw(g, per_walk, seeds[k], None)`.
pub fn sample_rw_multi(g: &Graph, walkers: usize, per_walk: usize, seeds: &[u64]) -> Result<Sample> {
    if walkers == 0 || per_walk == 0 {
        return Err(Error::param("need at least one walker and one step per walk"));
    }
    if seeds.len() != walkers {
        return Err(Error::param(format!("{} seeds given for {walkers} walkers", seeds.len())));
    }
    check_walkable(g)?;
    let method = if walkers == 1 { Method::Rw } else { Method::RwMulti };
    let mut b = SampleBuilder::with_capacity(SampleMeta::new(method, seeds[0], "degree", g.digest()), walkers * per_walk);
    for (k, &seed) in seeds.iter().enumerate() {
        let mut rng = rng_from_seed(seed);
        walk_into(g, &mut b, per_walk, &mut rng, None, k);
    }
    Ok(b.build())
}

/// Seeded shuffle of `0..n`, used for random splits.
pub(crate) fn shuffled_positions(n: usize, seed: u64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rng_from_seed(seed));
    idx
}
