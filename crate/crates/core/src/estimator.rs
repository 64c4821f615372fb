//! Counting primitives and linear-time accumulators shared by all estimators.
//!
//! Every size estimator here is a ratio. Keeping the numerator and
//! denominator separate (rather than dividing early) lets thinned
//! subsamples be pooled by summing parts, and gives one uniform way to
//! signal "no collisions": a zero denominator.
//!
//! Nothing in this module loops over pairs. Pair sums are rewritten as
//! per-node multiplicity sums or closed forms so that the cost is linear in
//! the sample length plus the snapshotted adjacency.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::sample::Sample;

/// Neumaier compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    c: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}

pub(crate) fn csum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<CompensatedSum>().value()
}

/// A finite size estimate, or the sentinel for an estimator whose
/// denominator came out zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EstimateOutcome {
    Finite(f64),
    NoCollisions,
}

impl EstimateOutcome {
    pub fn value(self) -> Option<f64> {
        match self {
            EstimateOutcome::Finite(v) => Some(v),
            EstimateOutcome::NoCollisions => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, EstimateOutcome::Finite(_))
    }
}

impl fmt::Display for EstimateOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimateOutcome::Finite(v) => write!(f, "{v}"),
            EstimateOutcome::NoCollisions => f.write_str("no_collisions"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioEstimate {
    pub numerator: f64,
    pub denominator: f64,
}

impl RatioEstimate {
    pub fn new(numerator: f64, denominator: f64) -> Self {
        Self { numerator, denominator }
    }

    /// `numerator / denominator + offset`, folded into a single ratio so
    /// that pooling still works.
    pub fn with_offset(numerator: f64, denominator: f64, offset: f64) -> Self {
        Self { numerator: numerator + offset * denominator, denominator }
    }

    pub fn outcome(self) -> EstimateOutcome {
        if self.denominator > 0.0 {
            EstimateOutcome::Finite(self.numerator / self.denominator)
        } else {
            EstimateOutcome::NoCollisions
        }
    }

    pub fn value(self) -> Option<f64> {
        self.outcome().value()
    }
}

/// Occurrence count per distinct node.
pub fn multiplicities(s: &Sample) -> FxHashMap<NodeId, u64> {
    let mut m = FxHashMap::default();
    for v in s.nodes() {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

/// `n^col`: unordered pairs of positions holding the same node.
pub fn count_collisions(s: &Sample) -> u64 {
    multiplicities(s).values().map(|&c| c * (c - 1) / 2).sum()
}

pub fn count_unique(s: &Sample) -> usize {
    multiplicities(s).len()
}

/// `n^ind`: unordered pairs of positions whose nodes are adjacent. Repeated
/// occurrences count separately. Adjacency comes from the records' neighbor
/// snapshots, or from `oracle` when given.
pub fn count_induced_edges(s: &Sample, oracle: Option<&Graph>) -> Result<u64> {
    let mult = multiplicities(s);
    let mut twice = 0u64;
    match oracle {
        None => {
            for (&v, &cv) in &mult {
                let hits: u64 = s.neighbors_of(v).iter().filter_map(|u| mult.get(u)).sum();
                twice += cv * hits;
            }
        }
        Some(g) => {
            for (&v, &cv) in &mult {
                let vi = g.index_of(v).ok_or(Error::UnknownNode(v))?;
                let hits: u64 = g.neighbors(vi).iter().filter_map(|&u| mult.get(&g.id(u))).sum();
                twice += cv * hits;
            }
        }
    }
    Ok(twice / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AuxMode {
    /// Duplicates removed.
    #[default]
    Set,
    /// Every neighbor occurrence kept.
    Multiset,
}

impl AuxMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AuxMode::Set => "set",
            AuxMode::Multiset => "multiset",
        }
    }
}

impl std::str::FromStr for AuxMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "set" => Ok(AuxMode::Set),
            "multiset" => Ok(AuxMode::Multiset),
            other => Err(Error::param(format!("unknown auxiliary-set mode {other:?}"))),
        }
    }
}

/// The auxiliary node collection `A` that sample entries are matched against.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliarySet {
    mode: AuxMode,
    counts: FxHashMap<NodeId, u64>,
    cardinality: u64,
}

impl AuxiliarySet {
    /// `A` from an explicit node list.
    pub fn from_nodes<I: IntoIterator<Item = NodeId>>(nodes: I, mode: AuxMode) -> Self {
        let mut counts: FxHashMap<NodeId, u64> = FxHashMap::default();
        for v in nodes {
            let c = counts.entry(v).or_insert(0);
            *c = match mode {
                AuxMode::Set => 1,
                AuxMode::Multiset => *c + 1,
            };
        }
        let cardinality = counts.values().sum();
        Self { mode, counts, cardinality }
    }

    pub fn mode(&self) -> AuxMode {
        self.mode
    }

    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    /// Number of copies of `v` in `A`.
    pub fn count(&self, v: NodeId) -> u64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }
}

/// `A` = union of the sampled nodes' neighbor lists.
pub fn build_auxiliary(s: &Sample, mode: AuxMode) -> AuxiliarySet {
    AuxiliarySet::from_nodes(s.records().iter().flat_map(|r| s.record_neighbors(r).iter().copied()), mode)
}

/// `n^xcol`: matches between sample entries and elements of `A`.
pub fn count_cross_collisions(s: &Sample, a: &AuxiliarySet) -> u64 {
    s.nodes().map(|v| a.count(v)).sum()
}

/// `sum_{i<j} 1/(w_i w_j)` through `((sum 1/w)^2 - sum 1/w^2) / 2`.
pub fn pairwise_inverse_weight_sum(s: &Sample) -> Result<f64> {
    s.check_weights()?;
    let inv = csum(s.records().iter().map(|r| 1.0 / r.weight));
    let inv_sq = csum(s.records().iter().map(|r| 1.0 / (r.weight * r.weight)));
    Ok(0.5 * (inv * inv - inv_sq))
}

/// Pools estimates by summing numerators and denominators.
pub fn aggregate_ratios(parts: &[RatioEstimate]) -> Result<RatioEstimate> {
    if parts.is_empty() {
        return Err(Error::param("nothing to aggregate"));
    }
    Ok(RatioEstimate::new(
        csum(parts.iter().map(|p| p.numerator)),
        csum(parts.iter().map(|p| p.denominator)),
    ))
}

/// Arithmetic mean of the estimates; a single infinite member makes the
/// mean infinite.
pub fn aggregate_mean(values: &[EstimateOutcome]) -> Result<EstimateOutcome> {
    if values.is_empty() {
        return Err(Error::param("nothing to aggregate"));
    }
    let mut total = CompensatedSum::new();
    for v in values {
        match v {
            EstimateOutcome::Finite(x) => total.add(*x),
            EstimateOutcome::NoCollisions => return Ok(EstimateOutcome::NoCollisions),
        }
    }
    Ok(EstimateOutcome::Finite(total.value() / values.len() as f64))
}

/// Dense re-indexing of a sample for the streaming estimators.
///
/// Sampled nodes get local ids `0..distinct` in order of first appearance;
/// neighbors that were never sampled get ids after that. For each sampled
/// node the neighbor snapshot is stored as local ids.
#[derive(Debug, Clone)]
pub struct SampleIndex {
    /// Local id of each record's node.
    pub record_node: Vec<u32>,
    /// Number of distinct sampled nodes.
    pub distinct: usize,
    /// Sampled nodes plus all their neighbors.
    pub universe: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl SampleIndex {
    pub fn new(s: &Sample) -> Self {
        let mut local: FxHashMap<NodeId, u32> = FxHashMap::default();
        let mut order: Vec<NodeId> = Vec::new();
        let record_node: Vec<u32> = s
            .nodes()
            .map(|v| {
                *local.entry(v).or_insert_with(|| {
                    order.push(v);
                    (order.len() - 1) as u32
                })
            })
            .collect();
        let distinct = order.len();
        let mut offsets = Vec::with_capacity(distinct + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        let mut next = distinct as u32;
        for &v in &order {
            for u in s.neighbors_of(v) {
                let id = *local.entry(*u).or_insert_with(|| {
                    next += 1;
                    next - 1
                });
                targets.push(id);
            }
            offsets.push(targets.len());
        }
        Self { record_node, distinct, universe: next as usize, offsets, targets }
    }

    /// Local neighbor ids of sampled local node `v`.
    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    #[inline]
    pub fn record_neighbors(&self, position: usize) -> &[u32] {
        self.neighbors(self.record_node[position])
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::sample::{Method, SampleBuilder, SampleMeta};

    /// Sample of `nodes` with the given adjacency (unlisted nodes isolated).
    pub(crate) fn sample_on(method: Method, nodes: &[NodeId], weights: &[f64], edges: &[(NodeId, NodeId)]) -> Sample {
        let mut b = SampleBuilder::new(SampleMeta::new(method, 0, "custom", ""));
        for (i, &v) in nodes.iter().enumerate() {
            let nb: Vec<NodeId> = edges
                .iter()
                .filter_map(|&(a, c)| if a == v { Some(c) } else if c == v { Some(a) } else { None })
                .collect();
            b.push(v, weights.get(i).copied().unwrap_or(1.0), 0, &nb).unwrap();
        }
        b.build()
    }

    pub(crate) fn unit(nodes: &[NodeId]) -> Sample {
        sample_on(Method::Uis, nodes, &[], &[])
    }

    const TRIANGLE: [(NodeId, NodeId); 3] = [(1, 2), (2, 3), (1, 3)];
    const PATH: [(NodeId, NodeId); 2] = [(1, 2), (2, 3)];

    /// Eleven draws over eight distinct nodes with four collisions.
    pub(crate) fn figure_one() -> Sample {
        unit(&[1, 1, 1, 2, 2, 3, 4, 5, 6, 7, 8])
    }

    #[test]
    fn collisions_and_uniques() {
        let s = figure_one();
        assert_eq!(s.len(), 11);
        assert_eq!(count_collisions(&s), 4);
        assert_eq!(count_unique(&s), 8);
        // n^col + n^unique != n here.
        assert_ne!(count_collisions(&s) as usize + count_unique(&s), s.len());
        assert_eq!(count_collisions(&unit(&[1, 2, 3, 4])), 0);
        assert_eq!(count_collisions(&unit(&[9, 9, 9, 9])), 6);
        assert_eq!(count_unique(&unit(&[1, 2, 3, 4, 5, 6, 7])), 7);
        assert_eq!(count_unique(&unit(&[9, 9])), 1);
    }

    #[test]
    fn induced_edges() {
        let s = sample_on(Method::Uis, &[1, 2, 3], &[], &TRIANGLE);
        assert_eq!(count_induced_edges(&s, None).unwrap(), 3);
        let s = sample_on(Method::Uis, &[1, 1, 2], &[], &TRIANGLE);
        assert_eq!(count_induced_edges(&s, None).unwrap(), 2);
        let s = sample_on(Method::Uis, &[1, 3], &[], &PATH);
        assert_eq!(count_induced_edges(&s, None).unwrap(), 0);

        let g = Graph::from_edges(TRIANGLE).unwrap();
        let s = sample_on(Method::Uis, &[1, 1, 2], &[], &TRIANGLE);
        assert_eq!(count_induced_edges(&s, Some(&g)).unwrap(), 2);
        let stray = unit(&[77]);
        assert!(matches!(count_induced_edges(&stray, Some(&g)), Err(Error::UnknownNode(77))));
    }

    #[test]
    fn auxiliary_sets_on_star() {
        let star: Vec<(NodeId, NodeId)> = (1..=4).map(|l| (0, l)).collect();
        let s = sample_on(Method::Uis, &[1, 2], &[], &star);
        let multi = build_auxiliary(&s, AuxMode::Multiset);
        assert_eq!((multi.cardinality(), multi.count(0)), (2, 2));
        let set = build_auxiliary(&s, AuxMode::Set);
        assert_eq!((set.cardinality(), set.count(0)), (1, 1));

        let hub = sample_on(Method::Uis, &[0], &[], &star);
        for mode in [AuxMode::Set, AuxMode::Multiset] {
            let a = build_auxiliary(&hub, mode);
            assert_eq!(a.cardinality(), 4);
            assert!((1..=4).all(|l| a.count(l) == 1));
        }
    }

    #[test]
    fn cross_collisions() {
        let s = unit(&[5]);
        assert_eq!(count_cross_collisions(&s, &AuxiliarySet::from_nodes([5], AuxMode::Set)), 1);
        let s = unit(&[5, 5]);
        let a = AuxiliarySet::from_nodes([5, 5, 6], AuxMode::Multiset);
        assert_eq!(count_cross_collisions(&s, &a), 4);
    }

    #[test]
    fn pairwise_inverse_weights() {
        let s = sample_on(Method::Wis, &[1, 2], &[1.0, 2.0], &[]);
        assert_eq!(pairwise_inverse_weight_sum(&s).unwrap(), 0.5);
        let s = unit(&[1, 2, 3]);
        assert_eq!(pairwise_inverse_weight_sum(&s).unwrap(), 3.0);
        let s = sample_on(Method::Wis, &[1, 2], &[1.0, 0.0], &[]);
        assert!(matches!(pairwise_inverse_weight_sum(&s), Err(Error::InvalidWeight { position: 1, .. })));
    }

    #[test]
    fn ratio_aggregation() {
        let r = aggregate_ratios(&[RatioEstimate::new(1.0, 2.0), RatioEstimate::new(3.0, 4.0)]).unwrap();
        assert!((r.value().unwrap() - 4.0 / 6.0).abs() < 1e-15);
        let r = aggregate_ratios(&[RatioEstimate::new(1.0, 0.0), RatioEstimate::new(3.0, 4.0)]).unwrap();
        assert_eq!(r.outcome(), EstimateOutcome::Finite(1.0));
        let r = aggregate_ratios(&[RatioEstimate::new(1.0, 0.0), RatioEstimate::new(2.0, 0.0)]).unwrap();
        assert_eq!(r.outcome(), EstimateOutcome::NoCollisions);
        assert!(aggregate_ratios(&[]).is_err());
    }

    #[test]
    fn mean_aggregation() {
        use EstimateOutcome::*;
        assert_eq!(aggregate_mean(&[Finite(2.0), Finite(4.0)]).unwrap(), Finite(3.0));
        assert_eq!(aggregate_mean(&[Finite(2.0), NoCollisions]).unwrap(), NoCollisions);
        assert_eq!(aggregate_mean(&[Finite(5.0)]).unwrap(), Finite(5.0));
    }

    #[test]
    fn offset_folding() {
        let r = RatioEstimate::with_offset(8.0, 4.0, 1.0);
        assert_eq!(r.outcome(), EstimateOutcome::Finite(3.0));
        assert_eq!(RatioEstimate::with_offset(0.0, 0.0, 1.0).outcome(), EstimateOutcome::NoCollisions);
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let values = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(csum(values), 2.0);
    }

    #[test]
    fn sample_index_layout() {
        let s = sample_on(Method::Uis, &[2, 1, 2], &[], &PATH);
        let idx = SampleIndex::new(&s);
        assert_eq!(idx.record_node, vec![0, 1, 0]);
        assert_eq!(idx.distinct, 2);
        assert_eq!(idx.universe, 3);
        assert_eq!(idx.neighbors(0), &[1, 2]);
        assert_eq!(idx.record_neighbors(1), &[0]);
    }
}
