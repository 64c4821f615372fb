//! Corrections for the dependence between consecutive random-walk draws.
//!
//! Thinning keeps every `theta`-th draw ([`thin_simple`]) or splits the walk
//! into `theta` interleaved subsamples whose ratios are pooled
//! ([`thin_shifted`], [`estimate_thinned`]). Margin filtering keeps the whole
//! walk but drops every pair of draws that are at most `m` steps apart, or
//! that come from the same walker ([`node_margin`], [`ind_margin`]).
//!
//! All margin sums run over ordered pairs `(i, j)` with `i != j`.
//!
//! # Set-mode margin IND
//!
//! For draw `x` let `A_x` be the set of all neighbors of draws `y` that form
//! a kept pair with `x`. Set mode uses
//!
//! ```text
//! sum_x |A_x| / w_x  /  sum_x 1{s_x in A_x} / w_x
//! ```
//!
//! which is the Set-mode IND-B estimate when no pair is dropped. Multiset
//! mode counts every neighbor occurrence instead, so that `|A_x|` becomes
//! the degree total of the kept partners and `1{s_x in A_x}` becomes the
//! number of kept partners adjacent to `s_x`.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::estimator::{AuxMode, CompensatedSum, RatioEstimate, SampleIndex};
use crate::induced::indb_auto;
use crate::node::{node_uis, node_wis};
use crate::sample::{Method, Sample, Thinning};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThinningConfig {
    pub theta: usize,
}

impl ThinningConfig {
    pub fn new(theta: usize) -> Result<Self> {
        if theta == 0 {
            return Err(Error::param("thinning parameter must be at least 1"));
        }
        Ok(Self { theta })
    }
}

/// Which ordered pairs of draws a margin estimator keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairFilter {
    /// Keep `(i, j)` when `|i - j| > m`.
    IndexDistance(usize),
    /// Keep `(i, j)` when the draws come from different walkers.
    CrossWalker,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarginConfig {
    pub pair_filter: PairFilter,
}

impl MarginConfig {
    pub fn index_distance(m: usize) -> Self {
        Self { pair_filter: PairFilter::IndexDistance(m) }
    }

    pub fn cross_walker() -> Self {
        Self { pair_filter: PairFilter::CrossWalker }
    }

    pub fn m(&self) -> Option<usize> {
        match self.pair_filter {
            PairFilter::IndexDistance(m) => Some(m),
            PairFilter::CrossWalker => None,
        }
    }
}

/// Positions `offset, offset + theta, ...` below `n`.
pub fn thin_indices(n: usize, theta: usize, offset: usize) -> Vec<usize> {
    (offset..n).step_by(theta.max(1)).collect()
}

/// Every `theta`-th draw starting with the first.
pub fn thin_simple(s: &Sample, cfg: ThinningConfig) -> Sample {
    let keep = thin_indices(s.len(), cfg.theta, 0);
    s.subsample(&keep, Some(Thinning { theta: cfg.theta, offset: 0 }))
}

/// The `theta` interleaved subsamples `[s_k, s_{k+theta}, ...]`. Offsets at
/// or beyond `n` would be empty and are left out.
pub fn thin_shifted(s: &Sample, cfg: ThinningConfig) -> Vec<Sample> {
    (0..cfg.theta.min(s.len()))
        .map(|k| s.subsample(&thin_indices(s.len(), cfg.theta, k), Some(Thinning { theta: cfg.theta, offset: k })))
        .collect()
}

/// Estimators that thinning can feed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseEstimator {
    /// Collision estimator, weighted unless the sample is uniform.
    NodeWis,
    /// IND-B with `A` built from the sampled neighbors.
    IndbAuto(AuxMode),
}

impl BaseEstimator {
    pub fn evaluate(self, s: &Sample) -> Result<RatioEstimate> {
        match self {
            BaseEstimator::NodeWis if s.method() == Method::Uis => Ok(node_uis(s)),
            BaseEstimator::NodeWis => node_wis(s),
            BaseEstimator::IndbAuto(mode) => indb_auto(s, mode),
        }
    }
}

/// Simple mode applies `base` to [`thin_simple`]; shifted mode pools the
/// numerators and denominators of all [`thin_shifted`] subsamples.
pub fn estimate_thinned(s: &Sample, cfg: ThinningConfig, base: BaseEstimator, shifted: bool) -> Result<RatioEstimate> {
    if !shifted {
        return base.evaluate(&thin_simple(s, cfg));
    }
    let mut num = CompensatedSum::new();
    let mut den = CompensatedSum::new();
    for sub in thin_shifted(s, cfg) {
        let r = base.evaluate(&sub)?;
        num.add(r.numerator);
        den.add(r.denominator);
    }
    Ok(RatioEstimate::new(num.value(), den.value()))
}

/// Weights seen by the margin estimators; uniform samples count as unit.
fn effective_weights(s: &Sample) -> Result<Vec<f64>> {
    if s.method() == Method::Uis {
        return Ok(vec![1.0; s.len()]);
    }
    s.check_weights()?;
    Ok(s.records().iter().map(|r| r.weight).collect())
}

/// Dense walker group of every draw, and the number of groups.
fn walker_groups(s: &Sample) -> (Vec<usize>, usize) {
    let mut ids: FxHashMap<usize, usize> = FxHashMap::default();
    let groups = s
        .records()
        .iter()
        .map(|r| {
            let next = ids.len();
            *ids.entry(r.walker).or_insert(next)
        })
        .collect();
    (groups, ids.len())
}

/// Receives the draws entering and leaving the excluded window of the draw
/// being visited. The window always contains the visited draw itself.
trait Window {
    fn enter(&mut self, pos: usize);
    fn leave(&mut self, pos: usize);
    fn visit(&mut self, pos: usize);
}

fn sweep<W: Window>(s: &Sample, filter: PairFilter, w: &mut W) {
    let n = s.len();
    match filter {
        PairFilter::IndexDistance(m) => {
            let mut next = 0;
            for x in 0..n {
                let end = x.saturating_add(m).min(n - 1) + 1;
                while next < end {
                    w.enter(next);
                    next += 1;
                }
                if x > m {
                    w.leave(x - m - 1);
                }
                w.visit(x);
            }
        }
        PairFilter::CrossWalker => {
            let (groups, count) = walker_groups(s);
            let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
            for (pos, &g) in groups.iter().enumerate() {
                members[g].push(pos);
            }
            for group in &members {
                group.iter().for_each(|&p| w.enter(p));
                group.iter().for_each(|&p| w.visit(p));
                group.iter().for_each(|&p| w.leave(p));
            }
        }
    }
}

/// For each draw, the sum of `1/w_j` over its kept partners. Built from
/// sums outside the window rather than by subtraction, so that nearly empty
/// kept sets do not lose precision.
fn kept_inverse_sums(s: &Sample, filter: PairFilter, weights: &[f64]) -> Vec<f64> {
    let n = weights.len();
    match filter {
        PairFilter::IndexDistance(m) => {
            let running = |iter: &mut dyn Iterator<Item = f64>| -> Vec<f64> {
                let mut acc = CompensatedSum::new();
                let mut out = vec![0.0];
                for inv in iter {
                    acc.add(inv);
                    out.push(acc.value());
                }
                out
            };
            // prefix[k] = sum_{j<k}, suffix[k] = sum_{j>=k}.
            let prefix = running(&mut weights.iter().map(|w| 1.0 / w));
            let mut suffix = running(&mut weights.iter().rev().map(|w| 1.0 / w));
            suffix.reverse();
            (0..n)
                .map(|x| {
                    let before = if x >= m { prefix[x - m] } else { 0.0 };
                    let after = m.checked_add(1).and_then(|d| x.checked_add(d)).filter(|&k| k < n).map_or(0.0, |k| suffix[k]);
                    before + after
                })
                .collect()
        }
        PairFilter::CrossWalker => {
            let (groups, count) = walker_groups(s);
            let mut per_group = vec![CompensatedSum::new(); count];
            for (g, w) in groups.iter().zip(weights) {
                per_group[*g].add(1.0 / w);
            }
            let totals: Vec<f64> = per_group.iter().map(CompensatedSum::value).collect();
            let mut before = vec![0.0; count + 1];
            let mut after = vec![0.0; count + 1];
            let (mut acc_b, mut acc_a) = (CompensatedSum::new(), CompensatedSum::new());
            for g in 0..count {
                acc_b.add(totals[g]);
                before[g + 1] = acc_b.value();
                acc_a.add(totals[count - 1 - g]);
                after[count - 1 - g] = acc_a.value();
            }
            let others: Vec<f64> = (0..count).map(|g| before[g] + after[g + 1]).collect();
            groups.iter().map(|&g| others[g]).collect()
        }
    }
}

struct NodeWindow<'a> {
    nodes: &'a [u32],
    total: Vec<u64>,
    inside: Vec<u64>,
    same: u64,
}

impl Window for NodeWindow<'_> {
    fn enter(&mut self, pos: usize) {
        self.inside[self.nodes[pos] as usize] += 1;
    }
    fn leave(&mut self, pos: usize) {
        self.inside[self.nodes[pos] as usize] -= 1;
    }
    fn visit(&mut self, pos: usize) {
        let v = self.nodes[pos] as usize;
        self.same += self.total[v] - self.inside[v];
    }
}

/// Collision estimator restricted to kept pairs:
/// `sum w_i / w_j  /  sum 1{s_i = s_j}`.
pub fn node_margin(s: &Sample, cfg: MarginConfig) -> Result<RatioEstimate> {
    let weights = effective_weights(s)?;
    if s.is_empty() {
        return Ok(RatioEstimate::new(0.0, 0.0));
    }
    let idx = SampleIndex::new(s);
    let mut total = vec![0u64; idx.distinct];
    for &v in &idx.record_node {
        total[v as usize] += 1;
    }
    let mut win = NodeWindow { nodes: &idx.record_node, inside: vec![0; idx.distinct], total, same: 0 };
    sweep(s, cfg.pair_filter, &mut win);
    let kept = kept_inverse_sums(s, cfg.pair_filter, &weights);
    let num: CompensatedSum = weights.iter().zip(&kept).map(|(w, k)| w * k).collect();
    Ok(RatioEstimate::new(num.value(), win.same as f64))
}

struct NeighborWindow<'a> {
    idx: &'a SampleIndex,
    weights: &'a [f64],
    mode: AuxMode,
    total: Vec<u64>,
    inside: Vec<u64>,
    distinct_total: u64,
    /// Nodes all of whose occurrences in `A` lie inside the window.
    saturated: u64,
    degree_total: u64,
    degree_inside: u64,
    num: CompensatedSum,
    den: CompensatedSum,
}

impl Window for NeighborWindow<'_> {
    fn enter(&mut self, pos: usize) {
        let nb = self.idx.record_neighbors(pos);
        self.degree_inside += nb.len() as u64;
        for &u in nb {
            let u = u as usize;
            self.inside[u] += 1;
            if self.inside[u] == self.total[u] {
                self.saturated += 1;
            }
        }
    }
    fn leave(&mut self, pos: usize) {
        let nb = self.idx.record_neighbors(pos);
        self.degree_inside -= nb.len() as u64;
        for &u in nb {
            let u = u as usize;
            if self.inside[u] == self.total[u] {
                self.saturated -= 1;
            }
            self.inside[u] -= 1;
        }
    }
    fn visit(&mut self, pos: usize) {
        let v = self.idx.record_node[pos] as usize;
        let inv = 1.0 / self.weights[pos];
        let hits = self.total[v] - self.inside[v];
        match self.mode {
            AuxMode::Multiset => {
                self.num.add(inv * (self.degree_total - self.degree_inside) as f64);
                self.den.add(inv * hits as f64);
            }
            AuxMode::Set => {
                self.num.add(inv * (self.distinct_total - self.saturated) as f64);
                if hits > 0 {
                    self.den.add(inv);
                }
            }
        }
    }
}

/// IND-B restricted to kept pairs. Multiset mode evaluates
/// `sum deg(s_i)/w(s_j)  /  sum 1{s_i in N(s_j)}/w(s_i)`; Set mode is
/// described in the module docs.
pub fn ind_margin(s: &Sample, cfg: MarginConfig, mode: AuxMode) -> Result<RatioEstimate> {
    let weights = effective_weights(s)?;
    if s.is_empty() {
        return Ok(RatioEstimate::new(0.0, 0.0));
    }
    let idx = SampleIndex::new(s);
    let mut total = vec![0u64; idx.universe];
    let mut degree_total = 0u64;
    for pos in 0..s.len() {
        let nb = idx.record_neighbors(pos);
        degree_total += nb.len() as u64;
        for &u in nb {
            total[u as usize] += 1;
        }
    }
    let distinct_total = total.iter().filter(|&&c| c > 0).count() as u64;
    let mut win = NeighborWindow {
        idx: &idx,
        weights: &weights,
        mode,
        inside: vec![0; idx.universe],
        total,
        distinct_total,
        saturated: 0,
        degree_total,
        degree_inside: 0,
        num: CompensatedSum::new(),
        den: CompensatedSum::new(),
    };
    sweep(s, cfg.pair_filter, &mut win);
    Ok(RatioEstimate::new(win.num.value(), win.den.value()))
}

/// Which estimator a margin correction is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginBase {
    Node,
    Ind(AuxMode),
}

pub fn estimate_margin(s: &Sample, cfg: MarginConfig, base: MarginBase) -> Result<RatioEstimate> {
    match base {
        MarginBase::Node => node_margin(s, cfg),
        MarginBase::Ind(mode) => ind_margin(s, cfg, mode),
    }
}

/// Margin estimator that keeps only pairs from different walkers.
pub fn margin_crosswalker(s: &Sample, base: MarginBase) -> Result<RatioEstimate> {
    estimate_margin(s, MarginConfig::cross_walker(), base)
}

/// Pair-selection schemes compared by [`surviving_pair_count`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairScheme {
    SimpleThinning(usize),
    ShiftedThinning(usize),
    Margin(usize),
}

/// Number of ordered pairs `(i, j)`, `i != j`, that a scheme uses out of a
/// walk of length `n`.
pub fn surviving_pair_count(n: usize, scheme: PairScheme) -> u64 {
    let ordered = |len: u64| len * len.saturating_sub(1);
    let n64 = n as u64;
    match scheme {
        PairScheme::SimpleThinning(theta) => ordered(n64.div_ceil(theta.max(1) as u64)),
        PairScheme::ShiftedThinning(theta) => {
            let theta = theta.max(1) as u64;
            (0..theta.min(n64)).map(|k| ordered((n64 - k).div_ceil(theta))).sum()
        }
        PairScheme::Margin(m) => {
            let m = m as u64;
            if m + 1 >= n64 {
                0
            } else {
                (n64 - m - 1) * (n64 - m)
            }
        }
    }
}
