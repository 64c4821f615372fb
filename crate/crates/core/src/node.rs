//! Estimators built on node repetitions: capture-recapture, the
//! unique-element maximum likelihood estimators, and collision counting
//! under uniform and weighted sampling.

use std::collections::HashSet;
use std::hash::BuildHasher;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::estimator::{count_collisions, csum, EstimateOutcome, RatioEstimate};
use crate::graph::NodeId;
use crate::sample::{shuffled_positions, Sample};

/// `|S1| |S2| / |S1 ∩ S2|` for two duplicate-free node sets.
pub fn capture_recapture<H: BuildHasher>(first: &HashSet<NodeId, H>, second: &HashSet<NodeId, H>) -> Result<RatioEstimate> {
    if first.is_empty() || second.is_empty() {
        return Err(Error::param("capture-recapture needs two non-empty sets"));
    }
    let (small, large) = if first.len() <= second.len() { (first, second) } else { (second, first) };
    let overlap = small.iter().filter(|v| large.contains(v)).count();
    Ok(RatioEstimate::new(first.len() as f64 * second.len() as f64, overlap as f64))
}

/// Result of splitting one sample into two capture occasions.
#[derive(Debug, Clone, PartialEq)]
pub struct CaptureSplit {
    pub estimate: RatioEstimate,
    pub first_unique: usize,
    pub second_unique: usize,
    pub overlap: usize,
    /// Draws thrown away as within-half duplicates.
    pub discarded: usize,
}

/// Splits `s` at random (seeded) into halves of sizes `floor(n/2)` and
/// `ceil(n/2)`, deduplicates each half and applies [`capture_recapture`].
pub fn capture_recapture_from_sample(s: &Sample, seed: u64) -> Result<CaptureSplit> {
    if s.len() < 2 {
        return Err(Error::param("capture-recapture split needs at least two draws"));
    }
    let order = shuffled_positions(s.len(), seed);
    let (a, b) = order.split_at(s.len() / 2);
    let half = |idx: &[usize]| -> FxHashSet<NodeId> { idx.iter().map(|&i| s.records()[i].node).collect() };
    let (first, second) = (half(a), half(b));
    let estimate = capture_recapture(&first, &second)?;
    Ok(CaptureSplit {
        estimate,
        first_unique: first.len(),
        second_unique: second.len(),
        overlap: estimate.denominator as usize,
        discarded: s.len() - first.len() - second.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MleSolverConfig {
    /// Relative width at which bisection stops.
    pub tolerance: f64,
    /// Largest size considered finite.
    pub cap: f64,
}

impl Default for MleSolverConfig {
    fn default() -> Self {
        Self { tolerance: 1e-9, cap: 1e12 }
    }
}

impl MleSolverConfig {
    fn check(&self) -> Result<()> {
        let valid = self.tolerance > 0.0 && self.cap > 1.0;
        if !valid {
            return Err(Error::param(format!("invalid solver config {self:?}")));
        }
        Ok(())
    }
}

fn check_counts(n: u64, n_unique: u64) -> Result<()> {
    if n_unique == 0 || n_unique > n {
        return Err(Error::param(format!("need 1 <= n_unique <= n (n={n}, n_unique={n_unique})")));
    }
    Ok(())
}

/// Solves `n_unique = N (1 - exp(-n/N))` for `N` by bisection on
/// `[n_unique, cap]`. Without any repeat (`n_unique == n`) there is no
/// finite root.
pub fn mle_unique_approx(n: u64, n_unique: u64, cfg: &MleSolverConfig) -> Result<EstimateOutcome> {
    check_counts(n, n_unique)?;
    cfg.check()?;
    if n_unique == n {
        return Ok(EstimateOutcome::NoCollisions);
    }
    let (nf, target) = (n as f64, n_unique as f64);
    // Increasing in N, tends to n as N grows.
    let seen = |size: f64| -size * (-nf / size).exp_m1() - target;
    let (mut lo, mut hi) = (target, cfg.cap);
    if seen(hi) < 0.0 {
        return Ok(EstimateOutcome::NoCollisions);
    }
    while hi - lo > cfg.tolerance * hi {
        let mid = 0.5 * (lo + hi);
        if seen(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(EstimateOutcome::Finite(0.5 * (lo + hi)))
}

/// Log of `(N+1)/(N+1-n_unique) * (N/(N+1))^n`; the exact estimator is the
/// smallest `N >= n_unique` where this is negative.
fn exact_log_ratio(n: u64, n_unique: u64, size: u64) -> f64 {
    let s = size as f64;
    -(-(n_unique as f64) / (s + 1.0)).ln_1p() - n as f64 * (1.0 / s).ln_1p()
}

/// Smallest integer `N >= n_unique` with
/// `(N+1)/(N+1-n_unique) * (N/(N+1))^n < 1`, found by doubling and then
/// binary search. `NoCollisions` when no such `N` is at most `cap`.
pub fn mle_unique_exact(n: u64, n_unique: u64, cfg: &MleSolverConfig) -> Result<EstimateOutcome> {
    check_counts(n, n_unique)?;
    cfg.check()?;
    if n_unique == n {
        return Ok(EstimateOutcome::NoCollisions);
    }
    let holds = |size: u64| exact_log_ratio(n, n_unique, size) < 0.0;
    let cap = cfg.cap.floor() as u64;
    let mut lo = n_unique;
    if holds(lo) {
        return Ok(EstimateOutcome::Finite(lo as f64));
    }
    let mut hi = lo;
    loop {
        if hi >= cap {
            if !holds(cap) {
                return Ok(EstimateOutcome::NoCollisions);
            }
            hi = cap;
            break;
        }
        hi = (hi.saturating_mul(2)).min(cap);
        if holds(hi) {
            break;
        }
        lo = hi;
    }
    // holds(lo) is false, holds(hi) is true.
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(EstimateOutcome::Finite(hi as f64))
}

/// Collision estimator for uniform samples: `n^2 / (2 n^col)`.
///
/// `2 n^col` is the number of ordered colliding pairs, whose expectation
/// under uniform sampling is `n(n-1)/N`.
pub fn node_uis(s: &Sample) -> RatioEstimate {
    let n = s.len() as f64;
    RatioEstimate::new(n * n, 2.0 * count_collisions(s) as f64)
}

/// Collision estimator for weighted samples:
/// `(sum w) (sum 1/w) / (2 n^col)`. Reduces to [`node_uis`] for unit weights.
pub fn node_wis(s: &Sample) -> Result<RatioEstimate> {
    s.check_weights()?;
    let w = csum(s.records().iter().map(|r| r.weight));
    let inv = csum(s.records().iter().map(|r| 1.0 / r.weight));
    Ok(RatioEstimate::new(w * inv, 2.0 * count_collisions(s) as f64))
}
