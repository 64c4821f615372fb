//! Star sampling (experimental).
//!
//! Treats the concatenated neighbor lists of the sampled nodes as a
//! degree-biased sample and feeds it to the collision estimator. In
//! simulations this works noticeably worse than the other estimators; use it
//! for comparison only.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::estimator::{csum, multiplicities, CompensatedSum, RatioEstimate};
use crate::graph::NodeId;
use crate::sample::{Method, Sample};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarAggregates {
    /// `|N(S)|`, the length of the concatenated neighbor lists.
    pub neighbor_count: u64,
    pub psi1: f64,
    pub psi_neg1: f64,
    /// Repeated-neighbor pairs in `N(S)`, reweighted under weighted sampling.
    pub ncol_star: f64,
    /// Repeated-neighbor pairs whose occurrences share the same sampled
    /// node (reported, not used).
    pub same_parent_collisions: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarVariant {
    Uis,
    Wis,
}

impl std::str::FromStr for StarVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uis" => Ok(StarVariant::Uis),
            "wis" => Ok(StarVariant::Wis),
            other => Err(Error::param(format!("unknown star variant {other:?}"))),
        }
    }
}

fn neighbor_total(s: &Sample) -> Result<u64> {
    let total: u64 = s.records().iter().map(|r| r.degree as u64).sum();
    if total == 0 {
        return Err(Error::param("star sampling needs at least one sampled node with neighbors"));
    }
    Ok(total)
}

fn same_parent(s: &Sample) -> u64 {
    multiplicities(s).iter().map(|(&v, &c)| s.neighbors_of(v).len() as u64 * (c * (c - 1) / 2)).sum()
}

fn plain_collisions(s: &Sample) -> u64 {
    let mut counts: FxHashMap<NodeId, u64> = FxHashMap::default();
    for r in s.records() {
        for &u in s.record_neighbors(r) {
            *counts.entry(u).or_insert(0) += 1;
        }
    }
    counts.values().map(|&c| c * (c - 1) / 2).sum()
}

pub fn star_aggregates_uis(s: &Sample) -> Result<StarAggregates> {
    let l = neighbor_total(s)?;
    let squares: u64 = s.records().iter().map(|r| (r.degree * r.degree) as u64).sum();
    // |N(S)| = sum deg, so the leading factor cancels the mean's denominator.
    Ok(StarAggregates {
        neighbor_count: l,
        psi1: squares as f64,
        psi_neg1: s.len() as f64,
        ncol_star: plain_collisions(s) as f64,
        same_parent_collisions: same_parent(s),
    })
}

/// Reweighted repeated-neighbor count:
/// `C(L, 2) * sum_{i<j} 1{v_i = v_j}/(w_i w_j) / sum_{i<j} 1/(w_i w_j)`
/// over neighbor occurrences `(v, w)`. Each pair term is added exactly once,
/// so a list without repeats gives exactly zero.
pub fn star_ncol_wis(neighbors: &[(NodeId, f64)]) -> Result<f64> {
    if let Some(i) = neighbors.iter().position(|&(_, w)| !(w > 0.0 && w.is_finite())) {
        return Err(Error::InvalidWeight { position: i, weight: neighbors[i].1 });
    }
    let mut earlier: FxHashMap<NodeId, CompensatedSum> = FxHashMap::default();
    let mut all_earlier = CompensatedSum::new();
    let mut same = CompensatedSum::new();
    let mut pairs = CompensatedSum::new();
    for &(v, w) in neighbors {
        let inv = 1.0 / w;
        let seen = earlier.entry(v).or_default();
        if seen.value() != 0.0 {
            same.add(inv * seen.value());
        }
        seen.add(inv);
        pairs.add(inv * all_earlier.value());
        all_earlier.add(inv);
    }
    if same.value() == 0.0 {
        return Ok(0.0);
    }
    let l = neighbors.len() as f64;
    Ok(l * (l - 1.0) / 2.0 * same.value() / pairs.value())
}

/// Aggregates for weighted samples; every neighbor occurrence carries the
/// weight of the sampled node it was listed by.
pub fn star_aggregates_wis(s: &Sample) -> Result<StarAggregates> {
    s.check_weights()?;
    let l = neighbor_total(s)?;
    let lf = l as f64;
    let deg = csum(s.records().iter().map(|r| r.degree as f64 / r.weight));
    let sq = csum(s.records().iter().map(|r| (r.degree * r.degree) as f64 / r.weight));
    let inv = csum(s.records().iter().map(|r| 1.0 / r.weight));
    let flat: Vec<(NodeId, f64)> =
        s.records().iter().flat_map(|r| s.record_neighbors(r).iter().map(move |&u| (u, r.weight))).collect();
    Ok(StarAggregates {
        neighbor_count: l,
        psi1: lf * sq / deg,
        psi_neg1: lf * inv / deg,
        ncol_star: star_ncol_wis(&flat)?,
        same_parent_collisions: same_parent(s),
    })
}

pub fn star_aggregates(s: &Sample, variant: StarVariant) -> Result<StarAggregates> {
    match variant {
        StarVariant::Uis => star_aggregates_uis(s),
        StarVariant::Wis => star_aggregates_wis(s),
    }
}

/// `psi1 * psi_neg1 / (2 ncol_star)`, the collision estimator with the
/// neighbor lists as the sample.
pub fn star_estimate_variant(s: &Sample, variant: StarVariant) -> Result<RatioEstimate> {
    let a = star_aggregates(s, variant)?;
    Ok(RatioEstimate::new(a.psi1 * a.psi_neg1, 2.0 * a.ncol_star))
}

/// [`star_estimate_variant`] with the variant matching the sample's method.
pub fn star_estimate(s: &Sample) -> Result<RatioEstimate> {
    let variant = if s.method() == Method::Uis { StarVariant::Uis } else { StarVariant::Wis };
    star_estimate_variant(s, variant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimator::tests::sample_on;
    use crate::estimator::EstimateOutcome;
    use crate::node::node_uis;

    fn star4() -> Vec<(NodeId, NodeId)> {
        (1..=4).map(|l| (0, l)).collect()
    }

    #[test]
    fn hub_aggregates() {
        let s = sample_on(Method::Uis, &[0], &[], &star4());
        let a = star_aggregates_uis(&s).unwrap();
        assert_eq!((a.neighbor_count, a.psi1, a.psi_neg1, a.ncol_star), (4, 16.0, 1.0, 0.0));
        assert_eq!(star_estimate(&s).unwrap().outcome(), EstimateOutcome::NoCollisions);
    }

    #[test]
    fn regular_graph_aggregates() {
        let ring: Vec<(NodeId, NodeId)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let s = sample_on(Method::Uis, &[0, 2, 3, 3], &[], &ring);
        let a = star_aggregates_uis(&s).unwrap();
        assert_eq!((a.neighbor_count, a.psi1, a.psi_neg1), (8, 16.0, 4.0));
        // N(S) = [1,5, 1,3, 2,4, 2,4]
        assert_eq!(a.ncol_star, 3.0);
        assert_eq!(a.same_parent_collisions, 2);
        let flat: Vec<NodeId> = vec![1, 5, 1, 3, 2, 4, 2, 4];
        let want = node_uis(&crate::estimator::tests::unit(&flat));
        assert_eq!(star_estimate(&s).unwrap().value(), want.value());
    }

    #[test]
    fn isolated_sample_is_rejected() {
        let s = sample_on(Method::Uis, &[9], &[], &[]);
        assert!(star_aggregates_uis(&s).is_err());
        assert!(star_estimate(&s).is_err());
    }

    #[test]
    fn weighted_collision_count() {
        assert_eq!(star_ncol_wis(&[(1, 0.3), (2, 0.7), (3, 1.9)]).unwrap(), 0.0);
        let plain = [(1, 2.0), (2, 2.0), (1, 2.0), (1, 2.0)];
        assert_eq!(star_ncol_wis(&plain).unwrap(), 3.0);
        assert!(star_ncol_wis(&[(1, 0.0)]).is_err());

        let items = [(1, 1.0), (2, 2.0), (1, 4.0), (3, 0.5), (2, 3.0)];
        let (mut same, mut all) = (0.0, 0.0);
        for i in 0..items.len() {
            for j in 0..items.len() {
                if i != j {
                    let t = 1.0 / (items[i].1 * items[j].1);
                    all += t;
                    if items[i].0 == items[j].0 {
                        same += t;
                    }
                }
            }
        }
        let want = 10.0 * same / all;
        assert!((star_ncol_wis(&items).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn unit_weights_reduce_to_uniform() {
        let s = sample_on(Method::Wis, &[0, 1, 1, 2], &[1.0; 4], &star4());
        let u = sample_on(Method::Uis, &[0, 1, 1, 2], &[], &star4());
        let (a, b) = (star_aggregates_wis(&s).unwrap(), star_aggregates_uis(&u).unwrap());
        assert_eq!(a, b);
    }
}
