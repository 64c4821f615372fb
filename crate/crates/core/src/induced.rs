//! Estimators that use the edges among sampled nodes (IND-A) or matches
//! between sampled nodes and their neighbors (IND-B).

use crate::error::{Error, Result};
use crate::estimator::{
    build_auxiliary, count_cross_collisions, count_induced_edges, csum, pairwise_inverse_weight_sum, AuxMode,
    AuxiliarySet, CompensatedSum, RatioEstimate, SampleIndex,
};
use crate::sample::{Method, Sample};

fn need_records(s: &Sample, n: usize) -> Result<()> {
    if s.len() < n {
        return Err(Error::param(format!("estimator needs at least {n} draws, sample has {}", s.len())));
    }
    Ok(())
}

pub fn mean_degree_uis(s: &Sample) -> Result<f64> {
    need_records(s, 1)?;
    let total: u64 = s.records().iter().map(|r| r.degree as u64).sum();
    Ok(total as f64 / s.len() as f64)
}

/// Fraction of sampled position pairs that are edges.
pub fn density_uis(s: &Sample) -> Result<f64> {
    need_records(s, 2)?;
    let n = s.len() as f64;
    Ok(count_induced_edges(s, None)? as f64 / (n * (n - 1.0) / 2.0))
}

/// `(n - 1) sum deg / (2 n^ind) + 1`.
pub fn inda_uis(s: &Sample) -> Result<RatioEstimate> {
    need_records(s, 2)?;
    let degrees: u64 = s.records().iter().map(|r| r.degree as u64).sum();
    let ind = count_induced_edges(s, None)?;
    Ok(RatioEstimate::with_offset((s.len() - 1) as f64 * degrees as f64, 2.0 * ind as f64, 1.0))
}

/// Hansen-Hurwitz mean degree: `sum(deg/w) / sum(1/w)`.
pub fn mean_degree_wis(s: &Sample) -> Result<f64> {
    need_records(s, 1)?;
    s.check_weights()?;
    let (num, den) = degree_sums(s);
    Ok(num / den)
}

fn degree_sums(s: &Sample) -> (f64, f64) {
    let num = csum(s.records().iter().map(|r| r.degree as f64 / r.weight));
    let den = csum(s.records().iter().map(|r| 1.0 / r.weight));
    (num, den)
}

/// `sum_{i<j, s_i ~ s_j} 1/(w_i w_j)`.
fn weighted_induced_pairs(s: &Sample) -> f64 {
    let idx = SampleIndex::new(s);
    let mut inv = vec![CompensatedSum::new(); idx.distinct];
    for (r, &v) in s.records().iter().zip(&idx.record_node) {
        inv[v as usize].add(1.0 / r.weight);
    }
    let inv: Vec<f64> = inv.iter().map(CompensatedSum::value).collect();
    let mut twice = CompensatedSum::new();
    for v in 0..idx.distinct {
        let hits = csum(idx.neighbors(v as u32).iter().filter(|&&u| (u as usize) < idx.distinct).map(|&u| inv[u as usize]));
        twice.add(inv[v] * hits);
    }
    0.5 * twice.value()
}

/// Edge density with each pair weighted by `1/(w_i w_j)`.
pub fn density_wis(s: &Sample) -> Result<f64> {
    need_records(s, 2)?;
    let pairs = pairwise_inverse_weight_sum(s)?;
    Ok(weighted_induced_pairs(s) / pairs)
}

/// `mean_degree_wis / density_wis + 1`, kept as one ratio.
pub fn inda_wis(s: &Sample) -> Result<RatioEstimate> {
    need_records(s, 2)?;
    let pairs = pairwise_inverse_weight_sum(s)?;
    let (deg, inv) = degree_sums(s);
    Ok(RatioEstimate::with_offset(deg * pairs, inv * weighted_induced_pairs(s), 1.0))
}

/// IND-A for the sample's own method; uniform samples ignore weights.
pub fn inda(s: &Sample) -> Result<RatioEstimate> {
    match s.method() {
        Method::Uis => inda_uis(s),
        _ => inda_wis(s),
    }
}

/// `|A| |S| / n^xcol`.
pub fn indb_uis(s: &Sample, a: &AuxiliarySet) -> Result<RatioEstimate> {
    need_records(s, 1)?;
    Ok(RatioEstimate::new(
        a.cardinality() as f64 * s.len() as f64,
        count_cross_collisions(s, a) as f64,
    ))
}

/// `|A| sum(1/w) / sum(count_A(s)/w)`.
pub fn indb_wis(s: &Sample, a: &AuxiliarySet) -> Result<RatioEstimate> {
    need_records(s, 1)?;
    s.check_weights()?;
    let inv = csum(s.records().iter().map(|r| 1.0 / r.weight));
    let hits = csum(s.records().iter().map(|r| a.count(r.node) as f64 / r.weight));
    Ok(RatioEstimate::new(a.cardinality() as f64 * inv, hits))
}

/// IND-B with `A` built from the sampled nodes' neighbors.
pub fn indb_auto(s: &Sample, mode: AuxMode) -> Result<RatioEstimate> {
    let a = build_auxiliary(s, mode);
    match s.method() {
        Method::Uis => indb_uis(s, &a),
        _ => indb_wis(s, &a),
    }
}
