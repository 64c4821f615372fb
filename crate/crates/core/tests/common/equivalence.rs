//! Compares every streaming estimator with its quadratic oracle.

use graphsize::estimator::{build_auxiliary, count_collisions, count_cross_collisions, count_induced_edges, AuxMode};
use graphsize::induced::{density_uis, density_wis, inda_uis, inda_wis, indb_uis, indb_wis};
use graphsize::node::{node_uis, node_wis};
use graphsize::star::{star_aggregates_uis, star_aggregates_wis};
use graphsize::walk::{ind_margin, node_margin, MarginConfig, PairFilter};
use graphsize::{Method, Sample};

use super::oracle::{self, pair_close, rel_close, Keep};

const TOL: f64 = 1e-9;

/// Names of the quantities that disagree with their oracle on `s`.
pub fn mismatches(s: &Sample) -> Vec<String> {
    let mut bad = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            bad.push(name.to_string());
        }
    };
    let unit = s.method() == Method::Uis;

    check("collisions", count_collisions(s) == oracle::collisions(s));
    check("induced_edges", count_induced_edges(s, None).unwrap() == oracle::induced_edges(s));
    let r = node_uis(s);
    check("node_uis", pair_close((r.numerator, r.denominator), oracle::node_uis(s), TOL));
    let r = node_wis(s).unwrap();
    check("node_wis", pair_close((r.numerator, r.denominator), oracle::node_wis(s), TOL));

    if s.len() >= 2 {
        let pairs = (s.len() * (s.len() - 1) / 2) as f64;
        check("density_uis", rel_close(density_uis(s).unwrap(), oracle::induced_edges(s) as f64 / pairs, TOL));
        check("density_wis", rel_close(density_wis(s).unwrap(), oracle::density_wis(s), TOL));
        let got = inda_uis(s).unwrap().value();
        check("inda_uis", match (got, oracle::inda_uis(s)) {
            (Some(a), Some(b)) => rel_close(a, b, TOL),
            (a, b) => a.is_none() && b.is_none(),
        });
        let got = inda_wis(s).unwrap().value();
        check("inda_wis", match (got, oracle::inda_wis(s)) {
            (Some(a), Some(b)) => rel_close(a, b, TOL),
            (a, b) => a.is_none() && b.is_none(),
        });
    }

    for (mode, set) in [(AuxMode::Set, true), (AuxMode::Multiset, false)] {
        let a = build_auxiliary(s, mode);
        let reference = oracle::auxiliary(s, set);
        check("auxiliary_cardinality", a.cardinality() == reference.len() as u64);
        let r = indb_uis(s, &a).unwrap();
        check("indb_uis", pair_close((r.numerator, r.denominator), oracle::indb_uis(s, &reference), TOL));
        let r = indb_wis(s, &a).unwrap();
        check("indb_wis", pair_close((r.numerator, r.denominator), oracle::indb_wis(s, &reference), TOL));
        if !set {
            check("xcol_twice_ind", count_cross_collisions(s, &a) == 2 * oracle::induced_edges(s));
        }
    }

    // Margin estimators treat uniform samples as unit weight.
    let weighted = if unit { s.map_weights(|_| 1.0) } else { s.clone() };
    let mut filters: Vec<(PairFilter, Keep)> =
        [0, 1, 5, 50].iter().map(|&m| (PairFilter::IndexDistance(m), Keep::FartherThan(m))).collect();
    filters.push((PairFilter::CrossWalker, Keep::OtherWalker));
    for (filter, keep) in filters {
        let cfg = MarginConfig { pair_filter: filter };
        let r = node_margin(s, cfg).unwrap();
        check(&format!("node_margin {filter:?}"), pair_close((r.numerator, r.denominator), oracle::node_margin(&weighted, keep), TOL));
        let r = ind_margin(s, cfg, AuxMode::Multiset).unwrap();
        check(
            &format!("ind_margin multiset {filter:?}"),
            pair_close((r.numerator, r.denominator), oracle::ind_margin_multiset(&weighted, keep), TOL),
        );
        let r = ind_margin(s, cfg, AuxMode::Set).unwrap();
        check(
            &format!("ind_margin set {filter:?}"),
            pair_close((r.numerator, r.denominator), oracle::ind_margin_set(&weighted, keep), TOL),
        );
    }

    if s.records().iter().any(|r| r.degree > 0) {
        let a = star_aggregates_uis(s).unwrap();
        let (l, p1, pm1, ncol) = oracle::star_uis(s);
        check(
            "star_uis",
            a.neighbor_count == l && rel_close(a.psi1, p1, TOL) && rel_close(a.psi_neg1, pm1, TOL) && a.ncol_star == ncol,
        );
        let a = star_aggregates_wis(s).unwrap();
        let (l, p1, pm1, ncol) = oracle::star_wis(s);
        check(
            "star_wis",
            a.neighbor_count == l
                && rel_close(a.psi1, p1, TOL)
                && rel_close(a.psi_neg1, pm1, TOL)
                && rel_close(a.ncol_star, ncol, TOL),
        );
    }
    bad
}
